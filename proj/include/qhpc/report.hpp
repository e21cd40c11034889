#pragma once

#include <string>
#include <vector>

namespace qhpc {

/// One verifiable claim: id, what it asserts, outcome, and a witness payload
/// on failure (or a short confirmation payload on success).
struct Claim {
    std::string id;
    std::string anchor; // short tag of the mathematical statement being checked
    bool pass = false;
    std::string witness;
};

/// Ordered, byte-stable collection of claims.
struct Report {
    std::vector<Claim> claims;

    void add(std::string id, std::string anchor, bool pass, std::string witness = "");
    void merge(const Report& other, const std::string& prefix = "");
    bool all_pass() const;
    int fail_count() const;

    std::string render_text() const;
    std::string render_json() const;
};

} // namespace qhpc
