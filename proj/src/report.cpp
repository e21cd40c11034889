#include "qhpc/report.hpp"

#include <sstream>

#include "json.hpp"

namespace qhpc {

void Report::add(std::string id, std::string anchor, bool pass, std::string witness) {
    claims.push_back(Claim{std::move(id), std::move(anchor), pass, std::move(witness)});
}

void Report::merge(const Report& other, const std::string& prefix) {
    for (const auto& c : other.claims)
        claims.push_back(Claim{prefix.empty() ? c.id : prefix + "." + c.id, c.anchor, c.pass, c.witness});
}

bool Report::all_pass() const {
    for (const auto& c : claims)
        if (!c.pass) return false;
    return true;
}

int Report::fail_count() const {
    int n = 0;
    for (const auto& c : claims)
        if (!c.pass) ++n;
    return n;
}

std::string Report::render_text() const {
    std::ostringstream os;
    for (const auto& c : claims) {
        os << "CLAIM " << c.id << " [" << c.anchor << "] " << (c.pass ? "PASS" : "FAIL");
        if (!c.witness.empty()) os << " | " << c.witness;
        os << "\n";
    }
    os << "SUMMARY " << (claims.size() - fail_count()) << "/" << claims.size() << " pass\n";
    return os.str();
}

std::string Report::render_json() const {
    nlohmann::json j;
    j["claims"] = nlohmann::json::array();
    for (const auto& c : claims)
        j["claims"].push_back({{"id", c.id}, {"anchor", c.anchor}, {"pass", c.pass}, {"witness", c.witness}});
    j["summary"] = {{"total", claims.size()}, {"failed", fail_count()}};
    return j.dump(2) + "\n";
}

} // namespace qhpc
