#pragma once

#include "qhpc/hwc.hpp"
#include "qhpc/modrep.hpp"

#include <string>
#include <vector>

namespace qhpc {

/// Parsed algebra-spec file: the algebra itself, the declared weight poset,
/// and optional tower kernel spans (one list of vectors per proper level).
struct AlgebraSpec {
    BasedAlgebra algebra;
    WeightPoset poset;
    std::vector<std::vector<Vec>> tower_kernels;
    bool has_poset = false;
};

/// Line-oriented parse error carrying the 1-based line number.
struct SpecParseError : std::runtime_error {
    int line;
    SpecParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

std::string write_algebra_spec(const BasedAlgebra& a, const WeightPoset* poset = nullptr,
                               const std::vector<std::vector<Vec>>* tower_kernels = nullptr);
AlgebraSpec parse_algebra_spec(const std::string& text);

std::string write_module_spec(const ModRep& m);
ModPtr parse_module_spec(const std::string& text, AlgebraPtr alg);

/// Double every weight of a poset into w^0, w^1 with covers inherited in all
/// parity combinations (parity pairs at one weight stay incomparable).
WeightPoset double_poset(const WeightPoset& p);

} // namespace qhpc
