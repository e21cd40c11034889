#pragma once

#include "qhpc/hwc.hpp"

namespace qhpc {

/// Weights with a nonvanishing first extension from their standard module.
std::set<std::string> defect_set(HwContext& ctx, const ModRep& m);

struct TiltingOptions {
    bool eps_ascending = true; // tie-break among incomparable defect weights
    int class_pick = 0;        // which echelon extension class to use
    bool batched = false;      // exhaust one weight's extensions before re-picking
};

struct TiltingStep {
    int level = 0;
    std::string pi;
    std::vector<int> chi_before, chi_after;
};

struct TiltingBuild {
    std::string weight;
    ModPtr t;
    std::vector<Subspace> v_chain; // V_1 .. V_H inside t
    FiltrationCertificate delta_cert;
    std::vector<TiltingStep> log;

    std::string to_text() const;
};

/// Iterative construction of the indecomposable tilting module at a weight:
/// start at the standard module and absorb minimal defect extensions level by
/// level, passing to the indecomposable summand that carries the chain. Every
/// intermediate state is re-verified admissible and the extension
/// characteristic strictly decreases.
TiltingBuild build_tilting(HwContext& ctx, const std::string& w, const TiltingOptions& opt = {});

/// Both tilting clauses: an increasing standard filtration certificate and an
/// empty defect set; additionally a decreasing costandard certificate.
Report verify_tilting(HwContext& ctx, const ModRep& t);

/// Decompose a tilting module into indecomposable tilting summands by
/// splitting off maximal-weight pieces; returns weight multiplicities.
std::vector<std::pair<std::string, int>> tilting_decompose(
    HwContext& ctx, const ModRep& t, const std::map<std::string, ModPtr>& indecomposables);

/// End(T(w)) is local with residue field K; its radical is exactly the set of
/// endomorphisms vanishing on the standard bottom V_1.
Report end_locality(HwContext& ctx, const TiltingBuild& b);

} // namespace qhpc
