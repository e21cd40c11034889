#pragma once

#include "qhpc/algebra.hpp"

#include <functional>
#include <memory>
#include <optional>

namespace qhpc {

enum class Side { Left, Right };

/// One-sided module stored as one action matrix per algebra basis element,
/// acting on column vectors. Left: rho(xy) = rho(x) rho(y); right:
/// rho(xy) = rho(y) rho(x).
struct ModRep {
    AlgebraPtr alg;
    Side side = Side::Left;
    int d = 0;
    std::vector<Mat> act;
    std::vector<int> zdeg; // optional Z_2-degrees of the module basis

    Mat act_vec(const Vec& a) const;
    const Mat& act_basis(int k) const { return act[k]; }
    bool graded() const { return !zdeg.empty(); }
};

using ModPtr = std::shared_ptr<const ModRep>;

ModPtr make_module(AlgebraPtr alg, Side side, std::vector<Mat> act, std::vector<int> zdeg = {});

Report verify_module(const ModRep& m);

/// Memoized generating set of an algebra (honors a declared hint).
const std::vector<int>& cached_generating_set(const AlgebraPtr& a);

/// Regular representation of the algebra on itself.
ModPtr regular_module(AlgebraPtr a, Side side);

/// Indecomposable projective A e_lambda (left) or e_lambda A (right).
struct ProjectiveModule {
    ModPtr mod;
    Vec generator;           // image of e_lambda in module coordinates
    std::vector<Vec> basis;  // module basis inside the algebra
};
ProjectiveModule projective_indec(AlgebraPtr a, const std::string& weight, Side side);

/// The simple head of P(lambda); throws when its top is not one-dimensional
/// (the field does not split the algebra).
ModPtr simple_module(AlgebraPtr a, const std::string& weight, Side side);

/// Smallest submodule containing the seeds.
Subspace submodule_closure(const ModRep& m, const std::vector<Vec>& seeds);
bool is_submodule(const ModRep& m, const Subspace& s);

struct SubquotientModule {
    ModPtr mod;
    Mat map; // inclusion (sub: d x k) or projection (quotient: k x d)
};
SubquotientModule sub_module(const ModRep& m, const Subspace& s);
SubquotientModule quotient_module(const ModRep& m, const Subspace& s);

struct DirectSumModule {
    ModPtr mod;
    Mat incl1, incl2; // injections
    Mat proj1, proj2; // projections
};
DirectSumModule direct_sum(const ModRep& a, const ModRep& b);

/// Weight space e_lambda M (left) or M e_lambda (right).
Subspace weight_space(const ModRep& m, int idem_index);

/// Radical span rad(A) * M (left) or M * rad(A) (right).
Subspace radical_submodule(const ModRep& m, const Subspace& rad_a);
Subspace socle_submodule(const ModRep& m, const Subspace& rad_a);

std::vector<Subspace> radical_series(const ModRep& m);
std::vector<Subspace> socle_series(const ModRep& m);

/// Composition multiplicity [M : L(lambda)] in the split basic case.
int multiplicity(const ModRep& m, const std::string& weight);

/// Intertwiner space Hom_A(M, N) as an echelonized list of matrices.
std::vector<Mat> hom_space(const ModRep& m, const ModRep& n);

struct Ext1Result {
    int dim = 0;
    /// Canonical extensions 0 -> N -> E -> M -> 0, one per echelon class.
    std::vector<ModPtr> middles;
    std::vector<Mat> incl_n; // N -> E
    std::vector<Mat> proj_m; // E -> M
};
Ext1Result ext1(const ModRep& m, const ModRep& n);
/// Same, reusing a precomputed projective cover of m (with its syzygy module).
struct CoverResult;
struct CachedCover;
Ext1Result ext1_with_cover(const CachedCover& cov, const ModRep& n);
int ext_dim(const ModRep& m, const ModRep& n, int degree); // degree 0, 1 or 2 via syzygy

/// Chevalley-twisted dual: same side, action through the anti-automorphism.
ModPtr dualize(const ModRep& m, const Mat& phi);

/// Plain vector-space dual, flipping the side.
ModPtr side_dual(const ModRep& m);

struct FittingResult {
    bool indecomposable = false;
    int end_dim = 0;
    int end_top_dim = 0;
    Mat idem;            // splitting endomorphism when decomposable
    Subspace part1, part2;
    std::string note;
};

/// Either certify End(M) local (split residue field) or produce a nontrivial
/// idempotent endomorphism and the corresponding direct decomposition.
/// Throws when End(M)/rad is semisimple but not split over the field.
FittingResult fitting_split(const ModRep& m);

/// Full decomposition into indecomposable summands (spans inside M).
std::vector<Subspace> indecomposable_summands(const ModRep& m);

struct EndAlgebra {
    BasedAlgebra algebra;
    std::vector<Mat> basis; // endomorphism matrices per algebra basis element
};
EndAlgebra endomorphism_algebra(const ModRep& m);

/// Deterministic search for an isomorphism M -> N; nullopt if none found.
std::optional<Mat> find_isomorphism(const ModRep& m, const ModRep& n);

/// Projective cover data of M.
struct CoverResult {
    ModPtr p0;                      // direct sum of indecomposable projectives
    Mat surjection;                 // p0 -> M
    std::vector<std::string> tops;  // weight of each summand
    std::vector<int> summand_offset;
    Subspace syzygy;                // kernel inside p0
};
CoverResult projective_cover(const ModRep& m);

/// Cover plus the syzygy submodule, reusable across many ext computations.
struct CachedCover {
    CoverResult cover;
    ModPtr omega;
    Mat omega_incl; // omega -> p0
};
CachedCover make_cached_cover(const ModRep& m);

} // namespace qhpc
