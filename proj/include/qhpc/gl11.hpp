#pragma once

#include "qhpc/algebra.hpp"
#include "qhpc/hwc.hpp"
#include "qhpc/ringel.hpp"
#include "qhpc/report.hpp"

#include <string>
#include <vector>

namespace qhpc {
namespace gl11 {

/// Weight i^eps of the degree-r family: index i >= 0 and a parity tag.
/// The order reverses the index: i^e1 > j^e2 iff i < j.
struct GLWeight {
    int i = 0;
    int eps = 0;
    std::string label() const { return std::to_string(i) + "^" + std::to_string(eps); }
};

enum class BasisKind { X, B, C, D, Y };

/// One truncation level of the coefficient coalgebra: a based supercoalgebra
/// with an explicit comultiplication table and counit.
struct CoalgebraLevel {
    Field f;
    std::int64_t p = 0;
    std::int64_t r = 0;
    int level = 0;
    bool p_divides_r = false;

    std::vector<std::string> labels;
    std::vector<BasisKind> kind;
    std::vector<int> index;
    std::vector<int> deg;

    struct CoTerm {
        int left, right;
        Scalar c;
    };
    std::vector<std::vector<CoTerm>> comul; // per basis element
    Vec counit;                             // counit values per basis element

    int dim() const { return static_cast<int>(labels.size()); }
    int find(BasisKind k, int idx) const;
};

CoalgebraLevel build_coalgebra(std::int64_t p, std::int64_t r, int level);

Report verify_coalgebra(const CoalgebraLevel& c);

/// The dual algebra of one coalgebra level, with the sign rule for duals of
/// supercoalgebras baked into the structure constants.
BasedAlgebra dual_algebra(const CoalgebraLevel& c);

struct SrBuild {
    std::int64_t p = 0, r = 0;
    int level = 0;
    bool p_divides_r = false;
    std::vector<CoalgebraLevel> coalgebras; // levels 1..N
    AlgebraTower tower;                     // dual algebras, ascending levels
};

/// The Schur superalgebra tower of GL(1|1) in degree r, truncated at the
/// given level: levels 1..N of duals of the coalgebra filtration.
SrBuild build_Sr(std::int64_t p, std::int64_t r, int level);

/// Entry-by-entry comparison of a generated level against the closed-form
/// multiplication table of the dual basis (p | r branch).
Report check_sr_table(const BasedAlgebra& sr);

/// Quiver presentation checks for a p | r level: arrow spaces in rad/rad^2,
/// the vanishing and mesh relations, and exactness of the degree <= 2
/// relation space.
Report verify_quiver(const BasedAlgebra& sr);

/// Matrix superalgebra structure of one block in the semisimple branch:
/// the sqrt(-r) basis map when -r is a square mod p, else the structural
/// fallback (dimension 4, zero radical, one-dimensional center).
Report verify_M11_iso(const BasedAlgebra& sr_level, int block);

/// Undoubled weight poset at a level: chain N < N-1 < ... < 0 on index labels.
struct WeightChain {
    std::vector<std::string> labels; // by index
};

/// Closed-form Ringel dual tower (p | r): both parity components, built
/// directly from its multiplication table, independent of the ringel module.
AlgebraTower build_Rr_reference(std::int64_t p, std::int64_t r, int level);

/// Parity of the index-j weight inside component eps.
inline int component_parity(int eps, int j) { return (j + eps) % 2; }

/// Per-level span labels of the ascending heredity chain member H_i
/// (doubled algebra): X,B up to i and C,D up to i+1, intersected with the
/// level basis.
std::vector<Vec> heredity_span_doubled(const BasedAlgebra& doubled, int i);

/// Descending chain member G_i of the reference Ringel dual at a level:
/// e,c with index >= i and b,d with index >= i-1.
std::vector<Vec> descending_span_reference(const BasedAlgebra& r_level, int i);

/// Chevalley anti-automorphism of a p | r level: X fixed, B_i <-> C_{i+1},
/// D fixed; returned as a matrix on the undoubled basis (plain anti rule).
Mat chevalley_involution(const BasedAlgebra& sr_level);

/// Parity-signed variant: B_i <-> C_{i+1}, D -> -D, satisfying the signed
/// anti rule on the superalgebra itself.
Mat chevalley_involution_super(const BasedAlgebra& sr_level);

/// Lift of an even parity-preserving anti-automorphism to the parity double.
Mat double_anti_automorphism(const BasedAlgebra& undoubled, const Mat& phi);

/// Parity double of every tower level, with doubled connecting maps.
AlgebraTower doubled_tower(const AlgebraTower& t);

/// Weight poset of the doubled level: elements i^eps in idempotent order,
/// covers (i+1)^mu < i^eps.
WeightPoset doubled_weight_poset(const BasedAlgebra& doubled);

/// Ascending heredity chains per doubled tower level:
/// [0, H_0, ..., H_{l-1}, full] at level l.
std::vector<std::vector<Subspace>> heredity_chains_doubled(const AlgebraTower& doubled);

struct RingelMatch {
    bool ok = false;
    std::string why;
    // normalized generators in computed dual coordinates, labeled like the
    // closed-form basis ("e0^0", "b1^1", ...)
    std::map<std::string, Vec> named;
    std::map<std::string, std::string> component_of; // weight -> "0"/"1"
};

/// Normalize the computed Ringel dual onto the closed-form basis: sweep the
/// one-dimensional hom blocks, pin scales through the product relations, and
/// compare the full multiplication table entry by entry.
RingelMatch match_reference(const RingelData& rd, const BasedAlgebra& reference);

/// The quotient comparison: each parity component of the dual, modulo the
/// one-dimensional ideal at its top weight, is isomorphic to the next lower
/// truncation level of the Schur superalgebra, with the signed basis map.
Report double_dual_compare(const RingelData& rd, const RingelMatch& match,
                           const BasedAlgebra& sr_prev_level);

struct CrossValidateOptions {
    bool check_table = true;
    bool check_quiver = true;
    bool check_structure = true;  // composition series shapes, duality claims
    bool check_tilting = true;
    bool check_ringel = true;
    bool check_iso = true; // quotient comparison of the double dual
};

/// Convert a subcomodule spanned by coalgebra basis elements into a module
/// over the parity double, with the sign rule of dualization and the given
/// parity shift on the module basis.
ModPtr comodule_to_module(const CoalgebraLevel& c, AlgebraPtr doubled,
                          const std::vector<int>& span_indices, int parity_shift);

/// End-to-end pipeline on (p, r, level): generation, structural verification,
/// highest-weight checks, tilting builds, Ringel dual, and the closed-form
/// comparisons. Semisimple inputs run the structural branch only.
Report cross_validate(std::int64_t p, std::int64_t r, int level, const CrossValidateOptions& opt = {});

/// Emit the generated algebras as spec files: the Schur level and, for the
/// quasi-hereditary branch, the computed Ringel dual.
void emit_spec_files(std::int64_t p, std::int64_t r, int level, const std::string& dir);

} // namespace gl11
} // namespace qhpc
