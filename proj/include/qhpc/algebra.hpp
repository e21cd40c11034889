#pragma once

#include "qhpc/linalg.hpp"
#include "qhpc/report.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qhpc {

struct SparseTerm {
    int idx;
    Scalar c;
};

using SparseVec = std::vector<SparseTerm>;

/// Finite-dimensional associative algebra on a labeled basis with structure
/// constants, a distinguished family of orthogonal primitive idempotents
/// carrying weight labels, an optional Z_2-grading, and an optional
/// precomputed radical basis.
struct BasedAlgebra {
    Field f;
    std::vector<std::string> labels;
    std::vector<int> deg; // empty for ungraded, else one of {0,1} per basis element
    std::vector<std::vector<SparseVec>> table;
    Vec unit;

    struct Idem {
        Vec v;
        std::string weight;
    };
    std::vector<Idem> idems;
    std::vector<Vec> radical_hint; // optional designated radical basis
    bool has_radical_hint = false;
    std::vector<int> gens_hint;    // optional known generating set (basis indices)

    int dim() const { return static_cast<int>(labels.size()); }
    bool graded() const { return !deg.empty(); }

    static BasedAlgebra make(Field f, std::vector<std::string> labels, std::vector<int> deg = {});
    void set_product(int k, int l, SparseVec terms);
    void add_term(int k, int l, int target, const Scalar& c);

    int label_index(const std::string& lab) const; // -1 if absent
    int idem_of_weight(const std::string& w) const; // -1 if absent
    Vec basis_vec(int k) const { return unit_vec(f, dim(), k); }

    Vec mul(const Vec& a, const Vec& b) const;
    Mat left_mult(const Vec& a) const;  // x -> a x
    Mat right_mult(const Vec& a) const; // x -> x a

    /// Greedy generating set: idempotent supports plus basis elements added
    /// until products span. Used to cut intertwiner systems down to size.
    std::vector<int> generating_set() const;
};

using AlgebraPtr = std::shared_ptr<const BasedAlgebra>;

/// Echelonized span certified (on construction) to be a two-sided ideal.
struct IdealSpan {
    AlgebraPtr parent;
    Subspace span;
};

Vec algebra_mul(const BasedAlgebra& a, const Vec& x, const Vec& y);

Report verify_algebra(const BasedAlgebra& a);

bool is_two_sided_ideal(const BasedAlgebra& a, const Subspace& s, std::string* witness = nullptr);

/// Smallest two-sided ideal containing the seeds.
Subspace two_sided_closure(const BasedAlgebra& a, const std::vector<Vec>& seeds);

/// Nilpotency index of an ideal span (0 if the span is zero); nullopt when the
/// powers do not reach zero within dim steps.
std::optional<int> nilpotency_index(const BasedAlgebra& a, const Subspace& s);

/// Jacobson radical. Uses the designated radical basis when present (verified),
/// the trace-form kernel in characteristic zero, and the iterated p-power
/// trace refinement over prime fields.
IdealSpan radical(const BasedAlgebra& a, AlgebraPtr self = nullptr);

/// Memoized radical span keyed by algebra identity.
const Subspace& radical_span_cached(const AlgebraPtr& a);

/// Split basic test: dim A/rad equals the number of declared idempotents.
bool is_split_basic(const BasedAlgebra& a, const IdealSpan& rad, std::string* why = nullptr);

/// Two-sided ideal generated by the idempotents with weights outside gamma.
IdealSpan heredity_ideal(const BasedAlgebra& a, const std::set<std::string>& gamma, AlgebraPtr self = nullptr);

struct QuotientResult {
    BasedAlgebra algebra;
    Mat projection; // old coords -> new coords
};

QuotientResult quotient_algebra(const BasedAlgebra& a, const Subspace& ideal);

BasedAlgebra opposite(const BasedAlgebra& a);

/// Parity double of a graded algebra: basis a*pi_eps with
/// (a pi_eps)(b pi_mu) = [eps == mu + |b|] (ab) pi_mu. Discrete modules over
/// the double are exactly the graded modules of the input; for p != 2 this is
/// isomorphic to the crossed product with Z_2. Idempotent weights gain a
/// parity suffix: w -> w^0, w^1.
BasedAlgebra super_double(const BasedAlgebra& a);

/// Idempotent truncation e A e for e the sum of the selected idempotents.
struct TruncationResult {
    BasedAlgebra algebra;
    std::vector<Vec> old_basis; // basis of eAe inside A, per new coordinate
};
TruncationResult idempotent_truncation(const BasedAlgebra& a, const std::vector<int>& idem_subset);

/// Finite inverse system A_0 <- A_1 <- ... <- A_N given by connecting
/// surjections; the desk-scale model of a pseudocompact algebra.
struct AlgebraTower {
    std::vector<AlgebraPtr> levels; // ascending dimension
    std::vector<Mat> maps;          // maps[i] : levels[i+1] -> levels[i]

    int height() const { return static_cast<int>(levels.size()); }
    const AlgebraPtr& top() const { return levels.back(); }

    /// Composite map levels[from] -> levels[to], from >= to.
    Mat composite(int from, int to) const;
    /// Kernel of the composite top -> level k, as a subspace of the top level.
    Subspace kernel_to(int k) const;
};

Report verify_tower(const AlgebraTower& t);

} // namespace qhpc
