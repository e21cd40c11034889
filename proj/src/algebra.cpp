#include "qhpc/algebra.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qhpc {

BasedAlgebra BasedAlgebra::make(Field f, std::vector<std::string> labels, std::vector<int> deg) {
    BasedAlgebra a;
    a.f = f;
    a.labels = std::move(labels);
    a.deg = std::move(deg);
    if (!a.deg.empty() && a.deg.size() != a.labels.size())
        throw std::invalid_argument("BasedAlgebra: degree vector size");
    a.table.assign(a.dim(), std::vector<SparseVec>(a.dim()));
    a.unit = zero_vec(f, a.dim());
    return a;
}

void BasedAlgebra::set_product(int k, int l, SparseVec terms) { table[k][l] = std::move(terms); }

void BasedAlgebra::add_term(int k, int l, int target, const Scalar& c) {
    if (c.is_zero()) return;
    table[k][l].push_back(SparseTerm{target, c});
}

int BasedAlgebra::label_index(const std::string& lab) const {
    for (int i = 0; i < dim(); ++i)
        if (labels[i] == lab) return i;
    return -1;
}

int BasedAlgebra::idem_of_weight(const std::string& w) const {
    for (size_t i = 0; i < idems.size(); ++i)
        if (idems[i].weight == w) return static_cast<int>(i);
    return -1;
}

Vec BasedAlgebra::mul(const Vec& a, const Vec& b) const {
    if (static_cast<int>(a.size()) != dim() || static_cast<int>(b.size()) != dim())
        throw std::invalid_argument("BasedAlgebra::mul: dimension mismatch");
    Vec r = zero_vec(f, dim());
    for (int k = 0; k < dim(); ++k) {
        if (a[k].is_zero()) continue;
        for (int l = 0; l < dim(); ++l) {
            if (b[l].is_zero()) continue;
            Scalar c = a[k] * b[l];
            for (const auto& t : table[k][l]) r[t.idx] = r[t.idx] + c * t.c;
        }
    }
    return r;
}

Mat BasedAlgebra::left_mult(const Vec& a) const {
    Mat m(f, dim(), dim());
    for (int l = 0; l < dim(); ++l) {
        for (int k = 0; k < dim(); ++k) {
            if (a[k].is_zero()) continue;
            for (const auto& t : table[k][l]) m.at(t.idx, l) = m.at(t.idx, l) + a[k] * t.c;
        }
    }
    return m;
}

Mat BasedAlgebra::right_mult(const Vec& a) const {
    Mat m(f, dim(), dim());
    for (int k = 0; k < dim(); ++k) {
        for (int l = 0; l < dim(); ++l) {
            if (a[l].is_zero()) continue;
            for (const auto& t : table[k][l]) m.at(t.idx, k) = m.at(t.idx, k) + a[l] * t.c;
        }
    }
    return m;
}

std::vector<int> BasedAlgebra::generating_set() const {
    // Seed with idempotent supports, then add basis elements until the
    // subalgebra generated (with unit) is everything. The closure grows
    // incrementally: only fresh vectors are multiplied against the
    // generators.
    std::vector<int> gens;
    std::vector<bool> used(dim(), false);
    for (const auto& e : idems)
        for (int i = 0; i < dim(); ++i)
            if (!e.v[i].is_zero() && !used[i]) {
                used[i] = true;
                gens.push_back(i);
            }
    Subspace cur = Subspace::span(f, dim(), {});
    std::vector<Vec> frontier;
    auto absorb = [&](Vec v) {
        Vec red = cur.reduce(v);
        if (is_zero_vec(red)) return;
        cur = space_sum(cur, Subspace::span(f, dim(), {red}));
        frontier.push_back(std::move(red));
    };
    auto close = [&]() {
        while (!frontier.empty()) {
            Vec v = std::move(frontier.back());
            frontier.pop_back();
            for (int g : gens) {
                Vec l = mul(basis_vec(g), v);
                if (!cur.contains(l)) absorb(std::move(l));
                Vec r = mul(v, basis_vec(g));
                if (!cur.contains(r)) absorb(std::move(r));
            }
        }
    };
    absorb(unit);
    for (int g : gens) absorb(basis_vec(g));
    close();
    for (int i = 0; i < dim() && cur.dim() < dim(); ++i) {
        if (used[i] || cur.contains(basis_vec(i))) continue;
        used[i] = true;
        gens.push_back(i);
        absorb(basis_vec(i));
        // fresh generator also multiplies the whole current span
        for (const auto& v : cur.basis) frontier.push_back(v);
        close();
    }
    std::sort(gens.begin(), gens.end());
    return gens;
}

Vec algebra_mul(const BasedAlgebra& a, const Vec& x, const Vec& y) { return a.mul(x, y); }

// ------------------------------------------------------------------ verify

Report verify_algebra(const BasedAlgebra& a) {
    Report rep;
    const int n = a.dim();

    bool unit_ok = true;
    std::string unit_witness;
    for (int k = 0; k < n && unit_ok; ++k) {
        Vec b = a.basis_vec(k);
        if (a.mul(a.unit, b) != b || a.mul(b, a.unit) != b) {
            unit_ok = false;
            unit_witness = "unit fails at basis " + a.labels[k];
        }
    }
    rep.add("unit", "two-sided identity", unit_ok, unit_witness);

    bool assoc_ok = true;
    std::string assoc_witness;
    for (int i = 0; i < n && assoc_ok; ++i) {
        for (int j = 0; j < n && assoc_ok; ++j) {
            for (int k = 0; k < n; ++k) {
                // sparse accumulation of (b_i b_j) b_k minus b_i (b_j b_k)
                std::map<int, Scalar> acc;
                auto bump = [&](int idx, const Scalar& c) {
                    auto it = acc.find(idx);
                    if (it == acc.end())
                        acc.emplace(idx, c);
                    else
                        it->second = it->second + c;
                };
                for (const auto& t : a.table[i][j])
                    for (const auto& u : a.table[t.idx][k]) bump(u.idx, t.c * u.c);
                for (const auto& t : a.table[j][k])
                    for (const auto& u : a.table[i][t.idx]) bump(u.idx, -(t.c * u.c));
                bool zero = true;
                for (const auto& [idx, c] : acc)
                    if (!c.is_zero()) zero = false;
                if (!zero) {
                    assoc_ok = false;
                    assoc_witness = "associativity fails at triple (" + a.labels[i] + "," +
                                    a.labels[j] + "," + a.labels[k] + ")";
                    break;
                }
            }
        }
    }
    rep.add("assoc", "associativity on basis triples", assoc_ok, assoc_witness);

    bool idem_ok = true;
    std::string idem_witness;
    Vec total = zero_vec(a.f, n);
    for (size_t i = 0; i < a.idems.size() && idem_ok; ++i) {
        const Vec& e = a.idems[i].v;
        if (a.mul(e, e) != e) {
            idem_ok = false;
            idem_witness = "idempotent " + a.idems[i].weight + " fails e*e=e";
            break;
        }
        for (size_t j = 0; j < a.idems.size(); ++j) {
            if (i == j) continue;
            if (!is_zero_vec(a.mul(e, a.idems[j].v))) {
                idem_ok = false;
                idem_witness = "idempotents " + a.idems[i].weight + "," + a.idems[j].weight + " not orthogonal";
                break;
            }
        }
        total = add_vec(total, e);
    }
    if (idem_ok && !a.idems.empty() && total != a.unit) {
        idem_ok = false;
        idem_witness = "idempotents do not sum to the unit";
    }
    if (idem_ok) {
        std::set<std::string> ws;
        for (const auto& e : a.idems) ws.insert(e.weight);
        if (ws.size() != a.idems.size()) {
            idem_ok = false;
            idem_witness = "duplicate weight labels";
        }
    }
    rep.add("idem", "orthogonal idempotents summing to 1", idem_ok, idem_witness);

    if (a.graded()) {
        bool grad_ok = true;
        std::string grad_witness;
        for (int k = 0; k < n && grad_ok; ++k)
            for (int l = 0; l < n && grad_ok; ++l)
                for (const auto& t : a.table[k][l])
                    if (a.deg[t.idx] != (a.deg[k] + a.deg[l]) % 2) {
                        grad_ok = false;
                        grad_witness = "product " + a.labels[k] + "*" + a.labels[l] +
                                       " not degree-additive at " + a.labels[t.idx];
                        break;
                    }
        for (int k = 0; k < n && grad_ok; ++k)
            if (a.deg[k] == 1 && !a.unit[k].is_zero()) {
                grad_ok = false;
                grad_witness = "unit has odd component";
            }
        rep.add("grading", "multiplication degree-additive mod 2", grad_ok, grad_witness);
    }
    return rep;
}

// ------------------------------------------------------------------ ideals

bool is_two_sided_ideal(const BasedAlgebra& a, const Subspace& s, std::string* witness) {
    // fast path: a span of plain coordinate vectors is an ideal iff every
    // one-sided product of a member coordinate has support inside the span
    {
        bool coords_only = true;
        std::vector<bool> inside(a.dim(), false);
        for (const auto& v : s.basis) {
            int support = -1;
            for (int i = 0; i < a.dim() && coords_only; ++i)
                if (!v[i].is_zero()) {
                    if (support >= 0 || !v[i].is_one()) coords_only = false;
                    support = i;
                }
            if (support >= 0) inside[support] = true;
        }
        if (coords_only) {
            for (int j = 0; j < a.dim(); ++j) {
                if (!inside[j]) continue;
                for (int k = 0; k < a.dim(); ++k) {
                    for (const auto& t : a.table[k][j])
                        if (!inside[t.idx] && !t.c.is_zero()) {
                            if (witness)
                                *witness = "left multiple by " + a.labels[k] + " escapes span";
                            return false;
                        }
                    for (const auto& t : a.table[j][k])
                        if (!inside[t.idx] && !t.c.is_zero()) {
                            if (witness)
                                *witness = "right multiple by " + a.labels[k] + " escapes span";
                            return false;
                        }
                }
            }
            return true;
        }
    }
    for (const auto& v : s.basis)
        for (int k = 0; k < a.dim(); ++k) {
            if (!s.contains(a.mul(a.basis_vec(k), v))) {
                if (witness) *witness = "left multiple by " + a.labels[k] + " escapes span";
                return false;
            }
            if (!s.contains(a.mul(v, a.basis_vec(k)))) {
                if (witness) *witness = "right multiple by " + a.labels[k] + " escapes span";
                return false;
            }
        }
    return true;
}

Subspace two_sided_closure(const BasedAlgebra& a, const std::vector<Vec>& seeds) {
    Subspace s = Subspace::span(a.f, a.dim(), seeds);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Vec> prods;
        for (const auto& v : s.basis)
            for (int k = 0; k < a.dim(); ++k) {
                Vec lv = a.mul(a.basis_vec(k), v);
                Vec rv = a.mul(v, a.basis_vec(k));
                if (!s.contains(lv)) prods.push_back(std::move(lv));
                if (!s.contains(rv)) prods.push_back(std::move(rv));
            }
        if (!prods.empty()) {
            s = space_sum(s, Subspace::span(a.f, a.dim(), prods));
            grew = true;
        }
    }
    return s;
}

std::optional<int> nilpotency_index(const BasedAlgebra& a, const Subspace& s) {
    if (s.dim() == 0) return 0;
    Subspace power = s;
    for (int m = 1; m <= a.dim() + 1; ++m) {
        if (power.dim() == 0) return m;
        std::vector<Vec> next;
        for (const auto& u : power.basis)
            for (const auto& v : s.basis) next.push_back(a.mul(u, v));
        power = Subspace::span(a.f, a.dim(), next);
    }
    return std::nullopt;
}

// ------------------------------------------------------------------ radical

namespace {

// coefficient of lambda^{n-m} in det(lambda I - z), i.e. +- e_m of eigenvalues
Scalar charpoly_coeff(const Mat& z, int m) {
    auto cp = char_poly(z);
    return cp[z.rows - m];
}

Subspace radical_fp(const BasedAlgebra& a) {
    // Iterated p-power trace refinement on the left regular representation.
    const int n = a.dim();
    const std::int64_t p = a.f.p;
    Subspace cur = Subspace::full(a.f, n);
    std::int64_t pk = 1;
    while (pk <= n) {
        const int d = cur.dim();
        if (d == 0) break;
        std::vector<Mat> curL(d);
        for (int i = 0; i < d; ++i) curL[i] = a.left_mult(cur.basis[i]);
        // constraint matrix: rows indexed by h, columns by u, both over cur
        Mat cons(a.f, d, d);
        const int mcoef = static_cast<int>(pk);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (d > 8)
#endif
        for (int h = 0; h < d; ++h)
            for (int u = 0; u < d; ++u)
                cons.at(h, u) = charpoly_coeff(serial::mat_mul(curL[u], curL[h]), mcoef);
        std::vector<Vec> ker = kernel_basis(cons);
        std::vector<Vec> newbasis;
        for (const auto& kv : ker) {
            Vec v = zero_vec(a.f, n);
            for (int i = 0; i < d; ++i)
                if (!kv[i].is_zero()) v = add_vec(v, scale_vec(kv[i], cur.basis[i]));
            newbasis.push_back(std::move(v));
        }
        cur = Subspace::span(a.f, n, newbasis);
        pk *= p;
    }
    return cur;
}

Subspace radical_char0(const BasedAlgebra& a) {
    const int n = a.dim();
    std::vector<Mat> lmats;
    for (int k = 0; k < n; ++k) lmats.push_back(a.left_mult(a.basis_vec(k)));
    Mat gram(a.f, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gram.at(i, j) = trace(serial::mat_mul(lmats[i], lmats[j]));
    return Subspace::span(a.f, n, kernel_basis(gram));
}

} // namespace

IdealSpan radical(const BasedAlgebra& a, AlgebraPtr self) {
    Subspace rad;
    if (a.has_radical_hint) {
        rad = Subspace::span(a.f, a.dim(), a.radical_hint);
        std::string w;
        if (!is_two_sided_ideal(a, rad, &w))
            throw std::runtime_error("radical: designated radical basis is not an ideal: " + w);
    } else if (a.f.is_fp()) {
        rad = radical_fp(a);
    } else {
        rad = radical_char0(a);
    }
    if (!nilpotency_index(a, rad).has_value())
        throw std::runtime_error("radical: computed span is not nilpotent");
    return IdealSpan{self, rad};
}

const Subspace& radical_span_cached(const AlgebraPtr& a) {
    static std::mutex mu;
    static std::map<const BasedAlgebra*, std::pair<std::weak_ptr<const BasedAlgebra>, Subspace>> memo;
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(a.get());
    if (it != memo.end()) {
        auto locked = it->second.first.lock();
        if (locked == a) return it->second.second;
    }
    Subspace rad = radical(*a).span;
    auto& slot = memo[a.get()];
    slot.first = a;
    slot.second = std::move(rad);
    return slot.second;
}

bool is_split_basic(const BasedAlgebra& a, const IdealSpan& rad, std::string* why) {
    if (a.idems.empty()) {
        if (why) *why = "no declared idempotents";
        return false;
    }
    if (a.dim() - rad.span.dim() != static_cast<int>(a.idems.size())) {
        if (why) *why = "dim A/rad != number of idempotents";
        return false;
    }
    return true;
}

IdealSpan heredity_ideal(const BasedAlgebra& a, const std::set<std::string>& gamma, AlgebraPtr self) {
    for (const auto& w : gamma)
        if (a.idem_of_weight(w) < 0) throw std::invalid_argument("heredity_ideal: unknown weight " + w);
    std::vector<Vec> seeds;
    for (const auto& e : a.idems) {
        if (gamma.count(e.weight)) continue;
        seeds.push_back(e.v);
    }
    return IdealSpan{self, two_sided_closure(a, seeds)};
}

// ------------------------------------------------------------------ quotient

QuotientResult quotient_algebra(const BasedAlgebra& a, const Subspace& ideal) {
    const int n = a.dim();
    std::vector<bool> is_pivot(n, false);
    for (int c : ideal.pivots) is_pivot[c] = true;
    std::vector<int> keep;
    for (int i = 0; i < n; ++i)
        if (!is_pivot[i]) keep.push_back(i);
    const int m = static_cast<int>(keep.size());

    std::vector<int> pos(n, -1);
    for (int i = 0; i < m; ++i) pos[keep[i]] = i;

    auto project = [&](const Vec& v) {
        Vec red = ideal.reduce(v);
        Vec out = zero_vec(a.f, m);
        for (int i = 0; i < n; ++i)
            if (!red[i].is_zero()) out[pos[i]] = red[i];
        return out;
    };

    std::vector<std::string> labels;
    std::vector<int> deg;
    bool keep_grading = a.graded();
    if (keep_grading)
        for (const auto& v : ideal.basis) {
            int d = -1;
            for (int i = 0; i < n; ++i)
                if (!v[i].is_zero()) {
                    if (d < 0) d = a.deg[i];
                    else if (d != a.deg[i]) keep_grading = false;
                }
        }
    for (int i : keep) {
        labels.push_back(a.labels[i]);
        if (keep_grading) deg.push_back(a.deg[i]);
    }
    BasedAlgebra q = BasedAlgebra::make(a.f, labels, keep_grading ? deg : std::vector<int>{});
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
            const SparseVec& raw = a.table[keep[k]][keep[l]];
            if (raw.empty()) continue;
            Vec prod = zero_vec(a.f, n);
            for (const auto& t : raw) prod[t.idx] = prod[t.idx] + t.c;
            prod = project(prod);
            SparseVec terms;
            for (int i = 0; i < m; ++i)
                if (!prod[i].is_zero()) terms.push_back(SparseTerm{i, prod[i]});
            q.set_product(k, l, std::move(terms));
        }
    q.unit = project(a.unit);
    for (const auto& e : a.idems) {
        Vec ev = project(e.v);
        if (is_zero_vec(ev)) continue;
        if (q.mul(ev, ev) != ev) continue; // idempotent partially killed; drop it
        q.idems.push_back(BasedAlgebra::Idem{ev, e.weight});
    }
    if (a.has_radical_hint) {
        std::vector<Vec> rh;
        for (const auto& v : a.radical_hint) {
            Vec pv = project(v);
            if (!is_zero_vec(pv)) rh.push_back(pv);
        }
        Subspace s = Subspace::span(a.f, m, rh);
        q.radical_hint = s.basis;
        q.has_radical_hint = true;
    }

    Mat proj(a.f, m, n);
    for (int j = 0; j < n; ++j) {
        Vec pj = project(a.basis_vec(j));
        for (int i = 0; i < m; ++i) proj.at(i, j) = pj[i];
    }
    return QuotientResult{std::move(q), std::move(proj)};
}

// ------------------------------------------------------------------ opposite / double

BasedAlgebra opposite(const BasedAlgebra& a) {
    BasedAlgebra op = BasedAlgebra::make(a.f, a.labels, a.deg);
    for (int k = 0; k < a.dim(); ++k)
        for (int l = 0; l < a.dim(); ++l) {
            SparseVec terms = a.table[l][k];
            if (a.graded() && a.deg[k] == 1 && a.deg[l] == 1)
                for (auto& t : terms) t.c = -t.c;
            op.set_product(k, l, std::move(terms));
        }
    op.unit = a.unit;
    op.idems = a.idems;
    op.radical_hint = a.radical_hint;
    op.has_radical_hint = a.has_radical_hint;
    return op;
}

BasedAlgebra super_double(const BasedAlgebra& a) {
    if (!a.graded()) throw std::invalid_argument("super_double: input must be graded");
    const int n = a.dim();
    std::vector<std::string> labels;
    for (int k = 0; k < n; ++k) {
        labels.push_back(a.labels[k] + "|0");
        labels.push_back(a.labels[k] + "|1");
    }
    BasedAlgebra d = BasedAlgebra::make(a.f, labels);
    auto idx = [&](int k, int eps) { return 2 * k + eps; };
    for (int k = 0; k < n; ++k)
        for (int eps = 0; eps < 2; ++eps)
            for (int l = 0; l < n; ++l)
                for (int mu = 0; mu < 2; ++mu) {
                    if (eps != (mu + a.deg[l]) % 2) continue;
                    SparseVec terms;
                    for (const auto& t : a.table[k][l]) terms.push_back(SparseTerm{idx(t.idx, mu), t.c});
                    d.set_product(idx(k, eps), idx(l, mu), std::move(terms));
                }
    d.unit = zero_vec(a.f, 2 * n);
    for (int k = 0; k < n; ++k)
        for (int eps = 0; eps < 2; ++eps) d.unit[idx(k, eps)] = a.unit[k];
    for (const auto& e : a.idems)
        for (int eps = 0; eps < 2; ++eps) {
            Vec v = zero_vec(a.f, 2 * n);
            for (int k = 0; k < n; ++k) v[idx(k, eps)] = e.v[k];
            d.idems.push_back(BasedAlgebra::Idem{std::move(v), e.weight + "^" + std::to_string(eps)});
        }
    if (a.has_radical_hint) {
        for (const auto& rv : a.radical_hint)
            for (int eps = 0; eps < 2; ++eps) {
                Vec v = zero_vec(a.f, 2 * n);
                for (int k = 0; k < n; ++k) v[idx(k, eps)] = rv[k];
                d.radical_hint.push_back(std::move(v));
            }
        d.has_radical_hint = true;
    }
    return d;
}

TruncationResult idempotent_truncation(const BasedAlgebra& a, const std::vector<int>& idem_subset) {
    Vec e = zero_vec(a.f, a.dim());
    for (int i : idem_subset) e = add_vec(e, a.idems[i].v);
    std::vector<Vec> gens;
    for (int k = 0; k < a.dim(); ++k) {
        Vec v = a.mul(e, a.mul(a.basis_vec(k), e));
        if (!is_zero_vec(v)) gens.push_back(std::move(v));
    }
    Subspace s = Subspace::span(a.f, a.dim(), gens);
    const int m = s.dim();
    std::vector<std::string> labels(m);
    bool graded = a.graded();
    std::vector<int> deg;
    if (graded)
        for (int i = 0; i < m; ++i) {
            int d = -1;
            for (int j = 0; j < a.dim(); ++j)
                if (!s.basis[i][j].is_zero()) {
                    if (d < 0) d = a.deg[j];
                    else if (d != a.deg[j]) graded = false;
                }
            deg.push_back(d < 0 ? 0 : d);
        }
    for (int i = 0; i < m; ++i) {
        labels[i] = "t" + std::to_string(i);
        int support = -1;
        bool simple = true;
        for (int j = 0; j < a.dim(); ++j)
            if (!s.basis[i][j].is_zero()) {
                if (support >= 0) simple = false;
                support = j;
            }
        if (simple && support >= 0 && s.basis[i][support].is_one()) labels[i] = a.labels[support];
    }
    BasedAlgebra t = BasedAlgebra::make(a.f, labels, graded ? deg : std::vector<int>{});
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
            Vec prod = a.mul(s.basis[k], s.basis[l]);
            auto coords = s.coords(prod);
            if (!coords) throw std::runtime_error("idempotent_truncation: product escapes span");
            SparseVec terms;
            for (int i = 0; i < m; ++i)
                if (!(*coords)[i].is_zero()) terms.push_back(SparseTerm{i, (*coords)[i]});
            t.set_product(k, l, std::move(terms));
        }
    auto ecoords = s.coords(e);
    if (!ecoords) throw std::runtime_error("idempotent_truncation: unit escapes span");
    t.unit = *ecoords;
    for (int i : idem_subset) {
        auto c = s.coords(a.idems[i].v);
        if (!c) throw std::runtime_error("idempotent_truncation: idempotent escapes span");
        t.idems.push_back(BasedAlgebra::Idem{*c, a.idems[i].weight});
    }
    return TruncationResult{std::move(t), s.basis};
}

// ------------------------------------------------------------------ towers

Mat AlgebraTower::composite(int from, int to) const {
    Mat m = Mat::identity(levels[from]->f, levels[from]->dim());
    for (int i = from - 1; i >= to; --i) m = mat_mul(maps[i], m);
    return m;
}

Subspace AlgebraTower::kernel_to(int k) const {
    Mat m = composite(height() - 1, k);
    return Subspace::span(top()->f, top()->dim(), kernel_basis(m));
}

Report verify_tower(const AlgebraTower& t) {
    Report rep;
    if (t.levels.empty()) {
        rep.add("shape", "tower levels present", false, "empty tower");
        return rep;
    }
    bool ok_maps = true;
    std::string w;
    for (size_t i = 0; i + 1 < t.levels.size(); ++i) {
        const BasedAlgebra& src = *t.levels[i + 1];
        const BasedAlgebra& dst = *t.levels[i];
        const Mat& phi = t.maps[i];
        if (phi.rows != dst.dim() || phi.cols != src.dim()) {
            ok_maps = false;
            w = "map " + std::to_string(i) + " has wrong shape";
            break;
        }
        if (rank(phi) != dst.dim()) {
            ok_maps = false;
            w = "map " + std::to_string(i) + " not surjective";
            break;
        }
        if (mat_apply(phi, src.unit) != dst.unit) {
            ok_maps = false;
            w = "map " + std::to_string(i) + " does not preserve the unit";
            break;
        }
        for (int k = 0; k < src.dim() && ok_maps; ++k)
            for (int l = 0; l < src.dim(); ++l) {
                Vec lhs = mat_apply(phi, src.mul(src.basis_vec(k), src.basis_vec(l)));
                Vec rhs = dst.mul(mat_apply(phi, src.basis_vec(k)), mat_apply(phi, src.basis_vec(l)));
                if (lhs != rhs) {
                    ok_maps = false;
                    w = "map " + std::to_string(i) + " not multiplicative at (" + src.labels[k] + "," +
                        src.labels[l] + ")";
                    break;
                }
            }
        if (!ok_maps) break;
    }
    rep.add("maps", "connecting maps are surjective unit-preserving algebra maps", ok_maps, w);

    bool ok_idems = true;
    std::string wi;
    for (size_t i = 0; i + 1 < t.levels.size() && ok_idems; ++i) {
        const BasedAlgebra& src = *t.levels[i + 1];
        const BasedAlgebra& dst = *t.levels[i];
        for (const auto& ed : dst.idems) {
            int j = src.idem_of_weight(ed.weight);
            if (j < 0) {
                ok_idems = false;
                wi = "weight " + ed.weight + " missing at level " + std::to_string(i + 1);
                break;
            }
            if (mat_apply(t.maps[i], src.idems[j].v) != ed.v) {
                ok_idems = false;
                wi = "idempotent " + ed.weight + " not compatible with map " + std::to_string(i);
                break;
            }
        }
    }
    rep.add("labels", "idempotent and weight labels compatible across levels", ok_idems, wi);
    return rep;
}

} // namespace qhpc
