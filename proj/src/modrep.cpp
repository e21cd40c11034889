#include "qhpc/modrep.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace qhpc {

// memoized generating sets, keyed by algebra identity
const std::vector<int>& cached_generating_set(const AlgebraPtr& a) {
    static std::mutex mu;
    static std::map<const BasedAlgebra*, std::pair<std::weak_ptr<const BasedAlgebra>, std::vector<int>>> memo;
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(a.get());
    if (it != memo.end()) {
        auto locked = it->second.first.lock();
        if (locked == a) return it->second.second;
    }
    auto gens = a->gens_hint.empty() ? a->generating_set() : a->gens_hint;
    auto& slot = memo[a.get()];
    slot.first = a;
    slot.second = std::move(gens);
    return slot.second;
}

namespace {

const std::vector<int>& cached_gens(const AlgebraPtr& a) { return cached_generating_set(a); }

struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
};

Scalar random_scalar(Field f, Rng& rng) {
    if (f.is_fp()) return Scalar(f, static_cast<std::int64_t>(rng.next() % static_cast<std::uint64_t>(f.p)));
    return Scalar(f, static_cast<std::int64_t>(rng.next() % 7) - 3);
}

Vec vectorize(const Mat& m) {
    Vec v;
    v.reserve(m.a.size());
    for (const auto& x : m.a) v.push_back(x);
    return v;
}

Mat unvectorize(const Vec& v, Field f, int rows, int cols) {
    Mat m(f, rows, cols);
    for (size_t i = 0; i < v.size(); ++i) m.a[i] = v[i];
    return m;
}

} // namespace

Mat ModRep::act_vec(const Vec& a) const {
    Mat m(alg->f, d, d);
    for (size_t k = 0; k < a.size(); ++k) {
        if (a[k].is_zero()) continue;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (!act[k].at(i, j).is_zero()) m.at(i, j) = m.at(i, j) + a[k] * act[k].at(i, j);
    }
    return m;
}

ModPtr make_module(AlgebraPtr alg, Side side, std::vector<Mat> act, std::vector<int> zdeg) {
    auto m = std::make_shared<ModRep>();
    m->alg = std::move(alg);
    m->side = side;
    m->act = std::move(act);
    m->d = m->act.empty() ? 0 : m->act[0].rows;
    m->zdeg = std::move(zdeg);
    return m;
}

Report verify_module(const ModRep& m) {
    Report rep;
    const BasedAlgebra& a = *m.alg;
    bool unit_ok = m.act_vec(a.unit) == Mat::identity(a.f, m.d);
    rep.add("unit", "unit acts as identity", unit_ok);

    bool mult_ok = true;
    std::string w;
    for (int k = 0; k < a.dim() && mult_ok; ++k)
        for (int l = 0; l < a.dim(); ++l) {
            Vec prod = a.mul(a.basis_vec(k), a.basis_vec(l));
            Mat lhs = m.act_vec(prod);
            Mat rhs = m.side == Side::Left ? mat_mul(m.act[k], m.act[l]) : mat_mul(m.act[l], m.act[k]);
            if (!(lhs == rhs)) {
                mult_ok = false;
                w = "action incompatible at (" + a.labels[k] + "," + a.labels[l] + ")";
                break;
            }
        }
    rep.add("action", "action respects structure constants", mult_ok, w);

    if (m.graded() && a.graded()) {
        bool g_ok = true;
        std::string gw;
        for (int k = 0; k < a.dim() && g_ok; ++k)
            for (int i = 0; i < m.d && g_ok; ++i)
                for (int j = 0; j < m.d; ++j)
                    if (!m.act[k].at(i, j).is_zero() && m.zdeg[i] != (m.zdeg[j] + a.deg[k]) % 2) {
                        g_ok = false;
                        gw = "action of " + a.labels[k] + " not homogeneous";
                        break;
                    }
        rep.add("grading", "action matrices degree-homogeneous", g_ok, gw);
    }
    return rep;
}

ModPtr regular_module(AlgebraPtr a, Side side) {
    std::vector<Mat> act;
    act.reserve(a->dim());
    for (int k = 0; k < a->dim(); ++k)
        act.push_back(side == Side::Left ? a->left_mult(a->basis_vec(k)) : a->right_mult(a->basis_vec(k)));
    std::vector<int> zdeg;
    if (a->graded()) zdeg = a->deg;
    return make_module(std::move(a), side, std::move(act), std::move(zdeg));
}

ProjectiveModule projective_indec(AlgebraPtr a, const std::string& weight, Side side) {
    int iw = a->idem_of_weight(weight);
    if (iw < 0) throw std::invalid_argument("projective_indec: unknown weight " + weight);
    const Vec& e = a->idems[iw].v;
    // left: A e  (image of x -> x e); right: e A (image of x -> e x)
    Mat meat = side == Side::Left ? a->right_mult(e) : a->left_mult(e);
    Subspace s = image_of(meat, Subspace::full(a->f, a->dim()));
    std::vector<Mat> act;
    for (int k = 0; k < a->dim(); ++k) {
        Mat big = side == Side::Left ? a->left_mult(a->basis_vec(k)) : a->right_mult(a->basis_vec(k));
        Mat small(a->f, s.dim(), s.dim());
        for (int j = 0; j < s.dim(); ++j) {
            Vec img = mat_apply(big, s.basis[j]);
            auto c = s.coords(img);
            if (!c) throw std::runtime_error("projective_indec: span not closed under action");
            for (int i = 0; i < s.dim(); ++i) small.at(i, j) = (*c)[i];
        }
        act.push_back(std::move(small));
    }
    std::vector<int> zdeg;
    if (a->graded()) {
        for (const auto& bv : s.basis) {
            int dg = -1;
            for (int i = 0; i < a->dim(); ++i)
                if (!bv[i].is_zero()) {
                    if (dg < 0) dg = a->deg[i];
                    else if (dg != a->deg[i]) { zdeg.clear(); dg = -2; break; }
                }
            if (dg == -2) break;
            zdeg.push_back(dg < 0 ? 0 : dg);
        }
        if (static_cast<int>(zdeg.size()) != s.dim()) zdeg.clear();
    }
    ProjectiveModule out;
    out.basis = s.basis;
    auto gen = s.coords(e);
    if (!gen) throw std::runtime_error("projective_indec: idempotent outside its own projective");
    out.generator = *gen;
    out.mod = make_module(std::move(a), side, std::move(act), std::move(zdeg));
    return out;
}

// ------------------------------------------------------------------ spans

Subspace submodule_closure(const ModRep& m, const std::vector<Vec>& seeds) {
    Subspace s = Subspace::span(m.alg->f, m.d, seeds);
    const auto& gens = cached_gens(m.alg);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Vec> next;
        for (const auto& v : s.basis)
            for (int g : gens) {
                Vec img = mat_apply(m.act[g], v);
                if (!s.contains(img)) next.push_back(std::move(img));
            }
        if (!next.empty()) {
            s = space_sum(s, Subspace::span(m.alg->f, m.d, next));
            grew = true;
        }
    }
    return s;
}

bool is_submodule(const ModRep& m, const Subspace& s) {
    for (const auto& v : s.basis)
        for (int k = 0; k < m.alg->dim(); ++k)
            if (!s.contains(mat_apply(m.act[k], v))) return false;
    return true;
}

SubquotientModule sub_module(const ModRep& m, const Subspace& s) {
    std::vector<Mat> act;
    for (int k = 0; k < m.alg->dim(); ++k) {
        Mat small(m.alg->f, s.dim(), s.dim());
        for (int j = 0; j < s.dim(); ++j) {
            Vec img = mat_apply(m.act[k], s.basis[j]);
            auto c = s.coords(img);
            if (!c) throw std::invalid_argument("sub_module: span not action-closed");
            for (int i = 0; i < s.dim(); ++i) small.at(i, j) = (*c)[i];
        }
        act.push_back(std::move(small));
    }
    Mat incl = Mat::from_cols(m.alg->f, s.basis, m.d);
    return SubquotientModule{make_module(m.alg, m.side, std::move(act)), std::move(incl)};
}

SubquotientModule quotient_module(const ModRep& m, const Subspace& s) {
    const int n = m.d;
    std::vector<bool> is_pivot(n, false);
    for (int c : s.pivots) is_pivot[c] = true;
    std::vector<int> keep;
    for (int i = 0; i < n; ++i)
        if (!is_pivot[i]) keep.push_back(i);
    const int q = static_cast<int>(keep.size());
    std::vector<int> pos(n, -1);
    for (int i = 0; i < q; ++i) pos[keep[i]] = i;
    auto project = [&](const Vec& v) {
        Vec red = s.reduce(v);
        Vec out = zero_vec(m.alg->f, q);
        for (int i = 0; i < n; ++i)
            if (!red[i].is_zero()) out[pos[i]] = red[i];
        return out;
    };
    std::vector<Mat> act;
    for (int k = 0; k < m.alg->dim(); ++k) {
        Mat small(m.alg->f, q, q);
        for (int j = 0; j < q; ++j) {
            Vec img = project(mat_apply(m.act[k], unit_vec(m.alg->f, n, keep[j])));
            for (int i = 0; i < q; ++i) small.at(i, j) = img[i];
        }
        act.push_back(std::move(small));
    }
    Mat proj(m.alg->f, q, n);
    for (int j = 0; j < n; ++j) {
        Vec pj = project(unit_vec(m.alg->f, n, j));
        for (int i = 0; i < q; ++i) proj.at(i, j) = pj[i];
    }
    return SubquotientModule{make_module(m.alg, m.side, std::move(act)), std::move(proj)};
}

DirectSumModule direct_sum(const ModRep& a, const ModRep& b) {
    if (a.side != b.side || a.alg != b.alg) throw std::invalid_argument("direct_sum: mismatched modules");
    const Field f = a.alg->f;
    std::vector<Mat> act;
    for (int k = 0; k < a.alg->dim(); ++k) {
        Mat m(f, a.d + b.d, a.d + b.d);
        for (int i = 0; i < a.d; ++i)
            for (int j = 0; j < a.d; ++j) m.at(i, j) = a.act[k].at(i, j);
        for (int i = 0; i < b.d; ++i)
            for (int j = 0; j < b.d; ++j) m.at(a.d + i, a.d + j) = b.act[k].at(i, j);
        act.push_back(std::move(m));
    }
    DirectSumModule out;
    out.mod = make_module(a.alg, a.side, std::move(act));
    out.incl1 = Mat(f, a.d + b.d, a.d);
    out.incl2 = Mat(f, a.d + b.d, b.d);
    out.proj1 = Mat(f, a.d, a.d + b.d);
    out.proj2 = Mat(f, b.d, a.d + b.d);
    for (int i = 0; i < a.d; ++i) {
        out.incl1.at(i, i) = Scalar::one(f);
        out.proj1.at(i, i) = Scalar::one(f);
    }
    for (int i = 0; i < b.d; ++i) {
        out.incl2.at(a.d + i, i) = Scalar::one(f);
        out.proj2.at(i, a.d + i) = Scalar::one(f);
    }
    return out;
}

Subspace weight_space(const ModRep& m, int idem_index) {
    return image_of(m.act_vec(m.alg->idems[idem_index].v), Subspace::full(m.alg->f, m.d));
}

Subspace radical_submodule(const ModRep& m, const Subspace& rad_a) {
    std::vector<Vec> vecs;
    for (const auto& r : rad_a.basis) {
        Mat rm = m.act_vec(r);
        for (int j = 0; j < m.d; ++j) vecs.push_back(rm.col(j));
    }
    return Subspace::span(m.alg->f, m.d, vecs);
}

Subspace socle_submodule(const ModRep& m, const Subspace& rad_a) {
    std::vector<Vec> rows;
    for (const auto& r : rad_a.basis) {
        Mat rm = m.act_vec(r);
        for (int i = 0; i < rm.rows; ++i) rows.push_back(rm.row(i));
    }
    if (rows.empty()) return Subspace::full(m.alg->f, m.d);
    Mat sys = Mat::from_rows(m.alg->f, rows, m.d);
    return Subspace::span(m.alg->f, m.d, kernel_basis(sys));
}

std::vector<Subspace> radical_series(const ModRep& m) {
    const Subspace& rad_a = radical_span_cached(m.alg);
    std::vector<Subspace> chain{Subspace::full(m.alg->f, m.d)};
    while (chain.back().dim() > 0) {
        SubquotientModule cur = sub_module(m, chain.back());
        Subspace next_in_cur = radical_submodule(*cur.mod, rad_a);
        std::vector<Vec> lifted;
        for (const auto& v : next_in_cur.basis) lifted.push_back(mat_apply(cur.map, v));
        Subspace next = Subspace::span(m.alg->f, m.d, lifted);
        if (next.dim() == chain.back().dim()) break; // stationary: not nilpotent action
        chain.push_back(next);
    }
    return chain;
}

std::vector<Subspace> socle_series(const ModRep& m) {
    const Subspace& rad_a = radical_span_cached(m.alg);
    std::vector<Subspace> chain{Subspace::span(m.alg->f, m.d, {})};
    while (chain.back().dim() < m.d) {
        SubquotientModule q = quotient_module(m, chain.back());
        Subspace soc_q = socle_submodule(*q.mod, rad_a);
        // preimage of soc(M/prev): previous layer plus lifts of the socle basis
        std::vector<Vec> gens = chain.back().basis;
        for (const auto& v : soc_q.basis) {
            auto x = solve(q.map, v);
            if (!x) throw std::runtime_error("socle_series: projection not surjective");
            gens.push_back(*x);
        }
        Subspace next = Subspace::span(m.alg->f, m.d, gens);
        if (next.dim() == chain.back().dim()) break;
        chain.push_back(next);
    }
    return chain;
}

int multiplicity(const ModRep& m, const std::string& weight) {
    int iw = m.alg->idem_of_weight(weight);
    if (iw < 0) throw std::invalid_argument("multiplicity: unknown weight " + weight);
    return weight_space(m, iw).dim();
}

// ------------------------------------------------------------------ hom

namespace {

struct WeightAdapted {
    std::vector<int> block_of;    // weight block of each adapted coordinate
    std::vector<int> block_size;  // per idempotent
    std::vector<int> block_start; // per idempotent
    Mat P;                        // adapted basis as columns
    Mat Pinv;
};

std::optional<WeightAdapted> weight_adapt(const ModRep& m) {
    const Field f = m.alg->f;
    WeightAdapted wa;
    std::vector<Vec> cols;
    int total = 0;
    for (size_t w = 0; w < m.alg->idems.size(); ++w) {
        Subspace s = weight_space(m, static_cast<int>(w));
        wa.block_start.push_back(total);
        wa.block_size.push_back(s.dim());
        for (const auto& v : s.basis) {
            cols.push_back(v);
            wa.block_of.push_back(static_cast<int>(w));
        }
        total += s.dim();
    }
    if (total != m.d) return std::nullopt;
    wa.P = Mat::from_cols(f, cols, m.d);
    // invert P via rref of [P | I]
    Mat aug(f, m.d, 2 * m.d);
    for (int i = 0; i < m.d; ++i) {
        for (int j = 0; j < m.d; ++j) aug.at(i, j) = wa.P.at(i, j);
        aug.at(i, m.d + i) = Scalar::one(f);
    }
    RrefResult rr = rref(aug);
    if (static_cast<int>(rr.pivots.size()) != m.d || rr.pivots[m.d - 1] != m.d - 1) return std::nullopt;
    wa.Pinv = Mat(f, m.d, m.d);
    for (int i = 0; i < m.d; ++i)
        for (int j = 0; j < m.d; ++j) wa.Pinv.at(i, j) = rr.r.at(i, m.d + j);
    return wa;
}

std::vector<Mat> hom_space_naive(const ModRep& m, const ModRep& n) {
    const Field f = m.alg->f;
    const auto& gens = cached_gens(m.alg);
    const int un = n.d * m.d;
    std::vector<Vec> rows;
    for (int g : gens) {
        // H rho_M(g) - rho_N(g) H = 0
        for (int i = 0; i < n.d; ++i)
            for (int j = 0; j < m.d; ++j) {
                Vec row = zero_vec(f, un);
                for (int k = 0; k < m.d; ++k) row[i * m.d + k] = row[i * m.d + k] + m.act[g].at(k, j);
                for (int k = 0; k < n.d; ++k) row[k * m.d + j] = row[k * m.d + j] - n.act[g].at(i, k);
                rows.push_back(std::move(row));
            }
    }
    std::vector<Mat> out;
    if (rows.empty()) {
        for (int i = 0; i < un; ++i) out.push_back(unvectorize(unit_vec(f, un, i), f, n.d, m.d));
        return out;
    }
    Mat sys = Mat::from_rows(f, rows, un);
    for (const auto& k : kernel_basis(sys)) out.push_back(unvectorize(k, f, n.d, m.d));
    return out;
}

} // namespace

std::vector<Mat> hom_space(const ModRep& m, const ModRep& n) {
    if (m.alg != n.alg || m.side != n.side) throw std::invalid_argument("hom_space: module mismatch");
    const Field f = m.alg->f;
    if (m.d == 0 || n.d == 0) return {};
    auto wam = weight_adapt(m);
    auto wan = weight_adapt(n);
    if (!wam || !wan) return hom_space_naive(m, n);

    const int nblocks = static_cast<int>(m.alg->idems.size());
    std::vector<int> uoff(nblocks + 1, 0);
    for (int w = 0; w < nblocks; ++w)
        uoff[w + 1] = uoff[w] + wan->block_size[w] * wam->block_size[w];
    const int un = uoff[nblocks];
    if (un == 0) return {};

    const auto& gens = cached_gens(m.alg);
    std::vector<Vec> rows;
    for (int g : gens) {
        Mat am = mat_mul(wam->Pinv, mat_mul(m.act[g], wam->P));
        Mat an = mat_mul(wan->Pinv, mat_mul(n.act[g], wan->P));
        for (int mu = 0; mu < nblocks; ++mu)
            for (int la = 0; la < nblocks; ++la) {
                const int dn_mu = wan->block_size[mu], dm_mu = wam->block_size[mu];
                const int dn_la = wan->block_size[la], dm_la = wam->block_size[la];
                if (dm_la == 0 || dn_mu == 0) continue;
                // H_mu AM_{mu,la} = AN_{mu,la} H_la  restricted to blocks
                bool am_zero = true, an_zero = true;
                for (int i = 0; i < dm_mu && am_zero; ++i)
                    for (int j = 0; j < dm_la; ++j)
                        if (!am.at(wam->block_start[mu] + i, wam->block_start[la] + j).is_zero()) {
                            am_zero = false;
                            break;
                        }
                for (int i = 0; i < dn_mu && an_zero; ++i)
                    for (int j = 0; j < dn_la; ++j)
                        if (!an.at(wan->block_start[mu] + i, wan->block_start[la] + j).is_zero()) {
                            an_zero = false;
                            break;
                        }
                if (am_zero && an_zero) continue;
                for (int i = 0; i < dn_mu; ++i)
                    for (int j = 0; j < dm_la; ++j) {
                        Vec row = zero_vec(f, un);
                        if (dm_mu > 0)
                            for (int k = 0; k < dm_mu; ++k)
                                row[uoff[mu] + i * dm_mu + k] =
                                    row[uoff[mu] + i * dm_mu + k] +
                                    am.at(wam->block_start[mu] + k, wam->block_start[la] + j);
                        if (dn_la > 0)
                            for (int k = 0; k < dn_la; ++k)
                                row[uoff[la] + k * dm_la + j] =
                                    row[uoff[la] + k * dm_la + j] -
                                    an.at(wan->block_start[mu] + i, wan->block_start[la] + k);
                        if (!is_zero_vec(row)) rows.push_back(std::move(row));
                    }
            }
    }
    std::vector<Vec> sols;
    if (rows.empty()) {
        for (int i = 0; i < un; ++i) sols.push_back(unit_vec(f, un, i));
    } else {
        Mat sys = Mat::from_rows(f, rows, un);
        sols = kernel_basis(sys);
    }
    std::vector<Mat> out;
    for (const auto& u : sols) {
        Mat blockH(f, n.d, m.d);
        for (int w = 0; w < nblocks; ++w) {
            const int rn = wan->block_size[w], rm = wam->block_size[w];
            for (int i = 0; i < rn; ++i)
                for (int j = 0; j < rm; ++j)
                    blockH.at(wan->block_start[w] + i, wam->block_start[w] + j) = u[uoff[w] + i * rm + j];
        }
        out.push_back(mat_mul(wan->P, mat_mul(blockH, wam->Pinv)));
    }
    return out;
}

// ------------------------------------------------------------------ covers, ext

CoverResult projective_cover(const ModRep& m) {
    const Field f = m.alg->f;
    const Subspace& rad_a = radical_span_cached(m.alg);
    Subspace radm = radical_submodule(m, rad_a);
    CoverResult out;
    std::vector<Vec> gens_in_m;
    for (size_t w = 0; w < m.alg->idems.size(); ++w) {
        // top multiplicity at weight w: e_w M modulo (e_w M  cap rad M)
        Subspace ws = weight_space(m, static_cast<int>(w));
        Subspace inter = space_intersect(ws, radm);
        int mult = ws.dim() - inter.dim();
        if (mult == 0) continue;
        std::vector<Vec> reps;
        Subspace cur = inter;
        for (const auto& v : ws.basis) {
            if (cur.contains(v)) continue;
            reps.push_back(v);
            cur = space_sum(cur, Subspace::span(f, m.d, {v}));
            if (static_cast<int>(reps.size()) == mult) break;
        }
        for (const auto& rep : reps) {
            out.tops.push_back(m.alg->idems[w].weight);
            gens_in_m.push_back(rep);
        }
    }
    std::vector<int> offsets;
    std::vector<ProjectiveModule> projs;
    int total = 0;
    for (const auto& wlab : out.tops) {
        projs.push_back(projective_indec(m.alg, wlab, m.side));
        offsets.push_back(total);
        total += projs.back().mod->d;
    }
    out.summand_offset = offsets;
    std::vector<Mat> act;
    for (int k = 0; k < m.alg->dim(); ++k) {
        Mat big(f, total, total);
        for (size_t s = 0; s < projs.size(); ++s) {
            const Mat& small = projs[s].mod->act[k];
            for (int i = 0; i < small.rows; ++i)
                for (int j = 0; j < small.cols; ++j) big.at(offsets[s] + i, offsets[s] + j) = small.at(i, j);
        }
        act.push_back(std::move(big));
    }
    out.p0 = make_module(m.alg, m.side, std::move(act));
    // surjection: on summand s with generator g_s |-> rep_s: column for basis
    // vector v of P(w) is rho_M(v as algebra element) rep_s
    Mat surj(f, m.d, total);
    for (size_t s = 0; s < projs.size(); ++s) {
        for (int j = 0; j < projs[s].mod->d; ++j) {
            const Vec& v_in_a = projs[s].basis[j];
            Vec img = mat_apply(m.act_vec(v_in_a), gens_in_m[s]);
            for (int i = 0; i < m.d; ++i) surj.at(i, offsets[s] + j) = img[i];
        }
    }
    out.surjection = std::move(surj);
    if (rank(out.surjection) != m.d) throw std::runtime_error("projective_cover: cover not surjective");
    out.syzygy = Subspace::span(f, total, kernel_basis(out.surjection));
    return out;
}

CachedCover make_cached_cover(const ModRep& m) {
    CachedCover cc;
    cc.cover = projective_cover(m);
    if (cc.cover.syzygy.dim() > 0) {
        SubquotientModule omega = sub_module(*cc.cover.p0, cc.cover.syzygy);
        cc.omega = omega.mod;
        cc.omega_incl = omega.map;
    }
    return cc;
}

Ext1Result ext1(const ModRep& m, const ModRep& n) {
    if (m.d == 0 || n.d == 0) return Ext1Result{};
    return ext1_with_cover(make_cached_cover(m), n);
}

Ext1Result ext1_with_cover(const CachedCover& cc, const ModRep& n) {
    const CoverResult& cov = cc.cover;
    const Field f = n.alg->f;
    Ext1Result out;
    if (!cc.omega || n.d == 0) return out; // projective module or trivial target
    const int m_d = cov.surjection.rows;
    SubquotientModule omega{cc.omega, cc.omega_incl};
    std::vector<Mat> hom_omega_n = hom_space(*omega.mod, n);
    if (hom_omega_n.empty()) return out;
    std::vector<Mat> hom_p0_n = hom_space(*cov.p0, n);
    // restriction image inside Hom(Omega, N); coordinates via vectorization
    const int dim_h = static_cast<int>(hom_omega_n.size());
    std::vector<Vec> hvecs;
    for (const auto& h : hom_omega_n) hvecs.push_back(vectorize(h));
    Subspace hspace = Subspace::span(f, n.d * omega.mod->d, hvecs);
    std::vector<Vec> image_coords;
    for (const auto& h : hom_p0_n) {
        Mat restr = mat_mul(h, omega.map); // omega.map: incl Omega -> P0
        auto c = hspace.coords(vectorize(restr));
        if (!c) throw std::runtime_error("ext1: restriction escaped the hom space");
        image_coords.push_back(*c);
    }
    Subspace img = Subspace::span(f, dim_h, image_coords);
    out.dim = dim_h - img.dim();
    // canonical representatives: hom basis elements at the non-pivot coordinates
    std::vector<Vec> reps = complement_of(img);
    for (const auto& rc : reps) {
        Mat xi(f, n.d, omega.mod->d);
        for (int i = 0; i < dim_h; ++i)
            if (!rc[i].is_zero()) xi = mat_add(xi, mat_scale(rc[i], hom_omega_n[i]));
        // middle term: (P0 + N) / {(w, -xi(w))}
        DirectSumModule ds = direct_sum(*cov.p0, n);
        std::vector<Vec> graph;
        for (int j = 0; j < omega.mod->d; ++j) {
            Vec w = omega.map.col(j); // inside P0
            Vec xw = xi.col(j);
            Vec big = zero_vec(f, cov.p0->d + n.d);
            for (int i = 0; i < cov.p0->d; ++i) big[i] = w[i];
            for (int i = 0; i < n.d; ++i) big[cov.p0->d + i] = -xw[i];
            graph.push_back(std::move(big));
        }
        SubquotientModule middle = quotient_module(*ds.mod, Subspace::span(f, cov.p0->d + n.d, graph));
        out.middles.push_back(middle.mod);
        out.incl_n.push_back(mat_mul(middle.map, ds.incl2));
        // E -> M: the P0 component followed by the cover surjection (well
        // defined because the graph maps into the syzygy)
        Mat big(f, m_d, cov.p0->d + n.d);
        for (int i = 0; i < m_d; ++i)
            for (int j = 0; j < cov.p0->d; ++j) big.at(i, j) = cov.surjection.at(i, j);
        // express through the quotient coordinates: solve middle.map * X = id
        // columns; instead map each kept coordinate directly
        Mat projm(f, m_d, out.middles.back()->d);
        {
            // kept coordinates of the quotient are complement coordinates of
            // the graph span; recover them from the projection matrix
            const Mat& q = middle.map; // (dim E) x (dim P0 + dim N)
            // For each E-coordinate find a preimage: q has full rank, use the
            // canonical complement coordinates (unit columns of q)
            for (int e = 0; e < out.middles.back()->d; ++e) {
                // find column j with q.col(j) == unit_e and graph-reduced
                int found = -1;
                for (int j = 0; j < q.cols && found < 0; ++j) {
                    bool is_unit = true;
                    for (int i = 0; i < q.rows; ++i) {
                        Scalar want = (i == e) ? Scalar::one(f) : Scalar::zero(f);
                        if (!(q.at(i, j) == want)) {
                            is_unit = false;
                            break;
                        }
                    }
                    if (is_unit) found = j;
                }
                if (found < 0) throw std::runtime_error("ext1: quotient coordinates not canonical");
                for (int i = 0; i < m_d; ++i) projm.at(i, e) = big.at(i, found);
            }
        }
        out.proj_m.push_back(std::move(projm));
    }
    return out;
}

int ext_dim(const ModRep& m, const ModRep& n, int degree) {
    if (degree == 0) return static_cast<int>(hom_space(m, n).size());
    if (degree == 1) return ext1(m, n).dim;
    if (degree == 2) {
        CoverResult cov = projective_cover(m);
        if (cov.syzygy.dim() == 0) return 0;
        SubquotientModule omega = sub_module(*cov.p0, cov.syzygy);
        return ext1(*omega.mod, n).dim;
    }
    throw std::invalid_argument("ext_dim: degree must be 0, 1 or 2");
}

// ------------------------------------------------------------------ duals

ModPtr dualize(const ModRep& m, const Mat& phi) {
    std::vector<Mat> act;
    for (int k = 0; k < m.alg->dim(); ++k) {
        Vec pb = phi.col(k); // phi(b_k) in algebra coordinates
        act.push_back(transpose(m.act_vec(pb)));
    }
    return make_module(m.alg, m.side, std::move(act), m.zdeg);
}

ModPtr side_dual(const ModRep& m) {
    std::vector<Mat> act;
    for (int k = 0; k < m.alg->dim(); ++k) act.push_back(transpose(m.act[k]));
    return make_module(m.alg, m.side == Side::Left ? Side::Right : Side::Left, std::move(act), m.zdeg);
}

// ------------------------------------------------------------------ simple

ModPtr simple_module(AlgebraPtr a, const std::string& weight, Side side) {
    ProjectiveModule p = projective_indec(a, weight, side);
    const Subspace& rad_a = radical_span_cached(a);
    Subspace radp = radical_submodule(*p.mod, rad_a);
    if (p.mod->d - radp.dim() != 1)
        throw std::runtime_error("simple_module: top of P(" + weight + ") is not one-dimensional");
    return quotient_module(*p.mod, radp).mod;
}

// ------------------------------------------------------------------ fitting

namespace {

using Poly = std::vector<Scalar>; // low-first, no trailing zeros beyond lead

void poly_trim(Poly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, Field f) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Scalar::zero(f));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    poly_trim(r);
    return r;
}

Poly poly_add(const Poly& a, const Poly& b, Field f) {
    Poly r(std::max(a.size(), b.size()), Scalar::zero(f));
    for (size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
    poly_trim(r);
    return r;
}

Poly poly_scale(const Scalar& c, const Poly& a) {
    Poly r = a;
    for (auto& x : r) x = c * x;
    poly_trim(r);
    return r;
}

// division with remainder
void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r, Field f) {
    r = a;
    poly_trim(r);
    q.clear();
    if (b.empty()) throw std::domain_error("poly division by zero");
    while (r.size() >= b.size()) {
        Scalar c = r.back() / b.back();
        size_t shift = r.size() - b.size();
        if (q.size() < shift + 1) q.resize(shift + 1, Scalar::zero(f));
        q[shift] = q[shift] + c;
        for (size_t i = 0; i < b.size(); ++i) r[shift + i] = r[shift + i] - c * b[i];
        poly_trim(r);
        if (r.size() >= b.size() && r.size() == a.size() && !r.empty() && r.back() == a.back())
            throw std::runtime_error("poly_divmod: no progress");
    }
}

// extended euclid: returns (g, u, v) with u a + v b = g (g monic)
std::tuple<Poly, Poly, Poly> poly_ext_gcd(Poly a, Poly b, Field f) {
    Poly u0{Scalar::one(f)}, v0, u1, v1{Scalar::one(f)};
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        Poly q, r;
        poly_divmod(a, b, q, r, f);
        Poly nu = poly_add(u0, poly_scale(-Scalar::one(f), poly_mul(q, u1, f)), f);
        Poly nv = poly_add(v0, poly_scale(-Scalar::one(f), poly_mul(q, v1, f)), f);
        a = b;
        b = r;
        u0 = u1;
        v0 = v1;
        u1 = nu;
        v1 = nv;
    }
    if (!a.empty() && !a.back().is_one()) {
        Scalar inv = a.back().inv();
        a = poly_scale(inv, a);
        u0 = poly_scale(inv, u0);
        v0 = poly_scale(inv, v0);
    }
    return {a, u0, v0};
}

Mat poly_at_mat(const Poly& p, const Mat& h) {
    Mat acc(h.f, h.rows, h.rows);
    for (size_t k = p.size(); k-- > 0;) {
        acc = mat_mul(acc, h);
        for (int i = 0; i < h.rows; ++i) acc.at(i, i) = acc.at(i, i) + p[k];
    }
    return acc;
}

// minimal polynomial via Krylov iteration on the matrix space
Poly min_poly(const Mat& h) {
    const Field f = h.f;
    const int d = h.rows;
    std::vector<Vec> powers;
    Mat cur = Mat::identity(f, d);
    Subspace seen = Subspace::span(f, d * d, {});
    std::vector<Vec> raw;
    while (true) {
        Vec v = vectorize(cur);
        Subspace bigger = space_sum(seen, Subspace::span(f, d * d, {v}));
        if (bigger.dim() == seen.dim()) {
            // cur (=h^k) depends on previous powers: solve for coefficients
            Mat sys = Mat::from_cols(f, raw, d * d);
            auto c = solve(sys, v);
            if (!c) throw std::runtime_error("min_poly: inconsistent dependence");
            Poly p(raw.size() + 1, Scalar::zero(f));
            for (size_t i = 0; i < raw.size(); ++i) p[i] = -(*c)[i];
            p[raw.size()] = Scalar::one(f);
            return p;
        }
        raw.push_back(v);
        seen = bigger;
        cur = mat_mul(cur, h);
    }
}

// roots of a polynomial in the field: all of F_p by trial, rational root
// theorem over Q (desk scale)
std::vector<Scalar> field_roots(const Poly& p, Field f) {
    std::vector<Scalar> roots;
    auto eval = [&](const Scalar& x) {
        Scalar acc = Scalar::zero(f);
        for (size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
        return acc;
    };
    if (f.is_fp()) {
        for (std::int64_t s = 0; s < f.p; ++s) {
            Scalar x(f, s);
            if (eval(x).is_zero()) roots.push_back(x);
        }
        return roots;
    }
    // clear denominators to an integer polynomial
    BigInt lcm(1);
    for (const auto& c : p) {
        BigInt g = BigInt::gcd(lcm, c.rat().den);
        BigInt q, r;
        BigInt::divmod(c.rat().den, g, q, r);
        lcm = lcm * q;
    }
    std::vector<BigInt> ip;
    for (const auto& c : p) {
        BigInt q, r;
        BigInt::divmod(c.rat().num * lcm, c.rat().den, q, r);
        ip.push_back(q);
    }
    while (!ip.empty() && ip.back().is_zero()) ip.pop_back();
    if (ip.empty()) return roots;
    // strip powers of t
    size_t low = 0;
    while (low < ip.size() && ip[low].is_zero()) ++low;
    if (low > 0) roots.push_back(Scalar::zero(f));
    auto divisors = [&](const BigInt& n) {
        std::vector<BigInt> out;
        BigInt an = n;
        an.sgn = an.is_zero() ? 0 : 1;
        if (an.is_zero()) return out;
        if (!an.fits_int64()) return out; // desk scale guard
        std::int64_t v = an.to_int64();
        for (std::int64_t d = 1; d * d <= v; ++d)
            if (v % d == 0) {
                out.push_back(BigInt(d));
                out.push_back(BigInt(v / d));
            }
        return out;
    };
    auto num_divs = divisors(ip[low]);
    auto den_divs = divisors(ip.back());
    for (const auto& nd : num_divs)
        for (const auto& dd : den_divs)
            for (int sign : {1, -1}) {
                Rat cand(sign > 0 ? nd : -nd, dd);
                Scalar x(f, cand);
                if (eval(x).is_zero()) {
                    bool dup = false;
                    for (const auto& rr : roots) dup = dup || rr == x;
                    if (!dup) roots.push_back(x);
                }
            }
    return roots;
}

// try to build a nontrivial idempotent in K[h] from the minimal polynomial
std::optional<Mat> idempotent_from(const Mat& h) {
    const Field f = h.f;
    Poly mp = min_poly(h);
    if (mp.size() <= 1) return std::nullopt;
    for (const Scalar& a : field_roots(mp, f)) {
        // mp = (t - a)^k g with g(a) != 0
        Poly lin{-a, Scalar::one(f)};
        Poly g = mp, q, r;
        int k = 0;
        while (true) {
            poly_divmod(g, lin, q, r, f);
            if (!r.empty()) break;
            g = q;
            ++k;
        }
        if (k == 0) continue;
        if (g.size() <= 1) continue; // mp is (t-a)^deg: no split from this element
        Poly pk{Scalar::one(f)};
        for (int i = 0; i < k; ++i) pk = poly_mul(pk, lin, f);
        auto [gcd, u, v] = poly_ext_gcd(pk, g, f);
        if (gcd.size() != 1) continue; // not coprime (should not happen)
        // e = v*g evaluated at h: 1 mod (t-a)^k, 0 mod g
        Poly e = poly_mul(v, g, f);
        Mat em = poly_at_mat(e, h);
        if (em.is_zero()) continue;
        if (mat_sub(em, Mat::identity(f, h.rows)).is_zero()) continue;
        if (!(mat_mul(em, em) == em)) continue;
        return em;
    }
    return std::nullopt;
}

} // namespace

FittingResult fitting_split(const ModRep& m) {
    const Field f = m.alg->f;
    FittingResult out;
    if (m.d == 0) {
        out.indecomposable = false;
        out.note = "zero module";
        return out;
    }
    EndAlgebra end = endomorphism_algebra(m);
    const std::vector<Mat>& ends = end.basis;
    out.end_dim = static_cast<int>(ends.size());
    IdealSpan rad_e = radical(end.algebra);
    out.end_top_dim = out.end_dim - rad_e.span.dim();
    if (out.end_top_dim == 1) {
        out.indecomposable = true;
        out.note = "End(M) local with residue field K";
        return out;
    }
    // search for a separable-split element of End(M)
    auto mat_of_coords = [&](const Vec& c) {
        Mat h(f, m.d, m.d);
        for (size_t i = 0; i < ends.size(); ++i)
            if (!c[i].is_zero()) h = mat_add(h, mat_scale(c[i], ends[i]));
        return h;
    };
    std::vector<Mat> candidates;
    for (const auto& h : ends) candidates.push_back(h);
    for (size_t i = 0; i < ends.size() && candidates.size() < 64; ++i)
        for (size_t j = 0; j < ends.size() && candidates.size() < 64; ++j)
            candidates.push_back(mat_mul(ends[i], ends[j]));
    Rng rng(20240905);
    for (int t = 0; t < 200 && candidates.size() < 400; ++t) {
        Vec c = zero_vec(f, out.end_dim);
        for (int i = 0; i < out.end_dim; ++i) c[i] = random_scalar(f, rng);
        candidates.push_back(mat_of_coords(c));
    }
    for (const auto& h : candidates) {
        if (h.is_zero()) continue;
        auto e_opt = idempotent_from(h);
        if (!e_opt) continue;
        const Mat& em = *e_opt;
        Subspace image = image_of(em, Subspace::full(f, m.d));
        Subspace kern = Subspace::span(f, m.d, kernel_basis(em));
        if (image.dim() == 0 || kern.dim() == 0) continue;
        if (image.dim() + kern.dim() != m.d) continue;
        if (space_intersect(image, kern).dim() != 0) continue;
        out.indecomposable = false;
        out.idem = em;
        out.part1 = image;
        out.part2 = kern;
        out.note = "split by idempotent endomorphism";
        return out;
    }
    throw std::runtime_error(
        "fitting_split: End(M)/rad is semisimple of dimension > 1 but no splitting idempotent was found "
        "over this field; enlarge p or switch field");
}

std::vector<Subspace> indecomposable_summands(const ModRep& m) {
    std::vector<Subspace> done;
    std::vector<Subspace> work{Subspace::full(m.alg->f, m.d)};
    while (!work.empty()) {
        Subspace s = work.back();
        work.pop_back();
        if (s.dim() == 0) continue;
        SubquotientModule sub = sub_module(m, s);
        FittingResult fr = fitting_split(*sub.mod);
        if (fr.indecomposable) {
            done.push_back(s);
            continue;
        }
        auto lift = [&](const Subspace& inner) {
            std::vector<Vec> vs;
            for (const auto& v : inner.basis) vs.push_back(mat_apply(sub.map, v));
            return Subspace::span(m.alg->f, m.d, vs);
        };
        work.push_back(lift(fr.part1));
        work.push_back(lift(fr.part2));
    }
    return done;
}

EndAlgebra endomorphism_algebra(const ModRep& m) {
    const Field f = m.alg->f;
    std::vector<Mat> ends = hom_space(m, m);
    std::vector<Vec> evecs;
    for (const auto& h : ends) evecs.push_back(vectorize(h));
    Subspace espace = Subspace::span(f, m.d * m.d, evecs);
    // canonical echelon basis of the endomorphism space
    std::vector<Mat> basis;
    for (const auto& v : espace.basis) basis.push_back(unvectorize(v, f, m.d, m.d));
    std::vector<std::string> labels;
    for (size_t i = 0; i < basis.size(); ++i) labels.push_back("h" + std::to_string(i));
    BasedAlgebra e = BasedAlgebra::make(f, labels);
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j) {
            auto c = espace.coords(vectorize(mat_mul(basis[i], basis[j])));
            if (!c) throw std::runtime_error("endomorphism_algebra: composition escapes the span");
            for (size_t k = 0; k < basis.size(); ++k)
                if (!(*c)[k].is_zero())
                    e.add_term(static_cast<int>(i), static_cast<int>(j), static_cast<int>(k), (*c)[k]);
        }
    auto idc = espace.coords(vectorize(Mat::identity(f, m.d)));
    if (!idc) throw std::runtime_error("endomorphism_algebra: identity missing");
    e.unit = *idc;
    return EndAlgebra{std::move(e), std::move(basis)};
}

std::optional<Mat> find_isomorphism(const ModRep& m, const ModRep& n) {
    if (m.d != n.d) return std::nullopt;
    if (m.d == 0) return Mat(m.alg->f, 0, 0);
    std::vector<Mat> homs = hom_space(m, n);
    for (const auto& h : homs)
        if (rank(h) == m.d) return h;
    for (size_t i = 0; i < homs.size(); ++i)
        for (size_t j = i + 1; j < homs.size(); ++j) {
            Mat s = mat_add(homs[i], homs[j]);
            if (rank(s) == m.d) return s;
        }
    Rng rng(777);
    for (int t = 0; t < 300; ++t) {
        Mat s(m.alg->f, n.d, m.d);
        for (const auto& h : homs) s = mat_add(s, mat_scale(random_scalar(m.alg->f, rng), h));
        if (rank(s) == m.d) return s;
    }
    return std::nullopt;
}

} // namespace qhpc
