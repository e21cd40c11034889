#include "qhpc/tilting.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qhpc {

std::set<std::string> defect_set(HwContext& ctx, const ModRep& m) {
    std::set<std::string> out;
    for (const auto& e : ctx.alg->idems)
        if (ext1_with_cover(ctx.DeltaCover(e.weight), m).dim > 0) out.insert(e.weight);
    return out;
}

namespace {

struct BuildState {
    ModPtr x;
    std::vector<Subspace> v; // V_1..V_k inside x
};

// gamma chain of the down-set of w, by height below w
GammaChain chain_below(HwContext& ctx, const std::string& w) {
    return build_gamma_chain(ctx.poset, {ctx.poset.index_of(w)});
}

std::set<std::string> labels_of(HwContext& ctx, const std::set<int>& idxs) {
    std::set<std::string> out;
    for (int i : idxs) out.insert(ctx.poset.elems[i]);
    return out;
}

// admissibility of a state at level k (all clauses, from scratch)
void verify_admissible(HwContext& ctx, const GammaChain& gc, const std::string& w,
                       const BuildState& st, int k) {
    // factors within the down-set of w
    std::set<std::string> down = ctx.down_labels(w);
    for (const auto& lab : ctx.support(*st.x))
        if (!down.count(lab))
            throw std::runtime_error("tilting state: factor " + lab + " outside the down-set");
    // O^{t}(X) = V_t for t <= k, and O^{k+1}(X) = X
    for (int t = 1; t <= k; ++t) {
        Subspace o = O_sup(*st.x, labels_of(ctx, gc.gammas[t]));
        if (!(o == st.v[t - 1]))
            throw std::runtime_error("tilting state: O^" + std::to_string(t) + " differs from V");
    }
    if (k + 1 < static_cast<int>(gc.gammas.size())) {
        Subspace o = O_sup(*st.x, labels_of(ctx, gc.gammas[k + 1]));
        if (o.dim() != st.x->d)
            throw std::runtime_error("tilting state: O^(k+1) is a proper submodule");
    }
    // X/V_k has a standard filtration
    {
        SubquotientModule q = quotient_module(*st.x, st.v[k - 1]);
        FiltrationOutcome fo = find_filtration(ctx, *q.mod, 'D');
        if (!fo.cert) throw std::runtime_error("tilting state: X/V_k not standardly filtered");
    }
    // indecomposable
    FittingResult fr = fitting_split(*st.x);
    if (!fr.indecomposable) throw std::runtime_error("tilting state: X decomposes");
    // S(X) inside Gamma_k
    std::set<std::string> gk = labels_of(ctx, gc.gammas[k]);
    for (const auto& lab : defect_set(ctx, *st.x))
        if (!gk.count(lab)) throw std::runtime_error("tilting state: defect " + lab + " escapes level");
}

std::vector<int> chi_of(HwContext& ctx, const ModRep& x, const std::vector<std::string>& dk) {
    std::vector<int> chi;
    for (const auto& lab : dk) chi.push_back(ext1_with_cover(ctx.DeltaCover(lab), x).dim);
    return chi;
}

} // namespace

TiltingBuild build_tilting(HwContext& ctx, const std::string& w, const TiltingOptions& opt) {
    const Field f = ctx.alg->f;
    GammaChain gc = chain_below(ctx, w);
    const int levels = static_cast<int>(gc.gammas.size()) - 1; // gammas[levels] is empty

    TiltingBuild out;
    out.weight = w;
    BuildState st;
    st.x = ctx.Delta(w);
    st.v = {Subspace::full(f, st.x->d)};
    verify_admissible(ctx, gc, w, st, 1);

    for (int k = 1; k < levels; ++k) {
        // linear order on the antichain D_k: descending index order is the
        // poset order here; among incomparable weights use the configured
        // epsilon tie-break; "minimal" = last in this order
        std::vector<std::string> dk;
        for (int i : gc.gammas[k])
            if (!gc.gammas[k + 1].count(i)) dk.push_back(ctx.poset.elems[i]);
        std::sort(dk.begin(), dk.end());
        if (!opt.eps_ascending) std::reverse(dk.begin(), dk.end());

        int guard = 0;
        while (true) {
            if (++guard > 1000) throw std::runtime_error("build_tilting: level loop did not terminate");
            std::vector<int> chi = chi_of(ctx, *st.x, dk);
            // pick the last weight with nonzero characteristic (minimal in the
            // chosen linear order)
            int pick = -1;
            for (int i = static_cast<int>(dk.size()) - 1; i >= 0; --i)
                if (chi[i] > 0) {
                    pick = i;
                    break;
                }
            if (opt.batched) {
                // exhaust the first still-positive weight instead
                for (size_t i = 0; i < dk.size(); ++i)
                    if (chi[i] > 0) {
                        pick = static_cast<int>(i);
                        break;
                    }
            }
            if (pick < 0) break;
            const std::string pi = dk[pick];

            Ext1Result ext = ext1_with_cover(ctx.DeltaCover(pi), *st.x);
            if (ext.dim == 0) throw std::logic_error("build_tilting: extension vanished unexpectedly");
            int which = opt.class_pick % static_cast<int>(ext.middles.size());
            ModPtr y = ext.middles[which];
            const Mat& incl = ext.incl_n[which];

            // push the chain into the middle term, then into the summand that
            // carries it
            std::vector<Subspace> pushed;
            for (const auto& vs : st.v) {
                std::vector<Vec> img;
                for (const auto& b : vs.basis) img.push_back(mat_apply(incl, b));
                pushed.push_back(Subspace::span(f, y->d, img));
            }
            std::vector<Subspace> parts = indecomposable_summands(*y);
            int carrier = -1;
            for (size_t i = 0; i < parts.size(); ++i) {
                bool holds = parts[i].contains(pushed.back());
                if (holds) {
                    if (carrier >= 0) throw std::runtime_error("build_tilting: chain carried twice");
                    carrier = static_cast<int>(i);
                }
            }
            if (carrier < 0) throw std::runtime_error("build_tilting: no summand carries the chain");
            SubquotientModule xs = sub_module(*y, parts[carrier]);
            BuildState next;
            next.x = xs.mod;
            for (const auto& vs : pushed) {
                std::vector<Vec> inside;
                for (const auto& b : vs.basis) {
                    auto c = parts[carrier].coords(b);
                    if (!c) throw std::runtime_error("build_tilting: chain escapes the summand");
                    inside.push_back(*c);
                }
                next.v.push_back(Subspace::span(f, next.x->d, inside));
            }

            // characteristic bookkeeping: strict lexicographic descent and the
            // single decrement at the chosen weight
            std::vector<int> chi_after = chi_of(ctx, *next.x, dk);
            TiltingStep step{k, pi, chi, chi_after};
            out.log.push_back(step);
            if (!(chi_after < chi)) throw std::runtime_error("build_tilting: characteristic did not drop");
            if (chi_after[pick] != chi[pick] - 1)
                throw std::runtime_error("build_tilting: decrement law failed at " + pi);
            // incomparable weights at this level keep their characteristic;
            // fresh defects may only appear strictly below
            for (size_t i = 0; i < dk.size(); ++i)
                if (static_cast<int>(i) != pick && chi_after[i] != chi[i])
                    throw std::runtime_error("build_tilting: unrelated characteristic moved at " + dk[i]);
            // any fresh defect lies strictly below pi
            std::set<std::string> gk1 = labels_of(ctx, gc.gammas[k + 1]);
            for (const auto& lab : defect_set(ctx, *next.x)) {
                if (gk1.count(lab)) continue;
                bool in_dk = std::find(dk.begin(), dk.end(), lab) != dk.end();
                if (!in_dk)
                    throw std::runtime_error("build_tilting: defect " + lab + " outside the level");
            }

            st = std::move(next);
            verify_admissible(ctx, gc, w, st, k);
        }
        st.v.push_back(Subspace::full(f, st.x->d)); // V_{k+1} = X
        verify_admissible(ctx, gc, w, st, k + 1);
    }

    out.t = st.x;
    out.v_chain = st.v;
    FiltrationOutcome fo = find_filtration(ctx, *out.t, 'D');
    if (!fo.cert) throw std::runtime_error("build_tilting: final object lost its standard filtration");
    out.delta_cert = *fo.cert;
    if (multiplicity(*out.t, w) != 1)
        throw std::runtime_error("build_tilting: [T : L(w)] != 1");
    return out;
}

std::string TiltingBuild::to_text() const {
    std::ostringstream os;
    os << "tilting " << weight << " dim " << (t ? t->d : 0) << "\n";
    for (const auto& s : log) {
        os << "  level " << s.level << " extend " << s.pi << " chi";
        for (int c : s.chi_before) os << " " << c;
        os << " ->";
        for (int c : s.chi_after) os << " " << c;
        os << "\n";
    }
    os << "  chain dims";
    for (const auto& v : v_chain) os << " " << v.dim();
    os << "\n" << delta_cert.to_text();
    return os.str();
}

Report verify_tilting(HwContext& ctx, const ModRep& t) {
    Report rep;
    FiltrationOutcome fd = find_filtration(ctx, t, 'D');
    bool dok = fd.cert.has_value() && check_certificate(ctx, t, *fd.cert);
    rep.add("delta", "increasing standard filtration", dok,
            fd.cert ? "" : "obstruction at " + fd.obstruction_weight);
    std::set<std::string> s = defect_set(ctx, t);
    rep.add("defect", "no extensions from standard modules", s.empty(),
            s.empty() ? "" : "defect at " + *s.begin());
    FiltrationOutcome fn = find_filtration(ctx, t, 'N');
    bool nok = fn.cert.has_value() && check_certificate(ctx, t, *fn.cert);
    rep.add("nabla", "decreasing costandard filtration", nok,
            fn.cert ? "" : "obstruction at " + fn.obstruction_weight);
    return rep;
}

std::vector<std::pair<std::string, int>> tilting_decompose(
    HwContext& ctx, const ModRep& t, const std::map<std::string, ModPtr>& indecomposables) {
    const Field f = ctx.alg->f;
    std::vector<std::pair<std::string, int>> out;
    ModPtr cur = std::make_shared<ModRep>(t);
    std::map<std::string, int> counts;
    int guard = 0;
    while (cur->d > 0) {
        if (++guard > 200) throw std::runtime_error("tilting_decompose: loop guard");
        // maximal weight present
        std::set<int> supp;
        for (const auto& lab : ctx.support(*cur)) supp.insert(ctx.poset.index_of(lab));
        std::vector<int> maxs = ctx.poset.maximal_of(supp);
        std::sort(maxs.begin(), maxs.end());
        bool split_one = false;
        for (int wi : maxs) {
            const std::string w = ctx.poset.elems[wi];
            auto it = indecomposables.find(w);
            if (it == indecomposables.end()) continue;
            const ModRep& tw = *it->second;
            auto in = hom_space(tw, *cur);
            auto pr = hom_space(*cur, tw);
            for (const auto& i : in) {
                for (const auto& p : pr) {
                    Mat comp = mat_mul(p, i);
                    if (rank(comp) != tw.d) continue;
                    // invert the composite to make a genuine projection
                    Mat aug(f, tw.d, 2 * tw.d);
                    for (int r = 0; r < tw.d; ++r) {
                        for (int c = 0; c < tw.d; ++c) aug.at(r, c) = comp.at(r, c);
                        aug.at(r, tw.d + r) = Scalar::one(f);
                    }
                    RrefResult rr = rref(aug);
                    Mat inv(f, tw.d, tw.d);
                    for (int r = 0; r < tw.d; ++r)
                        for (int c = 0; c < tw.d; ++c) inv.at(r, c) = rr.r.at(r, tw.d + c);
                    Mat proj = mat_mul(inv, p); // proj . i = id
                    Subspace kern = Subspace::span(f, cur->d, kernel_basis(proj));
                    counts[w]++;
                    cur = sub_module(*cur, kern).mod;
                    split_one = true;
                    break;
                }
                if (split_one) break;
            }
            if (split_one) break;
        }
        if (!split_one)
            throw std::runtime_error("tilting_decompose: no maximal-weight summand could be split off");
    }
    for (const auto& [w, c] : counts) out.emplace_back(w, c);
    return out;
}

Report end_locality(HwContext& ctx, const TiltingBuild& b) {
    Report rep;
    EndAlgebra e = endomorphism_algebra(*b.t);
    IdealSpan rad_e = radical(e.algebra);
    bool local = e.algebra.dim() - rad_e.span.dim() == 1;
    rep.add("local", "endomorphism algebra local with residue K", local,
            "dim End = " + std::to_string(e.algebra.dim()) +
                ", dim rad = " + std::to_string(rad_e.span.dim()));
    // radical criterion: vanishing on the standard bottom V_1
    const Subspace& v1 = b.v_chain.front();
    std::vector<Vec> vanish_coords;
    for (int i = 0; i < e.algebra.dim(); ++i) {
        bool vanishes = true;
        for (const auto& bv : v1.basis)
            if (!is_zero_vec(mat_apply(e.basis[i], bv))) vanishes = false;
        if (vanishes) vanish_coords.push_back(unit_vec(ctx.alg->f, e.algebra.dim(), i));
    }
    // the vanishing locus as a subspace of End coordinates
    std::vector<Vec> rows;
    for (const auto& bv : v1.basis) {
        // row block: coordinates c with sum_i c_i basis[i](bv) = 0
        for (int r = 0; r < b.t->d; ++r) {
            Vec row = zero_vec(ctx.alg->f, e.algebra.dim());
            for (int i = 0; i < e.algebra.dim(); ++i) row[i] = mat_apply(e.basis[i], bv)[r];
            rows.push_back(std::move(row));
        }
    }
    Subspace vanilla = rows.empty()
                           ? Subspace::full(ctx.alg->f, e.algebra.dim())
                           : Subspace::span(ctx.alg->f, e.algebra.dim(),
                                            kernel_basis(Mat::from_rows(ctx.alg->f, rows, e.algebra.dim())));
    bool crit = vanilla == rad_e.span;
    rep.add("bottom", "radical = endomorphisms vanishing on the standard bottom", crit,
            crit ? "" : "vanishing locus differs from the radical");
    return rep;
}

} // namespace qhpc
