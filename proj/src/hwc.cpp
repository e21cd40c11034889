#include "qhpc/hwc.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace qhpc {

// ------------------------------------------------------------------ posets

int WeightPoset::index_of(const std::string& lab) const {
    for (int i = 0; i < n(); ++i)
        if (elems[i] == lab) return i;
    return -1;
}

bool WeightPoset::finalize() {
    const int m = n();
    closure_.assign(m, std::vector<bool>(m, false));
    for (int i = 0; i < m; ++i) closure_[i][i] = true;
    for (auto [lo, hi] : covers) closure_[lo][hi] = true;
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
            if (closure_[i][k])
                for (int j = 0; j < m; ++j)
                    if (closure_[k][j]) closure_[i][j] = true;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j && closure_[i][j] && closure_[j][i]) return false;
    return true;
}

std::vector<int> WeightPoset::predecessors(int a) const {
    std::vector<int> out;
    for (auto [lo, hi] : covers)
        if (hi == a) out.push_back(lo);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<int> WeightPoset::maximal_of(const std::set<int>& sub) const {
    std::vector<int> out;
    for (int a : sub) {
        bool ismax = true;
        for (int b : sub)
            if (less(a, b)) {
                ismax = false;
                break;
            }
        if (ismax) out.push_back(a);
    }
    return out;
}

std::set<int> WeightPoset::down_set(int a) const {
    std::set<int> out;
    for (int b = 0; b < n(); ++b)
        if (leq(b, a)) out.insert(b);
    return out;
}

Report is_good_poset(const WeightPoset& p) {
    Report rep;
    WeightPoset copy = p;
    bool acyclic = copy.finalize();
    rep.add("acyclic", "cover relation acyclic", acyclic, acyclic ? "" : "cycle through declared covers");
    if (!acyclic) return rep;
    // every non-minimal element has at least one predecessor; finiteness is
    // automatic at finite size, as is the interpolation clause
    bool pred_ok = true;
    std::string w;
    for (int a = 0; a < copy.n(); ++a) {
        bool minimal = true;
        for (int b = 0; b < copy.n(); ++b)
            if (copy.less(b, a)) minimal = false;
        if (!minimal && copy.predecessors(a).empty()) {
            pred_ok = false;
            w = "element " + copy.elems[a] + " has smaller elements but no cover below";
        }
    }
    rep.add("predecessors", "non-minimal elements have predecessors", pred_ok, w);
    // interpolation: mu < lambda implies some predecessor lambda' with mu <= lambda'
    bool interp_ok = true;
    std::string iw;
    for (int a = 0; a < copy.n() && interp_ok; ++a)
        for (int b = 0; b < copy.n(); ++b) {
            if (!copy.less(b, a)) continue;
            bool found = false;
            for (int pr : copy.predecessors(a))
                if (copy.leq(b, pr)) found = true;
            if (!found) {
                interp_ok = false;
                iw = "pair (" + copy.elems[b] + " < " + copy.elems[a] + ") has no interpolating predecessor";
                break;
            }
        }
    rep.add("interpolation", "smaller elements lie under some predecessor", interp_ok, iw);
    // the dual clauses for the cogood check
    bool succ_ok = true;
    std::string sw;
    for (int a = 0; a < copy.n(); ++a) {
        bool maximal = true;
        for (int b = 0; b < copy.n(); ++b)
            if (copy.less(a, b)) maximal = false;
        bool has_succ = false;
        for (auto [lo, hi] : copy.covers)
            if (lo == a) has_succ = true;
        if (!maximal && !has_succ) {
            succ_ok = false;
            sw = "element " + copy.elems[a] + " has larger elements but no cover above";
        }
    }
    rep.add("successors", "non-maximal elements have successors", succ_ok, sw);
    return rep;
}

GammaChain build_gamma_chain(const WeightPoset& p, const std::vector<int>& generators) {
    // height: the longest cover chain from mu up to a generator
    GammaChain c;
    c.height.assign(p.n(), -1);
    // restrict to the union of down-sets of the generators
    std::set<int> gamma;
    for (int g : generators)
        for (int b : p.down_set(g)) gamma.insert(b);
    // longest path in the cover DAG from mu upward to a generator, within gamma
    // ht(g) = 0 for generators; ht(mu) = 1 + max over covers mu -> nu with nu in gamma
    // process in any order with memoization
    std::vector<int> memo(p.n(), -2);
    std::function<int(int)> ht = [&](int a) -> int {
        if (memo[a] != -2) return memo[a];
        int best = -1;
        for (int g : generators)
            if (g == a) best = 0;
        for (auto [lo, hi] : p.covers)
            if (lo == a && gamma.count(hi)) {
                int h = ht(hi);
                if (h >= 0) best = std::max(best, h + 1);
            }
        memo[a] = best;
        return best;
    };
    for (int a : gamma) c.height[a] = ht(a);
    int maxh = 0;
    for (int a : gamma) maxh = std::max(maxh, c.height[a]);
    for (int k = 0; k <= maxh + 1; ++k) {
        std::set<int> gk;
        for (int a : gamma)
            if (c.height[a] >= k) gk.insert(a);
        c.gammas.push_back(std::move(gk));
    }
    return c;
}

Report verify_gamma_chain(const WeightPoset& p, const GammaChain& c) {
    Report rep;
    bool ideal_ok = true, diff_ok = true, gen_ok = true;
    std::string iw, dw, gw;
    for (size_t k = 0; k < c.gammas.size(); ++k) {
        const auto& g = c.gammas[k];
        for (int a : g)
            for (int b = 0; b < p.n(); ++b)
                if (p.less(b, a) && !g.count(b)) {
                    ideal_ok = false;
                    iw = "gamma_" + std::to_string(k) + " not downward closed at " + p.elems[b];
                }
        if (k + 1 < c.gammas.size()) {
            std::vector<int> diff;
            for (int a : g)
                if (!c.gammas[k + 1].count(a)) diff.push_back(a);
            for (int a : diff)
                for (int b : diff)
                    if (p.less(a, b)) {
                        diff_ok = false;
                        dw = "difference at step " + std::to_string(k) + " not an antichain";
                    }
            // generators: every element of gamma_k lies under some difference element
            for (int a : g) {
                bool under = false;
                for (int b : diff)
                    if (p.leq(a, b)) under = true;
                if (!under) {
                    gen_ok = false;
                    gw = p.elems[a] + " not under the generators of step " + std::to_string(k);
                }
            }
        }
    }
    rep.add("ideals", "chain members are ideals", ideal_ok, iw);
    rep.add("antichain", "successive differences are antichains", diff_ok, dw);
    rep.add("generators", "differences generate their chain members", gen_ok, gw);
    rep.add("exhaust", "chain ends empty", c.gammas.empty() || c.gammas.back().empty(),
            c.gammas.empty() || c.gammas.back().empty() ? "" : "last member nonempty");
    return rep;
}

// ------------------------------------------------------------------ truncation functors

Subspace O_sub(const ModRep& m, const std::set<std::string>& gamma) {
    const BasedAlgebra& a = *m.alg;
    std::vector<Vec> rows;
    for (const auto& e : a.idems) {
        if (gamma.count(e.weight)) continue;
        Mat emat = m.act_vec(e.v);
        for (int k = 0; k < a.dim(); ++k) {
            Mat prod = mat_mul(emat, m.act[k]);
            for (int i = 0; i < prod.rows; ++i) rows.push_back(prod.row(i));
        }
    }
    if (rows.empty()) return Subspace::full(a.f, m.d);
    Mat sys = Mat::from_rows(a.f, rows, m.d);
    return Subspace::span(a.f, m.d, kernel_basis(sys));
}

Subspace O_sup(const ModRep& m, const std::set<std::string>& gamma) {
    const BasedAlgebra& a = *m.alg;
    std::vector<Vec> seeds;
    for (const auto& e : a.idems) {
        if (gamma.count(e.weight)) continue;
        Mat emat = m.act_vec(e.v);
        for (int j = 0; j < m.d; ++j) {
            Vec v = emat.col(j);
            if (!is_zero_vec(v)) seeds.push_back(std::move(v));
        }
    }
    return submodule_closure(m, seeds);
}

// ------------------------------------------------------------------ context

HwContext HwContext::make(AlgebraPtr alg, WeightPoset poset, Side side) {
    HwContext ctx;
    ctx.alg = std::move(alg);
    ctx.side = side;
    ctx.poset = std::move(poset);
    if (!ctx.poset.finalize()) throw std::invalid_argument("HwContext: poset has cycles");
    if (ctx.poset.n() != static_cast<int>(ctx.alg->idems.size()))
        throw std::invalid_argument("HwContext: poset elements must match idempotent weights");
    for (int i = 0; i < ctx.poset.n(); ++i)
        if (ctx.alg->idem_of_weight(ctx.poset.elems[i]) < 0)
            throw std::invalid_argument("HwContext: unknown weight " + ctx.poset.elems[i]);
    IdealSpan r = radical(*ctx.alg, ctx.alg);
    std::string why;
    if (!is_split_basic(*ctx.alg, r, &why))
        throw std::runtime_error("HwContext: algebra is not split basic: " + why);
    ctx.rad = r.span;
    return ctx;
}

const ProjectiveModule& HwContext::P(const std::string& w) {
    auto it = pc.find(w);
    if (it == pc.end()) it = pc.emplace(w, projective_indec(alg, w, side)).first;
    return it->second;
}

ModPtr HwContext::L(const std::string& w) {
    auto it = lc.find(w);
    if (it == lc.end()) it = lc.emplace(w, simple_module(alg, w, side)).first;
    return it->second;
}

ModPtr HwContext::I(const std::string& w) {
    auto it = ic.find(w);
    if (it == ic.end()) {
        Side other = side == Side::Left ? Side::Right : Side::Left;
        ModPtr dual = side_dual(*projective_indec(alg, w, other).mod);
        it = ic.emplace(w, dual).first;
    }
    return it->second;
}

std::set<std::string> HwContext::down_labels(const std::string& w) const {
    std::set<std::string> out;
    int a = poset.index_of(w);
    for (int b : poset.down_set(a)) out.insert(poset.elems[b]);
    return out;
}

std::vector<std::string> HwContext::support(const ModRep& m) const {
    std::vector<std::string> out;
    for (const auto& e : alg->idems)
        if (multiplicity(m, e.weight) > 0) out.push_back(e.weight);
    return out;
}

ModPtr HwContext::Delta(const std::string& w) {
    auto it = dc.find(w);
    if (it == dc.end()) it = dc.emplace(w, standard_module(*this, w)).first;
    return it->second;
}

const CachedCover& HwContext::DeltaCover(const std::string& w) {
    auto it = cvc.find(w);
    if (it == cvc.end())
        it = cvc.emplace(w, std::make_shared<CachedCover>(make_cached_cover(*Delta(w)))).first;
    return *it->second;
}

ModPtr HwContext::Nabla(const std::string& w) {
    auto it = nc.find(w);
    if (it == nc.end()) it = nc.emplace(w, costandard_module(*this, w)).first;
    return it->second;
}

ModPtr standard_module(HwContext& ctx, const std::string& w) {
    const ProjectiveModule& p = ctx.P(w);
    Subspace osup = O_sup(*p.mod, ctx.down_labels(w));
    ModPtr delta = quotient_module(*p.mod, osup).mod;
    // defining properties
    if (multiplicity(*delta, w) != 1)
        throw std::runtime_error("standard_module: [Delta:L] != 1 at " + w);
    int wi = ctx.poset.index_of(w);
    for (const auto& lab : ctx.support(*delta))
        if (lab != w && !ctx.poset.less(ctx.poset.index_of(lab), wi))
            throw std::runtime_error("standard_module: factor " + lab + " not below " + w);
    // top is L(w): radical quotient is one-dimensional of weight w
    Subspace radd = radical_submodule(*delta, ctx.rad);
    if (delta->d - radd.dim() != 1)
        throw std::runtime_error("standard_module: top not simple at " + w);
    return delta;
}

ModPtr costandard_module(HwContext& ctx, const std::string& w, const Mat* phi) {
    ModPtr inj = ctx.I(w);
    Subspace osub = O_sub(*inj, ctx.down_labels(w));
    ModPtr nab = sub_module(*inj, osub).mod;
    // socle is L(w)
    Subspace soc = socle_submodule(*nab, ctx.rad);
    if (soc.dim() != 1)
        throw std::runtime_error("costandard_module: socle not simple at " + w);
    SubquotientModule socm = sub_module(*nab, soc);
    if (multiplicity(*socm.mod, w) != 1)
        throw std::runtime_error("costandard_module: socle is not L(" + w + ")");
    if (phi) {
        ModPtr tau_delta = dualize(*ctx.Delta(w), *phi);
        if (!find_isomorphism(*nab, *tau_delta))
            throw std::runtime_error("costandard_module: Chevalley dual of Delta disagrees at " + w);
    }
    return nab;
}

// ------------------------------------------------------------------ filtrations

namespace {

struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
};

// deterministic search for a hom of the required rank
std::optional<Mat> search_rank(const std::vector<Mat>& homs, int want_rank, Field f) {
    for (const auto& h : homs)
        if (rank(h) == want_rank) return h;
    for (size_t i = 0; i < homs.size(); ++i)
        for (size_t j = i + 1; j < homs.size(); ++j) {
            Mat s = mat_add(homs[i], homs[j]);
            if (rank(s) == want_rank) return s;
        }
    Rng rng(4242);
    for (int t = 0; t < 200 && !homs.empty(); ++t) {
        Mat s(f, homs[0].rows, homs[0].cols);
        for (const auto& h : homs) {
            Scalar c = f.is_fp() ? Scalar(f, static_cast<std::int64_t>(rng.next() % f.p))
                                 : Scalar(f, static_cast<std::int64_t>(rng.next() % 7) - 3);
            s = mat_add(s, mat_scale(c, h));
        }
        if (rank(s) == want_rank) return s;
    }
    return std::nullopt;
}

} // namespace

FiltrationOutcome find_filtration(HwContext& ctx, const ModRep& m, char kind) {
    const Field f = ctx.alg->f;
    FiltrationOutcome out;
    FiltrationCertificate cert;
    cert.kind = kind;
    cert.chain.push_back(Subspace::span(f, m.d, {}));

    if (kind == 'D') {
        // peel standard submodules at maximal weights; the chain grows upward
        Subspace cur = cert.chain.back(); // inside M
        while (cur.dim() < m.d) {
            SubquotientModule q = quotient_module(m, cur);
            // maximal weight in the support of the quotient
            std::set<int> supp;
            for (const auto& lab : ctx.support(*q.mod)) supp.insert(ctx.poset.index_of(lab));
            std::vector<int> maxs = ctx.poset.maximal_of(supp);
            std::sort(maxs.begin(), maxs.end());
            bool advanced = false;
            for (int wi : maxs) {
                const std::string& w = ctx.poset.elems[wi];
                ModPtr delta = ctx.Delta(w);
                auto homs = hom_space(*delta, *q.mod);
                auto inj = search_rank(homs, delta->d, f);
                if (!inj) continue;
                // lift the embedded image back into M
                std::vector<Vec> gens = cur.basis;
                for (int j = 0; j < delta->d; ++j) {
                    Vec v = inj->col(j);
                    auto x = solve(q.map, v);
                    if (!x) throw std::runtime_error("find_filtration: lift failed");
                    gens.push_back(*x);
                }
                Subspace next = Subspace::span(f, m.d, gens);
                if (next.dim() != cur.dim() + delta->d) continue;
                cert.chain.push_back(next);
                cert.weights.push_back(w);
                cur = std::move(next);
                advanced = true;
                break;
            }
            if (!advanced) {
                // obstruction witness: Ext^1(M, nabla(w)) != 0 for some w
                for (const auto& e : ctx.alg->idems) {
                    int d = ext1(m, *ctx.Nabla(e.weight)).dim;
                    if (d > 0) {
                        out.obstruction_weight = e.weight;
                        out.obstruction_ext = d;
                        break;
                    }
                }
                return out;
            }
        }
    } else {
        // peel costandard quotients at maximal weights; record kernels downward
        std::vector<Subspace> kernels; // decreasing, inside M
        kernels.push_back(Subspace::full(f, m.d));
        std::vector<std::string> peeled;
        Subspace cur = kernels.back();
        while (cur.dim() > 0) {
            SubquotientModule s = sub_module(m, cur);
            std::set<int> supp;
            for (const auto& lab : ctx.support(*s.mod)) supp.insert(ctx.poset.index_of(lab));
            std::vector<int> maxs = ctx.poset.maximal_of(supp);
            std::sort(maxs.begin(), maxs.end());
            bool advanced = false;
            for (int wi : maxs) {
                const std::string& w = ctx.poset.elems[wi];
                ModPtr nab = ctx.Nabla(w);
                auto homs = hom_space(*s.mod, *nab);
                auto surj = search_rank(homs, nab->d, f);
                if (!surj) continue;
                // kernel inside the submodule, pushed to M coordinates
                std::vector<Vec> kv = kernel_basis(*surj);
                std::vector<Vec> inm;
                for (const auto& v : kv) inm.push_back(mat_apply(s.map, v));
                Subspace next = Subspace::span(f, m.d, inm);
                if (next.dim() != cur.dim() - nab->d) continue;
                kernels.push_back(next);
                peeled.push_back(w);
                cur = std::move(next);
                advanced = true;
                break;
            }
            if (!advanced) {
                for (const auto& e : ctx.alg->idems) {
                    int d = ext1_with_cover(ctx.DeltaCover(e.weight), m).dim;
                    if (d > 0) {
                        out.obstruction_weight = e.weight;
                        out.obstruction_ext = d;
                        break;
                    }
                }
                return out;
            }
        }
        // store as an increasing chain; the i-th quotient from the top was
        // peeled first
        cert.chain.clear();
        for (size_t i = kernels.size(); i-- > 0;) cert.chain.push_back(kernels[i]);
        for (size_t i = peeled.size(); i-- > 0;) cert.weights.push_back(peeled[i]);
    }
    for (const auto& w : cert.weights) cert.tally[w]++;
    out.cert = std::move(cert);
    return out;
}

bool check_certificate(HwContext& ctx, const ModRep& m, const FiltrationCertificate& cert,
                       std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (cert.chain.size() != cert.weights.size() + 1) return fail("chain/weights length mismatch");
    if (cert.chain.front().dim() != 0) return fail("chain does not start at zero");
    if (cert.chain.back().dim() != m.d) return fail("chain does not end at the module");
    std::map<std::string, int> tally;
    for (size_t i = 0; i + 1 < cert.chain.size(); ++i) {
        if (!cert.chain[i + 1].contains(cert.chain[i])) return fail("chain not increasing");
        if (!is_submodule(m, cert.chain[i + 1])) return fail("chain member not a submodule");
        // subquotient chain[i+1]/chain[i]
        SubquotientModule big = sub_module(m, cert.chain[i + 1]);
        std::vector<Vec> low;
        for (const auto& v : cert.chain[i].basis) {
            auto c = cert.chain[i + 1].coords(v);
            if (!c) return fail("chain member escapes the next one");
            low.push_back(*c);
        }
        SubquotientModule layer = quotient_module(*big.mod, Subspace::span(ctx.alg->f, big.mod->d, low));
        ModPtr target = cert.kind == 'D' ? ctx.Delta(cert.weights[i]) : ctx.Nabla(cert.weights[i]);
        if (layer.mod->d != target->d) return fail("layer dimension mismatch at step " + std::to_string(i));
        if (!find_isomorphism(*layer.mod, *target))
            return fail("layer not isomorphic to the tagged module at step " + std::to_string(i));
        tally[cert.weights[i]]++;
    }
    if (tally != cert.tally) return fail("tally mismatch");
    return true;
}

bool check_multiplicity_formulas(HwContext& ctx, const ModRep& m, const FiltrationCertificate& cert,
                                 std::string* why) {
    for (const auto& e : ctx.alg->idems) {
        int expected = 0;
        auto it = cert.tally.find(e.weight);
        if (it != cert.tally.end()) expected = it->second;
        int hom = cert.kind == 'N' ? static_cast<int>(hom_space(*ctx.Delta(e.weight), m).size())
                                   : static_cast<int>(hom_space(m, *ctx.Nabla(e.weight)).size());
        if (hom != expected) {
            if (why)
                *why = "multiplicity formula fails at " + e.weight + ": hom=" + std::to_string(hom) +
                       " tally=" + std::to_string(expected);
            return false;
        }
    }
    return true;
}

std::string FiltrationCertificate::to_text() const {
    std::ostringstream os;
    os << "filtration kind=" << kind << " steps=" << weights.size() << "\n";
    for (size_t i = 0; i < weights.size(); ++i) {
        os << "  step " << i << " weight " << weights[i] << " dims " << chain[i].dim() << "->"
           << chain[i + 1].dim() << "\n";
        for (const auto& v : chain[i + 1].basis) {
            os << "    [";
            for (size_t j = 0; j < v.size(); ++j) os << (j ? " " : "") << v[j].str();
            os << "]\n";
        }
    }
    os << "  tally";
    for (const auto& [w, c] : tally) os << " " << w << ":" << c;
    os << "\n";
    return os.str();
}

// ------------------------------------------------------------------ finite QH

Report verify_finite_qh(AlgebraPtr a, const std::vector<Subspace>& chain) {
    Report rep;
    bool shape_ok = !chain.empty() && chain.front().dim() == 0 && chain.back().dim() == a->dim();
    for (size_t i = 0; i + 1 < chain.size() && shape_ok; ++i)
        if (!(chain[i + 1].contains(chain[i]) && chain[i + 1].dim() > chain[i].dim())) shape_ok = false;
    rep.add("chain.shape", "strictly increasing ideal chain from 0 to A", shape_ok);
    if (!shape_ok) return rep;
    for (size_t i = 1; i < chain.size(); ++i) {
        std::string w;
        bool ideal_ok = is_two_sided_ideal(*a, chain[i], &w);
        rep.add("chain.ideal." + std::to_string(i), "chain member is a two-sided ideal", ideal_ok, w);
        if (!ideal_ok) return rep;
    }

    // generators project onto generators, so quotients by coordinate-spanned
    // ideals inherit the parent's generating set through surviving labels
    auto coord_spanned = [&](const Subspace& s) {
        for (const auto& v : s.basis) {
            int nz = 0;
            for (int i = 0; i < a->dim(); ++i)
                if (!v[i].is_zero()) {
                    ++nz;
                    if (!v[i].is_one()) return false;
                }
            if (nz != 1) return false;
        }
        return true;
    };
    auto seed_gens = [&](BasedAlgebra& q, const Subspace& ideal) {
        if (!coord_spanned(ideal)) return;
        const std::vector<int>& pg = cached_generating_set(a);
        for (int g : pg) {
            int idx = q.label_index(a->labels[g]);
            if (idx >= 0) q.gens_hint.push_back(idx);
        }
    };

    for (size_t n = 1; n < chain.size(); ++n) {
        const std::string tag = "step" + std::to_string(n);
        // quotient algebra A/H_{n-1}
        QuotientResult lower = quotient_algebra(*a, chain[n - 1]);
        seed_gens(lower.algebra, chain[n - 1]);
        AlgebraPtr lower_ptr = std::make_shared<BasedAlgebra>(lower.algebra);
        // H_n/H_{n-1} as a right module over the quotient
        // (push the span through the projection, then take the submodule)
        std::vector<Vec> pushed;
        for (const auto& v : chain[n].basis) pushed.push_back(mat_apply(lower.projection, v));
        Subspace span_lower = Subspace::span(a->f, lower.algebra.dim(), pushed);
        ModPtr reg = regular_module(lower_ptr, Side::Right);
        ModPtr q = sub_module(*reg, span_lower).mod;

        // (1) projectivity over A/H_{n-1}
        bool proj_ok = false;
        std::string pw;
        try {
            CoverResult cov = projective_cover(*q);
            proj_ok = cov.syzygy.dim() == 0;
            if (!proj_ok) pw = "syzygy dimension " + std::to_string(cov.syzygy.dim());
        } catch (const std::exception& e) {
            pw = e.what();
        }
        rep.add(tag + ".projective", "subquotient projective over the lower quotient", proj_ok, pw);

        // (2) Hom(H_n/H_{n-1}, A/H_n) = 0
        QuotientResult upper = quotient_algebra(*a, chain[n]);
        // A/H_n as a right module over A/H_{n-1}: lift basis elements of the
        // lower quotient to A (complement coordinates keep their labels) and
        // act through the upper projection
        std::vector<Mat> act;
        for (int k = 0; k < lower.algebra.dim(); ++k) {
            int src = a->label_index(lower.algebra.labels[k]);
            Vec lift = a->basis_vec(src);
            Mat rm = a->right_mult(lift); // x -> x * lift on A
            // conjugate through the projection: need a section of proj
            Mat action(a->f, upper.algebra.dim(), upper.algebra.dim());
            for (int j = 0; j < upper.algebra.dim(); ++j) {
                int srcj = a->label_index(upper.algebra.labels[j]);
                Vec img = mat_apply(upper.projection, mat_apply(rm, a->basis_vec(srcj)));
                for (int i = 0; i < upper.algebra.dim(); ++i) action.at(i, j) = img[i];
            }
            act.push_back(std::move(action));
        }
        ModPtr a_mod_hn = make_module(lower_ptr, Side::Right, std::move(act));
        int hom_upper = static_cast<int>(hom_space(*q, *a_mod_hn).size());
        rep.add(tag + ".homup", "no maps into the upper quotient", hom_upper == 0,
                hom_upper ? "hom dimension " + std::to_string(hom_upper) : "");

        // (3) Hom(H_n/H_{n-1}, rad(H_n/H_{n-1})) = 0
        Subspace rad_lower = radical(lower.algebra).span;
        Subspace radq = radical_submodule(*q, rad_lower);
        ModPtr radq_mod = sub_module(*q, radq).mod;
        int hom_rad = static_cast<int>(hom_space(*q, *radq_mod).size());
        rep.add(tag + ".homrad", "no maps into the radical of the subquotient", hom_rad == 0,
                hom_rad ? "hom dimension " + std::to_string(hom_rad) : "");
    }
    return rep;
}

// ------------------------------------------------------------------ ascending

Report verify_ascending_qh(const AlgebraTower& t, const std::vector<std::vector<Subspace>>& chains,
                           bool exhaustive) {
    Report rep;
    if (t.height() == 0 || chains.size() != static_cast<size_t>(t.height())) {
        rep.add("shape", "one chain per tower level", false, "chain count mismatch");
        return rep;
    }
    // structural checks per level
    for (int l = 0; l < t.height(); ++l) {
        const BasedAlgebra& a = *t.levels[l];
        const auto& ch = chains[l];
        bool ok = !ch.empty() && ch.front().dim() == 0 && ch.back().dim() == a.dim();
        std::string w = ok ? "" : "chain must run from 0 to the level algebra";
        for (size_t i = 0; i + 1 < ch.size() && ok; ++i)
            if (!ch[i + 1].contains(ch[i])) {
                ok = false;
                w = "chain not increasing at step " + std::to_string(i);
            }
        for (size_t i = 1; i < ch.size() && ok; ++i)
            if (!is_two_sided_ideal(a, ch[i], &w)) ok = false;
        rep.add("level" + std::to_string(l) + ".chain", "ideal chain at the level", ok, w);
    }
    // compatibility: connecting maps carry chain members onto chain members
    for (int l = 0; l + 1 < t.height(); ++l) {
        bool ok = true;
        std::string w;
        size_t common = std::min(chains[l].size(), chains[l + 1].size());
        for (size_t i = 0; i + 1 < common; ++i) {
            std::vector<Vec> img;
            for (const auto& v : chains[l + 1][i].basis) img.push_back(mat_apply(t.maps[l], v));
            Subspace s = Subspace::span(t.levels[l]->f, t.levels[l]->dim(), img);
            if (!(s == chains[l][i])) {
                ok = false;
                w = "step " + std::to_string(i) + " not carried onto the lower level";
                break;
            }
        }
        rep.add("compat" + std::to_string(l), "connecting maps respect the chains", ok, w);
    }
    // heredity conditions for stabilized steps, checked once at the deepest
    // level (the strongest finite approximation of the limit statement);
    // a step counts as stabilized when its subquotient dimension agrees with
    // the level below
    for (int l = exhaustive ? 0 : t.height() - 1; l < t.height(); ++l) {
        const auto& ch = chains[l];
        int stable_upto = 0;
        if (l >= 1) {
            const auto& down = chains[l - 1];
            size_t common = std::min(ch.size(), down.size());
            for (size_t i = 1; i + 1 < common; ++i) {
                int dtop = ch[i].dim() - ch[i - 1].dim();
                int dlow = down[i].dim() - down[i - 1].dim();
                if (dtop == dlow)
                    stable_upto = static_cast<int>(i);
                else
                    break;
            }
        } else if (t.height() == 1) {
            stable_upto = static_cast<int>(ch.size()) - 1; // single level: everything
        }
        if (stable_upto > 0) {
            std::vector<Subspace> sub(ch.begin(), ch.begin() + stable_upto + 1);
            // cap with the full algebra so the finite checker sees a complete
            // chain; the synthetic cap step's claims are dropped
            if (sub.back().dim() < t.levels[l]->dim())
                sub.push_back(Subspace::full(t.levels[l]->f, t.levels[l]->dim()));
            Report fin = verify_finite_qh(t.levels[l], sub);
            const std::string cap = "step" + std::to_string(sub.size() - 1) + ".";
            const std::string tag = l == t.height() - 1 ? "top." : "level" + std::to_string(l) + ".";
            for (const auto& c : fin.claims) {
                if (c.id.rfind(cap, 0) == 0) continue;
                rep.add(tag + c.id, c.anchor, c.pass, c.witness);
            }
        } else if (l == t.height() - 1) {
            rep.add("top.stable", "at least one stabilized chain step", false,
                    "no step has stabilized; deepen the tower");
        }
    }
    // cofinality: every top-level weight is eventually reached by the chain
    const BasedAlgebra& top = *t.top();
    const auto& topchain = chains.back();
    const Subspace& rad_top = radical_span_cached(t.top());
    std::set<std::string> reached;
    {
        ModPtr reg = regular_module(t.top(), Side::Right);
        for (size_t i = 1; i < topchain.size(); ++i) {
            ModPtr hn = sub_module(*reg, topchain[i]).mod;
            Subspace radh = radical_submodule(*hn, rad_top);
            ModPtr tophn = quotient_module(*hn, radh).mod;
            for (const auto& e : top.idems)
                if (!reached.count(e.weight) && multiplicity(*tophn, e.weight) > 0)
                    reached.insert(e.weight);
        }
    }
    bool cof_ok = true;
    std::string cw;
    for (const auto& e : top.idems)
        if (!reached.count(e.weight)) {
            cof_ok = false;
            cw = "weight " + e.weight + " never appears in a chain top";
            break;
        }
    rep.add("cofinal", "every top-level weight escapes some chain member", cof_ok, cw);
    return rep;
}

// ------------------------------------------------------------------ descending

Report verify_descending_qh(const AlgebraTower& t, const std::vector<Subspace>& g_at_top) {
    Report rep;
    // g_at_top[k] is the kernel of top -> level k (k = 0..height-2), i.e. the
    // image of G_{k+1}; the level-k algebra is top/G_{k+1}
    if (static_cast<size_t>(t.height()) != g_at_top.size() + 1) {
        rep.add("shape", "one kernel span per proper level", false, "span count mismatch");
        return rep;
    }
    for (int k = 0; k + 1 < t.height(); ++k) {
        Subspace ker = t.kernel_to(k);
        bool ok = ker == g_at_top[k];
        rep.add("kernel" + std::to_string(k), "tower kernel realizes the descending ideal", ok,
                ok ? "" : "kernel differs from the declared span");
    }
    // each level passes the finite checker with the reversed chain
    for (int k = 0; k < t.height(); ++k) {
        const BasedAlgebra& a = *t.levels[k];
        Mat proj = t.composite(t.height() - 1, k);
        // reversed chain at this level: images of the larger descending ideals
        std::vector<Subspace> chain;
        chain.push_back(Subspace::span(a.f, a.dim(), {})); // G_{k+1} image = 0
        for (int j = k - 1; j >= 0; --j) {
            std::vector<Vec> img;
            for (const auto& v : g_at_top[j].basis) img.push_back(mat_apply(proj, v));
            chain.push_back(Subspace::span(a.f, a.dim(), img));
        }
        chain.push_back(Subspace::full(a.f, a.dim()));
        Report fin = verify_finite_qh(t.levels[k], chain);
        bool all = fin.all_pass();
        std::string w;
        if (!all)
            for (const auto& c : fin.claims)
                if (!c.pass) w = c.id + ": " + c.witness;
        rep.add("level" + std::to_string(k) + ".finite",
                "quotient is quasi-hereditary for the reversed chain", all, w);
    }
    return rep;
}

// ------------------------------------------------------------------ induced order

InducedOrder induced_order(AlgebraPtr a, const std::vector<Subspace>& chain) {
    InducedOrder out;
    const Field f = a->f;
    Subspace rad = radical(*a).span;
    for (const auto& e : a->idems) {
        // unique maximal right ideal with quotient M(w): rad + sum of other columns
        std::vector<Vec> gens = rad.basis;
        for (const auto& e2 : a->idems) {
            if (e2.weight == e.weight) continue;
            Mat l = a->left_mult(e2.v); // e2 * A spans the right ideal
            for (int j = 0; j < a->dim(); ++j) gens.push_back(l.col(j));
        }
        Subspace imax = Subspace::span(f, a->dim(), gens);
        int k1 = 0;
        for (size_t k = 0; k < chain.size(); ++k)
            if (imax.contains(chain[k])) k1 = static_cast<int>(k);
        // composition-factor definition: largest k with (A/H_k) e_w != 0
        Mat r = a->right_mult(e.v);
        Subspace aew = image_of(r, Subspace::full(f, a->dim())); // A e_w ... right weight space
        // for right modules the weight space of A/H_k at w is (A e_w + H_k)/H_k
        int k2 = 0;
        for (size_t k = 0; k < chain.size(); ++k)
            if (!chain[k].contains(aew)) k2 = static_cast<int>(k);
        if (k1 != k2) {
            out.ok = false;
            out.why = "ambiguous chain position for weight " + e.weight + ": " + std::to_string(k1) +
                      " vs " + std::to_string(k2);
            return out;
        }
        out.level_of[e.weight] = k1;
    }
    // order: v < w iff k(v) > k(w); covers between consecutive occupied levels
    out.poset.elems.clear();
    for (const auto& e : a->idems) out.poset.elems.push_back(e.weight);
    std::vector<int> ks;
    for (const auto& [w, k] : out.level_of) ks.push_back(k);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    for (size_t i = 0; i + 1 < ks.size(); ++i) {
        for (size_t aidx = 0; aidx < out.poset.elems.size(); ++aidx)
            for (size_t bidx = 0; bidx < out.poset.elems.size(); ++bidx) {
                // a at the deeper level ks[i+1] is smaller than b at ks[i]
                if (out.level_of[out.poset.elems[aidx]] == ks[i + 1] &&
                    out.level_of[out.poset.elems[bidx]] == ks[i])
                    out.poset.covers.emplace_back(static_cast<int>(aidx), static_cast<int>(bidx));
            }
    }
    out.poset.finalize();
    return out;
}

// ------------------------------------------------------------------ anti-automorphism

Report verify_anti_automorphism_single(AlgebraPtr a, const Mat& phi) {
    Report rep;
    const int n = a->dim();
    bool bij = rank(phi) == n;
    rep.add("bijective", "anti-automorphism is bijective", bij);
    bool anti = true;
    std::string w;
    for (int k = 0; k < n && anti; ++k)
        for (int l = 0; l < n; ++l) {
            Vec lhs = mat_apply(phi, a->mul(a->basis_vec(k), a->basis_vec(l)));
            Vec rhs = a->mul(mat_apply(phi, a->basis_vec(l)), mat_apply(phi, a->basis_vec(k)));
            if (a->graded() && a->deg[k] == 1 && a->deg[l] == 1) rhs = scale_vec(-Scalar::one(a->f), rhs);
            if (lhs != rhs) {
                anti = false;
                w = "fails at (" + a->labels[k] + "," + a->labels[l] + ")";
                break;
            }
        }
    rep.add("anti", a->graded() ? "anti-multiplicative with parity sign" : "anti-multiplicative", anti, w);
    bool unit_ok = mat_apply(phi, a->unit) == a->unit;
    rep.add("unit", "fixes the unit", unit_ok);
    // simples are fixed by the induced duality
    bool simples_ok = true;
    std::string sw;
    for (const auto& e : a->idems) {
        try {
            ModPtr l = simple_module(a, e.weight, Side::Left);
            ModPtr lt = dualize(*l, phi);
            if (!find_isomorphism(*l, *lt)) {
                simples_ok = false;
                sw = "simple at " + e.weight + " moved";
                break;
            }
        } catch (const std::exception& ex) {
            simples_ok = false;
            sw = ex.what();
            break;
        }
    }
    rep.add("simples", "duality fixes every simple", simples_ok, sw);
    return rep;
}

Report verify_anti_automorphism(const AlgebraTower& t, const Mat& phi) {
    Report rep = verify_anti_automorphism_single(t.top(), phi);
    for (int k = 0; k + 1 < t.height(); ++k) {
        Subspace ker = t.kernel_to(k);
        std::vector<Vec> img;
        for (const auto& v : ker.basis) img.push_back(mat_apply(phi, v));
        bool ok = Subspace::span(t.top()->f, t.top()->dim(), img) == ker;
        rep.add("kernel" + std::to_string(k), "kernel ideal preserved", ok);
    }
    return rep;
}

} // namespace qhpc
