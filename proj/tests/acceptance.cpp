// Acceptance suite: one pass/fail line per criterion, timed against its
// stated budget. Exits nonzero when any criterion fails.

#include "property_suites.hpp"

#include "qhpc/specfile.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace qhpc;
using Clock = std::chrono::steady_clock;

namespace {

double secs(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

int failures = 0;

void line(const std::string& id, bool pass, double t, double budget, const std::string& text) {
    std::ostringstream os;
    os << "CRITERION " << id << " " << (pass ? "PASS" : "FAIL");
    os.setf(std::ios::fixed);
    os.precision(2);
    os << " (" << t << "s";
    if (budget > 0) os << " / " << budget << "s";
    os << ") " << text;
    std::cout << os.str() << std::endl;
    if (!pass) ++failures;
}

struct Pipeline {
    std::int64_t p, r;
    int level;
    gl11::SrBuild sr;
    AlgebraTower doubled;
    AlgebraPtr top;
    std::unique_ptr<HwContext> ctx;
    std::map<std::string, TiltingBuild> tilts;
    std::unique_ptr<RingelData> rd;
};

std::string wlab(int i, int eps) { return std::to_string(i) + "^" + std::to_string(eps); }

} // namespace

int main() {
    const int N = 8;
    std::vector<std::unique_ptr<Pipeline>> pipes;
    for (auto [p, r] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 2}, {3, 3}}) {
        auto pl = std::make_unique<Pipeline>();
        pl->p = p;
        pl->r = r;
        pl->level = N;
        pipes.push_back(std::move(pl));
    }

    // 1. table fidelity at level 8 for both characteristics
    {
        auto t0 = Clock::now();
        bool ok = true;
        std::string note;
        for (auto& pl : pipes) {
            pl->sr = gl11::build_Sr(pl->p, pl->r, pl->level);
            for (const auto& lvl : pl->sr.tower.levels) {
                Report rep = gl11::check_sr_table(*lvl);
                if (!rep.all_pass()) {
                    ok = false;
                    note = "p=" + std::to_string(pl->p) + ": " + rep.claims[0].witness;
                }
            }
        }
        double t = secs(t0, Clock::now());
        line("1", ok && t < 5.0, t, 5.0,
             "generated multiplication tables match the closed form on every basis pair, "
             "both characteristics, every level");
    }

    // 2. quiver relations and degree-2 completeness
    {
        auto t0 = Clock::now();
        bool ok = true;
        std::string note;
        for (auto& pl : pipes) {
            Report rep = gl11::verify_quiver(*pl->sr.tower.top());
            if (!rep.all_pass()) ok = false;
        }
        double t = secs(t0, Clock::now());
        line("2", ok && t < 2.0, t, 2.0,
             "arrow spaces, vanishing and mesh relations, and exactness of the degree-2 "
             "relation span");
    }

    // 3a. composition series shapes of the Schur projectives
    bool c3 = true;
    std::string c3note;
    {
        for (auto& pl : pipes) {
            for (int i = 0; i <= pl->level && c3; ++i) {
                auto pr = projective_indec(pl->sr.tower.top(), std::to_string(i), Side::Right);
                auto chain = radical_series(*pr.mod);
                std::vector<int> dims;
                for (size_t t = 0; t + 1 < chain.size(); ++t)
                    dims.push_back(chain[t].dim() - chain[t + 1].dim());
                std::vector<int> expect = (i == 0 || i == pl->level) ? std::vector<int>{1, 1}
                                                                     : std::vector<int>{1, 2, 1};
                if (dims != expect) {
                    c3 = false;
                    c3note = "series shape at index " + std::to_string(i);
                }
            }
        }
    }

    // 5. ascending chain conditions and the induced order
    {
        auto t0 = Clock::now();
        bool ok = true;
        std::string note;
        for (auto& pl : pipes) {
            pl->doubled = gl11::doubled_tower(pl->sr.tower);
            pl->top = pl->doubled.top();
            pl->ctx = std::make_unique<HwContext>(
                HwContext::make(pl->top, gl11::doubled_weight_poset(*pl->top)));
            auto chains = gl11::heredity_chains_doubled(pl->doubled);
            Report rep = verify_ascending_qh(pl->doubled, chains, /*exhaustive=*/true);
            if (!rep.all_pass()) {
                ok = false;
                for (const auto& c : rep.claims)
                    if (!c.pass) note = c.id;
            }
            InducedOrder io = induced_order(pl->top, chains.back());
            if (!io.ok) ok = false;
            for (int a = 0; a < pl->ctx->poset.n() && ok; ++a)
                for (int b = 0; b < pl->ctx->poset.n(); ++b) {
                    int ia = io.poset.index_of(pl->ctx->poset.elems[a]);
                    int ib = io.poset.index_of(pl->ctx->poset.elems[b]);
                    if (pl->ctx->poset.leq(a, b) != io.poset.leq(ia, ib)) ok = false;
                }
        }
        double t = secs(t0, Clock::now());
        line("5", ok, t, 0,
             "heredity chain conditions at every stabilized step and the induced order "
             "round-trips to the declared one" + (note.empty() ? "" : " [" + note + "]"));
    }

    // 6. tilting modules
    {
        auto t0 = Clock::now();
        bool ok = true;
        std::string note;
        for (auto& pl : pipes) {
            HwContext& ctx = *pl->ctx;
            for (int i = 0; i <= pl->level - 1 && ok; ++i)
                for (int eps = 0; eps < 2; ++eps) {
                    TiltingBuild tb = build_tilting(ctx, wlab(i, eps));
                    if (multiplicity(*tb.t, wlab(i, eps)) != 1) {
                        ok = false;
                        note = "multiplicity at " + wlab(i, eps);
                        break;
                    }
                    if (!defect_set(ctx, *tb.t).empty()) {
                        ok = false;
                        note = "defect at " + wlab(i, eps);
                        break;
                    }
                    if (!find_isomorphism(*tb.t, *ctx.I(wlab(i + 1, 1 - eps)))) {
                        ok = false;
                        note = "injective comparison at " + wlab(i, eps);
                        break;
                    }
                    Report el = end_locality(ctx, tb);
                    if (!el.all_pass()) {
                        ok = false;
                        note = "endomorphism locality at " + wlab(i, eps);
                        break;
                    }
                    if (i <= pl->level - 2) {
                        FiltrationOutcome fn = find_filtration(ctx, *tb.t, 'N');
                        if (!fn.cert) {
                            ok = false;
                            note = "costandard certificate at " + wlab(i, eps);
                            break;
                        }
                    }
                    pl->tilts.emplace(wlab(i, eps), std::move(tb));
                }
            // determinism across tie-break seeds, up to isomorphism
            for (const std::string w : {"0^0", "3^1"}) {
                TiltingOptions o1;
                o1.eps_ascending = false;
                TiltingOptions o2;
                o2.batched = true;
                TiltingOptions o3;
                o3.class_pick = 1;
                for (const auto& o : {o1, o2, o3}) {
                    TiltingBuild other = build_tilting(*pl->ctx, w, o);
                    if (!find_isomorphism(*pl->tilts.at(w).t, *other.t)) {
                        ok = false;
                        note = "uniqueness at " + w;
                    }
                }
            }
        }
        double t = secs(t0, Clock::now());
        line("6", ok, t, 0,
             "tilting modules are the adjacent injectives with multiplicity one, empty "
             "defect set, local endomorphisms, and seed-independent builds" +
                 (note.empty() ? "" : " [" + note + "]"));
    }

    // 7. Ringel dual: reference match, reciprocity, descending chain, quotient iso
    {
        auto t0 = Clock::now();
        bool ok = true;
        std::string note;
        for (auto& pl : pipes) {
            HwContext& ctx = *pl->ctx;
            pl->rd = std::make_unique<RingelData>(ringel_dual(ctx, {}, &pl->tilts));
            RingelData& rd = *pl->rd;
            Report rec = verify_reciprocity(ctx, rd);
            if (!rec.all_pass()) {
                ok = false;
                note = "reciprocity";
            }
            Report desc = verify_descending_of_R(ctx, rd);
            if (!desc.all_pass()) {
                ok = false;
                note = "descending";
            }
            AlgebraTower ref = gl11::build_Rr_reference(pl->p, pl->r, pl->level);
            gl11::RingelMatch match = gl11::match_reference(rd, *ref.top());
            if (!match.ok) {
                ok = false;
                note = "reference: " + match.why;
            } else {
                Report dd = gl11::double_dual_compare(rd, match, *pl->sr.tower.levels[pl->level - 2]);
                if (!dd.all_pass()) {
                    ok = false;
                    note = "quotient comparison";
                }
            }
        }
        double t = secs(t0, Clock::now());
        line("7", ok && t < 30.0, t, 30.0,
             "computed dual matches the closed-form tables with signs, reciprocity holds at "
             "every pair, the descending chain verifies, and the quotient comparison is "
             "multiplicative" + (note.empty() ? "" : " [" + note + "]"));
    }

    // 3b. dual projective dimensions complete criterion 3
    {
        bool ok = c3;
        std::string note = c3note;
        for (auto& pl : pipes) {
            HwContext rctx = HwContext::make(pl->rd->R, pl->rd->poset_op);
            for (const auto& w : pl->rd->weights) {
                int i = std::stoi(w.substr(0, w.find('^')));
                int expect = i == 0 ? 3 : (i == pl->level - 1 ? 2 : 4);
                if (rctx.P(w).mod->d != expect) {
                    ok = false;
                    note = "dual projective dimension at " + w;
                }
            }
        }
        line("3", ok, 0, 0,
             "projective series shapes (1-2-1 diamonds, 1-1 at the ends) and dual projective "
             "dimensions (4 interior, 3 at the top weight)" + (note.empty() ? "" : " [" + note + "]"));
    }

    // 4. semisimple branch
    {
        auto t0 = Clock::now();
        bool ok = true;
        std::string note;
        {
            auto ss = gl11::build_Sr(3, 2, N);
            if (radical(*ss.tower.top(), ss.tower.top()).span.dim() != 0) {
                ok = false;
                note = "radical at p=3,r=2";
            }
            for (int b = 0; b < N && ok; ++b) {
                Report rep = gl11::verify_M11_iso(*ss.tower.top(), b);
                if (!rep.all_pass() || rep.claims[0].id != "m11.map") {
                    ok = false;
                    note = "matrix-unit map at block " + std::to_string(b);
                }
            }
        }
        {
            auto ss = gl11::build_Sr(5, 3, N);
            if (radical(*ss.tower.top(), ss.tower.top()).span.dim() != 0) {
                ok = false;
                note = "radical at p=5,r=3";
            }
            for (int b = 0; b < N && ok; ++b) {
                Report rep = gl11::verify_M11_iso(*ss.tower.top(), b);
                if (!rep.all_pass() || rep.claims[0].id != "m11.fallback") {
                    ok = false;
                    note = "nonresidue fallback at block " + std::to_string(b);
                }
            }
        }
        double t = secs(t0, Clock::now());
        line("4", ok, t, 0,
             "semisimple branch: zero radical; square-root matrix-unit map at p=3,r=2 and the "
             "structural fallback at p=5,r=3" + (note.empty() ? "" : " [" + note + "]"));
    }

    // 8. property suites
    {
        using namespace qhpc_suites;
        struct Named {
            std::string name;
            std::function<SuiteResult()> run;
        };
        std::vector<Named> suites = {
            {"ext(Delta,nabla)=0", [] { return suite_ext_delta_nabla(); }},
            {"hom-multiplicity identity", [] { return suite_hom_projective(); }},
            {"filtration tallies + vanishing criterion", [] { return suite_filtration_multiplicities(); }},
            {"tilting ext vanishing", [] { return suite_tilting_ext(); }},
            {"duality functor ext preservation", [] { return suite_ext_preservation(); }},
        };
        bool ok = true;
        double total = 0;
        std::ostringstream detail;
        for (auto& s : suites) {
            auto t0 = Clock::now();
            SuiteResult r = s.run();
            double t = secs(t0, Clock::now());
            total += t;
            bool sok = r.ok() && r.cases >= 200 && t < 60.0;
            if (!sok) ok = false;
            detail.setf(std::ios::fixed);
            detail.precision(1);
            detail << " [" << s.name << ": " << r.cases << " cases, " << t << "s"
                   << (r.ok() ? "" : ", FAILED") << "]";
        }
        line("8", ok, total, 0, "randomized property suites, each under its minute budget:" + detail.str());
    }

    // 9. oracle equivalences
    {
        auto t0 = Clock::now();
        bool ok = true;
        std::string note;
        // ext via projective presentations vs brute-force enumeration over F2
        {
            const Field F2{2};
            BasedAlgebra dn = BasedAlgebra::make(F2, {"1", "x"});
            dn.add_term(0, 0, 0, Scalar::one(F2));
            dn.add_term(0, 1, 1, Scalar::one(F2));
            dn.add_term(1, 0, 1, Scalar::one(F2));
            dn.unit = unit_vec(F2, 2, 0);
            dn.idems.push_back({dn.unit, "w"});
            AlgebraPtr a = std::make_shared<BasedAlgebra>(std::move(dn));
            auto act_of = [&](std::vector<std::vector<std::int64_t>> x_action) {
                int dd = static_cast<int>(x_action.size());
                Mat x(F2, dd, dd);
                for (int i = 0; i < dd; ++i)
                    for (int j = 0; j < dd; ++j) x.at(i, j) = Scalar(F2, x_action[i][j]);
                return make_module(a, Side::Left, {Mat::identity(F2, dd), x});
            };
            std::vector<ModPtr> mods = {
                act_of({{0}}), regular_module(a, Side::Left), act_of({{0, 0}, {0, 0}}),
                act_of({{0, 0}, {1, 0}}),
                act_of({{0, 0, 0}, {1, 0, 0}, {0, 0, 0}})};
            // brute force enumerate compatible triangular actions
            auto brute = [&](const ModRep& m, const ModRep& n) {
                const int nm = n.d * m.d;
                const int bits = 2 * nm;
                std::vector<Vec> cocycles;
                for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
                    std::vector<Mat> c;
                    for (int k = 0; k < 2; ++k) {
                        Mat ck(F2, n.d, m.d);
                        for (int i = 0; i < n.d; ++i)
                            for (int j = 0; j < m.d; ++j)
                                ck.at(i, j) = Scalar(F2, (mask >> (k * nm + i * m.d + j)) & 1);
                        c.push_back(std::move(ck));
                    }
                    auto big = [&](int k) {
                        Mat e(F2, n.d + m.d, n.d + m.d);
                        for (int i = 0; i < n.d; ++i)
                            for (int j = 0; j < n.d; ++j) e.at(i, j) = n.act[k].at(i, j);
                        for (int i = 0; i < m.d; ++i)
                            for (int j = 0; j < m.d; ++j) e.at(n.d + i, n.d + j) = m.act[k].at(i, j);
                        for (int i = 0; i < n.d; ++i)
                            for (int j = 0; j < m.d; ++j) e.at(i, n.d + j) = c[k].at(i, j);
                        return e;
                    };
                    if (!(big(0) == Mat::identity(F2, n.d + m.d))) continue;
                    bool good = true;
                    for (int k = 0; k < 2 && good; ++k)
                        for (int l = 0; l < 2; ++l) {
                            Vec prod = a->mul(a->basis_vec(k), a->basis_vec(l));
                            Mat lhs(F2, n.d + m.d, n.d + m.d);
                            for (int t = 0; t < 2; ++t)
                                if (!prod[t].is_zero()) lhs = mat_add(lhs, mat_scale(prod[t], big(t)));
                            if (!(lhs == mat_mul(big(k), big(l)))) {
                                good = false;
                                break;
                            }
                        }
                    if (!good) continue;
                    Vec flat = zero_vec(F2, bits);
                    for (int b = 0; b < bits; ++b) flat[b] = Scalar(F2, (mask >> b) & 1);
                    cocycles.push_back(std::move(flat));
                }
                Subspace z = Subspace::span(F2, bits, cocycles);
                std::vector<Vec> cb;
                for (int i = 0; i < n.d; ++i)
                    for (int j = 0; j < m.d; ++j) {
                        Mat h(F2, n.d, m.d);
                        h.at(i, j) = Scalar::one(F2);
                        Vec flat = zero_vec(F2, bits);
                        for (int k = 0; k < 2; ++k) {
                            Mat ck = mat_sub(mat_mul(n.act[k], h), mat_mul(h, m.act[k]));
                            for (int rr = 0; rr < n.d; ++rr)
                                for (int cc = 0; cc < m.d; ++cc)
                                    flat[k * nm + rr * m.d + cc] = ck.at(rr, cc);
                        }
                        cb.push_back(std::move(flat));
                    }
                Subspace b = Subspace::span(F2, bits, cb);
                return z.dim() - b.dim();
            };
            int pairs = 0;
            for (const auto& m : mods)
                for (const auto& n : mods) {
                    if (2 * m->d * n->d > 20) continue; // enumeration budget
                    ++pairs;
                    if (ext1(*m, *n).dim != brute(*m, *n)) {
                        ok = false;
                        note = "brute-force mismatch";
                    }
                }
            if (pairs < 10) {
                ok = false;
                note = "too few brute-force pairs";
            }
        }
        // certificate tallies equal hom-dimension formulas on generated
        // certificates (re-run a fresh seeded batch and count)
        {
            using namespace qhpc_suites;
            SuiteResult r = suite_filtration_multiplicities(60);
            if (!r.ok()) {
                ok = false;
                note = "certificate formulas";
            }
        }
        double t = secs(t0, Clock::now());
        line("9", ok, t, 0,
             "ext via projective presentations equals brute-force enumeration; certificate "
             "tallies equal hom-dimension formulas" + (note.empty() ? "" : " [" + note + "]"));
    }

    // golden-file regression over the three pinned tuples
    {
        auto t0 = Clock::now();
        bool ok = true;
        std::string note;
        const std::string dir = std::string(QHPC_SOURCE_DIR) + "/tests/golden/";
        const bool write = std::getenv("QHPC_WRITE_GOLDEN") != nullptr;
        for (auto [p, r] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 2}, {3, 3}, {3, 2}}) {
            Report rep = gl11::cross_validate(p, r, N);
            std::string text = rep.render_text();
            std::string path = dir + "gl11_p" + std::to_string(p) + "_r" + std::to_string(r) +
                               "_N" + std::to_string(N) + ".txt";
            if (write) {
                std::ofstream out(path);
                out << text;
                continue;
            }
            std::ifstream in(path);
            if (!in) {
                ok = false;
                note = "missing golden " + path;
                continue;
            }
            std::ostringstream want;
            want << in.rdbuf();
            if (want.str() != text) {
                ok = false;
                note = "report drift at p=" + std::to_string(p) + ",r=" + std::to_string(r);
            }
            if (!rep.all_pass()) {
                ok = false;
                note = "claims failed at p=" + std::to_string(p) + ",r=" + std::to_string(r);
            }
        }
        double t = secs(t0, Clock::now());
        line("golden", ok, t, 0,
             std::string(write ? "golden reports written" : "reports byte-identical to the goldens") +
                 (note.empty() ? "" : " [" + note + "]"));
    }

    std::cout << "ACCEPTANCE: " << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
