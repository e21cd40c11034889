#include "CLI11.hpp"

#include "qhpc/gl11.hpp"
#include "qhpc/ringel.hpp"
#include "qhpc/specfile.hpp"
#include "qhpc/tilting.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace qhpc;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int emit_report(const Report& rep, bool json, const std::string& out_path) {
    std::string text = json ? rep.render_json() : rep.render_text();
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        out << text;
    }
    return rep.all_pass() ? 0 : 1;
}

struct LoadedSpec {
    AlgebraSpec spec;
    AlgebraPtr alg;
};

LoadedSpec load_spec(const std::string& path) {
    LoadedSpec out;
    out.spec = parse_algebra_spec(slurp(path));
    out.alg = std::make_shared<BasedAlgebra>(out.spec.algebra);
    return out;
}

// context over the parsed algebra; graded inputs are replaced by their parity
// double with the doubled poset
struct PreparedContext {
    AlgebraPtr alg;
    WeightPoset poset;
};

PreparedContext prepare(const LoadedSpec& ls) {
    PreparedContext out;
    if (ls.alg->graded()) {
        out.alg = std::make_shared<BasedAlgebra>(super_double(*ls.alg));
        out.poset = double_poset(ls.spec.poset);
    } else {
        out.alg = ls.alg;
        out.poset = ls.spec.poset;
    }
    return out;
}

AlgebraTower tower_from_spec(const LoadedSpec& ls) {
    AlgebraTower t;
    std::vector<AlgebraPtr> levels;
    for (const auto& kernel : ls.spec.tower_kernels) {
        Subspace s = Subspace::span(ls.alg->f, ls.alg->dim(), kernel);
        QuotientResult q = quotient_algebra(*ls.alg, s);
        levels.push_back(std::make_shared<BasedAlgebra>(std::move(q.algebra)));
    }
    levels.push_back(ls.alg);
    t.levels = levels;
    for (size_t i = 0; i + 1 < levels.size(); ++i) {
        const BasedAlgebra& src = *levels[i + 1];
        const BasedAlgebra& dst = *levels[i];
        Mat m(src.f, dst.dim(), src.dim());
        for (int j = 0; j < src.dim(); ++j) {
            int t2 = dst.label_index(src.labels[j]);
            if (t2 >= 0) m.at(t2, j) = Scalar::one(src.f);
        }
        t.maps.push_back(std::move(m));
    }
    return t;
}

// heredity chain derived from a poset: ideals generated by the weights
// outside each chain member
std::vector<Subspace> chain_from_poset(AlgebraPtr a, WeightPoset poset) {
    poset.finalize();
    std::set<int> all;
    for (int i = 0; i < poset.n(); ++i) all.insert(i);
    GammaChain gc = build_gamma_chain(poset, poset.maximal_of(all));
    std::vector<Subspace> chain;
    for (size_t k = 0; k < gc.gammas.size(); ++k) {
        std::set<std::string> gamma;
        for (int i : gc.gammas[k]) gamma.insert(poset.elems[i]);
        chain.push_back(heredity_ideal(*a, gamma).span);
    }
    return chain;
}

int cmd_verify(const std::string& file, std::vector<std::string> checks, bool json,
               const std::string& out_path) {
    LoadedSpec ls = load_spec(file);
    Report rep;
    rep.merge(verify_algebra(*ls.alg), "algebra");
    for (const auto& c : checks) {
        if (c == "algebra") continue;
        if (c == "qh-finite") {
            PreparedContext pc = prepare(ls);
            rep.merge(verify_finite_qh(pc.alg, chain_from_poset(pc.alg, pc.poset)), "qh-finite");
        } else if (c == "qh-ascending") {
            AlgebraTower t = tower_from_spec(ls);
            if (ls.alg->graded()) t = gl11::doubled_tower(t);
            WeightPoset declared = ls.alg->graded() ? double_poset(ls.spec.poset) : ls.spec.poset;
            std::vector<std::vector<Subspace>> chains;
            for (const auto& lvl : t.levels) {
                WeightPoset p;
                for (const auto& e : lvl->idems) p.elems.push_back(e.weight);
                for (auto [lo, hi] : declared.covers) {
                    int i = p.index_of(declared.elems[lo]);
                    int j = p.index_of(declared.elems[hi]);
                    if (i >= 0 && j >= 0) p.covers.emplace_back(i, j);
                }
                chains.push_back(chain_from_poset(lvl, p));
            }
            rep.merge(verify_ascending_qh(t, chains), "qh-ascending");
        } else if (c == "qh-descending") {
            AlgebraTower t = tower_from_spec(ls);
            std::vector<Subspace> gs;
            for (const auto& kernel : ls.spec.tower_kernels)
                gs.push_back(Subspace::span(ls.alg->f, ls.alg->dim(), kernel));
            rep.merge(verify_descending_qh(t, gs), "qh-descending");
        } else if (c == "duality") {
            try {
                Mat phi = gl11::chevalley_involution(*ls.alg);
                AlgebraTower t = tower_from_spec(ls);
                if (ls.alg->graded()) {
                    Mat phid = gl11::double_anti_automorphism(*ls.alg, phi);
                    rep.merge(verify_anti_automorphism(gl11::doubled_tower(t), phid), "duality");
                } else {
                    rep.merge(verify_anti_automorphism(t, phi), "duality");
                }
            } catch (const std::exception& e) {
                rep.add("duality", "involution from the basis labels", false, e.what());
            }
        } else {
            std::cerr << "usage error: unknown check '" << c << "'\n";
            std::exit(2);
        }
    }
    return emit_report(rep, json, out_path);
}

int cmd_tilting(const std::string& file, const std::string& weight, bool json,
                const std::string& out_path, const std::string& emit_path) {
    LoadedSpec ls = load_spec(file);
    PreparedContext pc = prepare(ls);
    HwContext ctx = HwContext::make(pc.alg, pc.poset);
    TiltingBuild tb = build_tilting(ctx, weight);
    Report rep;
    rep.add("built", "tilting module constructed", true,
            "dim " + std::to_string(tb.t->d) + ", steps " + std::to_string(tb.log.size()));
    rep.merge(verify_tilting(ctx, *tb.t), "tilting");
    rep.merge(end_locality(ctx, tb), "end");
    if (!emit_path.empty()) {
        std::ofstream out(emit_path);
        out << write_module_spec(*tb.t);
        std::istringstream cert(tb.to_text());
        std::string line;
        while (std::getline(cert, line)) out << "# " << line << "\n";
    }
    return emit_report(rep, json, out_path);
}

int cmd_ringel(const std::string& file, bool json, const std::string& out_path,
               const std::string& emit_path) {
    LoadedSpec ls = load_spec(file);
    PreparedContext pc = prepare(ls);
    HwContext ctx = HwContext::make(pc.alg, pc.poset);
    RingelData rd = ringel_dual(ctx);
    Report rep;
    rep.add("built", "dual algebra constructed", true, "dim " + std::to_string(rd.R->dim()));
    rep.merge(verify_reciprocity(ctx, rd), "ringel");
    rep.merge(verify_descending_of_R(ctx, rd), "descending");
    if (!emit_path.empty()) {
        std::vector<std::vector<Vec>> kernels;
        for (size_t k = 1; k + 1 < rd.i_chain.size(); ++k) kernels.push_back(rd.i_chain[k].basis);
        std::ofstream out(emit_path);
        out << write_algebra_spec(*rd.R, &rd.poset_op, &kernels);
    }
    return emit_report(rep, json, out_path);
}

int cmd_report_diff(const std::string& a, const std::string& b) {
    std::istringstream sa(slurp(a)), sb(slurp(b));
    std::string la, lb;
    int line = 0;
    bool differ = false;
    while (true) {
        bool ga = static_cast<bool>(std::getline(sa, la));
        bool gb = static_cast<bool>(std::getline(sb, lb));
        ++line;
        if (!ga && !gb) break;
        if (!ga || !gb || la != lb) {
            differ = true;
            std::cout << "line " << line << ":\n";
            std::cout << "  - " << (ga ? la : "<eof>") << "\n";
            std::cout << "  + " << (gb ? lb : "<eof>") << "\n";
        }
    }
    if (!differ) std::cout << "reports identical\n";
    return differ ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for based algebras, truncation towers, tilting modules and Ringel duals"};
    app.require_subcommand(1);

    std::string v_file, v_out;
    std::vector<std::string> v_checks;
    bool v_json = false;
    auto* verify = app.add_subcommand("verify", "verify an algebra-spec file");
    verify->add_option("spec", v_file, "algebra-spec file")->required();
    verify->add_option("--checks", v_checks, "qh-finite, qh-ascending, qh-descending, duality")
        ->delimiter(',');
    verify->add_flag("--json", v_json, "machine-readable report");
    verify->add_option("--out", v_out, "write the report to a file");

    std::string t_file, t_weight, t_out, t_emit;
    bool t_json = false;
    auto* tilting = app.add_subcommand("tilting", "build one tilting module");
    tilting->add_option("spec", t_file, "algebra-spec file")->required();
    tilting->add_option("--weight", t_weight, "weight label")->required();
    tilting->add_flag("--json", t_json, "machine-readable report");
    tilting->add_option("--out", t_out, "write the report to a file");
    tilting->add_option("--emit", t_emit, "write the module-spec with its certificate");

    std::string r_file, r_out, r_emit;
    bool r_json = false;
    auto* ringel = app.add_subcommand("ringel", "compute and verify the Ringel dual");
    ringel->add_option("spec", r_file, "algebra-spec file")->required();
    ringel->add_flag("--json", r_json, "machine-readable report");
    ringel->add_option("--out", r_out, "write the report to a file");
    ringel->add_option("--emit", r_emit, "write the dual as an algebra-spec");

    std::int64_t g_p = 2, g_r = 2;
    int g_level = 8;
    std::string g_check = "all", g_out, g_emit;
    bool g_json = false;
    auto* gl = app.add_subcommand("gl11", "generate and cross-validate the GL(1|1) example");
    gl->add_option("--p", g_p, "field characteristic (prime or 0)")->required();
    gl->add_option("--r", g_r, "degree")->required();
    gl->add_option("--level", g_level, "truncation level")->required();
    gl->add_option("--check", g_check, "table|quiver|structure|tilting|ringel|iso|all");
    gl->add_flag("--json", g_json, "machine-readable report");
    gl->add_option("--out", g_out, "write the report to a file");
    gl->add_option("--emit", g_emit, "directory for generated algebra-spec files");

    std::string d_a, d_b;
    auto* rdiff = app.add_subcommand("report-diff", "compare two report files");
    rdiff->add_option("a", d_a)->required();
    rdiff->add_option("b", d_b)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) return cmd_verify(v_file, v_checks, v_json, v_out);
        if (*tilting) return cmd_tilting(t_file, t_weight, t_json, t_out, t_emit);
        if (*ringel) return cmd_ringel(r_file, r_json, r_out, r_emit);
        if (*gl) {
            gl11::CrossValidateOptions opt;
            if (g_check != "all") {
                opt.check_table = g_check == "table";
                opt.check_quiver = g_check == "quiver";
                opt.check_structure = g_check == "structure";
                opt.check_tilting = g_check == "tilting" || g_check == "ringel" || g_check == "iso";
                opt.check_ringel = g_check == "ringel" || g_check == "iso";
                opt.check_iso = g_check == "iso";
            }
            Report rep = gl11::cross_validate(g_p, g_r, g_level, opt);
            if (!g_emit.empty()) gl11::emit_spec_files(g_p, g_r, g_level, g_emit);
            return emit_report(rep, g_json, g_out);
        }
        if (*rdiff) return cmd_report_diff(d_a, d_b);
    } catch (const SpecParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
