#include "qhpc/specfile.hpp"

#include <sstream>

namespace qhpc {

namespace {

std::string scalar_str(const Scalar& s) { return s.str(); }

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> toks;
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

void write_pairs(std::ostringstream& os, const BasedAlgebra& a, const Vec& v) {
    for (int i = 0; i < a.dim(); ++i)
        if (!v[i].is_zero()) os << " " << a.labels[i] << " " << scalar_str(v[i]);
}

} // namespace

std::string write_algebra_spec(const BasedAlgebra& a, const WeightPoset* poset,
                               const std::vector<std::vector<Vec>>* tower_kernels) {
    std::ostringstream os;
    os << "algebra-spec v1\n";
    os << "field " << a.f.p << "\n";
    for (int i = 0; i < a.dim(); ++i)
        os << "basis " << a.labels[i] << " " << (a.graded() ? a.deg[i] : 0) << "\n";
    os << "unit";
    write_pairs(os, a, a.unit);
    os << "\n";
    for (int k = 0; k < a.dim(); ++k)
        for (int l = 0; l < a.dim(); ++l) {
            if (a.table[k][l].empty()) continue;
            Vec v = zero_vec(a.f, a.dim());
            for (const auto& t : a.table[k][l]) v[t.idx] = v[t.idx] + t.c;
            if (is_zero_vec(v)) continue;
            os << "mul " << a.labels[k] << " " << a.labels[l];
            write_pairs(os, a, v);
            os << "\n";
        }
    for (const auto& e : a.idems) {
        os << "idem " << e.weight;
        write_pairs(os, a, e.v);
        os << "\n";
    }
    if (poset)
        for (auto [lo, hi] : poset->covers)
            os << "cover " << poset->elems[lo] << " " << poset->elems[hi] << "\n";
    if (a.has_radical_hint)
        for (const auto& v : a.radical_hint) {
            os << "radical";
            write_pairs(os, a, v);
            os << "\n";
        }
    if (tower_kernels)
        for (size_t k = 0; k < tower_kernels->size(); ++k)
            for (const auto& v : (*tower_kernels)[k]) {
                os << "tower " << k;
                write_pairs(os, a, v);
                os << "\n";
            }
    return os.str();
}

AlgebraSpec parse_algebra_spec(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;

    bool have_header = false, have_field = false;
    Field f{0};
    std::vector<std::string> labels;
    std::vector<int> degs;
    bool any_odd = false;
    struct PendingVec {
        int lineno;
        std::vector<std::pair<std::string, std::string>> pairs;
    };
    std::optional<PendingVec> unit;
    struct PendingMul {
        int lineno;
        std::string k, l;
        std::vector<std::pair<std::string, std::string>> pairs;
    };
    std::vector<PendingMul> muls;
    struct PendingIdem {
        int lineno;
        std::string weight;
        std::vector<std::pair<std::string, std::string>> pairs;
    };
    std::vector<PendingIdem> idems;
    std::vector<std::pair<std::string, std::string>> covers;
    std::vector<PendingVec> radicals;
    std::vector<std::pair<int, PendingVec>> towers;

    auto parse_pairs = [&](const std::vector<std::string>& toks, size_t from,
                           int ln) -> std::vector<std::pair<std::string, std::string>> {
        if ((toks.size() - from) % 2 != 0) throw SpecParseError(ln, "expected label/value pairs");
        std::vector<std::pair<std::string, std::string>> out;
        for (size_t i = from; i + 1 < toks.size(); i += 2) out.emplace_back(toks[i], toks[i + 1]);
        return out;
    };

    while (std::getline(is, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
        auto toks = tokens_of(line);
        if (toks.empty()) continue;
        if (!have_header) {
            if (toks.size() != 2 || toks[0] != "algebra-spec" || toks[1] != "v1")
                throw SpecParseError(lineno, "expected 'algebra-spec v1' header");
            have_header = true;
            continue;
        }
        const std::string& key = toks[0];
        if (key == "field") {
            if (toks.size() != 2) throw SpecParseError(lineno, "field takes one value");
            try {
                f.p = std::stoll(toks[1]);
            } catch (...) {
                throw SpecParseError(lineno, "bad field characteristic");
            }
            if (f.p != 0 && !is_prime(f.p)) throw SpecParseError(lineno, "characteristic must be prime or 0");
            have_field = true;
        } else if (key == "basis") {
            if (toks.size() != 3) throw SpecParseError(lineno, "basis takes label and degree");
            labels.push_back(toks[1]);
            int d = toks[2] == "1" ? 1 : (toks[2] == "0" ? 0 : -1);
            if (d < 0) throw SpecParseError(lineno, "degree must be 0 or 1");
            degs.push_back(d);
            if (d == 1) any_odd = true;
        } else if (key == "unit") {
            unit = PendingVec{lineno, parse_pairs(toks, 1, lineno)};
        } else if (key == "mul") {
            if (toks.size() < 3) throw SpecParseError(lineno, "mul takes two factors");
            muls.push_back(PendingMul{lineno, toks[1], toks[2], parse_pairs(toks, 3, lineno)});
        } else if (key == "idem") {
            if (toks.size() < 2) throw SpecParseError(lineno, "idem takes a weight label");
            idems.push_back(PendingIdem{lineno, toks[1], parse_pairs(toks, 2, lineno)});
        } else if (key == "cover") {
            if (toks.size() != 3) throw SpecParseError(lineno, "cover takes two weights");
            covers.emplace_back(toks[1], toks[2]);
        } else if (key == "radical") {
            radicals.push_back(PendingVec{lineno, parse_pairs(toks, 1, lineno)});
        } else if (key == "tower") {
            if (toks.size() < 2) throw SpecParseError(lineno, "tower takes a level index");
            int lv;
            try {
                lv = std::stoi(toks[1]);
            } catch (...) {
                throw SpecParseError(lineno, "bad tower level");
            }
            towers.emplace_back(lv, PendingVec{lineno, parse_pairs(toks, 2, lineno)});
        } else {
            throw SpecParseError(lineno, "unknown directive '" + key + "'");
        }
    }
    if (!have_header) throw SpecParseError(lineno, "missing header");
    if (!have_field) throw SpecParseError(1, "missing field directive");
    if (labels.empty()) throw SpecParseError(1, "no basis elements");
    if (!unit) throw SpecParseError(1, "missing unit");

    AlgebraSpec out;
    out.algebra = BasedAlgebra::make(f, labels, any_odd ? degs : std::vector<int>{});
    BasedAlgebra& a = out.algebra;
    auto vec_of_pairs = [&](const PendingVec& pv) {
        Vec v = zero_vec(f, a.dim());
        for (const auto& [lab, val] : pv.pairs) {
            int i = a.label_index(lab);
            if (i < 0) throw SpecParseError(pv.lineno, "unknown basis label '" + lab + "'");
            try {
                v[i] = v[i] + parse_scalar(f, val);
            } catch (...) {
                throw SpecParseError(pv.lineno, "bad coefficient '" + val + "'");
            }
        }
        return v;
    };
    a.unit = vec_of_pairs(*unit);
    for (const auto& m : muls) {
        int k = a.label_index(m.k), l = a.label_index(m.l);
        if (k < 0 || l < 0) throw SpecParseError(m.lineno, "unknown factor label");
        Vec v = vec_of_pairs(PendingVec{m.lineno, m.pairs});
        SparseVec terms;
        for (int i = 0; i < a.dim(); ++i)
            if (!v[i].is_zero()) terms.push_back(SparseTerm{i, v[i]});
        a.set_product(k, l, std::move(terms));
    }
    for (const auto& e : idems)
        a.idems.push_back(BasedAlgebra::Idem{vec_of_pairs(PendingVec{e.lineno, e.pairs}), e.weight});
    for (const auto& rv : radicals) a.radical_hint.push_back(vec_of_pairs(rv));
    a.has_radical_hint = !radicals.empty();

    if (!covers.empty() || !a.idems.empty()) {
        for (const auto& e : a.idems) out.poset.elems.push_back(e.weight);
        for (const auto& [lo, hi] : covers) {
            int i = out.poset.index_of(lo), j = out.poset.index_of(hi);
            if (i < 0 || j < 0) throw SpecParseError(1, "cover references unknown weight");
            out.poset.covers.emplace_back(i, j);
        }
        out.has_poset = true;
    }
    if (!towers.empty()) {
        int maxlv = 0;
        for (const auto& [lv, pv] : towers) maxlv = std::max(maxlv, lv);
        out.tower_kernels.assign(maxlv + 1, {});
        for (const auto& [lv, pv] : towers) out.tower_kernels[lv].push_back(vec_of_pairs(pv));
    }
    return out;
}

std::string write_module_spec(const ModRep& m) {
    std::ostringstream os;
    os << "module-spec v1\n";
    os << "side " << (m.side == Side::Left ? "left" : "right") << "\n";
    os << "dim " << m.d << "\n";
    const BasedAlgebra& a = *m.alg;
    for (int k = 0; k < a.dim(); ++k)
        for (int i = 0; i < m.d; ++i)
            for (int j = 0; j < m.d; ++j)
                if (!m.act[k].at(i, j).is_zero())
                    os << "act " << a.labels[k] << " " << i << " " << j << " "
                       << scalar_str(m.act[k].at(i, j)) << "\n";
    return os.str();
}

ModPtr parse_module_spec(const std::string& text, AlgebraPtr alg) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    bool have_header = false;
    Side side = Side::Left;
    int dim = -1;
    std::vector<std::tuple<int, int, int, Scalar>> entries;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
        auto toks = tokens_of(line);
        if (toks.empty()) continue;
        if (!have_header) {
            if (toks.size() != 2 || toks[0] != "module-spec" || toks[1] != "v1")
                throw SpecParseError(lineno, "expected 'module-spec v1' header");
            have_header = true;
            continue;
        }
        if (toks[0] == "side") {
            if (toks.size() != 2 || (toks[1] != "left" && toks[1] != "right"))
                throw SpecParseError(lineno, "side must be left or right");
            side = toks[1] == "left" ? Side::Left : Side::Right;
        } else if (toks[0] == "dim") {
            if (toks.size() != 2) throw SpecParseError(lineno, "dim takes one value");
            dim = std::stoi(toks[1]);
        } else if (toks[0] == "act") {
            if (toks.size() != 5) throw SpecParseError(lineno, "act takes label, row, col, value");
            int k = alg->label_index(toks[1]);
            if (k < 0) throw SpecParseError(lineno, "unknown basis label");
            entries.emplace_back(k, std::stoi(toks[2]), std::stoi(toks[3]), parse_scalar(alg->f, toks[4]));
        } else {
            throw SpecParseError(lineno, "unknown directive '" + toks[0] + "'");
        }
    }
    if (dim < 0) throw SpecParseError(lineno, "missing dim");
    std::vector<Mat> act(alg->dim(), Mat(alg->f, dim, dim));
    for (auto& [k, i, j, v] : entries) {
        if (i < 0 || i >= dim || j < 0 || j >= dim) throw SpecParseError(1, "act index out of range");
        act[k].at(i, j) = v;
    }
    return make_module(std::move(alg), side, std::move(act));
}

WeightPoset double_poset(const WeightPoset& p) {
    WeightPoset out;
    for (const auto& e : p.elems) {
        out.elems.push_back(e + "^0");
        out.elems.push_back(e + "^1");
    }
    for (auto [lo, hi] : p.covers)
        for (int e1 = 0; e1 < 2; ++e1)
            for (int e2 = 0; e2 < 2; ++e2) out.covers.emplace_back(2 * lo + e1, 2 * hi + e2);
    return out;
}

} // namespace qhpc
