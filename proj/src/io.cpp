#include "quotmmp/io.hpp"

#include <sstream>
#include <stdexcept>

#include "quotmmp/errors.hpp"

namespace quotmmp {

json field_to_json(const FieldSpec& field) {
    if (field.is_rational()) return json{{"type", "Q"}};
    return json{{"type", "Fp"}, {"p", field.characteristic()}};
}

FieldSpec field_from_json(const json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "Q") return FieldSpec::rationals();
    if (type == "Fp") return FieldSpec::prime_field(j.at("p").get<long>());
    throw std::invalid_argument("unknown field type '" + type + "'");
}

FieldSpec field_from_flag(const std::string& text) {
    if (text == "Q" || text == "q") return FieldSpec::rationals();
    if (text.rfind("Fp:", 0) == 0 || text.rfind("fp:", 0) == 0)
        return FieldSpec::prime_field(std::stol(text.substr(3)));
    throw std::invalid_argument("field flag must be 'Q' or 'Fp:<prime>', got '" + text + "'");
}

json point_to_json(const SheafMapPoint& pt) {
    json entries = json::array();
    for (int i = 0; i < pt.params().n; ++i) {
        json row = json::array();
        for (int j = 0; j < pt.params().s(); ++j) row.push_back(pt.entry(i, j).str());
        entries.push_back(std::move(row));
    }
    return json{{"field", field_to_json(pt.field())},
                {"n", pt.params().n},
                {"r", pt.params().r},
                {"d", pt.params().d},
                {"column_degrees", pt.column_degrees()},
                {"entries", std::move(entries)}};
}

SheafMapPoint point_from_json(const json& j, const FieldSpec& fallback) {
    FieldSpec field = j.contains("field") ? field_from_json(j.at("field")) : fallback;
    ModuliParams params = ModuliParams::checked(j.at("n").get<int>(), j.at("r").get<int>(),
                                                j.at("d").get<int>());
    std::vector<int> degrees = j.at("column_degrees").get<std::vector<int>>();
    if (static_cast<int>(degrees.size()) != params.s())
        throw std::invalid_argument("column_degrees must have length s = n - r");
    const json& rows = j.at("entries");
    std::vector<std::vector<BinaryForm>> entries;
    for (int i = 0; i < params.n; ++i) {
        std::vector<BinaryForm> row;
        for (int c = 0; c < params.s(); ++c) {
            std::string text = rows.at(i).at(c).get<std::string>();
            try {
                row.push_back(BinaryForm::parse(field, text, degrees[c]));
            } catch (const ParseError& e) {
                throw ParseError("entry (" + std::to_string(i) + ", " + std::to_string(c) +
                                     "): " + e.what(),
                                 e.column());
            }
        }
        entries.push_back(std::move(row));
    }
    return SheafMapPoint(params, field, std::move(degrees), std::move(entries));
}

SheafMapPoint point_from_string(const std::string& text, const FieldSpec& fallback) {
    return point_from_json(json::parse(text), fallback);
}

json subspace_to_json(const GrassmannPoint& K) {
    json basis = json::array();
    for (int r = 0; r < K.basis().rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < K.basis().cols(); ++c) row.push_back(K.basis().at(r, c).str());
        basis.push_back(std::move(row));
    }
    return json{{"field", field_to_json(K.basis().field())},
                {"n", K.params().n},
                {"r", K.params().r},
                {"d", K.params().d},
                {"m", K.level()},
                {"basis", std::move(basis)}};
}

GrassmannPoint subspace_from_json(const json& j, const FieldSpec& fallback) {
    FieldSpec field = j.contains("field") ? field_from_json(j.at("field")) : fallback;
    ModuliParams params = ModuliParams::checked(j.at("n").get<int>(), j.at("r").get<int>(),
                                                j.at("d").get<int>());
    int m = j.at("m").get<int>();
    const json& rows = j.at("basis");
    ExactMatrix basis(field, static_cast<int>(rows.size()), params.dim_Vm(m));
    for (size_t r = 0; r < rows.size(); ++r) {
        if (static_cast<int>(rows.at(r).size()) != params.dim_Vm(m))
            throw std::invalid_argument("basis row " + std::to_string(r) + " has length " +
                                        std::to_string(rows.at(r).size()) + ", expected " +
                                        std::to_string(params.dim_Vm(m)));
        for (int c = 0; c < params.dim_Vm(m); ++c)
            basis.set(static_cast<int>(r), c,
                      Scalar::parse(field, rows.at(r).at(c).get<std::string>()));
    }
    return GrassmannPoint(params, m, basis);
}

GrassmannPoint subspace_from_string(const std::string& text, const FieldSpec& fallback) {
    return subspace_from_json(json::parse(text), fallback);
}

namespace {

json class_to_json(const DivisorClass& c) {
    return json{{"a", c.a}, {"b", c.b}, {"label", c.label()}};
}

DivisorClass class_from_json(const json& j) {
    return DivisorClass{j.at("a").get<long long>(), j.at("b").get<long long>()};
}

json cone_to_json(const Cone2& c) {
    return json{{"ray1", class_to_json(c.ray1)}, {"ray2", class_to_json(c.ray2)}};
}

Cone2 cone_from_json(const json& j) {
    return Cone2{class_from_json(j.at("ray1")), class_from_json(j.at("ray2"))};
}

json target_to_json(const WallTarget& t) {
    static const char* names[] = {"grassmannian", "projective-space", "quantum-grassmannian",
                                  "degeneracy-locus"};
    return json{{"type", names[static_cast<int>(t.type)]},
                {"label", t.label},
                {"data", t.data}};
}

WallTarget target_from_json(const json& j) {
    WallTarget t;
    std::string type = j.at("type").get<std::string>();
    if (type == "grassmannian")
        t.type = WallTarget::Type::Grassmannian;
    else if (type == "projective-space")
        t.type = WallTarget::Type::ProjectiveSpace;
    else if (type == "quantum-grassmannian")
        t.type = WallTarget::Type::QuantumGrassmannian;
    else if (type == "degeneracy-locus")
        t.type = WallTarget::Type::DegeneracyLocus;
    else
        throw std::invalid_argument("unknown wall target type '" + type + "'");
    t.label = j.at("label").get<std::string>();
    t.data = j.at("data").get<std::vector<long long>>();
    return t;
}

}  // namespace

json report_to_json(const MMPReport& rep) {
    json out{{"n", rep.n}, {"r", rep.r}, {"d", rep.d}, {"s", rep.s},
             {"dim", rep.dim}, {"degenerate", rep.degenerate}};
    if (rep.degenerate) {
        out["picard_rank"] = 1;
        out["model"] = rep.degenerate_model;
        out["log_fano"] = rep.log_fano;
        return out;
    }
    out["picard_rank"] = 2;
    out["canonical_class"] = class_to_json(rep.canonical);
    out["nef"] = cone_to_json(rep.nef);
    out["mov"] = cone_to_json(rep.mov);
    out["eff"] = cone_to_json(rep.eff);
    json chambers = json::array();
    for (const auto& ch : rep.chambers)
        chambers.push_back(json{{"model", ch.model}, {"nef", cone_to_json(ch.nef)}});
    out["chambers"] = std::move(chambers);
    json walls = json::array();
    for (const auto& w : rep.walls) {
        json jw{{"class", class_to_json(w.ray)},
                {"kind", wall_kind_str(w.kind)},
                {"target", target_to_json(w.target)},
                {"separates", w.side_models}};
        if (w.contracted) jw["contracted_divisor"] = class_to_json(*w.contracted);
        walls.push_back(std::move(jw));
    }
    out["walls"] = std::move(walls);
    out["log_fano"] = rep.log_fano;
    return out;
}

MMPReport report_from_json(const json& j) {
    MMPReport rep;
    rep.n = j.at("n").get<int>();
    rep.r = j.at("r").get<int>();
    rep.d = j.at("d").get<int>();
    rep.s = j.at("s").get<int>();
    rep.dim = j.at("dim").get<long long>();
    rep.degenerate = j.at("degenerate").get<bool>();
    if (rep.degenerate) {
        rep.degenerate_model = j.at("model").get<std::string>();
        rep.log_fano = j.at("log_fano").get<bool>();
        return rep;
    }
    rep.canonical = class_from_json(j.at("canonical_class"));
    rep.nef = cone_from_json(j.at("nef"));
    rep.mov = cone_from_json(j.at("mov"));
    rep.eff = cone_from_json(j.at("eff"));
    for (const auto& ch : j.at("chambers"))
        rep.chambers.push_back(
            {ch.at("model").get<std::string>(), cone_from_json(ch.at("nef"))});
    for (const auto& jw : j.at("walls")) {
        WallRecord w;
        w.ray = class_from_json(jw.at("class"));
        std::string kind = jw.at("kind").get<std::string>();
        if (kind == "fiber-type")
            w.kind = WallKind::FiberType;
        else if (kind == "divisorial")
            w.kind = WallKind::Divisorial;
        else if (kind == "small")
            w.kind = WallKind::Small;
        else
            throw std::invalid_argument("unknown wall kind '" + kind + "'");
        w.target = target_from_json(jw.at("target"));
        w.side_models = jw.at("separates").get<std::vector<std::string>>();
        if (jw.contains("contracted_divisor"))
            w.contracted = class_from_json(jw.at("contracted_divisor"));
        rep.walls.push_back(std::move(w));
    }
    rep.log_fano = j.at("log_fano").get<bool>();
    return rep;
}

std::string report_to_text(const MMPReport& rep) {
    std::ostringstream out;
    out << "Quot scheme R: n=" << rep.n << " r=" << rep.r << " d=" << rep.d
        << " (s=" << rep.s << "), dim R = " << rep.dim << "\n";
    if (rep.degenerate) {
        out << "Picard rank 1: R = " << rep.degenerate_model << "\n";
        out << "log Fano: " << (rep.log_fano ? "yes" : "no") << "\n";
        return out.str();
    }
    auto cone_str = [](const Cone2& c) {
        return "<" + c.ray1.label() + ", " + c.ray2.label() + ">";
    };
    out << "K_R = " << rep.canonical.label() << "\n";
    out << "Nef(R) = " << cone_str(rep.nef) << "\n";
    out << "Mov(R) = " << cone_str(rep.mov) << "\n";
    out << "Eff(R) = " << cone_str(rep.eff) << "\n";
    out << "chambers:\n";
    for (const auto& ch : rep.chambers)
        out << "  Nef(" << ch.model << ") = " << cone_str(ch.nef) << "\n";
    out << "walls (by slope):\n";
    for (const auto& w : rep.walls) {
        out << "  " << w.ray.label() << ": " << wall_kind_str(w.kind) << " -> "
            << w.target.label;
        if (w.contracted) out << ", contracts " << w.contracted->label();
        if (!w.side_models.empty()) {
            out << " [";
            for (size_t i = 0; i < w.side_models.size(); ++i)
                out << (i ? " | " : "") << w.side_models[i];
            out << "]";
        }
        out << "\n";
    }
    out << "log Fano: " << (rep.log_fano ? "yes" : "no") << "\n";
    return out.str();
}

json census_to_json(const CensusResult& res) {
    json counts = json::array();
    for (const auto& [i, c] : res.counts)
        counts.push_back(json{{"index", i}, {"count", c.get_str()}});
    json counts1 = json::array();
    for (const auto& [i, c] : res.counts_pr1)
        counts1.push_back(json{{"index", i}, {"count", c.get_str()}});
    json out{{"n", res.params.n}, {"r", res.params.r}, {"d", res.params.d},
             {"m", res.m},        {"q", res.q},
             {"total", res.total.get_str()},
             {"bottom_level", res.bottom_level},
             {"counts", std::move(counts)},
             {"counts_pr1", std::move(counts1)},
             {"agreement_failures", res.agreement_failures},
             {"max_index", res.max_index}};
    if (res.rm_stratified) out["rm_point_count_stratified"] = res.rm_stratified->get_str();
    if (res.rm_direct) out["rm_point_count_direct"] = res.rm_direct->get_str();
    return out;
}

std::string census_to_text(const CensusResult& res) {
    std::ostringstream out;
    out << "census of G_" << res.m << "(F_" << res.q << ") for n=" << res.params.n
        << " r=" << res.params.r << " d=" << res.params.d << ": " << res.total.get_str()
        << " subspaces\n";
    out << "  index  count" << (res.bottom_level ? "  (pr_1 side; bottom level)" : "") << "\n";
    for (const auto& [i, c] : res.counts)
        out << "  " << i << "  " << c.get_str() << (i < 0 ? "  (outside image)" : "") << "\n";
    out << "  two-sided agreement failures: " << res.agreement_failures << "\n";
    if (res.rm_stratified)
        out << "  |R_" << res.m << "(F_" << res.q
            << ")| stratified = " << res.rm_stratified->get_str() << "\n";
    if (res.rm_direct)
        out << "  |R_" << res.m << "(F_" << res.q << ")| direct = " << res.rm_direct->get_str()
            << "\n";
    return out.str();
}

std::string census_to_csv(const CensusResult& res) {
    std::ostringstream out;
    out << "index,count,count_pr1\n";
    std::map<int, std::pair<mpz_class, mpz_class>> merged;
    for (const auto& [i, c] : res.counts) merged[i].first = c;
    for (const auto& [i, c] : res.counts_pr1) merged[i].second = c;
    for (const auto& [i, p] : merged)
        out << i << "," << p.first.get_str() << "," << p.second.get_str() << "\n";
    return out.str();
}

json cross_check_to_json(const Pr1CrossCheck& cc) {
    json out{{"census", census_to_json(cc.level_m)},
             {"pr1_stratified", cc.pr1_stratified.get_str()},
             {"fibers_nontrivial", cc.fibers_nontrivial}};
    if (cc.next_level_count) {
        out["next_level_count"] = cc.next_level_count->get_str();
        out["counts_agree"] = cc.counts_agree;
    }
    return out;
}

json star_check_to_json(const StarCheck& sc, int m) {
    return json{{"m", m},
                {"star", sc.ok},
                {"conditions", json{{"i", sc.cond_i}, {"ii", sc.cond_ii}, {"iii", sc.cond_iii}}},
                {"detail", sc.detail}};
}

json diagnostics_to_json(const PointDiagnostics& diag) {
    return json{{"valid", diag.ok}, {"violations", diag.violations}};
}

}  // namespace quotmmp
