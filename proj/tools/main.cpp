// quotmmp: chamber decompositions, moduli-point analysis, and finite-field
// censuses for Quot schemes of the trivial bundle on P^1.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "quotmmp/errors.hpp"
#include "quotmmp/io.hpp"

using namespace quotmmp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;  // also I/O and parse failures
constexpr int kExitMath = 2;   // well-posed input, negative mathematical outcome
constexpr int kExitCap = 3;    // enumeration refused by the cap

struct Output {
    std::string path;  // empty = stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            if (!text.empty() && text.back() != '\n') std::cout << "\n";
            return;
        }
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
        out << text;
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

mpz_class default_cap() {
    if (const char* env = std::getenv("QUOTMMP_CAP")) {
        mpz_class cap;
        if (cap.set_str(env, 10) != 0 || cap < 1)
            throw std::runtime_error("QUOTMMP_CAP must be a positive integer");
        return cap;
    }
    return mpz_class(10000000);
}

int run_report(int n, int r, int d, const std::string& format, const Output& out) {
    MMPReport rep = mmp_report(ModuliParams::checked(n, r, d));
    if (format == "json")
        out.write(report_to_json(rep).dump(2));
    else if (format == "text")
        out.write(report_to_text(rep));
    else if (format == "svg")
        out.write(report_to_svg(rep));
    else
        throw CLI::ValidationError("--format", "report supports json, text, svg");
    return kExitOk;
}

int run_point(const std::string& action, const std::string& input, int m,
              const FieldSpec& fallback, const std::string& format, const Output& out) {
    auto render = [&](const json& j, const std::string& text) {
        out.write(format == "json" ? j.dump(2) : text);
    };
    std::string content = slurp(input);

    if (action == "stratum") {
        GrassmannPoint K = subspace_from_string(content, fallback);
        int i1 = stratum_index_pr1(K);
        json j{{"m", K.level()}, {"index_pr1", i1}};
        std::ostringstream text;
        text << "level " << K.level() << ": pr_1 index " << i1;
        int idx = i1;
        if (K.level() >= K.params().ceil_d_s()) {
            int i2 = stratum_index_pr2(K);
            j["index_pr2"] = i2;
            text << ", pr_2 index " << i2;
            idx = i2;
        }
        if (idx >= 0) {
            StratumProfile prof = fiber_profile(K);
            j["stratum_dimension"] = prof.stratum_dim;
            j["pr1_fiber"] = json{{"ambient", prof.pr1_fiber.ambient},
                                  {"quotient", prof.pr1_fiber.quotient}};
            if (prof.pr2_fiber)
                j["pr2_fiber"] = json{{"ambient", prof.pr2_fiber->ambient},
                                      {"quotient", prof.pr2_fiber->quotient}};
            text << ", stratum dim " << prof.stratum_dim;
        }
        text << "\n";
        render(j, text.str());
        return idx >= 0 ? kExitOk : kExitMath;
    }

    SheafMapPoint pt = point_from_string(content, fallback);
    if (action == "check-star") {
        StarCheck sc = check_star(pt, m);
        std::ostringstream text;
        text << "(*_" << m << ") " << (sc.ok ? "holds" : "fails") << " [i=" << sc.cond_i
             << " ii=" << sc.cond_ii << " iii=" << sc.cond_iii << "]";
        if (!sc.ok) text << " " << sc.detail;
        text << "\n";
        render(star_check_to_json(sc, m), text.str());
        return sc.ok ? kExitOk : kExitMath;
    }
    if (action == "validate") {
        PointDiagnostics diag = validate(pt);
        std::ostringstream text;
        text << (diag.ok ? "valid" : "invalid") << "\n";
        for (const auto& v : diag.violations) text << "  " << v << "\n";
        render(diagnostics_to_json(diag), text.str());
        return diag.ok ? kExitOk : kExitMath;
    }
    if (action == "gm") {
        GrassmannPoint K = gm_point(pt, m);
        render(subspace_to_json(K), "g_" + std::to_string(m) + " image:\n" + K.basis().str());
        return kExitOk;
    }
    if (action == "rm") {
        RmPoint p = rm_point(pt, m);
        json j{{"m", p.m}, {"low", subspace_to_json(p.low)}, {"high", subspace_to_json(p.high)},
               {"verified", verify_rm(p)}};
        render(j, "R_" + std::to_string(m) + " point:\nlow:\n" + p.low.basis().str() +
                      "high:\n" + p.high.basis().str());
        return kExitOk;
    }
    if (action == "dualize") {
        SheafMapPoint dual = dualize(pt);
        render(point_to_json(dual), dual.str());
        return kExitOk;
    }
    if (action == "pluecker") {
        std::vector<BinaryForm> minors = pluecker_point(pt);
        auto subsets = row_subsets(pt.params().n, pt.params().s());
        json arr = json::array();
        std::ostringstream text;
        for (size_t i = 0; i < minors.size(); ++i) {
            std::string rows;
            for (size_t t = 0; t < subsets[i].size(); ++t)
                rows += (t ? "," : "") + std::to_string(subsets[i][t]);
            arr.push_back(json{{"rows", rows}, {"minor", minors[i].str()}});
            text << "[" << rows << "] " << minors[i].str() << "\n";
        }
        render(json{{"degree", pt.params().d}, {"coordinates", arr}}, text.str());
        return kExitOk;
    }
    throw CLI::ValidationError("action", "unknown point action '" + action + "'");
}

int run_enumerate(int n, int r, int d, int m, long q, bool cross_check, bool direct,
                  const CensusOptions& opts, const std::string& format, const Output& out) {
    ModuliParams params = ModuliParams::checked(n, r, d);
    if (cross_check) {
        CensusOptions with_direct = opts;
        with_direct.direct_count = true;
        Pr1CrossCheck cc = cross_check_pr1(params, m, q, with_direct);
        if (format == "json") {
            out.write(cross_check_to_json(cc).dump(2));
        } else if (format == "csv") {
            out.write(census_to_csv(cc.level_m));
        } else {
            std::ostringstream text;
            text << census_to_text(cc.level_m);
            text << "pr_1-stratified |R_" << (m + 1) << "(F_" << q
                 << ")| = " << cc.pr1_stratified.get_str() << "\n";
            if (cc.next_level_count)
                text << "level-" << (m + 1)
                     << " census count = " << cc.next_level_count->get_str() << " ("
                     << (cc.counts_agree ? "agree" : "DISAGREE") << ")\n";
            if (cc.level_m.bottom_level)
                text << "bottom-level fibers all nontrivial: "
                     << (cc.fibers_nontrivial ? "yes" : "NO") << "\n";
            out.write(text.str());
        }
        bool ok = cc.level_m.agreement_failures == 0 && cc.fibers_nontrivial &&
                  (!cc.next_level_count || cc.counts_agree);
        return ok ? kExitOk : kExitMath;
    }
    CensusOptions run_opts = opts;
    run_opts.direct_count = direct;
    CensusResult res = census(params, m, q, run_opts);
    if (format == "json")
        out.write(census_to_json(res).dump(2));
    else if (format == "csv")
        out.write(census_to_csv(res));
    else
        out.write(census_to_text(res));
    bool ok = res.agreement_failures == 0 &&
              (!res.rm_direct || !res.rm_stratified || *res.rm_direct == *res.rm_stratified);
    return ok ? kExitOk : kExitMath;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mori chamber decompositions and moduli points of Quot schemes on P^1"};
    app.require_subcommand(1);

    int n = 2, r = 0, d = 1, m = 1;
    long q = 2;
    std::string report_format = "text", point_format = "json", enum_format = "text";
    std::string out_path, input_path, action, field_override;
    long long cap_flag = -1;
    int threads = 1;
    bool cross_check = false, direct = false;

    CLI::App* report = app.add_subcommand("report", "chamber decomposition for (n, r, d)");
    report->add_option("--n", n, "dim V")->required();
    report->add_option("--r", r, "quotient rank")->required();
    report->add_option("--d", d, "degree")->required();
    report->add_option("--format", report_format, "json | text | svg")->capture_default_str();
    report->add_option("--out", out_path, "write to this file instead of stdout");

    CLI::App* point = app.add_subcommand("point", "analyze a moduli point file");
    point->add_option("action", action,
                      "check-star | validate | gm | rm | stratum | dualize | pluecker")
        ->required();
    point->add_option("input", input_path, "point file (subspace file for stratum)")->required();
    point->add_option("--m", m, "twist level")->capture_default_str();
    point->add_option("--field", field_override,
                      "default field for files without a field entry (Q or Fp:101)");
    point->add_option("--format", point_format, "json | text")->capture_default_str();
    point->add_option("--out", out_path, "write to this file instead of stdout");

    CLI::App* enumerate = app.add_subcommand("enumerate", "finite-field census of G_m");
    enumerate->add_option("--n", n, "dim V")->required();
    enumerate->add_option("--r", r, "quotient rank")->required();
    enumerate->add_option("--d", d, "degree")->required();
    enumerate->add_option("--m", m, "level of G_m")->required();
    enumerate->add_option("--q", q, "field size (prime <= 7)")->required();
    enumerate->add_flag("--cross-check", cross_check,
                        "verify |R_{m+1}| two ways and add the direct pair count");
    enumerate->add_flag("--direct", direct, "count R_m pairs by double enumeration");
    enumerate->add_option("--cap", cap_flag, "enumeration cap (default 10^7 or QUOTMMP_CAP)");
    enumerate->add_option("--threads", threads, "worker threads")->capture_default_str();
    enumerate->add_option("--format", enum_format, "json | text | csv")->capture_default_str();
    enumerate->add_option("--out", out_path, "write to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        Output out{out_path};
        if (report->parsed()) return run_report(n, r, d, report_format, out);
        if (point->parsed()) {
            FieldSpec fallback = field_override.empty() ? FieldSpec::rationals()
                                                        : field_from_flag(field_override);
            return run_point(action, input_path, m, fallback, point_format, out);
        }
        if (enumerate->parsed()) {
            CensusOptions opts;
            opts.cap = cap_flag > 0 ? mpz_class(std::to_string(cap_flag)) : default_cap();
            opts.threads = threads;
            return run_enumerate(n, r, d, m, q, cross_check, direct, opts, enum_format, out);
        }
    } catch (const CapExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMath;
    } catch (const json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
