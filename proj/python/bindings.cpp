// Python bindings exposing the main operations. Structured values cross the
// boundary as JSON strings (the same formats the CLI reads and writes).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "quotmmp/errors.hpp"
#include "quotmmp/io.hpp"

namespace py = pybind11;
using namespace quotmmp;

namespace {

py::object big_int(const mpz_class& z) {
    return py::module_::import("builtins").attr("int")(z.get_str());
}

ModuliParams params_of(int n, int r, int d) { return ModuliParams::checked(n, r, d); }

}  // namespace

PYBIND11_MODULE(quotmmp, m) {
    m.doc() = "Chamber decompositions and moduli points of Quot schemes on P^1";

    py::register_exception<CapExceededError>(m, "CapExceeded");
    py::register_exception<ParseError>(m, "FormParseError");

    m.def("report_json",
          [](int n, int r, int d) { return report_to_json(mmp_report(params_of(n, r, d))).dump(); },
          py::arg("n"), py::arg("r"), py::arg("d"),
          "Full Mori chamber decomposition as a JSON string");

    m.def("report_text",
          [](int n, int r, int d) { return report_to_text(mmp_report(params_of(n, r, d))); },
          py::arg("n"), py::arg("r"), py::arg("d"));

    m.def("report_svg",
          [](int n, int r, int d) { return report_to_svg(mmp_report(params_of(n, r, d))); },
          py::arg("n"), py::arg("r"), py::arg("d"), "Fan diagram as an SVG document");

    m.def("gaussian_binomial",
          [](int subdim, int ambient, long q) {
              return big_int(gaussian_binomial(subdim, ambient, mpz_class(q)));
          },
          py::arg("subdim"), py::arg("ambient"), py::arg("q"),
          "Number of subdim-dimensional subspaces of F_q^ambient");

    m.def("check_star",
          [](const std::string& point_json, int m) {
              return star_check_to_json(check_star(point_from_string(point_json), m), m).dump();
          },
          py::arg("point_json"), py::arg("m"));

    m.def("validate_point",
          [](const std::string& point_json) {
              return diagnostics_to_json(validate(point_from_string(point_json))).dump();
          },
          py::arg("point_json"));

    m.def("gm_point_json",
          [](const std::string& point_json, int m) {
              return subspace_to_json(gm_point(point_from_string(point_json), m)).dump();
          },
          py::arg("point_json"), py::arg("m"));

    m.def("rm_point_json",
          [](const std::string& point_json, int m) {
              RmPoint p = rm_point(point_from_string(point_json), m);
              return json{{"m", p.m},
                          {"low", subspace_to_json(p.low)},
                          {"high", subspace_to_json(p.high)},
                          {"verified", verify_rm(p)}}
                  .dump();
          },
          py::arg("point_json"), py::arg("m"));

    m.def("dualize_json",
          [](const std::string& point_json) {
              return point_to_json(dualize(point_from_string(point_json))).dump();
          },
          py::arg("point_json"));

    m.def("pluecker",
          [](const std::string& point_json) {
              std::vector<std::string> out;
              for (const BinaryForm& f : pluecker_point(point_from_string(point_json)))
                  out.push_back(f.str());
              return out;
          },
          py::arg("point_json"), "Maximal minors in lexicographic row-subset order");

    m.def("stratum_indices",
          [](const std::string& subspace_json) {
              GrassmannPoint K = subspace_from_string(subspace_json);
              py::dict out;
              out["m"] = K.level();
              out["index_pr1"] = stratum_index_pr1(K);
              if (K.level() >= K.params().ceil_d_s())
                  out["index_pr2"] = stratum_index_pr2(K);
              return out;
          },
          py::arg("subspace_json"));

    m.def("census_json",
          [](int n, int r, int d, int m, long q, long cap, int threads, bool direct) {
              CensusOptions opts;
              if (cap > 0) opts.cap = mpz_class(std::to_string(cap));
              opts.threads = threads;
              opts.direct_count = direct;
              return census_to_json(census(params_of(n, r, d), m, q, opts)).dump();
          },
          py::arg("n"), py::arg("r"), py::arg("d"), py::arg("m"), py::arg("q"),
          py::arg("cap") = 0, py::arg("threads") = 1, py::arg("direct") = false);

    m.def("cross_check_pr1_json",
          [](int n, int r, int d, int m, long q) {
              CensusOptions opts;
              opts.direct_count = true;
              return cross_check_to_json(cross_check_pr1(params_of(n, r, d), m, q, opts)).dump();
          },
          py::arg("n"), py::arg("r"), py::arg("d"), py::arg("m"), py::arg("q"));
}
