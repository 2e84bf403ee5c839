#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "simplexmeasure/checks.hpp"
#include "simplexmeasure/family_json.hpp"
#include "simplexmeasure/figures.hpp"
#include "simplexmeasure/finitelab.hpp"
#include "simplexmeasure/pushforward.hpp"
#include "simplexmeasure/sampling.hpp"

namespace py = pybind11;
namespace sm = simplexmeasure;

namespace {

// Family handle constructed from the JSON description used by the CLI.
class Family {
 public:
  explicit Family(const std::string& json_text)
      : family_(sm::parse_family_string(json_text)), transformed_(sm::closed_form(family_)) {}

  int dim() const { return sm::family_dim(family_).value(); }
  bool is_atom() const { return transformed_.is_atom(); }

  double log_density(const std::vector<double>& y) const {
    return sm::log_density_at(family_, y);
  }
  double density(const std::vector<double>& y) const {
    return sm::density_at(family_, sm::OrthantPoint(y));
  }
  double transformed_density(const std::vector<double>& x) const {
    return transformed_(sm::ChartPoint(x));
  }
  double transformed_lebesgue_density(const std::vector<double>& x) const {
    return sm::lebesgue_chart_density(transformed_, sm::ChartPoint(x));
  }
  double fiber_density(const std::vector<double>& x) const {
    return sm::fiber_density(family_, sm::ChartPoint(x));
  }
  std::vector<double> atom_location() const { return transformed_.atom_location().coords(); }

  std::vector<std::vector<double>> sample(std::uint64_t seed, long count) const {
    sm::SeededGenerator gen(seed);
    const auto points = sm::sample(family_, gen, count);
    std::vector<std::vector<double>> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.coords());
    return out;
  }

  std::string mc_verify(std::uint64_t seed, long count, int bins) const {
    sm::SeededGenerator gen(seed);
    return sm::mc_verify(family_, transformed_, gen, count, bins).to_json();
  }

  std::string to_json() const { return sm::family_to_json(family_).dump(); }

 private:
  sm::DensityFamily family_;
  sm::TransformedDensity transformed_;
};

}  // namespace

PYBIND11_MODULE(simplexmeasure, m) {
  m.doc() = "pushforward of orthant measures through the homogeneous transform";

  py::register_exception<sm::Error>(m, "SimplexMeasureError");

  m.def(
      "homogeneous_transform",
      [](const std::vector<double>& y) {
        return sm::homogeneous_transform(sm::UpperPoint(y)).coords();
      },
      py::arg("y"));
  m.def(
      "chart_embed",
      [](const std::vector<double>& x) { return sm::chart_embed(sm::ChartPoint(x)).coords(); },
      py::arg("x"));
  m.def(
      "chart_coords",
      [](const std::vector<double>& b) { return sm::chart_coords(sm::SimplexPoint(b)).coords(); },
      py::arg("b"));
  m.def(
      "trivialize",
      [](const std::vector<double>& x, double t) {
        return sm::trivialize({sm::ChartPoint(x), t}).coords();
      },
      py::arg("x"), py::arg("t"));
  m.def(
      "trivialize_inv",
      [](const std::vector<double>& y) {
        const auto p = sm::trivialize_inv(sm::UpperPoint(y));
        return py::make_tuple(p.x.coords(), p.t);
      },
      py::arg("y"));
  m.def(
      "trivialize_jacobian_det",
      [](const std::vector<double>& x, double t) {
        return sm::trivialize_jacobian_det({sm::ChartPoint(x), t});
      },
      py::arg("x"), py::arg("t"));
  m.def("chart_weight", [](int n) { return sm::chart_weight(sm::Dim(n)); }, py::arg("n"));
  m.def("simplex_volume", [](int n) { return sm::simplex_volume(sm::Dim(n)); }, py::arg("n"));
  m.def(
      "radial_reciprocal_normalizer",
      [](double s, int n) { return sm::radial_reciprocal_normalizer(s, sm::Dim(n)); },
      py::arg("s"), py::arg("n"));
  m.def(
      "log_multivariate_beta",
      [](const std::vector<double>& alpha) { return sm::log_multivariate_beta(alpha); },
      py::arg("alpha"));
  m.def(
      "dirichlet_chart_density",
      [](const std::vector<double>& alpha, const std::vector<double>& x) {
        return sm::dirichlet_chart_density(alpha, sm::ChartPoint(x));
      },
      py::arg("alpha"), py::arg("x"));
  m.def(
      "ternary_embed",
      [](const std::vector<double>& b) {
        const auto uv = sm::ternary_embed(sm::SimplexPoint(b));
        return py::make_tuple(uv.first, uv.second);
      },
      py::arg("b"));
  m.def("counterexample_noninjective", [] {
    const auto rep = sm::finitelab::counterexample_noninjective();
    py::dict d;
    d["singular_before"] = rep.singular_before;
    d["singular_after"] = rep.singular_after;
    return d;
  });
  m.def(
      "run_checks",
      [](const std::string& suite, std::uint64_t seed) {
        py::list out;
        for (const auto& s : sm::checks::run_suites(suite, seed)) {
          for (const auto& r : s.results) {
            py::dict d;
            d["suite"] = s.name;
            d["id"] = r.id;
            d["passed"] = r.passed;
            d["detail"] = r.detail;
            out.append(d);
          }
        }
        return out;
      },
      py::arg("suite"), py::arg("seed") = sm::checks::kDefaultSeed);

  py::class_<Family>(m, "Family")
      .def(py::init<const std::string&>(), py::arg("json_text"))
      .def("dim", &Family::dim)
      .def("is_atom", &Family::is_atom)
      .def("log_density", &Family::log_density, py::arg("y"))
      .def("density", &Family::density, py::arg("y"))
      .def("transformed_density", &Family::transformed_density, py::arg("x"))
      .def("transformed_lebesgue_density", &Family::transformed_lebesgue_density, py::arg("x"))
      .def("fiber_density", &Family::fiber_density, py::arg("x"))
      .def("atom_location", &Family::atom_location)
      .def("sample", &Family::sample, py::arg("seed"), py::arg("count"))
      .def("mc_verify", &Family::mc_verify, py::arg("seed"), py::arg("count"), py::arg("bins"))
      .def("to_json", &Family::to_json);
}
