// Command-line interface: density grids, figure data, Monte Carlo
// verification and the library's self-check suites. Output CSV uses
// shortest-round-trip doubles and '\n' row endings; exit codes are
// 0 success, 2 argument/validation, 3 evaluation, 4 dimension mismatch,
// 5 verification failure.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "simplexmeasure/checks.hpp"
#include "simplexmeasure/family_json.hpp"
#include "simplexmeasure/figures.hpp"
#include "simplexmeasure/pushforward.hpp"
#include "simplexmeasure/sampling.hpp"

namespace sm = simplexmeasure;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitEvaluation = 3;
constexpr int kExitDimension = 4;
constexpr int kExitVerification = 5;

std::string fmt(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

sm::DensityFamily load_family(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') {
    return sm::parse_family_string(arg);
  }
  std::ifstream in(arg);
  if (!in) throw sm::DomainError("cannot open family file: " + arg);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return sm::parse_family_string(buffer.str());
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SIMPLEXMEASURE_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      throw sm::DomainError("SIMPLEXMEASURE_SEED is not an unsigned integer");
    }
    return v;
  }
  return sm::checks::kDefaultSeed;
}

int cmd_density(const std::string& family_arg, int resolution, double margin, bool lebesgue) {
  sm::DensityFamily family = sm::MultiGamma({1.0, 1.0}, {1.0, 1.0});
  sm::Dim n(1);
  try {
    family = load_family(family_arg);
    n = sm::family_dim(family);
  } catch (const sm::Error& e) {
    std::cerr << "density: " << e.what() << "\n";
    return kExitValidation;
  }
  try {
    const sm::GridSpec spec(n, resolution, margin);
    const sm::TransformedDensity td = sm::closed_form(family);
    const auto grid = sm::chart_grid(spec);
    for (int d = 1; d <= n.value(); ++d) std::cout << "x" << d << ",";
    std::cout << "g\n";
    for (const auto& x : grid) {
      for (const double v : x.coords()) std::cout << fmt(v) << ",";
      const double g = lebesgue ? sm::lebesgue_chart_density(td, x) : td(x);
      std::cout << fmt(g) << "\n";
    }
    return 0;
  } catch (const sm::DimensionError& e) {
    std::cerr << "density: " << e.what() << "\n";
    return kExitDimension;
  } catch (const sm::Error& e) {
    std::cerr << "density: " << e.what() << "\n";
    return kExitEvaluation;
  }
}

int cmd_figure_bivariate(const std::string& family_arg, int resolution) {
  sm::DensityFamily family = sm::MultiGamma({1.0, 1.0}, {1.0, 1.0});
  try {
    family = load_family(family_arg);
  } catch (const sm::Error& e) {
    std::cerr << "figure: " << e.what() << "\n";
    return kExitValidation;
  }
  try {
    const auto curve = sm::bivariate_curve(family, resolution);
    std::cout << "p,g_lebesgue\n";
    for (const auto& pt : curve) std::cout << fmt(pt.p) << "," << fmt(pt.g) << "\n";
    return 0;
  } catch (const sm::DimensionError& e) {
    std::cerr << "figure: " << e.what() << "\n";
    return kExitDimension;
  } catch (const sm::Error& e) {
    std::cerr << "figure: " << e.what() << "\n";
    return kExitEvaluation;
  }
}

int cmd_figure_ternary(const std::string& family_arg, int resolution) {
  sm::DensityFamily family = sm::MultiGamma({1.0, 1.0}, {1.0, 1.0});
  try {
    family = load_family(family_arg);
  } catch (const sm::Error& e) {
    std::cerr << "figure: " << e.what() << "\n";
    return kExitValidation;
  }
  try {
    const auto grid = sm::ternary_heatmap(family, resolution);
    std::cout << "u,v,g\n";
    for (const auto& pt : grid) {
      std::cout << fmt(pt.u) << "," << fmt(pt.v) << "," << fmt(pt.g) << "\n";
    }
    return 0;
  } catch (const sm::DimensionError& e) {
    std::cerr << "figure: " << e.what() << "\n";
    return kExitDimension;
  } catch (const sm::Error& e) {
    std::cerr << "figure: " << e.what() << "\n";
    return kExitEvaluation;
  }
}

int cmd_mc_verify(const std::string& family_arg, long samples, std::uint64_t seed, int bins,
                  const std::string& against_arg) {
  sm::DensityFamily family = sm::MultiGamma({1.0, 1.0}, {1.0, 1.0});
  sm::DensityFamily reference = family;
  try {
    family = load_family(family_arg);
    reference = against_arg.empty() ? family : load_family(against_arg);
  } catch (const sm::Error& e) {
    std::cerr << "mc-verify: " << e.what() << "\n";
    return kExitValidation;
  }
  try {
    const sm::TransformedDensity td = sm::closed_form(reference);
    sm::SeededGenerator gen(seed);
    const sm::MCReport report = sm::mc_verify(family, td, gen, samples, bins);
    std::cout << report.to_json() << "\n";
    return report.verdict ? 0 : kExitVerification;
  } catch (const sm::DimensionError& e) {
    std::cerr << "mc-verify: " << e.what() << "\n";
    return kExitDimension;
  } catch (const sm::QuadratureError& e) {
    std::cerr << "mc-verify: " << e.what() << "\n";
    return kExitEvaluation;
  } catch (const sm::DomainError& e) {
    std::cerr << "mc-verify: " << e.what() << "\n";
    return kExitValidation;
  } catch (const sm::Error& e) {
    std::cerr << "mc-verify: " << e.what() << "\n";
    return kExitEvaluation;
  }
}

int cmd_check(const std::string& suite, std::uint64_t seed) {
  try {
    const auto suites = sm::checks::run_suites(suite, seed);
    bool all_passed = true;
    nlohmann::ordered_json summary;
    summary["seed"] = seed;
    nlohmann::ordered_json jsuites = nlohmann::ordered_json::array();
    for (const auto& s : suites) {
      nlohmann::ordered_json js;
      js["suite"] = s.name;
      nlohmann::ordered_json jresults = nlohmann::ordered_json::array();
      for (const auto& r : s.results) {
        all_passed = all_passed && r.passed;
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << s.name << "/" << r.id << ": "
                  << r.detail << "\n";
        nlohmann::ordered_json jr;
        jr["id"] = r.id;
        jr["passed"] = r.passed;
        jr["detail"] = r.detail;
        jresults.push_back(jr);
      }
      for (const auto& note : s.notes) std::cout << note << "\n";
      js["results"] = jresults;
      js["notes"] = s.notes;
      jsuites.push_back(js);
    }
    summary["suites"] = jsuites;
    summary["all_passed"] = all_passed;
    std::cout << summary.dump(2) << "\n";
    return all_passed ? 0 : kExitVerification;
  } catch (const sm::DomainError& e) {
    std::cerr << "check: " << e.what() << "\n";
    return kExitValidation;
  } catch (const sm::Error& e) {
    std::cerr << "check: " << e.what() << "\n";
    return kExitEvaluation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pushforward of orthant measures through the homogeneous transform"};
  app.require_subcommand(1);

  std::string family_arg;
  int grid_res = 10;
  int bivariate_res = 1000;
  int ternary_res = 60;
  double margin = 0.0;
  bool lebesgue = false;
  long samples = 1000000;
  int bins = 50;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string against_arg;
  std::string suite = "all";

  auto* density = app.add_subcommand("density", "transformed density on a chart grid (CSV)");
  density->add_option("--family", family_arg, "family JSON (inline or a file path)")->required();
  density->add_option("--grid", grid_res, "cells per axis")->required();
  density->add_option("--margin", margin, "boundary margin in [0, 0.5)");
  density->add_flag("--lebesgue", lebesgue, "emit the Lebesgue chart density instead");

  auto* figure = app.add_subcommand("figure", "figure data grids (CSV)");
  figure->require_subcommand(1);
  auto* bivariate = figure->add_subcommand("bivariate-curve", "density vs first-coordinate fraction");
  bivariate->add_option("--family", family_arg, "family JSON (inline or a file path)")->required();
  bivariate->add_option("--resolution", bivariate_res, "number of grid cells")
      ->capture_default_str();
  auto* ternary = figure->add_subcommand("ternary-heatmap", "isometric ternary density grid");
  ternary->add_option("--family", family_arg, "family JSON (inline or a file path)")->required();
  ternary->add_option("--resolution", ternary_res, "barycentric lattice resolution")
      ->capture_default_str();

  auto* verify = app.add_subcommand("mc-verify", "Monte Carlo verification report (JSON)");
  verify->add_option("--family", family_arg, "family JSON (inline or a file path)")->required();
  verify->add_option("--samples", samples, "sample count")->capture_default_str();
  auto* seed_opt = verify->add_option("--seed", seed, "generator seed");
  verify->add_option("--bins", bins, "requested bin count")->capture_default_str();
  verify->add_option("--against", against_arg,
                     "verify the samples against this family's closed form instead");

  auto* check = app.add_subcommand("check", "run the library's verification suites");
  check->add_option("--suite", suite, "geometry | measures | pushforward | finitelab | all")
      ->capture_default_str();
  auto* check_seed_opt = check->add_option("--seed", seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  seed_given = seed_opt->count() > 0 || check_seed_opt->count() > 0;
  if (!seed_given) {
    try {
      seed = default_seed();
    } catch (const sm::Error& e) {
      std::cerr << e.what() << "\n";
      return kExitValidation;
    }
  }

  if (density->parsed()) return cmd_density(family_arg, grid_res, margin, lebesgue);
  if (figure->parsed()) {
    if (bivariate->parsed()) return cmd_figure_bivariate(family_arg, bivariate_res);
    return cmd_figure_ternary(family_arg, ternary_res);
  }
  if (verify->parsed()) return cmd_mc_verify(family_arg, samples, seed, bins, against_arg);
  if (check->parsed()) return cmd_check(suite, seed);
  return kExitValidation;
}
