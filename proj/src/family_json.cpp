#include "simplexmeasure/family_json.hpp"

namespace simplexmeasure {

namespace {

std::vector<double> number_array(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw DomainError(std::string("family JSON: missing array field '") + key + "'");
  }
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw DomainError(std::string("family JSON: '") + key + "' must be numeric");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

DensityFamily parse_family(const nlohmann::json& j) {
  if (!j.is_object()) throw DomainError("family JSON: expected an object");
  if (j.contains("schema")) {
    if (!j.at("schema").is_number_integer() || j.at("schema").get<int>() != 1) {
      throw DomainError("family JSON: unsupported schema version");
    }
  }
  if (!j.contains("family") || !j.at("family").is_string()) {
    throw DomainError("family JSON: missing 'family' field");
  }
  const std::string family = j.at("family").get<std::string>();

  if (family == "lognormal") {
    const std::vector<double> mu = number_array(j, "mu");
    if (!j.contains("sigma") || !j.at("sigma").is_array()) {
      throw DomainError("family JSON: lognormal needs a 'sigma' matrix");
    }
    std::vector<std::vector<double>> rows;
    for (const auto& row : j.at("sigma")) {
      if (!row.is_array()) throw DomainError("family JSON: 'sigma' must be an array of arrays");
      rows.emplace_back();
      for (const auto& v : row) rows.back().push_back(v.get<double>());
    }
    return LogNormal(mu, CovMatrix::from_rows(rows));
  }
  if (family == "multigamma") {
    return MultiGamma(number_array(j, "alpha"), number_array(j, "beta"));
  }
  if (family == "multichi") {
    return MultiChi(number_array(j, "k"));
  }
  if (family == "radialreciprocal") {
    if (!j.contains("s") || !j.at("s").is_number()) {
      throw DomainError("family JSON: radialreciprocal needs numeric 's'");
    }
    if (!j.contains("n") || !j.at("n").is_number_integer()) {
      throw DomainError("family JSON: radialreciprocal needs integer 'n'");
    }
    return RadialReciprocal(j.at("s").get<double>(), Dim(j.at("n").get<int>()));
  }
  if (family == "dirac") {
    return DiracAt(UpperPoint(number_array(j, "point")));
  }
  throw DomainError("family JSON: unknown family '" + family + "'");
}

DensityFamily parse_family_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("family JSON: parse error: ") + e.what());
  }
  return parse_family(j);
}

nlohmann::json family_to_json(const DensityFamily& f) {
  nlohmann::json j;
  j["schema"] = 1;
  std::visit(
      [&j](const auto& fam) {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, LogNormal>) {
          j["family"] = "lognormal";
          j["mu"] = fam.mu;
          std::vector<std::vector<double>> rows;
          const auto& m = fam.sigma.matrix();
          for (Eigen::Index i = 0; i < m.rows(); ++i) {
            rows.emplace_back();
            for (Eigen::Index k = 0; k < m.cols(); ++k) rows.back().push_back(m(i, k));
          }
          j["sigma"] = rows;
        } else if constexpr (std::is_same_v<T, MultiGamma>) {
          j["family"] = "multigamma";
          j["alpha"] = fam.alpha;
          j["beta"] = fam.beta;
        } else if constexpr (std::is_same_v<T, MultiChi>) {
          j["family"] = "multichi";
          j["k"] = fam.k;
        } else if constexpr (std::is_same_v<T, RadialReciprocal>) {
          j["family"] = "radialreciprocal";
          j["s"] = fam.s;
          j["n"] = fam.n.value();
        } else {
          j["family"] = "dirac";
          j["point"] = fam.point.coords();
        }
      },
      f);
  return j;
}

}  // namespace simplexmeasure
