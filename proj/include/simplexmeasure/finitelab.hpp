#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "simplexmeasure/errors.hpp"

// Exact verification of pushforward laws on finite measure spaces: morphisms,
// Lebesgue decomposition, Radon-Nikodym quotients and their behaviour under
// injective and bijective maps. The sigma-algebra is always the full power
// set, so absolute continuity is support inclusion and mutual singularity is
// support disjointness. Everything is templated on the weight type; tests use
// exact rationals, the public surface uses double.

namespace simplexmeasure::finitelab {

template <class W>
using Weights = std::map<std::string, W>;

template <class W>
struct FiniteMeasureSpace {
  std::vector<std::string> points;
  Weights<W> weights;
};

struct FiniteMap {
  std::map<std::string, std::string> mapping;
};

template <class W>
W weight_of(const Weights<W>& w, const std::string& p) {
  const auto it = w.find(p);
  return it == w.end() ? W(0) : it->second;
}

template <class W>
bool is_positive(const Weights<W>& w) {
  for (const auto& [p, v] : w) {
    if (v < W(0)) return false;
  }
  return true;
}

inline bool is_injective(const FiniteMap& map, const std::vector<std::string>& source_points) {
  std::set<std::string> seen;
  for (const auto& p : source_points) {
    const auto it = map.mapping.find(p);
    if (it == map.mapping.end()) throw MapError("finite map is not total on its source");
    if (!seen.insert(it->second).second) return false;
  }
  return true;
}

inline bool is_bijective(const FiniteMap& map, const std::vector<std::string>& source_points,
                         const std::vector<std::string>& target_points) {
  if (source_points.size() != target_points.size()) return false;
  if (!is_injective(map, source_points)) return false;
  const std::set<std::string> targets(target_points.begin(), target_points.end());
  for (const auto& p : source_points) {
    if (!targets.contains(map.mapping.at(p))) return false;
  }
  return true;
}

inline FiniteMap inverse_map(const FiniteMap& map) {
  FiniteMap inv;
  for (const auto& [from, to] : map.mapping) {
    if (!inv.mapping.emplace(to, from).second) {
      throw PreconditionError("inverse_map: map is not injective");
    }
  }
  return inv;
}

// Pushforward of weights: each target point accumulates its preimage mass.
template <class W>
Weights<W> pushforward_weights(const Weights<W>& source_weights, const FiniteMap& map,
                               const std::vector<std::string>& target_points) {
  const std::set<std::string> targets(target_points.begin(), target_points.end());
  Weights<W> out;
  for (const auto& q : target_points) out[q] = W(0);
  for (const auto& [p, v] : source_weights) {
    const auto it = map.mapping.find(p);
    if (it == map.mapping.end()) throw MapError("pushforward: source point has no image");
    if (!targets.contains(it->second)) throw MapError("pushforward: image outside the target");
    out[it->second] = out[it->second] + v;
  }
  return out;
}

template <class W>
bool is_morphism(const FiniteMeasureSpace<W>& source, const FiniteMeasureSpace<W>& target,
                 const FiniteMap& map) {
  const Weights<W> pushed = pushforward_weights(source.weights, map, target.points);
  for (const auto& q : target.points) {
    if (!(weight_of(pushed, q) == weight_of(target.weights, q))) return false;
  }
  return true;
}

template <class W>
bool absolutely_continuous(const Weights<W>& lambda, const Weights<W>& mu) {
  for (const auto& [p, v] : lambda) {
    if (!(v == W(0)) && weight_of(mu, p) == W(0)) return false;
  }
  return true;
}

template <class W>
bool mutually_singular(const Weights<W>& lambda, const Weights<W>& mu) {
  for (const auto& [p, v] : lambda) {
    if (!(v == W(0)) && !(weight_of(mu, p) == W(0))) return false;
  }
  return true;
}

template <class W>
struct Decomposition {
  Weights<W> absolutely_continuous_part;
  Weights<W> singular_part;
};

// Atom-wise Lebesgue decomposition of a signed weight vector against a
// positive reference: the mass on the support of mu is the absolutely
// continuous part, the rest is singular.
template <class W>
Decomposition<W> lebesgue_decompose(const Weights<W>& lambda, const Weights<W>& mu) {
  if (!is_positive(mu)) throw DomainError("lebesgue_decompose: reference must be positive");
  Decomposition<W> d;
  for (const auto& [p, v] : lambda) {
    if (weight_of(mu, p) == W(0)) {
      d.absolutely_continuous_part[p] = W(0);
      d.singular_part[p] = v;
    } else {
      d.absolutely_continuous_part[p] = v;
      d.singular_part[p] = W(0);
    }
  }
  return d;
}

// Radon-Nikodym derivative of an absolutely continuous weight vector:
// the atom-wise quotient on the support of mu, zero elsewhere.
template <class W>
Weights<W> radon_nikodym(const Weights<W>& lambda_ac, const Weights<W>& mu) {
  if (!is_positive(mu)) throw DomainError("radon_nikodym: reference must be positive");
  if (!absolutely_continuous(lambda_ac, mu)) {
    throw AbsoluteContinuityError("radon_nikodym: measure is not absolutely continuous");
  }
  Weights<W> h;
  for (const auto& [p, v] : mu) {
    h[p] = v == W(0) ? W(0) : weight_of(lambda_ac, p) / v;
  }
  for (const auto& [p, v] : lambda_ac) {
    if (!h.contains(p)) h[p] = W(0);
  }
  return h;
}

struct CheckOutcome {
  bool passed = true;
  std::string witness;  // first violated atom, empty when passed
};

// With an injective morphism, the pushforward commutes with the Lebesgue
// decomposition: both parts transport atom by atom.
template <class W>
CheckOutcome check_stability(const FiniteMeasureSpace<W>& mu1, const FiniteMeasureSpace<W>& mu2,
                             const Weights<W>& lambda1, const FiniteMap& phi) {
  if (!is_injective(phi, mu1.points)) {
    throw PreconditionError("check_stability: map must be injective");
  }
  if (!is_morphism(mu1, mu2, phi)) {
    throw PreconditionError("check_stability: map must be a morphism");
  }
  const Decomposition<W> before = lebesgue_decompose(lambda1, mu1.weights);
  const Weights<W> lambda2 = pushforward_weights(lambda1, phi, mu2.points);
  const Decomposition<W> after = lebesgue_decompose(lambda2, mu2.weights);
  const Weights<W> pushed_ac =
      pushforward_weights(before.absolutely_continuous_part, phi, mu2.points);
  const Weights<W> pushed_s = pushforward_weights(before.singular_part, phi, mu2.points);
  for (const auto& q : mu2.points) {
    if (!(weight_of(pushed_ac, q) == weight_of(after.absolutely_continuous_part, q)) ||
        !(weight_of(pushed_s, q) == weight_of(after.singular_part, q))) {
      return {false, q};
    }
  }
  return {true, {}};
}

struct NoninjectiveReport {
  bool singular_before = false;
  bool singular_after = false;
};

// The two-point collapse: lambda sits on {a}, mu on {b}, and the constant map
// sends both to one point. Mutual singularity survives any rescaling but not
// the collapse.
template <class W>
NoninjectiveReport counterexample_noninjective_scaled(W scale) {
  FiniteMeasureSpace<W> mu1{{"a", "b"}, {{"a", W(0)}, {"b", scale}}};
  const Weights<W> lambda1{{"a", scale}, {"b", W(0)}};
  FiniteMap collapse{{{"a", "c"}, {"b", "c"}}};
  const std::vector<std::string> target{"c"};
  NoninjectiveReport report;
  report.singular_before = mutually_singular(lambda1, mu1.weights);
  const Weights<W> mu2 = pushforward_weights(mu1.weights, collapse, target);
  const Weights<W> lambda2 = pushforward_weights(lambda1, collapse, target);
  report.singular_after = mutually_singular(lambda2, mu2);
  return report;
}

inline NoninjectiveReport counterexample_noninjective() {
  return counterexample_noninjective_scaled<double>(1.0);
}

template <class W>
struct DensityTransportOutcome {
  bool passed = true;
  bool l1_norm_preserved = true;
  std::string witness;
};

// For a bijective morphism, the Radon-Nikodym derivative of the pushforward
// is the original derivative read through the inverse map, and the total
// absolute mass of the derivative is preserved.
template <class W>
DensityTransportOutcome<W> check_density_pushforward(const FiniteMeasureSpace<W>& mu1,
                                                     const FiniteMeasureSpace<W>& mu2,
                                                     const Weights<W>& lambda1,
                                                     const FiniteMap& phi) {
  if (!is_bijective(phi, mu1.points, mu2.points)) {
    throw PreconditionError("check_density_pushforward: map must be bijective");
  }
  if (!is_morphism(mu1, mu2, phi)) {
    throw PreconditionError("check_density_pushforward: map must be a morphism");
  }
  const Weights<W> h1 = radon_nikodym(lambda1, mu1.weights);
  const Weights<W> lambda2 = pushforward_weights(lambda1, phi, mu2.points);
  const Weights<W> h2 = radon_nikodym(lambda2, mu2.weights);

  DensityTransportOutcome<W> outcome;
  const FiniteMap inv = inverse_map(phi);
  for (const auto& q : mu2.points) {
    if (weight_of(mu2.weights, q) == W(0)) continue;
    const std::string& p = inv.mapping.at(q);
    if (!(weight_of(h2, q) == weight_of(h1, p))) {
      outcome.passed = false;
      outcome.witness = q;
      break;
    }
  }
  const auto abs_w = [](const W& w) { return w < W(0) ? W(0) - w : w; };
  W before(0), after(0);
  for (const auto& p : mu1.points) before = before + abs_w(weight_of(h1, p)) * weight_of(mu1.weights, p);
  for (const auto& q : mu2.points) after = after + abs_w(weight_of(h2, q)) * weight_of(mu2.weights, q);
  outcome.l1_norm_preserved = before == after;
  outcome.passed = outcome.passed && outcome.l1_norm_preserved;
  return outcome;
}

}  // namespace simplexmeasure::finitelab
