#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace kmed {

// Non-decreasing energy transform with psi(0) = 0.
enum class PotentialKind { Quadratic, Identity, Exponential, Logarithmic, Step };

struct Potential {
  PotentialKind kind = PotentialKind::Quadratic;
  double stepRadius = 0.05;  // used by Step only

  double operator()(double v) const {
    switch (kind) {
      case PotentialKind::Quadratic: return v * v;
      case PotentialKind::Identity: return v;
      case PotentialKind::Exponential: return std::expm1(v);
      case PotentialKind::Logarithmic: return std::log1p(v);
      case PotentialKind::Step: return v <= stepRadius ? 0.0 : 1.0;
    }
    return 0.0;
  }
};

inline Potential potential_from_name(const std::string& name) {
  if (name == "quadratic") return {PotentialKind::Quadratic};
  if (name == "identity") return {PotentialKind::Identity};
  if (name == "exponential") return {PotentialKind::Exponential};
  if (name == "logarithmic") return {PotentialKind::Logarithmic};
  if (name == "step") return {PotentialKind::Step};
  throw std::invalid_argument("unknown potential: " + name);
}

inline std::string potential_name(const Potential& p) {
  switch (p.kind) {
    case PotentialKind::Quadratic: return "quadratic";
    case PotentialKind::Identity: return "identity";
    case PotentialKind::Exponential: return "exponential";
    case PotentialKind::Logarithmic: return "logarithmic";
    case PotentialKind::Step: return "step";
  }
  return "?";
}

}  // namespace kmed
