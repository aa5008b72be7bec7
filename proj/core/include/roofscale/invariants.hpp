#pragma once

#include <functional>
#include <string>
#include <vector>

#include "roofscale/common.hpp"
#include "roofscale/qstate.hpp"

namespace roofscale {

// The three scalar sums of the three-qubit tangle polynomial and the
// resulting value 4|d1 - 2 d2 + 4 d3|.
struct TangleBreakdown {
  cplx d1;
  cplx d2;
  cplx d3;
  double value;
};

// Degree-4 homogeneous polynomial invariant of a three-qubit amplitude
// vector, evaluated raw (no normalization). Throws std::invalid_argument
// unless dims = (2,2,2).
TangleBreakdown three_tangle(const PureState& psi);

// sqrt of the three-tangle; degree-2 homogeneous. Same domain requirements.
double sqrt_three_tangle(const PureState& psi);

// Named invariant evaluator with homogeneity degree eta. The evaluator acts
// on raw amplitude vectors: evaluator(alpha * psi) = alpha^degree *
// evaluator(psi) for alpha > 0.
//
// When the invariant has the product form kappa * |P(psi)|^theta with P a
// homogeneous polynomial in the amplitudes (no conjugates), `poly` holds P
// evaluated in extended precision and poly_degree its degree; the convex-roof
// optimizer uses this to refine near-zero decompositions where the absolute
// value makes the plain evaluator non-smooth. A default-constructed (empty)
// `poly` disables that refinement.
struct Monotone {
  std::string name;
  double degree = 0.0;
  std::function<double(const PureState&)> evaluator;
  double kappa = 1.0;
  double theta = 1.0;
  int poly_degree = 0;
  std::function<std::complex<long double>(const Vec&)> poly;
};

// Registry lookup. Exactly "tau3" (degree 4) and "sqrt_tau3" (degree 2) are
// registered. Throws std::invalid_argument for unknown names.
const Monotone& monotone(const std::string& name);

// Names available through monotone(), in fixed order.
const std::vector<std::string>& monotone_names();

// Two-qubit pure-state concurrence as a Monotone (degree 2). Not part of the
// registry; exists to validate the roof optimizer against the closed-form
// mixed-state concurrence below.
const Monotone& concurrence_monotone();

// m.evaluator on psi / ||psi||. Throws std::domain_error on the zero vector.
double evaluate_normalized(const Monotone& m, const PureState& psi);

// Closed-form two-qubit mixed-state concurrence
// max(0, lambda1 - lambda2 - lambda3 - lambda4); exact convex roof of the
// pure concurrence. Throws std::invalid_argument unless dims = (2,2).
double wootters_concurrence(const MixedState& rho);

}  // namespace roofscale
