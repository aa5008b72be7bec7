#pragma once

#include <string>

#include "roofscale/common.hpp"
#include "roofscale/invariants.hpp"
#include "roofscale/localops.hpp"
#include "roofscale/qstate.hpp"

namespace roofscale {

// Multi-start optimizer settings. max_length 0 means "use the Caratheodory
// bound rank^2". Throws (from convex_roof) when restarts < 1 or a nonzero
// max_length is below the rank.
struct RoofOptions {
  int restarts = 32;
  int max_length = 0;
  double tolerance = 1e-8;
  unsigned long long seed = 20240817ULL;
};

// Best decomposition average found. value is a certified upper bound on the
// true roof: every isometry parametrizes a valid decomposition, so no
// candidate can undershoot. converged means the best value was stable over
// the final quarter of restarts within 1e-6; it is a heuristic, not a proof
// of global optimality.
struct RoofResult {
  double value;
  Decomposition decomposition;
  int restarts_used;
  bool converged;
};

// Minimizes sum_i p_i m(pi_i) over decompositions steer(rho, U) by
// multi-start derivative-free local search over the 2*m*r real parameters of
// a complex m x r matrix, orthonormalized each evaluation. Restart 0 starts
// at the spectral decomposition (identity embedding), so the result never
// exceeds the spectral average. For monotones of the product form
// kappa |P|^theta the best candidate is additionally driven into the zero
// set of P by a damped least-squares pass when the value is already small;
// this sharpens true zeros from optimizer noise level to ~1e-9 without
// affecting the upper-bound guarantee.
RoofResult convex_roof(const Monotone& m, const MixedState& rho,
                       const RoofOptions& opts = {});

// Degree-2 rescaling theorem: the roof of rho' = A rho A^dag / T equals
// roof(rho) / T. Throws std::invalid_argument unless m.degree == 2,
// std::domain_error unless T > 0.
double rescaled_roof(const Monotone& m, double roof_of_rho, double trace);

// Transports the attached decomposition through the operator; the result is
// a decomposition of rho' whose average equals result.value / T, and it is
// optimal iff the input was. Degree-2 only (std::invalid_argument otherwise).
RoofResult transport_optimal(const Monotone& m, const LocalOperator& op,
                             const RoofResult& result);

enum class ZeroClass { zero, nonzero, undecided };

const char* to_string(ZeroClass c);

// "zero" when the optimizer reaches value <= 1e-7 (the operator-invariant
// statement: roofs of ILO-related states vanish together for every
// homogeneity degree). "nonzero" only with a certificate: for states of the
// recognized two-branch family the convex characteristic curve is the exact
// degree-2 roof, giving the lower bound (squared for degree 4); > 1e-5
// certifies. Anything else is "undecided" rather than a guess.
ZeroClass zero_class(const Monotone& m, const MixedState& rho,
                     const RoofOptions& opts = {});

// value / T^(eta/2). The naive generalization of the degree-2 theorem;
// wrong for eta != 2 and kept to demonstrate exactly that. Throws
// std::domain_error unless T > 0.
double naive_rescale(double value, double trace, double eta);

// value / T^(eta/2), exact for any homogeneity degree when every member of
// an optimal decomposition has the same transformed trace (condition_ok, as
// established by check_equal_trace). Throws std::invalid_argument when the
// flag is false, std::domain_error unless T > 0.
double symmetric_rescale(const Monotone& m, double value, double trace,
                         bool condition_ok);

struct EqualTraceCheck {
  bool ok;               // max_deviation <= 1e-8
  double max_deviation;  // max_i |tr(A pi_i A^dag) - T|
  double factor;         // T = sum_i p_i tr(A pi_i A^dag)
};

// Tests the symmetric-decomposition condition tr(A pi_i A^dag) = T for all
// members.
EqualTraceCheck check_equal_trace(const LocalOperator& op,
                                  const Decomposition& dec);

}  // namespace roofscale
