#pragma once

#include <vector>

#include "roofscale/common.hpp"
#include "roofscale/qstate.hpp"

namespace roofscale {

// Invertible local operation: one invertible matrix per site, together with
// the determinant-one normalization A_k = F_k / (det F_k)^(1/d_k) (principal
// branch of the root; any other branch differs by a per-site global phase).
class LocalOperator {
 public:
  const std::vector<Mat>& factors() const { return factors_; }
  const std::vector<Mat>& normalized_factors() const {
    return normalized_factors_;
  }
  std::vector<int> dims() const;
  // Tensor product of the normalized factors (site 1 most significant).
  Mat composite() const;

 private:
  friend LocalOperator sl_normalize(const std::vector<Mat>& factors);
  friend LocalOperator inverse(const LocalOperator& op);
  LocalOperator() = default;
  std::vector<Mat> factors_;
  std::vector<Mat> normalized_factors_;
};

// Builds the operator from per-site factors. Throws std::invalid_argument if
// a factor is not square or is numerically singular (|det| <= 1e-12).
LocalOperator sl_normalize(const std::vector<Mat>& factors);

// Convenience: the identity operation on the given local dimensions.
LocalOperator identity_operator(const std::vector<int>& dims);

struct RescaledPure {
  PureState state;   // A phi / ||A phi||
  double factor;     // ||A phi||
};

struct RescaledMixed {
  MixedState state;  // A rho A^dag / T
  double factor;     // T = tr(A rho A^dag)
};

// Applies the determinant-one operator to a normalized pure state.
// Throws std::invalid_argument if phi is not normalized or dimensions
// mismatch.
RescaledPure apply_pure(const LocalOperator& op, const PureState& phi);

// Applies the determinant-one operator to a density matrix and renormalizes
// the trace. Throws std::invalid_argument on dimension mismatch.
RescaledMixed apply_mixed(const LocalOperator& op, const MixedState& rho);

// Maps a decomposition of rho to a decomposition of A rho A^dag / T:
// weight_i' = weight_i * tr(A pi_i A^dag) / T, member_i' normalized.
Decomposition transport_decomposition(const LocalOperator& op,
                                      const Decomposition& dec);

// Factorwise inverse; composing with the original transports any
// decomposition back to the original state.
LocalOperator inverse(const LocalOperator& op);

// The diagonal determinant-one three-qubit operation
// diag(alpha,1/alpha) x diag(beta,1/beta) x diag(gamma,1/gamma) with
//   alpha = (b c^2/(a d f))^(1/6),
//   beta  = (b d^2/(a c f))^(1/6),
//   gamma = (b f^2/(a c d))^(1/6)   (principal roots),
// which maps a|000>+b|111> to a multiple of the uniform two-term
// superposition and c|100>+d|010>+f|001> to a multiple of the uniform
// three-term one. Throws std::invalid_argument if any coefficient is zero or
// the pairs (a,b) / (c,d,f) are not normalized.
LocalOperator diagonal_ilo_for_family(cplx a, cplx b, cplx c, cplx d, cplx f);

// Random determinant-one operator on the given dims (complex Gaussian
// entries, renormalized; redrawn if nearly singular). For sampling-based
// invariance checks.
LocalOperator random_local_operator(Rng& rng, const std::vector<int>& dims);

// Random diagonal determinant-one operator diag(u,1/u) per site with
// log-uniform |u| in [1/scale, scale] and uniform phase.
LocalOperator random_diagonal_ilo(Rng& rng, const std::vector<int>& dims,
                                  double scale = 2.0);

}  // namespace roofscale
