#pragma once

#include <vector>

#include "roofscale/common.hpp"
#include "roofscale/rng.hpp"

namespace roofscale {

// Pure state on a tensor product of finite-dimensional sites.
//
// Index convention is big-endian: site 1 is the most significant digit, so
// for three qubits the basis ket |ijk> sits at amplitude index 4i + 2j + k.
class PureState {
 public:
  // Throws std::invalid_argument if the amplitude length does not equal the
  // product of the local dimensions, a dimension is < 1, or an entry is not
  // finite.
  PureState(std::vector<int> dims, Vec amplitudes);

  const std::vector<int>& dims() const { return dims_; }
  const Vec& amplitudes() const { return amplitudes_; }
  int dim() const { return static_cast<int>(amplitudes_.size()); }
  double norm() const { return amplitudes_.norm(); }
  // True iff the Euclidean norm is within 1e-12 of 1.
  bool normalized() const { return normalized_; }

 private:
  std::vector<int> dims_;
  Vec amplitudes_;
  bool normalized_;
};

// Returns the unit-norm state with the same direction.
// Throws std::domain_error on a zero vector.
PureState normalize(const PureState& state);

// Unit-trace positive-semidefinite density operator.
class MixedState {
 public:
  // Validates: square matrix of side prod(dims), Hermitian within 1e-10
  // entrywise, eigenvalues >= -1e-10, trace within 1e-10 of 1.
  // Throws std::invalid_argument on violation.
  MixedState(std::vector<int> dims, Mat matrix);

  const std::vector<int>& dims() const { return dims_; }
  const Mat& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

 private:
  std::vector<int> dims_;
  Mat matrix_;
};

// Projector onto a pure state (normalizes first).
MixedState projector(const PureState& state);

// Weights plus normalized pure states realizing a mixed state.
class Decomposition {
 public:
  // Validates: equal nonzero lengths, identical dims across members, members
  // normalized, weights >= 0 (values in [-1e-12, 0) are clipped to 0) and
  // summing to 1 within 1e-10. Throws std::invalid_argument on violation.
  Decomposition(std::vector<double> weights, std::vector<PureState> states);

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<PureState>& states() const { return states_; }
  int length() const { return static_cast<int>(weights_.size()); }

 private:
  std::vector<double> weights_;
  std::vector<PureState> states_;
};

// Sum of weighted projectors of the members.
MixedState mix(const Decomposition& dec);

// Eigen-decomposition restricted to eigenvalues > 1e-12, ordered by
// descending weight; its length is the numerical rank.
Decomposition spectral_decomposition(const MixedState& rho);

// Complex m x r matrix with orthonormal columns (m >= r); parametrizes the
// freedom of decompositions of a rank-r state into m members.
class Isometry {
 public:
  // Throws std::invalid_argument unless m >= r >= 1 and the columns are
  // orthonormal within 1e-10.
  explicit Isometry(Mat entries);

  const Mat& entries() const { return entries_; }
  int rows() const { return static_cast<int>(entries_.rows()); }
  int cols() const { return static_cast<int>(entries_.cols()); }

 private:
  Mat entries_;
};

// Decomposition of rho whose member i is the normalization of
// sum_j U(i,j) sqrt(lambda_j) |v_j>, with weight equal to the squared norm,
// over the spectral pairs (lambda_j, v_j). U must have exactly rank(rho)
// columns (std::invalid_argument otherwise). Members of weight < 1e-14 are
// dropped. Mixing the result reproduces rho.
Decomposition steer(const MixedState& rho, const Isometry& U);

// Deterministic random objects for sampling-based checks and optimizer
// seeding. All draws come from the caller's Rng stream.

// Haar-like random direction (complex Gaussian amplitudes, normalized).
PureState random_pure_state(Rng& rng, const std::vector<int>& dims);

// Random rank-k density operator: k random directions mixed with flat
// Dirichlet weights.
MixedState random_mixed_state(Rng& rng, const std::vector<int>& dims,
                              int rank);

// Random m x r isometry (complex Gaussian matrix, columns orthonormalized by
// modified Gram-Schmidt).
Isometry random_isometry(Rng& rng, int rows, int cols);

}  // namespace roofscale
