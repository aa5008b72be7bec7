#include "roofscale/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace roofscale {

namespace {

long long dimension_product(const std::vector<int>& dims) {
  long long prod = 1;
  for (const int d : dims) {
    if (d < 1) throw std::invalid_argument("local dimension must be >= 1");
    prod *= d;
  }
  return prod;
}

}  // namespace

PureState::PureState(std::vector<int> dims, Vec amplitudes)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
  if (dims_.empty()) throw std::invalid_argument("dims must be nonempty");
  if (dimension_product(dims_) != amplitudes_.size()) {
    throw std::invalid_argument(
        "amplitude length does not match the product of local dimensions");
  }
  if (!amplitudes_.allFinite()) {
    throw std::invalid_argument("amplitudes must be finite");
  }
  normalized_ = std::abs(amplitudes_.norm() - 1.0) <= 1e-12;
}

PureState normalize(const PureState& state) {
  const double n = state.norm();
  if (n <= 0.0) {
    throw std::domain_error("cannot normalize the zero state vector");
  }
  return PureState(state.dims(), state.amplitudes() / n);
}

MixedState::MixedState(std::vector<int> dims, Mat matrix)
    : dims_(std::move(dims)), matrix_(std::move(matrix)) {
  if (dims_.empty()) throw std::invalid_argument("dims must be nonempty");
  const long long d = dimension_product(dims_);
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw std::invalid_argument(
        "density matrix side does not match the product of local dimensions");
  }
  if (!matrix_.allFinite()) {
    throw std::invalid_argument("density matrix entries must be finite");
  }
  const double herm_dev =
      (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > 1e-10) {
    throw std::invalid_argument("density matrix is not Hermitian (deviation " +
                                std::to_string(herm_dev) + ")");
  }
  const double trace_dev = std::abs(matrix_.trace() - cplx(1.0, 0.0));
  if (trace_dev > 1e-10) {
    throw std::invalid_argument("density matrix trace differs from 1 by " +
                                std::to_string(trace_dev));
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver(matrix_,
                                            Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::invalid_argument("density matrix eigensolve failed");
  }
  if (solver.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument("density matrix has eigenvalue below -1e-10");
  }
}

MixedState projector(const PureState& state) {
  const PureState unit = normalize(state);
  return MixedState(unit.dims(),
                    unit.amplitudes() * unit.amplitudes().adjoint());
}

Decomposition::Decomposition(std::vector<double> weights,
                             std::vector<PureState> states)
    : weights_(std::move(weights)), states_(std::move(states)) {
  if (weights_.empty() || weights_.size() != states_.size()) {
    throw std::invalid_argument(
        "decomposition needs equally many weights and states, at least one");
  }
  double sum = 0.0;
  for (double& w : weights_) {
    if (w < 0.0) {
      if (w < -1e-12) {
        throw std::invalid_argument("decomposition weight below -1e-12");
      }
      w = 0.0;
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw std::invalid_argument("decomposition weights sum to " +
                                std::to_string(sum) + ", expected 1");
  }
  const std::vector<int>& dims = states_.front().dims();
  for (const PureState& s : states_) {
    if (s.dims() != dims) {
      throw std::invalid_argument(
          "decomposition members live on different spaces");
    }
    if (!s.normalized()) {
      throw std::invalid_argument("decomposition members must be normalized");
    }
  }
}

MixedState mix(const Decomposition& dec) {
  const int d = dec.states().front().dim();
  Mat rho = Mat::Zero(d, d);
  for (int i = 0; i < dec.length(); ++i) {
    const Vec& psi = dec.states()[i].amplitudes();
    rho.noalias() += dec.weights()[i] * (psi * psi.adjoint());
  }
  return MixedState(dec.states().front().dims(), rho);
}

Decomposition spectral_decomposition(const MixedState& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(rho.matrix());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolve failed");
  }
  std::vector<double> weights;
  std::vector<PureState> states;
  // Eigen sorts ascending; walk backwards for descending weights.
  for (int j = static_cast<int>(solver.eigenvalues().size()) - 1; j >= 0;
       --j) {
    const double lambda = solver.eigenvalues()(j);
    if (lambda <= 1e-12) break;
    weights.push_back(lambda);
    states.emplace_back(rho.dims(), solver.eigenvectors().col(j));
  }
  if (weights.empty()) {
    throw std::runtime_error("density matrix has no eigenvalue above 1e-12");
  }
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= sum;
  return Decomposition(std::move(weights), std::move(states));
}

Isometry::Isometry(Mat entries) : entries_(std::move(entries)) {
  if (entries_.rows() < entries_.cols() || entries_.cols() < 1) {
    throw std::invalid_argument("isometry needs m >= r >= 1");
  }
  const Mat gram =
      entries_.adjoint() * entries_ -
      Mat::Identity(entries_.cols(), entries_.cols());
  const double dev = gram.cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    throw std::invalid_argument("isometry columns not orthonormal (deviation " +
                                std::to_string(dev) + ")");
  }
}

Decomposition steer(const MixedState& rho, const Isometry& U) {
  const Decomposition spectral = spectral_decomposition(rho);
  const int r = spectral.length();
  if (U.cols() != r) {
    throw std::invalid_argument(
        "isometry column count " + std::to_string(U.cols()) +
        " does not match the state rank " + std::to_string(r));
  }
  // Columns of V are the sqrt-weighted eigenvectors.
  const int d = rho.dim();
  Mat V(d, r);
  for (int j = 0; j < r; ++j) {
    V.col(j) = std::sqrt(spectral.weights()[j]) *
               spectral.states()[j].amplitudes();
  }
  std::vector<double> weights;
  std::vector<PureState> states;
  for (int i = 0; i < U.rows(); ++i) {
    Vec member = Vec::Zero(d);
    for (int j = 0; j < r; ++j) member += U.entries()(i, j) * V.col(j);
    const double w = member.squaredNorm();
    if (w < 1e-14) continue;  // zero-weight member: drop
    weights.push_back(w);
    states.emplace_back(rho.dims(), member / std::sqrt(w));
  }
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= sum;
  return Decomposition(std::move(weights), std::move(states));
}

PureState random_pure_state(Rng& rng, const std::vector<int>& dims) {
  const long long d = dimension_product(dims);
  Vec psi(d);
  for (long long i = 0; i < d; ++i) psi(i) = rng.complex_gaussian();
  return PureState(dims, psi / psi.norm());
}

MixedState random_mixed_state(Rng& rng, const std::vector<int>& dims,
                              int rank) {
  if (rank < 1) throw std::invalid_argument("rank must be >= 1");
  const long long d = dimension_product(dims);
  if (rank > d) throw std::invalid_argument("rank exceeds dimension");
  Mat rho = Mat::Zero(d, d);
  std::vector<double> w(rank);
  double sum = 0.0;
  for (int i = 0; i < rank; ++i) {
    w[i] = -std::log(1.0 - rng.uniform());  // Exp(1) draws: flat Dirichlet
    sum += w[i];
  }
  for (int i = 0; i < rank; ++i) {
    const Vec psi = random_pure_state(rng, dims).amplitudes();
    rho.noalias() += (w[i] / sum) * (psi * psi.adjoint());
  }
  rho = 0.5 * (rho + rho.adjoint().eval());
  return MixedState(dims, rho);
}

Isometry random_isometry(Rng& rng, int rows, int cols) {
  if (rows < cols || cols < 1) {
    throw std::invalid_argument("isometry needs m >= r >= 1");
  }
  Mat M(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) M(i, j) = rng.complex_gaussian();
  // Modified Gram-Schmidt; deterministic given the draws.
  for (int j = 0; j < cols; ++j) {
    for (int k = 0; k < j; ++k) {
      M.col(j) -= M.col(k).dot(M.col(j)) * M.col(k);
    }
    M.col(j) /= M.col(j).norm();
  }
  return Isometry(M);
}

}  // namespace roofscale
