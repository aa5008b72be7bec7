#include "roofscale/localops.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace roofscale {

namespace {

Mat kron(const Mat& A, const Mat& B) {
  Mat out(A.rows() * B.rows(), A.cols() * B.cols());
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) {
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return out;
}

}  // namespace

std::vector<int> LocalOperator::dims() const {
  std::vector<int> out;
  out.reserve(factors_.size());
  for (const Mat& f : factors_) out.push_back(static_cast<int>(f.rows()));
  return out;
}

Mat LocalOperator::composite() const {
  Mat out = normalized_factors_.front();
  for (std::size_t k = 1; k < normalized_factors_.size(); ++k) {
    out = kron(out, normalized_factors_[k]);
  }
  return out;
}

LocalOperator sl_normalize(const std::vector<Mat>& factors) {
  if (factors.empty()) {
    throw std::invalid_argument("local operator needs at least one factor");
  }
  LocalOperator op;
  op.factors_ = factors;
  op.normalized_factors_.reserve(factors.size());
  for (const Mat& f : factors) {
    if (f.rows() != f.cols() || f.rows() < 1) {
      throw std::invalid_argument("local factors must be square");
    }
    const cplx det = f.determinant();
    if (std::abs(det) <= 1e-12) {
      throw std::invalid_argument("local factor is numerically singular");
    }
    const double d = static_cast<double>(f.rows());
    const cplx root = std::pow(det, 1.0 / d);  // principal branch
    op.normalized_factors_.push_back(f / root);
  }
  return op;
}

LocalOperator identity_operator(const std::vector<int>& dims) {
  std::vector<Mat> factors;
  factors.reserve(dims.size());
  for (const int d : dims) factors.push_back(Mat::Identity(d, d));
  return sl_normalize(factors);
}

RescaledPure apply_pure(const LocalOperator& op, const PureState& phi) {
  if (op.dims() != phi.dims()) {
    throw std::invalid_argument(
        "operator and state live on different spaces");
  }
  if (!phi.normalized()) {
    throw std::invalid_argument("apply_pure requires a normalized state");
  }
  const Vec mapped = op.composite() * phi.amplitudes();
  const double factor = mapped.norm();
  if (factor <= 0.0) {
    throw std::runtime_error("invertible operator produced a zero vector");
  }
  return RescaledPure{PureState(phi.dims(), mapped / factor), factor};
}

RescaledMixed apply_mixed(const LocalOperator& op, const MixedState& rho) {
  if (op.dims() != rho.dims()) {
    throw std::invalid_argument(
        "operator and state live on different spaces");
  }
  const Mat A = op.composite();
  Mat mapped = A * rho.matrix() * A.adjoint();
  mapped = 0.5 * (mapped + mapped.adjoint().eval());
  const double T = mapped.trace().real();
  if (T <= 0.0) {
    throw std::runtime_error("trace factor is not positive");
  }
  return RescaledMixed{MixedState(rho.dims(), mapped / T), T};
}

Decomposition transport_decomposition(const LocalOperator& op,
                                      const Decomposition& dec) {
  const Mat A = op.composite();
  const int m = dec.length();
  std::vector<double> weights(m);
  std::vector<PureState> states;
  states.reserve(m);
  double T = 0.0;
  for (int i = 0; i < m; ++i) {
    const Vec mapped = A * dec.states()[i].amplitudes();
    const double norm_sq = mapped.squaredNorm();  // tr(A pi_i A^dag)
    weights[i] = dec.weights()[i] * norm_sq;
    T += weights[i];
    states.emplace_back(dec.states()[i].dims(), mapped / std::sqrt(norm_sq));
  }
  for (double& w : weights) w /= T;
  return Decomposition(std::move(weights), std::move(states));
}

LocalOperator inverse(const LocalOperator& op) {
  LocalOperator out;
  out.factors_.reserve(op.factors().size());
  out.normalized_factors_.reserve(op.factors().size());
  for (std::size_t k = 0; k < op.factors().size(); ++k) {
    out.factors_.push_back(op.factors()[k].inverse());
    // The inverse of a determinant-one matrix has determinant one.
    out.normalized_factors_.push_back(op.normalized_factors()[k].inverse());
  }
  return out;
}

LocalOperator diagonal_ilo_for_family(cplx a, cplx b, cplx c, cplx d,
                                      cplx f) {
  for (const cplx z : {a, b, c, d, f}) {
    if (std::abs(z) <= 0.0) {
      throw std::invalid_argument(
          "family coefficients must all be nonzero");
    }
  }
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-10 ||
      std::abs(std::norm(c) + std::norm(d) + std::norm(f) - 1.0) > 1e-10) {
    throw std::invalid_argument("family coefficients must be normalized");
  }
  const cplx alpha = std::pow(b * c * c / (a * d * f), 1.0 / 6.0);
  const cplx beta = std::pow(b * d * d / (a * c * f), 1.0 / 6.0);
  const cplx gamma = std::pow(b * f * f / (a * c * d), 1.0 / 6.0);
  std::vector<Mat> factors;
  for (const cplx u : {alpha, beta, gamma}) {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = u;
    m(1, 1) = 1.0 / u;
    factors.push_back(m);
  }
  return sl_normalize(factors);
}

LocalOperator random_local_operator(Rng& rng, const std::vector<int>& dims) {
  std::vector<Mat> factors;
  factors.reserve(dims.size());
  for (const int d : dims) {
    Mat f(d, d);
    for (;;) {
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) f(i, j) = rng.complex_gaussian();
      if (std::abs(f.determinant()) > 1e-6) break;  // redraw near-singular
    }
    factors.push_back(f);
  }
  return sl_normalize(factors);
}

LocalOperator random_diagonal_ilo(Rng& rng, const std::vector<int>& dims,
                                  double scale) {
  if (scale < 1.0) throw std::invalid_argument("scale must be >= 1");
  std::vector<Mat> factors;
  factors.reserve(dims.size());
  for (const int d : dims) {
    if (d != 2) {
      throw std::invalid_argument(
          "random_diagonal_ilo supports qubit sites only");
    }
    const double mag =
        std::exp(rng.uniform(-std::log(scale), std::log(scale)));
    const double phase = rng.uniform(0.0, 2.0 * M_PI);
    const cplx u = std::polar(mag, phase);
    Mat f = Mat::Zero(2, 2);
    f(0, 0) = u;
    f(1, 1) = 1.0 / u;
    factors.push_back(f);
  }
  return sl_normalize(factors);
}

}  // namespace roofscale
