#include "roofscale/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace roofscale {

namespace {

void require_dims(const PureState& psi, const std::vector<int>& dims,
                  const char* what) {
  if (psi.dims() != dims) {
    throw std::invalid_argument(std::string(what) +
                                " requires local dimensions (2,...,2) of the "
                                "expected site count");
  }
}

// d1 - 2 d2 + 4 d3 of the tangle polynomial, in extended precision. The
// amplitude index is big-endian, psi[4i+2j+k] = <ijk|psi>.
template <typename Real>
std::complex<Real> tangle_quartic(const Vec& a) {
  using C = std::complex<Real>;
  C x[8];
  for (int i = 0; i < 8; ++i) {
    x[i] = C(static_cast<Real>(a(i).real()), static_cast<Real>(a(i).imag()));
  }
  const C d1 = x[0] * x[0] * x[7] * x[7] + x[1] * x[1] * x[6] * x[6] +
               x[2] * x[2] * x[5] * x[5] + x[3] * x[3] * x[4] * x[4];
  const C d2 = x[0] * x[1] * x[6] * x[7] + x[0] * x[2] * x[5] * x[7] +
               x[0] * x[3] * x[4] * x[7] + x[1] * x[2] * x[5] * x[6] +
               x[1] * x[3] * x[4] * x[6] + x[2] * x[3] * x[4] * x[5];
  const C d3 = x[0] * x[6] * x[5] * x[3] + x[4] * x[2] * x[1] * x[7];
  return d1 - Real(2) * d2 + Real(4) * d3;
}

std::complex<long double> concurrence_quadratic(const Vec& a) {
  using C = std::complex<long double>;
  C x[4];
  for (int i = 0; i < 4; ++i) {
    x[i] = C(static_cast<long double>(a(i).real()),
             static_cast<long double>(a(i).imag()));
  }
  return x[0] * x[3] - x[1] * x[2];
}

const std::vector<int> kThreeQubits = {2, 2, 2};
const std::vector<int> kTwoQubits = {2, 2};

}  // namespace

TangleBreakdown three_tangle(const PureState& psi) {
  require_dims(psi, kThreeQubits, "three_tangle");
  const Vec& x = psi.amplitudes();
  TangleBreakdown out;
  out.d1 = x(0) * x(0) * x(7) * x(7) + x(1) * x(1) * x(6) * x(6) +
           x(2) * x(2) * x(5) * x(5) + x(3) * x(3) * x(4) * x(4);
  out.d2 = x(0) * x(1) * x(6) * x(7) + x(0) * x(2) * x(5) * x(7) +
           x(0) * x(3) * x(4) * x(7) + x(1) * x(2) * x(5) * x(6) +
           x(1) * x(3) * x(4) * x(6) + x(2) * x(3) * x(4) * x(5);
  out.d3 = x(0) * x(6) * x(5) * x(3) + x(4) * x(2) * x(1) * x(7);
  out.value =
      4.0 * static_cast<double>(std::abs(tangle_quartic<long double>(x)));
  return out;
}

double sqrt_three_tangle(const PureState& psi) {
  return std::sqrt(three_tangle(psi).value);
}

namespace {

Monotone make_tau3() {
  Monotone m;
  m.name = "tau3";
  m.degree = 4.0;
  m.evaluator = [](const PureState& psi) { return three_tangle(psi).value; };
  m.kappa = 4.0;
  m.theta = 1.0;
  m.poly_degree = 4;
  m.poly = [](const Vec& a) { return tangle_quartic<long double>(a); };
  return m;
}

Monotone make_sqrt_tau3() {
  Monotone m;
  m.name = "sqrt_tau3";
  m.degree = 2.0;
  m.evaluator = [](const PureState& psi) { return sqrt_three_tangle(psi); };
  m.kappa = 2.0;
  m.theta = 0.5;
  m.poly_degree = 4;
  m.poly = [](const Vec& a) { return tangle_quartic<long double>(a); };
  return m;
}

Monotone make_concurrence() {
  Monotone m;
  m.name = "concurrence";
  m.degree = 2.0;
  m.evaluator = [](const PureState& psi) {
    require_dims(psi, kTwoQubits, "concurrence");
    return 2.0 *
           static_cast<double>(std::abs(concurrence_quadratic(psi.amplitudes())));
  };
  m.kappa = 2.0;
  m.theta = 1.0;
  m.poly_degree = 2;
  m.poly = [](const Vec& a) { return concurrence_quadratic(a); };
  return m;
}

}  // namespace

const Monotone& monotone(const std::string& name) {
  static const Monotone tau3 = make_tau3();
  static const Monotone sqrt_tau3 = make_sqrt_tau3();
  if (name == "tau3") return tau3;
  if (name == "sqrt_tau3") return sqrt_tau3;
  throw std::invalid_argument("unknown monotone '" + name +
                              "' (available: tau3, sqrt_tau3)");
}

const std::vector<std::string>& monotone_names() {
  static const std::vector<std::string> names = {"tau3", "sqrt_tau3"};
  return names;
}

const Monotone& concurrence_monotone() {
  static const Monotone conc = make_concurrence();
  return conc;
}

double evaluate_normalized(const Monotone& m, const PureState& psi) {
  return m.evaluator(normalize(psi));
}

double wootters_concurrence(const MixedState& rho) {
  if (rho.dims() != kTwoQubits) {
    throw std::invalid_argument(
        "wootters_concurrence requires a two-qubit state");
  }
  // Spin-flipped matrix (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y);
  // the flip matrix has entries +-1 on the anti-diagonal.
  Mat flip = Mat::Zero(4, 4);
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  const Mat tilde = flip * rho.matrix().conjugate() * flip;

  // Hermitian route: the lambdas are the sqrt eigenvalues of the positive
  // semidefinite matrix sqrt(rho) tilde sqrt(rho).
  Eigen::SelfAdjointEigenSolver<Mat> rho_solver(rho.matrix());
  if (rho_solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolve failed");
  }
  Vec sqrt_eigs(4);
  for (int i = 0; i < 4; ++i) {
    sqrt_eigs(i) = std::sqrt(std::max(0.0, rho_solver.eigenvalues()(i)));
  }
  const Mat sqrt_rho = rho_solver.eigenvectors() * sqrt_eigs.asDiagonal() *
                       rho_solver.eigenvectors().adjoint();
  Eigen::SelfAdjointEigenSolver<Mat> solver(sqrt_rho * tilde * sqrt_rho);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolve failed");
  }
  double lambdas[4];
  for (int i = 0; i < 4; ++i) {
    lambdas[i] = std::sqrt(std::max(0.0, solver.eigenvalues()(i)));
  }
  std::sort(lambdas, lambdas + 4, std::greater<double>());
  return std::max(0.0, lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]);
}

}  // namespace roofscale
