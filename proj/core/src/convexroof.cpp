#include "roofscale/convexroof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "roofscale/ghzw.hpp"
#include "roofscale/parallel.hpp"
#include "roofscale/rng.hpp"

namespace roofscale {

namespace {

struct RoofProblem {
  const Monotone* mono;
  std::vector<int> dims;
  Mat basis;   // dim x r, column j = sqrt(lambda_j) |v_j>
  int length;  // decomposition members m
  int rank;    // r

  int param_count() const { return 2 * length * rank; }
};

// Modified Gram-Schmidt with a deterministic substitute for collapsed
// columns (measure-zero in the search space, but the optimizer must never
// see a NaN).
void orthonormalize(Mat& M) {
  const int m = static_cast<int>(M.rows());
  const int r = static_cast<int>(M.cols());
  for (int j = 0; j < r; ++j) {
    for (int k = 0; k < j; ++k) {
      M.col(j) -= M.col(k).dot(M.col(j)) * M.col(k);
    }
    double n = M.col(j).norm();
    if (n < 1e-10) {
      Vec e = Vec::Zero(m);
      e[(7 * j + 1) % m] = 1.0;
      e[(3 * j + 2) % m] += 0.5;
      M.col(j) = e;
      for (int k = 0; k < j; ++k) {
        M.col(j) -= M.col(k).dot(M.col(j)) * M.col(k);
      }
      n = M.col(j).norm();
      if (n < 1e-12) {
        throw std::runtime_error("isometry projection failed");
      }
    }
    M.col(j) /= n;
  }
}

Mat params_to_matrix(const RoofProblem& pb, const Eigen::VectorXd& x) {
  Mat M(pb.length, pb.rank);
  int k = 0;
  for (int j = 0; j < pb.rank; ++j) {
    for (int i = 0; i < pb.length; ++i, k += 2) {
      M(i, j) = cplx(x[k], x[k + 1]);
    }
  }
  return M;
}

Eigen::VectorXd identity_params(const RoofProblem& pb) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(pb.param_count());
  for (int j = 0; j < pb.rank; ++j) {
    x[2 * (j * pb.length + j)] = 1.0;
  }
  return x;
}

// Decomposition average for the isometry encoded by x. Homogeneity of the
// evaluator turns weight * f(member / ||member||) into
// ||member||^2 * f(member / ||member||).
double roof_objective(const RoofProblem& pb, const Eigen::VectorXd& x) {
  Mat M = params_to_matrix(pb, x);
  orthonormalize(M);
  const Mat members = pb.basis * M.transpose();
  double total = 0.0;
  for (int i = 0; i < members.cols(); ++i) {
    const double w2 = members.col(i).squaredNorm();
    if (w2 < 1e-26) continue;
    PureState member(pb.dims, members.col(i) / std::sqrt(w2));
    total += w2 * pb.mono->evaluator(member);
  }
  return total;
}

// Smoothed surrogate kappa * (|P|^2 + eps^2)^(theta/2) per member. The
// minimizing decompositions tend to park members exactly on the zero set of
// P, where |P|^theta has a cusp that stalls direct search; the surrogate is
// real-analytic there and overshoots the true average by at most
// kappa * eps^theta. Only available when the monotone carries its
// polynomial; eps = 0 reproduces the exact objective up to roundoff.
double smoothed_objective(const RoofProblem& pb, const Eigen::VectorXd& x,
                          double eps) {
  Mat M = params_to_matrix(pb, x);
  orthonormalize(M);
  const Mat members = pb.basis * M.transpose();
  const double e2 = eps * eps;
  double total = 0.0;
  for (int i = 0; i < members.cols(); ++i) {
    const double w2 = members.col(i).squaredNorm();
    if (w2 < 1e-26) continue;
    const double praw = static_cast<double>(std::abs(pb.mono->poly(members.col(i))));
    const double pn = praw / std::pow(w2, 0.5 * pb.mono->poly_degree);
    total += w2 * pb.mono->kappa * std::pow(pn * pn + e2, 0.5 * pb.mono->theta);
  }
  return total;
}

Eigen::VectorXd matrix_to_params(const RoofProblem& pb, const Mat& M) {
  Eigen::VectorXd x(pb.param_count());
  int k = 0;
  for (int j = 0; j < pb.rank; ++j) {
    for (int i = 0; i < pb.length; ++i, k += 2) {
      x[k] = M(i, j).real();
      x[k + 1] = M(i, j).imag();
    }
  }
  return x;
}

// Pairwise member rotations (Jacobi-style sweeps). A unitary acting on rows
// i, j of M keeps M an isometry exactly and mixes exactly two members, which
// is the move that balances member values at an optimum; full-dimensional
// direct search finds that transfer direction poorly and tends to stall a
// few 1e-3 above the minimum without it.
double jacobi_polish(const RoofProblem& pb, Eigen::VectorXd& x, double fx) {
  Mat M = params_to_matrix(pb, x);
  orthonormalize(M);
  Mat members = pb.basis * M.transpose();
  auto member_value = [&pb](const Vec& col) {
    const double w2 = col.squaredNorm();
    if (w2 < 1e-26) return 0.0;
    PureState s(pb.dims, col / std::sqrt(w2));
    return w2 * pb.mono->evaluator(s);
  };
  std::vector<double> vals(pb.length);
  for (int i = 0; i < pb.length; ++i) vals[i] = member_value(members.col(i));
  bool improved_any = true;
  for (int sweep = 0; sweep < 6 && improved_any; ++sweep) {
    improved_any = false;
    for (int i = 0; i < pb.length; ++i) {
      for (int j = i + 1; j < pb.length; ++j) {
        const Vec mi = members.col(i);
        const Vec mj = members.col(j);
        const double base = vals[i] + vals[j];
        auto pair_obj = [&](double th, double ph) {
          const cplx e(std::cos(ph), std::sin(ph));
          const double c = std::cos(th);
          const double s = std::sin(th);
          return member_value(c * mi + e * s * mj) +
                 member_value(-std::conj(e) * s * mi + c * mj);
        };
        double best = base;
        double bth = 0.0;
        double bph = 0.0;
        for (int a = 0; a < 16; ++a) {
          const double th = -M_PI / 2 + M_PI * (a + 0.5) / 16.0;
          for (int b = 0; b < 12; ++b) {
            const double ph = 2.0 * M_PI * b / 12.0;
            const double v = pair_obj(th, ph);
            if (v < best) {
              best = v;
              bth = th;
              bph = ph;
            }
          }
        }
        if (best < base - 1e-14) {
          double hth = M_PI / 16.0;
          double hph = M_PI / 6.0;
          for (int r = 0; r < 40; ++r) {
            bool moved = false;
            for (const double dt : {-hth, hth}) {
              const double v = pair_obj(bth + dt, bph);
              if (v < best) {
                best = v;
                bth += dt;
                moved = true;
              }
            }
            for (const double dp : {-hph, hph}) {
              const double v = pair_obj(bth, bph + dp);
              if (v < best) {
                best = v;
                bph += dp;
                moved = true;
              }
            }
            if (!moved) {
              hth *= 0.5;
              hph *= 0.5;
              if (hth < 1e-10) break;
            }
          }
          const cplx e(std::cos(bph), std::sin(bph));
          const double c = std::cos(bth);
          const double s = std::sin(bth);
          members.col(i) = c * mi + e * s * mj;
          members.col(j) = -std::conj(e) * s * mi + c * mj;
          const Eigen::RowVectorXcd ri = M.row(i);
          const Eigen::RowVectorXcd rj = M.row(j);
          M.row(i) = c * ri + e * s * rj;
          M.row(j) = -std::conj(e) * s * ri + c * rj;
          vals[i] = member_value(members.col(i));
          vals[j] = member_value(members.col(j));
          improved_any = true;
        }
      }
    }
  }
  const Eigen::VectorXd xr = matrix_to_params(pb, M);
  const double fr = roof_objective(pb, xr);
  if (fr < fx) {
    x = xr;
    return fr;
  }
  return fx;
}

// For a rank-2 problem, the zero set of P inside the state's range consists
// of at most poly_degree rays: the projective roots of the binary form
// q(alpha, beta) = P(alpha b1 + beta b2). Returns normalized coefficient
// pairs, one per root (repeated roots repeat).
std::vector<Eigen::Vector2cd> range_zero_directions(const RoofProblem& pb) {
  const int d = pb.mono->poly_degree;
  Eigen::MatrixXcd vand(d + 1, d + 1);
  Eigen::VectorXcd rhs(d + 1);
  for (int i = 0; i <= d; ++i) {
    // Sample points 0, 1, -1, 2, -2, ... fit the dehomogenized coefficients.
    const double z = (i == 0) ? 0.0 : ((i % 2 == 1) ? 1.0 : -1.0) * ((i + 1) / 2);
    cplx zp = 1.0;
    for (int k = 0; k <= d; ++k) {
      vand(i, k) = zp;
      zp *= z;
    }
    rhs[i] = static_cast<cplx>(
        pb.mono->poly(pb.basis.col(0) + cplx(z, 0.0) * pb.basis.col(1)));
  }
  const Eigen::VectorXcd gamma = vand.colPivHouseholderQr().solve(rhs);
  double top = 0.0;
  for (int k = 0; k <= d; ++k) top = std::max(top, std::abs(gamma[k]));
  std::vector<Eigen::Vector2cd> roots;
  if (top <= 0.0) return roots;  // P vanishes on the whole range
  int deg = d;
  while (deg > 0 && std::abs(gamma[deg]) < 1e-10 * top) --deg;
  for (int k = deg; k < d; ++k) {
    roots.push_back(Eigen::Vector2cd(0.0, 1.0));  // roots at infinity
  }
  if (deg >= 1) {
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -gamma[i] / gamma[deg];
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
    for (int i = 0; i < deg; ++i) {
      Eigen::Vector2cd u(1.0, es.eigenvalues()[i]);
      roots.push_back(u / u.norm());
    }
  }
  return roots;
}

// Isometry parameters with the listed rows pinned to given range directions
// (row a = sqrt(t_a) u_a^T) and the remainder of the completeness constraint
// factored into the following rows. Returns nullopt when the weights are
// infeasible or the remainder needs more rows than the decomposition has.
std::optional<Eigen::VectorXd> assemble_pinned(
    const RoofProblem& pb, const std::vector<Eigen::Vector2cd>& dirs,
    const std::vector<double>& t) {
  Mat M = Mat::Zero(pb.length, pb.rank);
  Eigen::Matrix2cd rest = Eigen::Matrix2cd::Identity();
  for (std::size_t a = 0; a < dirs.size(); ++a) {
    if (t[a] < 0.0) return std::nullopt;
    M.row(a) = std::sqrt(t[a]) * dirs[a].transpose();
    rest -= t[a] * dirs[a].conjugate() * dirs[a].transpose();
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rest);
  int row = static_cast<int>(dirs.size());
  for (int a = 0; a < 2; ++a) {
    const double lam = es.eigenvalues()[a];
    if (lam < -1e-9) return std::nullopt;
    if (lam <= 1e-14) continue;
    if (row >= pb.length) return std::nullopt;
    M.row(row++) = std::sqrt(lam) * es.eigenvectors().col(a).adjoint();
  }
  return matrix_to_params(pb, M);
}

// Structured starts for rank-2 states: decompositions with members pinned on
// the zero rays of P. Known optimal decompositions in this setting combine a
// maximal zero-ray block with one or two positive members, so each root
// triple is searched directly over its pinned-weight patch (the boundary of
// {t >= 0 : sum t_a H_a <= I}, where the remainder has rank one) before the
// general-purpose restarts take over.
std::vector<Eigen::VectorXd> structured_seeds(const RoofProblem& pb) {
  std::vector<Eigen::VectorXd> seeds;
  if (pb.rank != 2 || !pb.mono->poly || pb.length < 4) return seeds;
  const std::vector<Eigen::Vector2cd> roots = range_zero_directions(pb);
  const int nr = static_cast<int>(roots.size());
  if (nr == 0) return seeds;
  std::vector<Eigen::Matrix2cd> h(nr);
  for (int a = 0; a < nr; ++a) {
    h[a] = roots[a].conjugate() * roots[a].transpose();
  }
  // All-roots zero decomposition: solve sum t_a H_a = I exactly.
  if (nr >= 3 && pb.length >= nr) {
    Eigen::MatrixXd sys(4, nr);
    for (int a = 0; a < nr; ++a) {
      sys(0, a) = h[a](0, 0).real();
      sys(1, a) = h[a](1, 1).real();
      sys(2, a) = h[a](0, 1).real();
      sys(3, a) = h[a](0, 1).imag();
    }
    Eigen::Vector4d want(1.0, 1.0, 0.0, 0.0);
    const Eigen::VectorXd t = sys.colPivHouseholderQr().solve(want);
    if ((sys * t - want).cwiseAbs().maxCoeff() < 1e-8 && t.minCoeff() > -1e-12) {
      std::vector<double> tv(t.data(), t.data() + nr);
      for (double& v : tv) v = std::max(v, 0.0);
      if (auto x = assemble_pinned(pb, roots, tv)) seeds.push_back(*x);
    }
  }
  // Triples: pattern search over the pinned weights on the rank-one
  // boundary, objective = the honest decomposition average.
  for (int i = 0; i < nr; ++i) {
    for (int j = i + 1; j < nr; ++j) {
      for (int k = j + 1; k < nr; ++k) {
        const std::vector<Eigen::Vector2cd> dirs = {roots[i], roots[j],
                                                    roots[k]};
        auto patch = [&](double w1, double w2) {
          const double w3 = 1.0 - w1 - w2;
          if (w1 < 0.0 || w2 < 0.0 || w3 < 0.0) {
            return std::make_pair(std::numeric_limits<double>::infinity(),
                                  std::optional<Eigen::VectorXd>());
          }
          const Eigen::Matrix2cd s = w1 * h[i] + w2 * h[j] + w3 * h[k];
          const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(s);
          const double lmax = es.eigenvalues()[1];
          if (lmax <= 1e-14) {
            return std::make_pair(std::numeric_limits<double>::infinity(),
                                  std::optional<Eigen::VectorXd>());
          }
          const double sigma = 1.0 / lmax;
          std::vector<double> tv = {sigma * w1, sigma * w2, sigma * w3};
          auto x = assemble_pinned(pb, dirs, tv);
          if (!x) {
            return std::make_pair(std::numeric_limits<double>::infinity(),
                                  std::optional<Eigen::VectorXd>());
          }
          return std::make_pair(roof_objective(pb, *x), std::optional(*x));
        };
        double w1 = 1.0 / 3.0;
        double w2 = 1.0 / 3.0;
        auto cur = patch(w1, w2);
        double step = 0.2;
        while (step > 1e-4) {
          const double d1s[6] = {step, -step, 0.0, 0.0, step, -step};
          const double d2s[6] = {0.0, 0.0, step, -step, -step, step};
          bool moved = false;
          for (int mv = 0; mv < 6; ++mv) {
            const auto cand = patch(w1 + d1s[mv], w2 + d2s[mv]);
            if (cand.first < cur.first) {
              cur = cand;
              w1 += d1s[mv];
              w2 += d2s[mv];
              moved = true;
              break;
            }
          }
          if (!moved) step *= 0.5;
        }
        if (cur.second) seeds.push_back(*cur.second);
      }
    }
  }
  // Pairs: mid-weight interior point, remainder rank two.
  for (int i = 0; i < nr; ++i) {
    for (int j = i + 1; j < nr; ++j) {
      const Eigen::Matrix2cd s = 0.5 * (h[i] + h[j]);
      const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(s);
      const double lmax = es.eigenvalues()[1];
      if (lmax <= 1e-14) continue;
      const double half = 0.35 / lmax;
      if (auto x = assemble_pinned(pb, {roots[i], roots[j]}, {half, half})) {
        seeds.push_back(*x);
      }
    }
  }
  return seeds;
}

// Normalized |P| per member for the isometry encoded by x.
std::vector<double> member_poly_sizes(const RoofProblem& pb,
                                      const Eigen::VectorXd& x) {
  Mat M = params_to_matrix(pb, x);
  orthonormalize(M);
  const Mat members = pb.basis * M.transpose();
  std::vector<double> out(members.cols(), 0.0);
  for (int i = 0; i < members.cols(); ++i) {
    const double w2 = members.col(i).squaredNorm();
    if (w2 < 1e-26) continue;
    out[i] = static_cast<double>(std::abs(pb.mono->poly(members.col(i)))) /
             std::pow(w2, 0.5 * pb.mono->poly_degree);
  }
  return out;
}

// Standard Nelder-Mead; returns the best value and overwrites x with the
// best point. Stops on simplex value spread < ftol or the evaluation budget.
template <typename F>
double nelder_mead(F&& f, Eigen::VectorXd& x, double step, double ftol,
                   int max_evals) {
  const int n = static_cast<int>(x.size());
  std::vector<Eigen::VectorXd> pts(n + 1, x);
  std::vector<double> vals(n + 1);
  int evals = 0;
  vals[0] = f(pts[0]);
  ++evals;
  for (int i = 0; i < n; ++i) {
    pts[i + 1][i] += step;
    vals[i + 1] = f(pts[i + 1]);
    ++evals;
  }
  std::vector<int> order(n + 1);
  std::iota(order.begin(), order.end(), 0);
  while (evals < max_evals) {
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return vals[a] < vals[b]; });
    const int best = order[0];
    const int worst = order[n];
    const int second = order[n - 1];
    if (vals[worst] - vals[best] < ftol) break;
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i) {
      if (i != worst) centroid += pts[i];
    }
    centroid /= n;
    const Eigen::VectorXd refl = centroid + (centroid - pts[worst]);
    const double fr = f(refl);
    ++evals;
    if (fr < vals[best]) {
      const Eigen::VectorXd exp_pt = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = f(exp_pt);
      ++evals;
      if (fe < fr) {
        pts[worst] = exp_pt;
        vals[worst] = fe;
      } else {
        pts[worst] = refl;
        vals[worst] = fr;
      }
    } else if (fr < vals[second]) {
      pts[worst] = refl;
      vals[worst] = fr;
    } else {
      const bool outside = fr < vals[worst];
      const Eigen::VectorXd contr =
          outside ? centroid + 0.5 * (refl - centroid)
                  : centroid + 0.5 * (pts[worst] - centroid);
      const double fc = f(contr);
      ++evals;
      if (fc < std::min(fr, vals[worst])) {
        pts[worst] = contr;
        vals[worst] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          const int idx = order[i];
          pts[idx] = pts[best] + 0.5 * (pts[idx] - pts[best]);
          vals[idx] = f(pts[idx]);
          ++evals;
        }
      }
    }
  }
  const int best = *std::min_element(
      order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
  x = pts[best];
  return vals[best];
}

// Coordinate sweeps with parabolic interpolation and a shrinking probe step.
template <typename F>
double coordinate_polish(F&& f, Eigen::VectorXd& x, double fx) {
  double h = 1e-2;
  for (int sweep = 0; sweep < 8; ++sweep) {
    for (int i = 0; i < x.size(); ++i) {
      Eigen::VectorXd xp = x;
      Eigen::VectorXd xm = x;
      xp[i] += h;
      xm[i] -= h;
      const double fp = f(xp);
      const double fm = f(xm);
      double best_t = 0.0;
      double best_f = fx;
      if (fp < best_f) {
        best_f = fp;
        best_t = h;
      }
      if (fm < best_f) {
        best_f = fm;
        best_t = -h;
      }
      const double denom = fp - 2.0 * fx + fm;
      if (denom > 1e-300) {
        const double t =
            std::clamp(0.5 * h * (fm - fp) / denom, -2.0 * h, 2.0 * h);
        Eigen::VectorXd xt = x;
        xt[i] += t;
        const double ft = f(xt);
        if (ft < best_f) {
          best_f = ft;
          best_t = t;
        }
      }
      if (best_t != 0.0) {
        x[i] += best_t;
        fx = best_f;
      }
    }
    h *= 0.3;
  }
  return fx;
}

// Damped Gauss-Newton on the member polynomials, restricted to the members
// listed in `pick` (all members when empty). Minimizing decompositions park
// members exactly on the zero set of P, where |P|^theta has a cusp that
// direct search cannot enter; this snaps the selected members onto the set.
// Finite-difference Jacobian; extended-precision residuals.
void zero_refine(const RoofProblem& pb, Eigen::VectorXd& x,
                 const std::vector<int>& pick = {}) {
  const int n = static_cast<int>(x.size());
  std::vector<int> idx = pick;
  if (idx.empty()) {
    idx.resize(pb.length);
    std::iota(idx.begin(), idx.end(), 0);
  }
  auto residuals = [&pb, &idx](const Eigen::VectorXd& p) {
    Mat M = params_to_matrix(pb, p);
    orthonormalize(M);
    const Mat members = pb.basis * M.transpose();
    std::vector<std::complex<long double>> z(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      z[i] = pb.mono->poly(members.col(idx[i]));
    }
    return z;
  };
  auto sumsq = [](const std::vector<std::complex<long double>>& z) {
    long double s = 0.0L;
    for (const auto& v : z) s += std::norm(v);
    return s;
  };
  std::vector<std::complex<long double>> z = residuals(x);
  long double score = sumsq(z);
  const int mres = static_cast<int>(z.size());
  const double eps = 1e-7;
  for (int iter = 0; iter < 40 && score > 1e-60L; ++iter) {
    Eigen::MatrixXd jac(2 * mres, n);
    for (int k = 0; k < n; ++k) {
      Eigen::VectorXd xp = x;
      Eigen::VectorXd xm = x;
      xp[k] += eps;
      xm[k] -= eps;
      const auto zp = residuals(xp);
      const auto zm = residuals(xm);
      for (int i = 0; i < mres; ++i) {
        const std::complex<long double> d =
            (zp[i] - zm[i]) / static_cast<long double>(2.0 * eps);
        jac(2 * i, k) = static_cast<double>(d.real());
        jac(2 * i + 1, k) = static_cast<double>(d.imag());
      }
    }
    Eigen::VectorXd rhs(2 * mres);
    for (int i = 0; i < mres; ++i) {
      rhs[2 * i] = -static_cast<double>(z[i].real());
      rhs[2 * i + 1] = -static_cast<double>(z[i].imag());
    }
    const Eigen::VectorXd delta =
        jac.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
    double t = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 12; ++bt, t *= 0.5) {
      Eigen::VectorXd xt = x + t * delta;
      auto zt = residuals(xt);
      const long double st = sumsq(zt);
      if (st < score) {
        x = std::move(xt);
        z = std::move(zt);
        score = st;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
}

// A state of the two-branch family is block-diagonal over the {000,111} and
// {100,010,001} index sets with a rank-1 block each; recover the branch
// coefficients and the mixing weight from the blocks.
std::optional<std::pair<GhzwFamily, double>> detect_family(
    const MixedState& rho) {
  if (rho.dims() != std::vector<int>{2, 2, 2}) return std::nullopt;
  const Mat& R = rho.matrix();
  auto in_g = [](int i) { return i == 0 || i == 7; };
  auto in_w = [](int i) { return i == 4 || i == 2 || i == 1; };
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const bool keep = (in_g(i) && in_g(j)) || (in_w(i) && in_w(j));
      if (!keep && std::abs(R(i, j)) > 1e-12) return std::nullopt;
    }
  }
  Eigen::Matrix2cd gblock;
  gblock << R(0, 0), R(0, 7), R(7, 0), R(7, 7);
  const int widx[3] = {4, 2, 1};
  Eigen::Matrix3cd wblock;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      wblock(i, j) = R(widx[i], widx[j]);
    }
  }
  const double p = gblock.trace().real();
  if (p < 1e-10 || p > 1.0 - 1e-10) return std::nullopt;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eg(gblock);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> ew(wblock);
  if (eg.eigenvalues()[0] > 1e-12 || ew.eigenvalues()[0] > 1e-12 ||
      ew.eigenvalues()[1] > 1e-12) {
    return std::nullopt;  // a block has rank above 1: not a family mixture
  }
  const Eigen::Vector2cd g = eg.eigenvectors().col(1);
  const Eigen::Vector3cd w = ew.eigenvectors().col(2);
  for (int i = 0; i < 2; ++i) {
    if (std::abs(g[i]) <= 1e-10) return std::nullopt;
  }
  for (int i = 0; i < 3; ++i) {
    if (std::abs(w[i]) <= 1e-10) return std::nullopt;
  }
  try {
    return std::make_pair(GhzwFamily(g[0], g[1], w[0], w[1], w[2]), p);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

}  // namespace

RoofResult convex_roof(const Monotone& m, const MixedState& rho,
                       const RoofOptions& opts) {
  if (opts.restarts < 1) {
    throw std::invalid_argument("restarts must be >= 1");
  }
  Decomposition spectral = spectral_decomposition(rho);
  const int rank = spectral.length();
  const int length = opts.max_length == 0 ? rank * rank : opts.max_length;
  if (length < rank) {
    throw std::invalid_argument("max_length must be >= the state rank");
  }

  if (rank == 1) {
    const double v = evaluate_normalized(m, spectral.states()[0]);
    return RoofResult{v, std::move(spectral), 0, true};
  }

  RoofProblem pb;
  pb.mono = &m;
  pb.dims = rho.dims();
  pb.basis = Mat(rho.dim(), rank);
  for (int j = 0; j < rank; ++j) {
    pb.basis.col(j) =
        std::sqrt(spectral.weights()[j]) * spectral.states()[j].amplitudes();
  }
  pb.length = length;
  pb.rank = rank;
  const int n = pb.param_count();
  auto obj = [&pb](const Eigen::VectorXd& v) { return roof_objective(pb, v); };

  struct Candidate {
    double value = std::numeric_limits<double>::infinity();
    Eigen::VectorXd x;
  };
  std::vector<Candidate> results(opts.restarts);
  std::vector<Eigen::VectorXd> seeds;
  if (m.poly) {
    seeds = structured_seeds(pb);
    if (static_cast<int>(seeds.size()) > opts.restarts - 1) {
      seeds.resize(std::max(opts.restarts - 1, 0));
    }
  }
  parallel_for(opts.restarts, [&](int k) {
    Eigen::VectorXd x;
    bool seeded = false;
    if (k == 0) {
      x = identity_params(pb);
    } else if (k - 1 < static_cast<int>(seeds.size())) {
      x = seeds[k - 1];
      seeded = true;
    } else {
      Rng rng(mix_seed(opts.seed, static_cast<unsigned long long>(k)));
      x.resize(n);
      for (int i = 0; i < n; ++i) x[i] = rng.gaussian();
    }
    double v;
    if (m.poly) {
      // Homotopy over the smoothing width, ending on the exact objective.
      auto sm = [&pb](double eps) {
        return [&pb, eps](const Eigen::VectorXd& v) {
          return smoothed_objective(pb, v, eps);
        };
      };
      if (seeded) {
        // Structured starts are near-optimal; the smoothed objective would
        // pull weight off exactly-zero members, so refine on the exact one.
        v = nelder_mead(obj, x, 1e-3, 1e-13, 150 * n);
      } else {
        nelder_mead(sm(5e-2), x, 0.8, 1e-9, 250 * n);
        nelder_mead(sm(5e-3), x, 0.1, 1e-11, 150 * n);
        nelder_mead(sm(5e-4), x, 0.02, 1e-12, 150 * n);
        v = nelder_mead(obj, x, 3e-3, 1e-13, 120 * n);
      }
    } else {
      v = nelder_mead(obj, x, 0.7, 1e-10, 350 * n);
      v = nelder_mead(obj, x, 0.05, 1e-12, 160 * n);
      v = nelder_mead(obj, x, 2e-3, 1e-13, 160 * n);
    }
    // Per-restart structural polish: restarts land in different basins, and
    // the pairwise rotations plus the zero-set snap move within a basin far
    // better than the simplex does, so the best-of reduction sees each
    // basin's floor rather than its plateau.
    v = jacobi_polish(pb, x, v);
    if (m.poly) {
      const std::vector<double> sizes = member_poly_sizes(pb, x);
      std::vector<int> pick;
      for (int i = 0; i < static_cast<int>(sizes.size()); ++i) {
        if (sizes[i] < 1e-2) pick.push_back(i);
      }
      if (!pick.empty()) {
        Eigen::VectorXd xt = x;
        zero_refine(pb, xt, pick);
        const double ft = roof_objective(pb, xt);
        if (ft < v) {
          v = ft;
          x = std::move(xt);
        }
      }
      v = jacobi_polish(pb, x, v);
    }
    results[k].value = v;
    results[k].x = std::move(x);
  });

  int best_idx = 0;
  std::vector<double> running(opts.restarts);
  for (int k = 0; k < opts.restarts; ++k) {
    if (results[k].value < results[best_idx].value) best_idx = k;
    running[k] = results[best_idx].value;
  }
  const int quarter = std::max(1, opts.restarts / 4);
  const int q_start = opts.restarts - quarter;
  const double baseline = running[std::max(0, q_start - 1)];
  const bool converged = baseline - running.back() <= 1e-6;

  Eigen::VectorXd x = std::move(results[best_idx].x);
  double fbest = results[best_idx].value;
  fbest = coordinate_polish(obj, x, fbest);
  {
    Eigen::VectorXd xt = x;
    const double ft = nelder_mead(obj, xt, 1e-4, 1e-14, 160 * n);
    if (ft < fbest) {
      fbest = ft;
      x = std::move(xt);
    }
  }
  // Improvement rounds: pairwise member rotations, snapping near-zero
  // members onto the zero set of P, and smooth re-polish. The full snap of
  // every member doubles as the certificate run for states whose roof
  // vanishes outright.
  for (int round = 0; round < 4; ++round) {
    const double before = fbest;
    fbest = jacobi_polish(pb, x, fbest);
    if (m.poly) {
      const std::vector<double> sizes = member_poly_sizes(pb, x);
      std::vector<int> pick;
      for (int i = 0; i < static_cast<int>(sizes.size()); ++i) {
        if (sizes[i] < 1e-2) pick.push_back(i);
      }
      Eigen::VectorXd xt = x;
      zero_refine(pb, xt, pick);
      const double ft = obj(xt);
      if (ft < fbest) {
        fbest = ft;
        x = std::move(xt);
      }
    }
    {
      Eigen::VectorXd xt = x;
      double ft = coordinate_polish(obj, xt, fbest);
      {
        Eigen::VectorXd xs = xt;
        const double fs = nelder_mead(obj, xs, 1e-3, 1e-14, 100 * n);
        if (fs < ft) {
          ft = fs;
          xt = std::move(xs);
        }
      }
      if (ft < fbest) {
        fbest = ft;
        x = std::move(xt);
      }
    }
    if (fbest > before - 1e-10) break;
  }

  Mat M = params_to_matrix(pb, x);
  orthonormalize(M);
  Decomposition dec = steer(rho, Isometry(std::move(M)));
  double value = 0.0;
  for (int i = 0; i < dec.length(); ++i) {
    value += dec.weights()[i] * evaluate_normalized(m, dec.states()[i]);
  }
  return RoofResult{value, std::move(dec), opts.restarts, converged};
}

double rescaled_roof(const Monotone& m, double roof_of_rho, double trace) {
  if (m.degree != 2.0) {
    throw std::invalid_argument("rescaled_roof requires a degree-2 monotone");
  }
  if (!(trace > 0.0)) {
    throw std::domain_error("trace factor must be positive");
  }
  return roof_of_rho / trace;
}

RoofResult transport_optimal(const Monotone& m, const LocalOperator& op,
                             const RoofResult& result) {
  if (m.degree != 2.0) {
    throw std::invalid_argument(
        "transport_optimal requires a degree-2 monotone");
  }
  Decomposition dec = transport_decomposition(op, result.decomposition);
  double value = 0.0;
  for (int i = 0; i < dec.length(); ++i) {
    value += dec.weights()[i] * evaluate_normalized(m, dec.states()[i]);
  }
  return RoofResult{value, std::move(dec), result.restarts_used,
                    result.converged};
}

const char* to_string(ZeroClass c) {
  switch (c) {
    case ZeroClass::zero:
      return "zero";
    case ZeroClass::nonzero:
      return "nonzero";
    default:
      return "undecided";
  }
}

ZeroClass zero_class(const Monotone& m, const MixedState& rho,
                     const RoofOptions& opts) {
  const Decomposition sd = spectral_decomposition(rho);
  if (sd.length() == 1) {
    // Rank 1: the unique decomposition makes the value exact both ways.
    const double v = evaluate_normalized(m, sd.states()[0]);
    if (v <= 1e-7) return ZeroClass::zero;
    if (v > 1e-5) return ZeroClass::nonzero;
    return ZeroClass::undecided;
  }
  const RoofResult res = convex_roof(m, rho, opts);
  if (res.value <= 1e-7) return ZeroClass::zero;
  if (auto fam = detect_family(rho)) {
    const double cc = convex_char_curve(fam->first, fam->second);
    // cc is the exact degree-2 roof; Jensen lifts it to cc^2 for degree 4.
    const double lower = m.degree == 4.0 ? cc * cc : cc;
    if (lower > 1e-5) return ZeroClass::nonzero;
  }
  return ZeroClass::undecided;
}

double naive_rescale(double value, double trace, double eta) {
  if (!(trace > 0.0)) {
    throw std::domain_error("trace factor must be positive");
  }
  return value / std::pow(trace, 0.5 * eta);
}

double symmetric_rescale(const Monotone& m, double value, double trace,
                         bool condition_ok) {
  if (!condition_ok) {
    throw std::invalid_argument(
        "symmetric_rescale requires the equal-trace condition");
  }
  if (!(trace > 0.0)) {
    throw std::domain_error("trace factor must be positive");
  }
  return value / std::pow(trace, 0.5 * m.degree);
}

EqualTraceCheck check_equal_trace(const LocalOperator& op,
                                  const Decomposition& dec) {
  const Mat A = op.composite();
  if (A.cols() != dec.states()[0].dim()) {
    throw std::invalid_argument("operator and decomposition dims mismatch");
  }
  std::vector<double> traces(dec.length());
  double total = 0.0;
  for (int i = 0; i < dec.length(); ++i) {
    traces[i] = (A * dec.states()[i].amplitudes()).squaredNorm();
    total += dec.weights()[i] * traces[i];
  }
  double dev = 0.0;
  for (double t : traces) {
    dev = std::max(dev, std::abs(t - total));
  }
  return EqualTraceCheck{dev <= 1e-8, dev, total};
}

}  // namespace roofscale
