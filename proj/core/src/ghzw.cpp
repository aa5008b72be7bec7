#include "roofscale/ghzw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "roofscale/envelope.hpp"
#include "roofscale/invariants.hpp"

namespace roofscale {

namespace {

const std::vector<int> kThreeQubits = {2, 2, 2};

// 2^(7/2) / 3^(3/2): |s| of the standard family and the coefficient of the
// standard middle branch.
double standard_s_abs() { return std::sqrt(128.0 / 27.0); }

// |s|^(2/3) of the standard family, 2^(7/3)/3.
double standard_t() { return std::cbrt(128.0) / 3.0; }

double standard_p0_prime() {
  const double t = standard_t();
  return t / (1.0 + t);
}

void check_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::domain_error(std::string(name) + " must lie in [0, 1]");
  }
}

void check_simplex(double p, double q) {
  if (!(p >= 0.0) || !(q >= 0.0) || p + q > 1.0 + 1e-12) {
    throw std::domain_error("(p, q) must lie in the simplex p, q >= 0, p + q <= 1");
  }
}

// p^2 - |s| sqrt(p (1-p)^3).
double curve_inner(double s_abs, double p) {
  const double w = std::max(0.0, p * (1.0 - p) * (1.0 - p) * (1.0 - p));
  return p * p - s_abs * std::sqrt(w);
}

// |2s|^(2/3).
double two_s_pow(const GhzwFamily& fam) {
  return std::cbrt(4.0 * std::norm(s_parameter(fam)));
}

// Golden-section minimum of f on [a, b]; returns (argmin, min).
template <typename F>
std::pair<double, double> golden_min(F&& f, double a, double b, double xtol) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > xtol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

PureState uniform_superposition(const std::vector<int>& positions,
                                const std::vector<cplx>& coeffs) {
  Vec v = Vec::Zero(8);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    v[positions[i]] = coeffs[i];
  }
  return PureState(kThreeQubits, std::move(v));
}

}  // namespace

GhzwFamily::GhzwFamily(cplx a, cplx b, cplx c, cplx d, cplx f)
    : a_(a), b_(b), c_(c), d_(d), f_(f) {
  if (std::abs(a) == 0.0 || std::abs(b) == 0.0 || std::abs(c) == 0.0 ||
      std::abs(d) == 0.0 || std::abs(f) == 0.0) {
    throw std::invalid_argument("family coefficients must all be nonzero");
  }
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-10) {
    throw std::invalid_argument("|a|^2 + |b|^2 must equal 1");
  }
  if (std::abs(std::norm(c) + std::norm(d) + std::norm(f) - 1.0) > 1e-10) {
    throw std::invalid_argument("|c|^2 + |d|^2 + |f|^2 must equal 1");
  }
}

GhzwFamily standard_family() {
  const double r2 = 1.0 / std::sqrt(2.0);
  const double r3 = 1.0 / std::sqrt(3.0);
  return GhzwFamily(r2, r2, r3, r3, r3);
}

GhzwFamily s2sqrt2_family() {
  const double r3 = 1.0 / std::sqrt(3.0);
  return GhzwFamily(r3, std::sqrt(2.0 / 3.0), r3, r3, r3);
}

PureState ghz_state() {
  const double r2 = 1.0 / std::sqrt(2.0);
  return uniform_superposition({0, 7}, {r2, r2});
}

PureState w_state() {
  const double r3 = 1.0 / std::sqrt(3.0);
  return uniform_superposition({4, 2, 1}, {r3, r3, r3});
}

PureState wbar_state() {
  const double r3 = 1.0 / std::sqrt(3.0);
  return uniform_superposition({3, 5, 6}, {r3, r3, r3});
}

PureState gghz_state(const GhzwFamily& fam) {
  return uniform_superposition({0, 7}, {fam.a(), fam.b()});
}

PureState gw_state(const GhzwFamily& fam) {
  return uniform_superposition({4, 2, 1}, {fam.c(), fam.d(), fam.f()});
}

PureState phase_superposition(const GhzwFamily& fam, double p, double phi) {
  check_unit_interval(p, "p");
  const double wg = std::sqrt(p);
  const cplx ww = std::sqrt(1.0 - p) * std::exp(cplx(0.0, phi));
  Vec v = Vec::Zero(8);
  v[0] = wg * fam.a();
  v[7] = wg * fam.b();
  v[4] = ww * fam.c();
  v[2] = ww * fam.d();
  v[1] = ww * fam.f();
  return PureState(kThreeQubits, std::move(v));
}

cplx s_parameter(const GhzwFamily& fam) {
  return 4.0 * fam.c() * fam.d() * fam.f() / (fam.a() * fam.a() * fam.b());
}

double p_zero(const GhzwFamily& fam) {
  const double t = std::cbrt(std::norm(s_parameter(fam)));
  return t / (1.0 + t);
}

MixedState mixture_state(const GhzwFamily& fam, double p) {
  check_unit_interval(p, "p");
  const Vec g = gghz_state(fam).amplitudes();
  const Vec w = gw_state(fam).amplitudes();
  Mat rho = p * (g * g.adjoint()) + (1.0 - p) * (w * w.adjoint());
  return MixedState(kThreeQubits, std::move(rho));
}

double char_curve(const GhzwFamily& fam, double p) {
  check_unit_interval(p, "p");
  const double ab = std::abs(fam.a()) * std::abs(fam.b());
  const double inner = curve_inner(std::abs(s_parameter(fam)), p);
  return 2.0 * ab * std::sqrt(std::abs(inner));
}

double char_curve_by_phase_search(const GhzwFamily& fam, double p) {
  check_unit_interval(p, "p");
  auto value = [&](double phi) {
    return sqrt_three_tangle(phase_superposition(fam, p, phi));
  };
  const int n = 720;
  const double two_pi = 2.0 * M_PI;
  double best_phi = 0.0;
  double best = value(0.0);
  for (int k = 1; k < n; ++k) {
    const double phi = two_pi * k / n;
    const double v = value(phi);
    if (v < best) {
      best = v;
      best_phi = phi;
    }
  }
  const double h = two_pi / n;
  const auto refined = golden_min(value, best_phi - h, best_phi + h, 1e-10);
  return std::min(best, refined.second);
}

double convex_char_curve(const GhzwFamily& fam, double p) {
  check_unit_interval(p, "p");
  const double t = std::cbrt(std::norm(s_parameter(fam)));
  const double p0 = t / (1.0 + t);
  if (p <= p0) return 0.0;
  const double ab = std::abs(fam.a()) * std::abs(fam.b());
  return 2.0 * ab * (p - (1.0 - p) * t);
}

double standard_sqrt_roof(double p_prime) {
  check_unit_interval(p_prime, "p'");
  const double t = standard_t();
  if (p_prime <= standard_p0_prime()) return 0.0;
  return p_prime - (1.0 - p_prime) * t;
}

double standard_tau3_p1() {
  static const double value = [] {
    const double k = standard_s_abs();
    // Tangency of the line through (1, 1) with g(p) = p^2 - k sqrt(p(1-p)^3):
    // root of g(p) + g'(p) (1 - p) - 1 between the zero abscissa and 1.
    auto h = [k](double p) {
      const double w = p * (1.0 - p) * (1.0 - p) * (1.0 - p);
      const double root = std::sqrt(w);
      const double g = p * p - k * root;
      const double gp =
          2.0 * p -
          k * (1.0 - p) * (1.0 - p) * (1.0 - 4.0 * p) / (2.0 * root);
      return g + gp * (1.0 - p) - 1.0;
    };
    double lo = standard_p0_prime() + 1e-6;
    double hi = 0.99;
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (h(mid) < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }();
  return value;
}

double standard_tau3_roof(double p_prime) {
  check_unit_interval(p_prime, "p'");
  if (p_prime <= standard_p0_prime()) return 0.0;
  if (p_prime < standard_tau3_p1()) {
    return std::max(0.0, curve_inner(standard_s_abs(), p_prime));
  }
  const double slope = 1.5 + std::sqrt(465.0) / 18.0;
  return 1.0 - (1.0 - p_prime) * slope;
}

double p_prime_from_p(const GhzwFamily& fam, double p) {
  check_unit_interval(p, "p");
  const double u = two_s_pow(fam);
  return p / (p + 0.375 * (1.0 - p) * u);
}

double p_from_p_prime(const GhzwFamily& fam, double p_prime) {
  check_unit_interval(p_prime, "p'");
  const double u = two_s_pow(fam);
  const double num = 3.0 * p_prime * u;
  return num / (num + 8.0 * (1.0 - p_prime));
}

double trace_factor(const GhzwFamily& fam, double p) {
  check_unit_interval(p, "p");
  const double ab = std::abs(fam.a()) * std::abs(fam.b());
  return 2.0 * ab * (p + 0.375 * (1.0 - p) * two_s_pow(fam));
}

double roof_via_rescaling(const GhzwFamily& fam, double p) {
  return trace_factor(fam, p) * standard_sqrt_roof(p_prime_from_p(fam, p));
}

LocalOperator standardizing_ilo(const GhzwFamily& fam) {
  return diagonal_ilo_for_family(fam.a(), fam.b(), fam.c(), fam.d(), fam.f());
}

double naive_p1(cplx s) {
  if (std::abs(s) == 0.0) {
    throw std::invalid_argument("naive_p1 requires s != 0");
  }
  const double u = std::cbrt(4.0 * std::norm(s));
  const double c = 91.0 - 3.0 * std::sqrt(465.0);
  return 24.0 * u / (c + 24.0 * u);
}

double tau3_curve_general(const GhzwFamily& fam, double p) {
  check_unit_interval(p, "p");
  if (p < p_zero(fam) - 1e-12) {
    throw std::domain_error("p below the curve zero abscissa");
  }
  const double ab2 = std::norm(fam.a()) * std::norm(fam.b());
  return 4.0 * ab2 * std::max(0.0, curve_inner(std::abs(s_parameter(fam)), p));
}

LocalOperator u3_symmetry() {
  Mat u = Mat::Zero(2, 2);
  u(0, 0) = std::exp(cplx(0.0, M_PI / 3.0));
  u(1, 1) = std::exp(cplx(0.0, -M_PI / 3.0));
  return sl_normalize({u, u, u});
}

MixedState rank3_state(double p, double q) {
  check_simplex(p, q);
  const double r = 1.0 - p - q;
  const Vec g = ghz_state().amplitudes();
  const Vec w = w_state().amplitudes();
  const Vec wb = wbar_state().amplitudes();
  Mat rho = p * (g * g.adjoint()) + q * (w * w.adjoint()) +
            r * (wb * wb.adjoint());
  return MixedState(kThreeQubits, std::move(rho));
}

double char_surface_inner(double p, double q) {
  const double r = 1.0 - p - q;
  const double qr = std::max(0.0, q * r);
  const double pq3 = std::max(0.0, p * q * q * q);
  const double pr3 = std::max(0.0, p * r * r * r);
  const double k = standard_s_abs();  // 8 sqrt(6) / 9
  return p * p - 4.0 * p * std::sqrt(qr) - (4.0 / 3.0) * qr -
         k * (std::sqrt(pq3) + std::sqrt(pr3));
}

double char_surface(double p, double q) {
  check_simplex(p, q);
  return std::sqrt(std::abs(char_surface_inner(p, q)));
}

double char_surface_by_phase_search(double p, double q) {
  check_simplex(p, q);
  const double r = std::max(0.0, 1.0 - p - q);
  const double wg = std::sqrt(p / 2.0);
  const double ww = std::sqrt(q / 3.0);
  const double wb = std::sqrt(r / 3.0);
  auto value = [&](double phi1, double phi2) {
    const cplx e1 = ww * std::exp(cplx(0.0, phi1));
    const cplx e2 = wb * std::exp(cplx(0.0, phi2));
    Vec v(8);
    v << wg, e1, e1, e2, e1, e2, e2, wg;
    return sqrt_three_tangle(PureState(kThreeQubits, std::move(v)));
  };
  const int n = 96;
  const double two_pi = 2.0 * M_PI;
  double best = value(0.0, 0.0);
  double b1 = 0.0;
  double b2 = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = value(two_pi * i / n, two_pi * j / n);
      if (v < best) {
        best = v;
        b1 = two_pi * i / n;
        b2 = two_pi * j / n;
      }
    }
  }
  double h = two_pi / n;
  for (int round = 0; round < 6; ++round) {
    auto r1 = golden_min([&](double x) { return value(x, b2); }, b1 - h,
                         b1 + h, 1e-10);
    b1 = r1.first;
    auto r2 = golden_min([&](double x) { return value(b1, x); }, b2 - h,
                         b2 + h, 1e-10);
    b2 = r2.first;
    best = std::min(best, r2.second);
    h *= 0.35;
  }
  return best;
}

std::vector<CurveSample> curve_grid(const GhzwFamily& fam, double step) {
  if (!(step > 0.0 && step <= 1.0)) {
    throw std::invalid_argument("step must lie in (0, 1]");
  }
  const long long n = std::max(1LL, std::llround(1.0 / step));
  std::vector<double> ps;
  ps.reserve(static_cast<std::size_t>(n) + 2);
  for (long long i = 0; i <= n; ++i) {
    ps.push_back(static_cast<double>(i) / static_cast<double>(n));
  }
  // The envelope needs the zero abscissa itself: the curve rises like
  // sqrt(distance) there, so the error of a plain grid is O(sqrt(step)).
  const double p0 = p_zero(fam);
  auto it = std::lower_bound(ps.begin(), ps.end(), p0);
  if (it == ps.end() || std::abs(*it - p0) > 1e-15) {
    ps.insert(it, p0);
  }
  std::vector<CurveSample> samples;
  samples.reserve(ps.size());
  for (double p : ps) {
    samples.push_back({p, char_curve(fam, p), 0.0});
  }
  return samples;
}

std::vector<CurveSample> convexify_curve(std::vector<CurveSample> samples) {
  std::vector<double> xs(samples.size());
  std::vector<double> ys(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    xs[i] = samples[i].p;
    ys[i] = samples[i].char_value;
  }
  const std::vector<double> env = lower_envelope(xs, ys);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i].convex_value =
        std::min(samples[i].char_value, std::max(0.0, env[i]));
  }
  return samples;
}

std::vector<SurfaceSample> surface_grid(double step) {
  if (!(step > 0.0 && step <= 0.5)) {
    throw std::invalid_argument("step must lie in (0, 0.5]");
  }
  const long long n = std::max(2LL, std::llround(1.0 / step));
  const auto coord = [n](long long i) {
    return static_cast<double>(i) / static_cast<double>(n);
  };
  std::vector<SurfaceSample> samples;
  samples.reserve(static_cast<std::size_t>((n + 1) * (n + 2) / 2));
  for (long long i = 0; i <= n; ++i) {
    for (long long j = 0; j <= n - i; ++j) {
      const double p = coord(i);
      const double q = coord(j);
      samples.push_back(
          {p, q, 1.0 - p - q, std::sqrt(std::abs(char_surface_inner(p, q))),
           0.0});
    }
  }
  // Refinement: bisect every grid edge whose endpoints straddle the zero
  // locus of the inner expression and add the crossing with char snapped to
  // 0 (the locus position converges to machine precision; evaluating the
  // sqrt there only adds noise). Without these anchors the envelope error
  // near the locus is O(sqrt(step)).
  std::vector<SurfaceSample> refined;
  auto bisect = [&](double pa, double qa, double pb, double qb) {
    double fa = char_surface_inner(pa, qa);
    const double fb = char_surface_inner(pb, qb);
    if (!(fa * fb < 0.0)) return;
    double lo = 0.0;
    double hi = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      const double mid = 0.5 * (lo + hi);
      const double pm = pa + mid * (pb - pa);
      const double qm = qa + mid * (qb - qa);
      const double fm = char_surface_inner(pm, qm);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((fm > 0.0) == (fa > 0.0)) {
        lo = mid;
        fa = fm;
      } else {
        hi = mid;
      }
    }
    const double t = 0.5 * (lo + hi);
    const double p = pa + t * (pb - pa);
    const double q = qa + t * (qb - qa);
    refined.push_back({p, q, 1.0 - p - q, 0.0, 0.0});
  };
  for (long long i = 0; i <= n; ++i) {
    for (long long j = 0; j <= n - i; ++j) {
      if (j + 1 <= n - i) {
        bisect(coord(i), coord(j), coord(i), coord(j + 1));
      }
      if (i + 1 <= n - j) {
        bisect(coord(i), coord(j), coord(i + 1), coord(j));
      }
      if (j >= 1 && i + 1 <= n) {
        bisect(coord(i), coord(j), coord(i + 1), coord(j - 1));
      }
    }
  }
  std::sort(refined.begin(), refined.end(),
            [](const SurfaceSample& a, const SurfaceSample& b) {
              return a.p != b.p ? a.p < b.p : a.q < b.q;
            });
  samples.insert(samples.end(), refined.begin(), refined.end());
  return samples;
}

std::vector<SurfaceSample> surface_convexify(std::vector<SurfaceSample> samples) {
  std::vector<PlanePoint> pts(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    pts[i] = {samples[i].p, samples[i].q, samples[i].char_value};
  }
  const std::vector<double> env = lower_envelope_2d(pts);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i].convex_value =
        std::min(samples[i].char_value, std::max(0.0, env[i]));
  }
  return samples;
}

}  // namespace roofscale
