// Acceptance gate: one PASS/FAIL line per criterion, with wall time and an
// enforced runtime budget. Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "roofscale/convexroof.hpp"
#include "roofscale/envelope.hpp"
#include "roofscale/ghzw.hpp"
#include "roofscale/invariants.hpp"
#include "roofscale/localops.hpp"
#include "roofscale/qstate.hpp"
#include "roofscale/rng.hpp"

using namespace roofscale;

namespace {

const std::vector<int> kQ3 = {2, 2, 2};
const std::vector<int> kQ2 = {2, 2};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// C1: landmark pure-state values and the generalized-GHZ closed form.

std::string c1_pure_values() {
  if (std::abs(three_tangle(ghz_state()).value - 1.0) > 1e-12) {
    return "GHZ tangle deviates: " + fmt(three_tangle(ghz_state()).value);
  }
  if (std::abs(three_tangle(w_state()).value) > 1e-12) {
    return "W tangle deviates: " + fmt(three_tangle(w_state()).value);
  }
  Rng rng(101);
  for (int t = 0; t < 20; ++t) {
    cplx a = rng.complex_gaussian();
    cplx b = rng.complex_gaussian();
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    a /= n;
    b /= n;
    Vec amps = Vec::Zero(8);
    amps[0] = a;
    amps[7] = b;
    const PureState gghz(kQ3, amps);
    const double expected = 4.0 * std::norm(a) * std::norm(b);
    const double err = std::abs(three_tangle(gghz).value - expected);
    if (err > 1e-12) {
      return "generalized GHZ trial " + std::to_string(t) +
             " error " + fmt(err);
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// C2: invariance under determinant-one local operations, and homogeneity.

std::string c2_invariance_homogeneity() {
  Rng rng(202);
  for (int t = 0; t < 100; ++t) {
    const PureState psi = random_pure_state(rng, kQ3);
    const LocalOperator op = random_local_operator(rng, kQ3);
    const PureState mapped(kQ3, op.composite() * psi.amplitudes());
    for (const std::string& name : monotone_names()) {
      const Monotone& m = monotone(name);
      const double before = m.evaluator(psi);
      const double after = m.evaluator(mapped);
      const double rel = std::abs(after - before) / std::max(before, 1e-12);
      if (rel > 1e-9) {
        return name + " not invariant on trial " + std::to_string(t) +
               ": rel " + fmt(rel);
      }
    }
  }
  for (int t = 0; t < 100; ++t) {
    const PureState psi = random_pure_state(rng, kQ3);
    const double alpha = rng.uniform(0.25, 4.0);
    const PureState scaled(kQ3, alpha * psi.amplitudes());
    for (const std::string& name : monotone_names()) {
      const Monotone& m = monotone(name);
      const double expected = std::pow(alpha, m.degree) * m.evaluator(psi);
      const double rel = std::abs(m.evaluator(scaled) - expected) /
                         std::max(expected, 1e-12);
      if (rel > 1e-10) {
        return name + " homogeneity failure on trial " + std::to_string(t) +
               ": rel " + fmt(rel);
      }
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// C3: zero boundary of the standard-family mixture.

std::string c3_zero_boundary() {
  const double exact =
      std::pow(2.0, 7.0 / 3.0) / (3.0 + std::pow(2.0, 7.0 / 3.0));
  const double lib = p_zero(standard_family());
  if (std::abs(lib - exact) > 1e-12) {
    return "closed-form zero abscissa off by " + fmt(std::abs(lib - exact));
  }
  const Monotone& m = monotone("sqrt_tau3");
  const RoofResult below =
      convex_roof(m, mixture_state(standard_family(), exact - 0.01));
  if (below.value > 1e-6) {
    return "optimizer above 1e-6 on the zero side: " + fmt(below.value);
  }
  const RoofResult above =
      convex_roof(m, mixture_state(standard_family(), exact + 0.05));
  if (above.value < 1e-3) {
    return "optimizer below 1e-3 on the positive side: " + fmt(above.value);
  }
  return "";
}

// ---------------------------------------------------------------------------
// C4: degree-2 rescaling transport between a family and the standard one.

std::string c4_rescaling() {
  const GhzwFamily fam = s2sqrt2_family();
  const Monotone& m = monotone("sqrt_tau3");
  for (double p : {0.5, 2.0 / 3.0, 0.8, 0.95}) {
    const double opt = convex_roof(m, mixture_state(fam, p)).value;
    const double transported =
        trace_factor(fam, p) * standard_sqrt_roof(p_prime_from_p(fam, p));
    const double curve = convex_char_curve(fam, p);
    if (std::abs(opt - transported) > 2e-3) {
      return "p=" + fmt(p) + ": optimizer " + fmt(opt) +
             " vs transported roof " + fmt(transported);
    }
    if (std::abs(opt - curve) > 2e-3) {
      return "p=" + fmt(p) + ": optimizer " + fmt(opt) +
             " vs convex characteristic curve " + fmt(curve);
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// C5: optimizer versus the closed-form two-qubit concurrence.

std::string c5_concurrence_oracle() {
  Rng rng(505);
  const Monotone& c = concurrence_monotone();
  RoofOptions opts;
  opts.restarts = 32;
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const MixedState rho = random_mixed_state(rng, kQ2, 2);
    const double opt = convex_roof(c, rho, opts).value;
    worst = std::max(worst, std::abs(opt - wootters_concurrence(rho)));
  }
  if (worst > 1e-6) return "max deviation " + fmt(worst);
  return "";
}

// ---------------------------------------------------------------------------
// C6: degree-4 curve structure.

double tau3_middle_oracle(double p) {
  // tangle along the phase-aligned curve of the standard family
  const double k = std::pow(2.0, 3.5) / std::pow(3.0, 1.5);
  return p * p - k * std::sqrt(p * (1.0 - p) * (1.0 - p) * (1.0 - p));
}

double tau3_middle_slope(double p) {
  const double k = std::pow(2.0, 3.5) / std::pow(3.0, 1.5);
  const double w = p * (1.0 - p) * (1.0 - p) * (1.0 - p);
  return 2.0 * p -
         k * (1.0 - p) * (1.0 - p) * (1.0 - 4.0 * p) / (2.0 * std::sqrt(w));
}

// Abscissa where the line through (1, 1) is tangent to the middle branch,
// located without reference to the library's own bisection.
double tangency_oracle() {
  const double p0 =
      std::pow(2.0, 7.0 / 3.0) / (3.0 + std::pow(2.0, 7.0 / 3.0));
  auto g = [](double p) {
    return tau3_middle_oracle(p) + tau3_middle_slope(p) * (1.0 - p) - 1.0;
  };
  double lo = p0 + 0.01, hi = 0.99;
  if (!(g(lo) < 0.0 && g(hi) > 0.0)) return -1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::string c6_degree4_curve() {
  // (i) the general curved branch is the trace-squared standard one
  const GhzwFamily fam = s2sqrt2_family();
  const double pz = p_zero(standard_family());
  const double p1 = standard_tau3_p1();
  for (int i = 0; i < 500; ++i) {
    const double pp = pz + 1e-6 + (p1 - pz - 2e-6) * i / 499.0;
    const double p = p_from_p_prime(fam, pp);
    const double t = trace_factor(fam, p);
    const double general = tau3_curve_general(fam, p);
    const double rescaled = t * t * standard_tau3_roof(pp);
    if (std::abs(general - rescaled) > 1e-10) {
      return "curved branch mismatch at p'=" + fmt(pp) + ": " +
             fmt(std::abs(general - rescaled));
    }
  }

  // (ii) hull of the sampled degree-4 curve: upper branch point and slope
  std::vector<double> xs;
  for (int i = 0; i <= 1000; ++i) xs.push_back(i / 1000.0);
  for (double x = pz; x < 1.0; x += 2e-5) xs.push_back(x);
  xs.push_back(pz);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<double> ys;
  ys.reserve(xs.size());
  for (double x : xs) {
    const double c = char_curve(standard_family(), x);
    ys.push_back(c * c);
  }
  const std::vector<int> hull = lower_hull_vertices(xs, ys);
  if (hull.size() < 3) return "degenerate hull";
  const int last = hull[hull.size() - 1];
  const int prev = hull[hull.size() - 2];
  if (std::abs(xs[last] - 1.0) > 1e-12) return "hull does not end at p=1";
  const double hull_p1 = xs[prev];
  const double oracle = tangency_oracle();
  if (oracle < 0.0) return "tangency oracle failed to bracket";
  if (std::abs(hull_p1 - oracle) > 1e-4) {
    return "hull branch point " + fmt(hull_p1) + " vs tangency oracle " +
           fmt(oracle);
  }
  const double slope =
      (ys[last] - ys[prev]) / (xs[last] - xs[prev]);
  const double slope_exact = 1.5 + std::sqrt(465.0) / 18.0;
  if (std::abs(slope - slope_exact) > 1e-6) {
    return "third-branch slope " + fmt(slope) + " vs " + fmt(slope_exact);
  }

  // (iii) the naive branch-point prediction moves the wrong way, rising
  // monotonically in |s|
  double prev_np = -1.0;
  for (int i = 0; i <= 300; ++i) {
    const double s = 0.1 * std::pow(100.0, i / 300.0);
    const double np = naive_p1(cplx(s, 0.0));
    if (np <= prev_np) {
      return "naive branch point not increasing at |s|=" + fmt(s);
    }
    prev_np = np;
  }
  return "";
}

// ---------------------------------------------------------------------------
// C7: characteristic surface of the rank-3 mixture.

std::string c7_surface() {
  if (std::abs(char_surface(1.0, 0.0) - 1.0) > 1e-12) return "corner (1,0)";
  if (std::abs(char_surface(0.0, 1.0)) > 1e-12) return "corner (0,1)";
  if (std::abs(char_surface(0.0, 0.0)) > 1e-12) return "corner (0,0)";

  // zero crossing of the q=0 edge sits at the standard zero abscissa
  const double exact =
      std::pow(2.0, 7.0 / 3.0) / (3.0 + std::pow(2.0, 7.0 / 3.0));
  double lo = 0.5, hi = 0.7;
  if (!(char_surface_inner(lo, 0.0) < 0.0 &&
        char_surface_inner(hi, 0.0) > 0.0)) {
    return "edge zero not bracketed";
  }
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (char_surface_inner(mid, 0.0) < 0.0 ? lo : hi) = mid;
  }
  if (std::abs(0.5 * (lo + hi) - exact) > 1e-6) {
    return "edge zero at " + fmt(0.5 * (lo + hi)) + " vs " + fmt(exact);
  }

  // grid envelope: zero on the far edge, ruled toward the (1,0) corner
  const std::vector<SurfaceSample> samples =
      surface_convexify(surface_grid(1.0 / 200.0));
  double edge_worst = 0.0;
  double ruled_worst = 0.0;
  int ruled_count = 0;
  for (const SurfaceSample& s : samples) {
    if (s.p <= 1e-15) {
      edge_worst = std::max(edge_worst, s.convex_value);
      continue;
    }
    if (s.p >= 1.0 - 1e-12) {
      if (std::abs(s.convex_value - 1.0) > 1e-9) return "corner envelope";
      continue;
    }
    if (char_surface_inner(s.p, s.q) <= 1e-6) continue;
    // the ray from the (1, 0) corner through the sample crosses the zero
    // locus at t_z >= 1; the envelope there is the chord value 1 - 1/t_z
    const double tmax = (1.0 / (1.0 - s.p)) * (1.0 - 1e-9);
    double tlo = 1.0, thi = tmax;
    if (!(char_surface_inner(1.0 - thi * (1.0 - s.p), thi * s.q) < 0.0)) {
      continue;  // ray leaves the simplex before crossing (corner samples)
    }
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (tlo + thi);
      const double pm = 1.0 - mid * (1.0 - s.p);
      const double qm = mid * s.q;
      (char_surface_inner(pm, qm) > 0.0 ? tlo : thi) = mid;
    }
    const double tz = 0.5 * (tlo + thi);
    ruled_worst =
        std::max(ruled_worst, std::abs(s.convex_value - (1.0 - 1.0 / tz)));
    ++ruled_count;
  }
  if (edge_worst > 1e-9) {
    return "envelope nonzero on the far edge: " + fmt(edge_worst);
  }
  if (ruled_count < 100) return "too few ruled samples";
  if (ruled_worst > 5e-3) {
    return "ruled-segment deviation " + fmt(ruled_worst) + " over " +
           std::to_string(ruled_count) + " samples";
  }
  return "";
}

// ---------------------------------------------------------------------------
// C8: the zero set is carried onto itself by invertible diagonal local maps.

PureState random_w_span(Rng& rng) {
  Vec amps = Vec::Zero(8);
  // support {|001>, |010>, |100>}: indices 1, 2, 4
  amps[1] = rng.complex_gaussian();
  amps[2] = rng.complex_gaussian();
  amps[4] = rng.complex_gaussian();
  amps /= amps.norm();
  return PureState(kQ3, amps);
}

GhzwFamily random_family(Rng& rng) {
  auto draw = [&rng]() {
    cplx z = rng.complex_gaussian();
    while (std::abs(z) < 0.2) z = rng.complex_gaussian();
    return z;
  };
  cplx a = draw(), b = draw(), c = draw(), d = draw(), f = draw();
  const double nab = std::sqrt(std::norm(a) + std::norm(b));
  const double ncdf =
      std::sqrt(std::norm(c) + std::norm(d) + std::norm(f));
  return GhzwFamily(a / nab, b / nab, c / ncdf, d / ncdf, f / ncdf);
}

std::string c8_zero_set_invariance() {
  Rng rng(808);
  std::vector<MixedState> states;
  for (int t = 0; t < 4; ++t) {
    states.push_back(
        mixture_state(random_family(rng), rng.uniform(0.75, 0.95)));
  }
  for (int t = 0; t < 3; ++t) {
    const Decomposition dec({0.5, 0.5},
                            {random_w_span(rng), random_w_span(rng)});
    states.push_back(mix(dec));
  }
  for (int t = 0; t < 3; ++t) {
    states.push_back(random_mixed_state(rng, kQ3, 2));
  }

  for (size_t i = 0; i < states.size(); ++i) {
    const LocalOperator op = random_diagonal_ilo(rng, kQ3);
    const MixedState mapped = apply_mixed(op, states[i]).state;
    for (const std::string& name : monotone_names()) {
      const Monotone& m = monotone(name);
      const ZeroClass before = zero_class(m, states[i]);
      const ZeroClass after = zero_class(m, mapped);
      if (before != after) {
        return "state " + std::to_string(i) + ", " + name + ": " +
               to_string(before) + " vs " + to_string(after);
      }
    }
  }
  return "";
}

struct Criterion {
  const char* label;
  const char* name;
  double limit_seconds;
  std::function<std::string()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"C1", "pure-state tangle values", 1.0, c1_pure_values},
      {"C2", "invariance and homogeneity", 5.0, c2_invariance_homogeneity},
      {"C3", "zero boundary", 120.0, c3_zero_boundary},
      {"C4", "degree-2 rescaling transport", 300.0, c4_rescaling},
      {"C5", "two-qubit concurrence oracle", 120.0, c5_concurrence_oracle},
      {"C6", "degree-4 curve structure", 30.0, c6_degree4_curve},
      {"C7", "characteristic surface", 60.0, c7_surface},
      {"C8", "zero-set invariance under local maps", 300.0,
       c8_zero_set_invariance},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    try {
      detail = c.body();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start)
            .count();
    if (detail.empty() && elapsed > c.limit_seconds) {
      detail = "runtime " + fmt(elapsed) + " s exceeds " +
               fmt(c.limit_seconds) + " s";
    }
    if (detail.empty()) {
      std::printf("%s %s: PASS (%.2f s)\n", c.label, c.name, elapsed);
    } else {
      std::printf("%s %s: FAIL (%.2f s) %s\n", c.label, c.name, elapsed,
                  detail.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  return failures;
}
