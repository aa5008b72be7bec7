#pragma once

#include <vector>

#include "roofscale/common.hpp"
#include "roofscale/localops.hpp"
#include "roofscale/qstate.hpp"

namespace roofscale {

// Generic two-branch three-qubit family: a|000> + b|111> mixed with
// c|100> + d|010> + f|001>. All five coefficients nonzero, the pairs
// (a,b) and (c,d,f) separately normalized.
class GhzwFamily {
 public:
  GhzwFamily(cplx a, cplx b, cplx c, cplx d, cplx f);

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }
  cplx d() const { return d_; }
  cplx f() const { return f_; }

 private:
  cplx a_, b_, c_, d_, f_;
};

// a = b = 1/sqrt(2), c = d = f = 1/sqrt(3).
GhzwFamily standard_family();
// a = 1/sqrt(3), b = sqrt(2/3), c = d = f = 1/sqrt(3); its s equals 2 sqrt(2).
GhzwFamily s2sqrt2_family();

PureState ghz_state();
PureState w_state();
// Spin-flipped W: (|011> + |101> + |110>)/sqrt(3).
PureState wbar_state();
PureState gghz_state(const GhzwFamily& fam);
PureState gw_state(const GhzwFamily& fam);

// sqrt(p) gGHZ + sqrt(1-p) e^{i phi} gW (normalized by orthogonality).
PureState phase_superposition(const GhzwFamily& fam, double p, double phi);

// s = 4 c d f / (a^2 b).
cplx s_parameter(const GhzwFamily& fam);

// Zero abscissa of the characteristic curve: |s|^(2/3) / (1 + |s|^(2/3)).
double p_zero(const GhzwFamily& fam);

// p |gGHZ><gGHZ| + (1-p) |gW><gW|. p outside [0,1]: std::domain_error.
MixedState mixture_state(const GhzwFamily& fam, double p);

// Minimum tangle sqrt over the phase circle at mixing weight p, closed form:
// 2|ab| sqrt| p^2 - |s| sqrt(p (1-p)^3) |.
double char_curve(const GhzwFamily& fam, double p);

// Same minimum computed directly: 720-point phase grid plus golden-section
// refinement to 1e-10 in the phase.
double char_curve_by_phase_search(const GhzwFamily& fam, double p);

// Largest convex minorant of the characteristic curve: 0 up to p_zero, then
// the straight line 2|ab| (p - (1-p)|s|^(2/3)). Equals the convex roof.
double convex_char_curve(const GhzwFamily& fam, double p);

// Exact roof of the degree-2 monotone for the standard family mixture:
// 0 below p0' = 2^(7/3)/(3+2^(7/3)), then p' - (1-p') 2^(7/3)/3.
double standard_sqrt_roof(double p_prime);

// Exact roof of the degree-4 monotone for the standard family mixture:
// 0 below p0'; p'^2 - (2^(7/2)/3^(3/2)) sqrt(p'(1-p')^3) between p0' and
// p1'; the tangent line 1 - (1-p')(3/2 + sqrt(465)/18) above p1'. The branch
// point p1' is the tangency of the line through (1,1) with the middle
// branch, computed once by bisection to 1e-10.
double standard_tau3_roof(double p_prime);
double standard_tau3_p1();

// Mixing-weight transport between a family mixture and the standard one
// under the diagonal determinant-one map, with u = |2s|^(2/3):
//   p' = p / (p + (3(1-p)/8) u)    and its inverse.
double p_prime_from_p(const GhzwFamily& fam, double p);
double p_from_p_prime(const GhzwFamily& fam, double p_prime);

// T = 2|ab| (p + (3(1-p)/8) |2s|^(2/3)); the trace of the transformed
// mixture before renormalization.
double trace_factor(const GhzwFamily& fam, double p);

// trace_factor(p) * standard_sqrt_roof(p'(p)); identical to
// convex_char_curve by the degree-2 rescaling theorem.
double roof_via_rescaling(const GhzwFamily& fam, double p);

// The diagonal determinant-one operation mapping the family branches to the
// uniform (standard) ones.
LocalOperator standardizing_ilo(const GhzwFamily& fam);

// What naive degree-4 rescaling predicts for the upper branch point:
// 24 u / (91 - 3 sqrt(465) + 24 u), u = |2s|^(2/3). Documented wrong: it
// increases with |s| while the true tangency abscissa decreases.
double naive_p1(cplx s);

// Degree-4 roof on the curved region [p_zero, tangency]:
// 4|ab|^2 (p^2 - |s| sqrt(p(1-p)^3)); equals T^2 times the standard middle
// branch at p'(p). Throws std::domain_error below p_zero.
double tau3_curve_general(const GhzwFamily& fam, double p);

// Local unitary diag(e^{i pi/3}, e^{-i pi/3}) on each site. Fixes every
// family mixture and advances the branch relative phase by 2 pi / 3.
LocalOperator u3_symmetry();

// p GHZ + q W + (1-p-q) flipped-W mixture.
// Throws std::domain_error outside {p,q >= 0, p+q <= 1}.
MixedState rank3_state(double p, double q);

// Signed expression under the absolute value of the characteristic surface:
// p^2 - 4p sqrt(qr) - (4/3) qr - (8 sqrt(6)/9)(sqrt(p q^3) + sqrt(p r^3)).
double char_surface_inner(double p, double q);

// sqrt|char_surface_inner|; the phase-aligned tangle sqrt of
// sqrt(p) GHZ + sqrt(q) W + sqrt(r) flipped-W.
double char_surface(double p, double q);

// Direct minimization over both relative phases (grid plus coordinate
// golden-section refinement). Below the zero locus of the inner expression
// the aligned phases are not optimal, so this can fall below char_surface.
double char_surface_by_phase_search(double p, double q);

struct CurveSample {
  double p;
  double char_value;
  double convex_value;
};

// Characteristic-curve samples on the regular grid of the given step with
// the zero abscissa p_zero inserted (the envelope needs the exact anchor;
// a plain grid overshoots near the sqrt-type zero). convex_value is left 0;
// run convexify_curve to fill it.
std::vector<CurveSample> curve_grid(const GhzwFamily& fam, double step);

// Fills convex_value with the lower convex envelope (monotone chain) of
// (p, char_value). Input must be sorted by p: std::invalid_argument
// otherwise.
std::vector<CurveSample> convexify_curve(std::vector<CurveSample> samples);

struct SurfaceSample {
  double p;
  double q;
  double r;
  double char_value;
  double convex_value;
};

// Characteristic-surface samples on the regular simplex grid of the given
// step, refined with points bisected onto the zero locus of the inner
// expression along the three grid directions (char is 0 there by
// construction; a plain grid never dips below ~sqrt(step) near the locus).
// convex_value is left 0; run surface_convexify to fill it.
std::vector<SurfaceSample> surface_grid(double step = 1.0 / 200.0);

// Fills convex_value with the lower convex envelope over the simplex
// (lower faces of the 3-D hull of (p, q, char_value)). Throws
// std::invalid_argument unless at least 3 samples are non-collinear.
std::vector<SurfaceSample> surface_convexify(std::vector<SurfaceSample> samples);

}  // namespace roofscale
