#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "roofscale/convexroof.hpp"
#include "roofscale/ghzw.hpp"
#include "roofscale/invariants.hpp"
#include "roofscale/localops.hpp"
#include "roofscale/qstate.hpp"
#include "roofscale/rng.hpp"

using namespace roofscale;

namespace {

const std::vector<int> kQ3 = {2, 2, 2};
const std::vector<int> kQ2 = {2, 2};

double average(const Monotone& m, const Decomposition& dec) {
  double total = 0.0;
  for (int i = 0; i < dec.length(); ++i) {
    total += dec.weights()[i] * m.evaluator(dec.states()[i]);
  }
  return total;
}

RoofOptions fast_opts(int restarts = 12) {
  RoofOptions o;
  o.restarts = restarts;
  return o;
}

}  // namespace

TEST_CASE("option validation") {
  Rng rng(5501);
  const MixedState rho = random_mixed_state(rng, kQ3, 2);
  RoofOptions bad;
  bad.restarts = 0;
  CHECK_THROWS_AS(convex_roof(monotone("sqrt_tau3"), rho, bad),
                  std::invalid_argument);
  RoofOptions small;
  small.max_length = 1;
  CHECK_THROWS_AS(convex_roof(monotone("sqrt_tau3"), rho, small),
                  std::invalid_argument);
}

TEST_CASE("pure states come back exactly") {
  Rng rng(5502);
  for (const std::string& name : monotone_names()) {
    const Monotone& m = monotone(name);
    const PureState psi = random_pure_state(rng, kQ3);
    const RoofResult res = convex_roof(m, projector(psi), fast_opts(4));
    CHECK(std::abs(res.value - evaluate_normalized(m, psi)) < 1e-9);
  }
}

TEST_CASE("result is a certified decomposition average of the input state") {
  Rng rng(5503);
  const Monotone& m = monotone("sqrt_tau3");
  for (int rank : {2, 3}) {
    const MixedState rho = random_mixed_state(rng, kQ3, rank);
    const RoofResult res = convex_roof(m, rho, fast_opts());
    CHECK(res.restarts_used == 12);
    // members on the zero set have |P| at rounding level; the half power
    // turns noise eps in P into sqrt(eps) in the recomputed average
    CHECK(std::abs(res.value - average(m, res.decomposition)) < 2e-9);
    CHECK((mix(res.decomposition).matrix() - rho.matrix())
              .cwiseAbs()
              .maxCoeff() < 1e-8);
    CHECK(res.value <=
          average(m, spectral_decomposition(rho)) + 1e-10);
  }
}

TEST_CASE("fixed seed gives bitwise identical results") {
  Rng rng(5504);
  const MixedState rho = random_mixed_state(rng, kQ3, 2);
  const Monotone& m = monotone("tau3");
  const RoofResult a = convex_roof(m, rho, fast_opts(8));
  const RoofResult b = convex_roof(m, rho, fast_opts(8));
  CHECK(a.value == b.value);
  REQUIRE(a.decomposition.length() == b.decomposition.length());
  for (int i = 0; i < a.decomposition.length(); ++i) {
    CHECK(a.decomposition.weights()[i] == b.decomposition.weights()[i]);
  }
}

TEST_CASE("family mixtures against the closed-form roof") {
  const Monotone& m = monotone("sqrt_tau3");
  // zero side
  const RoofResult zero =
      convex_roof(m, mixture_state(standard_family(), 0.3), fast_opts());
  CHECK(zero.value <= 1e-6);
  // positive side, frozen closed form
  const RoofResult pos =
      convex_roof(m, mixture_state(standard_family(), 0.9), fast_opts());
  CHECK(std::abs(pos.value - 0.7320105266806836) < 1e-6);
  const RoofResult s2 =
      convex_roof(m, mixture_state(s2sqrt2_family(), 0.8), fast_opts());
  CHECK(std::abs(s2.value - 0.3771236166328254) < 1e-6);
}

TEST_CASE("edge of the rank-3 simplex reduces to the standard family") {
  const Monotone& m = monotone("sqrt_tau3");
  const RoofResult res = convex_roof(m, rank3_state(0.8, 0.0), fast_opts());
  CHECK(std::abs(res.value - standard_sqrt_roof(0.8)) < 1e-5);
}

TEST_CASE("optimizer matches the Wootters closed form") {
  Rng rng(5505);
  const Monotone& c = concurrence_monotone();
  for (int t = 0; t < 5; ++t) {
    const MixedState rho = random_mixed_state(rng, kQ2, 2);
    const RoofResult res = convex_roof(c, rho, fast_opts(16));
    CHECK(std::abs(res.value - wootters_concurrence(rho)) < 1e-6);
  }
}

TEST_CASE("max_length caps the decomposition") {
  Rng rng(5506);
  const MixedState rho = random_mixed_state(rng, kQ3, 2);
  RoofOptions o = fast_opts(6);
  o.max_length = 3;
  const RoofResult res = convex_roof(monotone("sqrt_tau3"), rho, o);
  CHECK(res.decomposition.length() <= 3);
}

TEST_CASE("degree-2 rescaling helpers") {
  const Monotone& m2 = monotone("sqrt_tau3");
  const Monotone& m4 = monotone("tau3");
  CHECK(rescaled_roof(m2, 0.6, 2.0) == doctest::Approx(0.3));
  CHECK_THROWS_AS(rescaled_roof(m4, 0.6, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(rescaled_roof(m2, 0.6, 0.0), std::domain_error);

  CHECK(naive_rescale(0.8, 4.0, 4.0) == doctest::Approx(0.05));
  CHECK(naive_rescale(0.8, 4.0, 2.0) == doctest::Approx(0.2));
  CHECK_THROWS_AS(naive_rescale(0.8, -1.0, 2.0), std::domain_error);

  CHECK(symmetric_rescale(m4, 0.8, 2.0, true) == doctest::Approx(0.2));
  CHECK_THROWS_AS(symmetric_rescale(m4, 0.8, 2.0, false),
                  std::invalid_argument);
  CHECK_THROWS_AS(symmetric_rescale(m4, 0.8, 0.0, true), std::domain_error);
}

TEST_CASE("transport carries an optimal decomposition through the map") {
  const Monotone& m = monotone("sqrt_tau3");
  const GhzwFamily fam = s2sqrt2_family();
  const double p = 0.8;
  const RoofResult res = convex_roof(m, mixture_state(fam, p), fast_opts());
  const LocalOperator op = standardizing_ilo(fam);
  const double t = trace_factor(fam, p);

  const RoofResult moved = transport_optimal(m, op, res);
  // mapping zero members re-rounds P; the half power amplifies that noise
  CHECK(std::abs(moved.value - res.value / t) < 1e-8);
  CHECK(std::abs(average(m, moved.decomposition) - moved.value) < 1e-8);
  const MixedState mapped = apply_mixed(op, mixture_state(fam, p)).state;
  CHECK((mix(moved.decomposition).matrix() - mapped.matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-8);
  // lands on the standard-family closed form
  CHECK(std::abs(moved.value - standard_sqrt_roof(p_prime_from_p(fam, p))) <
        2e-3);

  CHECK_THROWS_AS(transport_optimal(monotone("tau3"), op, res),
                  std::invalid_argument);
}

TEST_CASE("equal-trace condition detects the symmetric orbit") {
  const GhzwFamily fam = s2sqrt2_family();
  const double p = 0.8;
  const LocalOperator op = standardizing_ilo(fam);

  // order-three phase orbit: equal weights, equal transformed traces
  std::vector<PureState> orbit;
  std::vector<double> w;
  for (int k = 0; k < 3; ++k) {
    orbit.push_back(
        phase_superposition(fam, p, 0.25 + 2.0 * M_PI * k / 3.0));
    w.push_back(1.0 / 3.0);
  }
  const Decomposition dec(w, orbit);
  CHECK((mix(dec).matrix() - mixture_state(fam, p).matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  const EqualTraceCheck sym = check_equal_trace(op, dec);
  CHECK(sym.ok);
  CHECK(sym.max_deviation < 1e-10);
  CHECK(std::abs(sym.factor - trace_factor(fam, p)) < 1e-12);

  // the spectral decomposition mixes branches with different traces
  const EqualTraceCheck asym =
      check_equal_trace(op, spectral_decomposition(mixture_state(fam, p)));
  CHECK(!asym.ok);
  CHECK(asym.max_deviation > 1e-3);
}

TEST_CASE("degree-4 symmetric rescaling on the curved region") {
  // in the curved region the optimal decomposition is the phase orbit, whose
  // members share one trace factor, so value / T^2 transports the roof
  const GhzwFamily fam = s2sqrt2_family();
  const double pp = 0.69;  // inside (p0', p1') of the standard family
  const double p = p_from_p_prime(fam, pp);
  const double t = trace_factor(fam, p);
  const double direct = tau3_curve_general(fam, p);
  const double moved = symmetric_rescale(monotone("tau3"), direct, t, true);
  CHECK(std::abs(moved - tau3_curve_general(standard_family(), pp)) < 1e-10);
}

TEST_CASE("zero classification") {
  const Monotone& m2 = monotone("sqrt_tau3");
  const Monotone& m4 = monotone("tau3");

  CHECK(zero_class(m2, projector(w_state()), fast_opts()) == ZeroClass::zero);
  CHECK(zero_class(m4, projector(w_state()), fast_opts()) == ZeroClass::zero);
  CHECK(zero_class(m2, projector(ghz_state()), fast_opts()) ==
        ZeroClass::nonzero);
  CHECK(zero_class(m4, projector(ghz_state()), fast_opts()) ==
        ZeroClass::nonzero);

  const MixedState below = mixture_state(standard_family(), 0.4);
  const MixedState above = mixture_state(standard_family(), 0.9);
  CHECK(zero_class(m2, below, fast_opts()) == ZeroClass::zero);
  CHECK(zero_class(m2, above, fast_opts()) == ZeroClass::nonzero);
  CHECK(zero_class(m4, above, fast_opts()) == ZeroClass::nonzero);

  CHECK(std::string(to_string(ZeroClass::zero)) == "zero");
  CHECK(std::string(to_string(ZeroClass::nonzero)) == "nonzero");
  CHECK(std::string(to_string(ZeroClass::undecided)) == "undecided");
}

TEST_CASE("roof transport against an independent rescaling route") {
  // rank-2 state under a diagonal operation: optimizer both ways
  Rng rng(5507);
  const Monotone& m = monotone("sqrt_tau3");
  const MixedState rho = random_mixed_state(rng, kQ3, 2);
  const LocalOperator op = random_diagonal_ilo(rng, kQ3);
  const RescaledMixed mapped = apply_mixed(op, rho);

  const double direct = convex_roof(m, mapped.state, fast_opts(16)).value;
  const double via =
      rescaled_roof(m, convex_roof(m, rho, fast_opts(16)).value,
                    mapped.factor);
  CHECK(std::abs(direct - via) < 2e-3);
}
