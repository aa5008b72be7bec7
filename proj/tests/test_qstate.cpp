#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "roofscale/qstate.hpp"
#include "roofscale/rng.hpp"

using namespace roofscale;

namespace {

const std::vector<int> kQ3 = {2, 2, 2};
const std::vector<int> kQ2 = {2, 2};

Vec basis_ket(int dim, int index) {
  Vec v = Vec::Zero(dim);
  v[index] = 1.0;
  return v;
}

double max_entry_diff(const Mat& a, const Mat& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("pure state construction and validation") {
  PureState psi(kQ3, basis_ket(8, 0));
  CHECK(psi.dim() == 8);
  CHECK(psi.norm() == doctest::Approx(1.0));
  CHECK(psi.normalized());

  CHECK_THROWS_AS(PureState(kQ3, basis_ket(4, 0)), std::invalid_argument);
  CHECK_THROWS_AS(PureState({2, 0, 2}, basis_ket(8, 0)),
                  std::invalid_argument);
  Vec bad = basis_ket(8, 0);
  bad[3] = cplx(std::nan(""), 0.0);
  CHECK_THROWS_AS(PureState(kQ3, bad), std::invalid_argument);
}

TEST_CASE("big-endian site order: |ijk> lives at 4i + 2j + k") {
  // |100>
  PureState psi(kQ3, basis_ket(8, 4));
  CHECK(std::abs(psi.amplitudes()[4] - cplx(1.0, 0.0)) < 1e-15);
  // |011>
  PureState chi(kQ3, basis_ket(8, 3));
  CHECK(std::abs(chi.amplitudes()[3] - cplx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("normalize rescales and rejects the zero vector") {
  Vec v = Vec::Zero(8);
  v[0] = cplx(3.0, 0.0);
  v[7] = cplx(0.0, 4.0);
  const PureState raw(kQ3, v);
  CHECK(!raw.normalized());
  const PureState unit = normalize(raw);
  CHECK(unit.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(unit.amplitudes()[0] - cplx(0.6, 0.0)) < 1e-14);
  CHECK(std::abs(unit.amplitudes()[7] - cplx(0.0, 0.8)) < 1e-14);

  CHECK_THROWS_AS(normalize(PureState(kQ3, Vec::Zero(8))), std::domain_error);
}

TEST_CASE("mixed state validation") {
  Mat ok = Mat::Zero(4, 4);
  ok(0, 0) = 0.5;
  ok(3, 3) = 0.5;
  CHECK_NOTHROW(MixedState(kQ2, ok));

  Mat herm_bad = ok;
  herm_bad(0, 3) = cplx(0.2, 0.0);  // (3,0) left zero
  CHECK_THROWS_AS(MixedState(kQ2, herm_bad), std::invalid_argument);

  Mat trace_bad = ok;
  trace_bad(0, 0) = 0.9;
  CHECK_THROWS_AS(MixedState(kQ2, trace_bad), std::invalid_argument);

  Mat neg = Mat::Zero(4, 4);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(MixedState(kQ2, neg), std::invalid_argument);

  CHECK_THROWS_AS(MixedState(kQ3, ok), std::invalid_argument);
}

TEST_CASE("projector of a pure state") {
  Vec v = Vec::Zero(4);
  v[0] = cplx(1.0, 0.0);
  v[3] = cplx(0.0, 1.0);
  const PureState psi(kQ2, v);  // unnormalized on purpose
  const MixedState pi = projector(psi);
  CHECK(std::abs(pi.matrix().trace() - cplx(1.0, 0.0)) < 1e-14);
  CHECK(std::abs(pi.matrix()(0, 0) - cplx(0.5, 0.0)) < 1e-14);
  CHECK(std::abs(pi.matrix()(0, 3) - cplx(0.0, -0.5)) < 1e-14);
  CHECK(std::abs(pi.matrix()(3, 0) - cplx(0.0, 0.5)) < 1e-14);
}

TEST_CASE("decomposition validation") {
  const PureState a(kQ2, basis_ket(4, 0));
  const PureState b(kQ2, basis_ket(4, 3));

  CHECK_NOTHROW(Decomposition({0.25, 0.75}, {a, b}));
  CHECK_THROWS_AS(Decomposition({0.5, 0.6}, {a, b}), std::invalid_argument);
  CHECK_THROWS_AS(Decomposition({1.5, -0.5}, {a, b}), std::invalid_argument);
  CHECK_THROWS_AS(Decomposition({0.5}, {a, b}), std::invalid_argument);
  CHECK_THROWS_AS(Decomposition({}, {}), std::invalid_argument);

  // weights in [-1e-12, 0) are clipped, not rejected
  const Decomposition clipped({1.0, -0.5e-12}, {a, b});
  CHECK(clipped.weights()[1] == 0.0);

  Vec half = basis_ket(4, 0) * 0.5;
  CHECK_THROWS_AS(Decomposition({0.5, 0.5}, {a, PureState(kQ2, half)}),
                  std::invalid_argument);

  const PureState other_dims({4}, basis_ket(4, 0));
  CHECK_THROWS_AS(Decomposition({0.5, 0.5}, {a, other_dims}),
                  std::invalid_argument);
}

TEST_CASE("spectral decomposition round trip and ordering") {
  Rng rng(7101);
  for (int rank = 1; rank <= 4; ++rank) {
    const MixedState rho = random_mixed_state(rng, kQ3, rank);
    const Decomposition dec = spectral_decomposition(rho);
    CHECK(dec.length() == rank);
    for (int i = 1; i < dec.length(); ++i) {
      CHECK(dec.weights()[i] <= dec.weights()[i - 1] + 1e-15);
    }
    const MixedState back = mix(dec);
    CHECK(max_entry_diff(back.matrix(), rho.matrix()) < 1e-12);
  }
}

TEST_CASE("steer reproduces the state for any isometry") {
  Rng rng(7102);
  for (int rank = 2; rank <= 3; ++rank) {
    const MixedState rho = random_mixed_state(rng, kQ3, rank);
    for (int rows = rank; rows <= rank + 3; ++rows) {
      const Isometry u = random_isometry(rng, rows, rank);
      const Decomposition dec = steer(rho, u);
      double total = 0.0;
      for (double w : dec.weights()) total += w;
      CHECK(std::abs(total - 1.0) < 1e-12);
      CHECK(max_entry_diff(mix(dec).matrix(), rho.matrix()) < 1e-10);
    }
  }
}

TEST_CASE("steer with the identity embedding is the spectral decomposition") {
  Rng rng(7103);
  const MixedState rho = random_mixed_state(rng, kQ3, 3);
  const Decomposition spec = spectral_decomposition(rho);
  const Isometry id(Mat::Identity(3, 3));
  const Decomposition dec = steer(rho, id);
  REQUIRE(dec.length() == spec.length());
  for (int i = 0; i < dec.length(); ++i) {
    CHECK(std::abs(dec.weights()[i] - spec.weights()[i]) < 1e-12);
    const double overlap =
        std::abs(dec.states()[i].amplitudes().dot(spec.states()[i].amplitudes()));
    CHECK(overlap == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("steer rejects a column-count mismatch") {
  Rng rng(7104);
  const MixedState rho = random_mixed_state(rng, kQ3, 2);
  const Isometry u3(Mat::Identity(3, 3));
  CHECK_THROWS_AS(steer(rho, u3), std::invalid_argument);
}

TEST_CASE("isometry validation") {
  CHECK_NOTHROW(Isometry(Mat::Identity(4, 2)));
  Mat skew = Mat::Identity(3, 2);
  skew(0, 1) = 0.3;
  CHECK_THROWS_AS(Isometry{skew}, std::invalid_argument);
  CHECK_THROWS_AS(Isometry(Mat::Identity(2, 3)), std::invalid_argument);
}

TEST_CASE("random generators are deterministic and well formed") {
  Rng a(42);
  Rng b(42);
  const PureState pa = random_pure_state(a, kQ3);
  const PureState pb = random_pure_state(b, kQ3);
  CHECK(max_entry_diff(pa.amplitudes(), pb.amplitudes()) == 0.0);
  CHECK(pa.norm() == doctest::Approx(1.0).epsilon(1e-13));

  const MixedState rho = random_mixed_state(a, kQ3, 3);
  CHECK(std::abs(rho.matrix().trace() - cplx(1.0, 0.0)) < 1e-12);
  CHECK(spectral_decomposition(rho).length() == 3);

  const Isometry u = random_isometry(a, 5, 3);
  CHECK(max_entry_diff(u.entries().adjoint() * u.entries(),
                       Mat::Identity(3, 3)) < 1e-12);
}
