#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "roofscale/convexroof.hpp"
#include "roofscale/ghzw.hpp"
#include "roofscale/json_io.hpp"
#include "roofscale/localops.hpp"
#include "roofscale/qstate.hpp"
#include "roofscale/rng.hpp"

using namespace roofscale;

namespace {

const std::vector<int> kQ3 = {2, 2, 2};

double reparse(const std::string& s) { return std::stod(s); }

int count_lines(const std::string& text) {
  int n = 0;
  for (char ch : text) {
    if (ch == '\n') ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("number formatting is stable and round-trips") {
  CHECK(format_double(1.0) == "1.0");
  CHECK(format_double(0.0) == "0.0");
  CHECK(format_double(-2.0) == "-2.0");
  CHECK(format_double(0.5) == "0.5");

  const double vals[] = {0.6268510148499474, 2.1773242158072694,
                         1.0 / 3.0,          1e-13,
                         -3.25e20,           7.0};
  for (double v : vals) {
    const std::string s = format_double(v);
    // 12 significant digits resolve to within one part in 1e11
    CHECK(std::abs(reparse(s) - v) <= std::abs(v) * 1e-11);
  }
  // explicitly 12 significant digits, not 15
  CHECK(format_double(0.6268510148499474) == "0.62685101485");
}

TEST_CASE("pure state json round trip") {
  Rng rng(7701);
  const PureState psi = random_pure_state(rng, kQ3);
  const StateFile sf = parse_state_json(to_json(psi));
  REQUIRE(sf.pure.has_value());
  CHECK(!sf.mixed.has_value());
  CHECK(sf.pure->dims() == kQ3);
  for (int i = 0; i < 8; ++i) {
    CHECK(std::abs(sf.pure->amplitudes()[i] - psi.amplitudes()[i]) < 1e-10);
  }
  // as_mixed agrees with the projector
  const MixedState rho = as_mixed(sf);
  CHECK((rho.matrix() - projector(psi).matrix()).cwiseAbs().maxCoeff() <
        1e-10);
}

TEST_CASE("mixed state json round trip") {
  Rng rng(7702);
  const MixedState rho = random_mixed_state(rng, kQ3, 3);
  const StateFile sf = parse_state_json(to_json(rho));
  REQUIRE(sf.mixed.has_value());
  CHECK(!sf.pure.has_value());
  CHECK((as_mixed(sf).matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("state parse errors") {
  // not json at all
  CHECK_THROWS_AS(parse_state_json("not json"), std::exception);
  // missing dims
  CHECK_THROWS_AS(parse_state_json(R"({"amplitudes": [[1.0, 0.0]]})"),
                  std::exception);
  // neither amplitudes nor matrix
  CHECK_THROWS_AS(parse_state_json(R"({"dims": [2, 2, 2]})"), std::exception);
  // both at once
  CHECK_THROWS_AS(parse_state_json(
                      R"({"dims": [2], "amplitudes": [[1.0, 0.0], [0.0, 0.0]],
                          "matrix": [[[1.0, 0.0], [0.0, 0.0]],
                                     [[0.0, 0.0], [0.0, 0.0]]]})"),
                  std::exception);
  // wrong amplitude count for the dims
  CHECK_THROWS_AS(
      parse_state_json(R"({"dims": [2, 2], "amplitudes": [[1.0, 0.0]]})"),
      std::exception);
  // entry that is not an [re, im] pair
  CHECK_THROWS_AS(
      parse_state_json(R"({"dims": [2], "amplitudes": [[1.0], [0.0]]})"),
      std::exception);
}

TEST_CASE("local operator json round trip") {
  Rng rng(7703);
  const LocalOperator op = random_local_operator(rng, kQ3);
  const LocalOperator back = parse_local_operator_json(to_json(op));
  CHECK((back.composite() - op.composite()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK_THROWS_AS(parse_local_operator_json(R"({"foo": 1})"), std::exception);
}

TEST_CASE("family json round trip and plain-number coefficients") {
  const GhzwFamily fam(cplx(0.6, 0.0), cplx(0.0, 0.8), cplx(0.5, 0.0),
                       cplx(0.5, 0.0), cplx(std::sqrt(0.5), 0.0));
  const GhzwFamily back = parse_family_json(to_json(fam));
  CHECK(std::abs(back.a() - fam.a()) < 1e-12);
  CHECK(std::abs(back.b() - fam.b()) < 1e-12);
  CHECK(std::abs(back.c() - fam.c()) < 1e-12);
  CHECK(std::abs(back.d() - fam.d()) < 1e-12);
  CHECK(std::abs(back.f() - fam.f()) < 1e-12);

  const GhzwFamily plain = parse_family_json(
      R"({"a": 0.6, "b": 0.8, "c": 0.5, "d": 0.5, "f": 0.7071067811865476})");
  CHECK(std::abs(plain.a() - cplx(0.6, 0.0)) < 1e-12);
  CHECK(std::abs(plain.b() - cplx(0.8, 0.0)) < 1e-12);

  CHECK_THROWS_AS(parse_family_json(R"({"a": 1.0})"), std::exception);
}

TEST_CASE("roof result json carries the decomposition") {
  Rng rng(7704);
  const MixedState rho = random_mixed_state(rng, kQ3, 2);
  RoofOptions o;
  o.restarts = 4;
  const RoofResult res = convex_roof(monotone("sqrt_tau3"), rho, o);
  const nlohmann::json j = nlohmann::json::parse(to_json(res));
  CHECK(std::abs(j.at("value").get<double>() - res.value) < 1e-9);
  CHECK(j.at("restarts_used").get<int>() == 4);
  CHECK(j.at("converged").is_boolean());
  REQUIRE(j.at("weights").size() == (size_t)res.decomposition.length());
  REQUIRE(j.at("states").size() == (size_t)res.decomposition.length());
  double total = 0.0;
  for (const auto& w : j.at("weights")) total += w.get<double>();
  CHECK(std::abs(total - 1.0) < 1e-9);
  CHECK(j.at("states")[0].size() == 8);
}

TEST_CASE("csv writers") {
  std::vector<CurveSample> curve = {{0.0, 0.0, 0.0}, {0.5, 0.25, 0.1}};
  const std::string ctext = curve_csv(curve);
  CHECK(ctext.rfind("p,char,convex\n", 0) == 0);
  CHECK(count_lines(ctext) == 3);
  CHECK(ctext.find("0.5,0.25,0.1") != std::string::npos);

  std::vector<SurfaceSample> surf = {{1.0, 0.0, 0.0, 1.0, 1.0}};
  const std::string stext = surface_csv(surf);
  CHECK(stext.rfind("p,q,char,convex\n", 0) == 0);
  CHECK(count_lines(stext) == 2);
}

TEST_CASE("text file round trip") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "roofscale_io_test";
  fs::create_directories(dir);
  const std::string path = (dir / "roundtrip.txt").string();
  const std::string payload = "line one\nline two\n";
  write_text_file(path, payload);
  CHECK(read_text_file(path) == payload);
  fs::remove(path);
  CHECK_THROWS_AS(read_text_file(path), std::runtime_error);
}
