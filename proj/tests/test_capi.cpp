#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "frk.h"

namespace {

struct Free {
  void operator()(frk_group* p) const { frk_group_free(p); }
  void operator()(frk_system* p) const { frk_system_free(p); }
  void operator()(frk_measure* p) const { frk_measure_free(p); }
  void operator()(frk_report* p) const { frk_report_free(p); }
};

template <typename T>
using Handle = std::unique_ptr<T, Free>;

std::string take(char* s) {
  std::string out = s ? s : "";
  frk_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("C API end-to-end: cyclic group, paraboloid, full verification") {
  CHECK(std::strlen(frk_version()) > 0);

  frk_group* graw = nullptr;
  REQUIRE(frk_group_cyclic(9, 2, 0, &graw) == FRK_OK);
  Handle<frk_group> g(graw);

  uint64_t card = 0;
  CHECK(frk_group_cardinality(g.get(), &card) == FRK_OK);
  CHECK(card == 81);
  char* desc = nullptr;
  CHECK(frk_group_describe(g.get(), &desc) == FRK_OK);
  CHECK(take(desc) == "Z_9^2");

  frk_system* sraw = nullptr;
  REQUIRE(frk_system_build(g.get(), &sraw) == FRK_OK);
  Handle<frk_system> sys(sraw);

  size_t nscales = 0;
  CHECK(frk_system_scale_count(sys.get(), &nscales) == FRK_OK);
  CHECK(nscales == 3);
  int64_t scales[8] = {};
  size_t got = 0;
  CHECK(frk_system_scales(sys.get(), scales, 8, &got) == FRK_OK);
  REQUIRE(got == 3);
  CHECK(scales[0] == 1);
  CHECK(scales[1] == 3);
  CHECK(scales[2] == 9);
  // Undersized buffer still reports the true count.
  CHECK(frk_system_scales(sys.get(), scales, 1, &got) == FRK_ERR_INVALID_ARGUMENT);

  double c1 = 0, c2 = 0, c3 = 0;
  CHECK(frk_system_constants(sys.get(), &c1, &c2, &c3) == FRK_OK);
  CHECK(c1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c3 == doctest::Approx(1.0).epsilon(1e-12));

  frk_report* chkraw = nullptr;
  REQUIRE(frk_system_check(sys.get(), 1, &chkraw) == FRK_OK);
  Handle<frk_report> chk(chkraw);
  int chk_pass = 0;
  CHECK(frk_report_passed(chk.get(), &chk_pass) == FRK_OK);
  CHECK(chk_pass == 1);

  frk_measure* mraw = nullptr;
  REQUIRE(frk_measure_paraboloid(g.get(), &mraw) == FRK_OK);
  Handle<frk_measure> mu(mraw);
  double mass = 0;
  CHECK(frk_measure_mass(mu.get(), &mass) == FRK_OK);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));

  double A = 0, B = 0;
  CHECK(frk_measure_constants(mu.get(), sys.get(), "1", "1", &A, &B) == FRK_OK);
  CHECK(A == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(B == doctest::Approx(1.0).epsilon(1e-9));

  frk_scan_options opts;
  frk_scan_options_init(&opts);
  CHECK(opts.mode == 0);
  CHECK(opts.samples > 0);
  opts.seed = 17;
  opts.samples = 100;
  opts.lorentz_samples = 8;

  frk_report* repraw = nullptr;
  REQUIRE(frk_verify(mu.get(), sys.get(), "1", "1", &opts, &repraw) == FRK_OK);
  Handle<frk_report> rep(repraw);

  int passed = 0;
  CHECK(frk_report_passed(rep.get(), &passed) == FRK_OK);
  CHECK(passed == 1);
  size_t count = 0;
  CHECK(frk_report_record_count(rep.get(), &count) == FRK_OK);
  CHECK(count > 20);
  double elapsed = -1;
  CHECK(frk_report_elapsed_seconds(rep.get(), &elapsed) == FRK_OK);
  CHECK(elapsed >= 0.0);

  char* jraw = nullptr;
  REQUIRE(frk_report_json(rep.get(), &jraw) == FRK_OK);
  const std::string jtext = take(jraw);
  const auto j = nlohmann::json::parse(jtext);
  CHECK(j["passed"].get<bool>());
  CHECK(j["seed"].get<uint64_t>() == 17);
  CHECK(j["records"].size() == count);

  char* craw = nullptr;
  REQUIRE(frk_report_csv(rep.get(), 1, &craw) == FRK_OK);
  const std::string csv = take(craw);
  CHECK(csv.rfind("system,n,check,scale,params,bound,observed,ratio,pass,witness\n", 0) == 0);
  char* cnoraw = nullptr;
  REQUIRE(frk_report_csv(rep.get(), 0, &cnoraw) == FRK_OK);
  CHECK(take(cnoraw).rfind("system,", 0) != 0);
}

TEST_CASE("C API finite field construction with an explicit modulus polynomial") {
  const int64_t poly[] = {1, 0, 1};  // x^2 + 1, irreducible over GF(3)
  frk_group* graw = nullptr;
  REQUIRE(frk_group_finite_field(3, 2, poly, 2, 0, &graw) == FRK_OK);
  Handle<frk_group> g(graw);
  uint64_t card = 0;
  CHECK(frk_group_cardinality(g.get(), &card) == FRK_OK);
  CHECK(card == 81);

  // Reducible modulus is rejected.
  const int64_t bad[] = {0, 0, 1};  // x^2
  frk_group* btmp = nullptr;
  CHECK(frk_group_finite_field(3, 2, bad, 2, 0, &btmp) == FRK_ERR_INVALID_ARGUMENT);
  CHECK(btmp == nullptr);
  CHECK(std::strlen(frk_last_error()) > 0);

  // Degree 1 needs no polynomial.
  frk_group* praw = nullptr;
  REQUIRE(frk_group_finite_field(5, 1, nullptr, 3, 0, &praw) == FRK_OK);
  Handle<frk_group> p(praw);
  CHECK(frk_group_cardinality(p.get(), &card) == FRK_OK);
  CHECK(card == 125);
}

TEST_CASE("C API error mapping") {
  frk_group* tmp = nullptr;
  CHECK(frk_group_cyclic(0, 1, 0, &tmp) == FRK_ERR_INVALID_ARGUMENT);
  CHECK(frk_group_cyclic(4, 1, 0, nullptr) == FRK_ERR_INVALID_ARGUMENT);
  CHECK(frk_group_cyclic(1025, 2, 0, &tmp) == FRK_ERR_SIZE_CAP);
  CHECK(std::string(frk_last_error()).find("cap") != std::string::npos);

  frk_group* graw = nullptr;
  REQUIRE(frk_group_cyclic(6, 2, 0, &graw) == FRK_OK);
  Handle<frk_group> z6(graw);
  frk_measure* mtmp = nullptr;
  // Even modulus: the paraboloid normalization needs odd characteristic.
  CHECK(frk_measure_paraboloid(z6.get(), &mtmp) == FRK_ERR_DOMAIN);

  REQUIRE(frk_group_cyclic(9, 2, 0, &graw) == FRK_OK);
  Handle<frk_group> z9(graw);
  frk_system* sraw = nullptr;
  REQUIRE(frk_system_build(z9.get(), &sraw) == FRK_OK);
  Handle<frk_system> sys(sraw);
  frk_measure* mraw = nullptr;
  REQUIRE(frk_measure_paraboloid(z9.get(), &mraw) == FRK_OK);
  Handle<frk_measure> mu(mraw);

  double A = 0, B = 0;
  CHECK(frk_measure_constants(mu.get(), sys.get(), "2", "1", &A, &B) == FRK_OK);
  // b > a violates the exponent hypotheses.
  frk_report* rtmp = nullptr;
  frk_scan_options opts;
  frk_scan_options_init(&opts);
  CHECK(frk_verify(mu.get(), sys.get(), "1", "2", &opts, &rtmp) == FRK_ERR_DOMAIN);
  // Unparseable rational.
  CHECK(frk_verify(mu.get(), sys.get(), "one", "1", &opts, &rtmp) == FRK_ERR_PARSE);
  // Out-of-range mode.
  frk_scan_options badmode = opts;
  badmode.mode = 3;
  CHECK(frk_verify(mu.get(), sys.get(), "1", "1", &badmode, &rtmp) == FRK_ERR_INVALID_ARGUMENT);

  // Measure attached to a different group than the system.
  frk_measure* other = nullptr;
  REQUIRE(frk_measure_paraboloid(z9.get(), &other) == FRK_OK);
  Handle<frk_measure> mu9(other);
  frk_system* s6raw = nullptr;
  REQUIRE(frk_system_build(z6.get(), &s6raw) == FRK_OK);
  Handle<frk_system> sys6(s6raw);
  CHECK(frk_measure_analyze(mu9.get(), sys6.get(), "1", "1", &rtmp) ==
        FRK_ERR_INVALID_ARGUMENT);

  // Weight maps: malformed JSON, bad keys, negative weights.
  CHECK(frk_measure_from_weights(z9.get(), "{\"0\": 0.5", &mtmp) == FRK_ERR_PARSE);
  CHECK(frk_measure_from_weights(z9.get(), "[1,2]", &mtmp) == FRK_ERR_PARSE);
  CHECK(frk_measure_from_weights(z9.get(), "{\"x\": 1.0}", &mtmp) == FRK_ERR_PARSE);
  CHECK(frk_measure_from_weights(z9.get(), "{\"0\": -1.0}", &mtmp) ==
        FRK_ERR_INVALID_ARGUMENT);
  CHECK(frk_measure_from_weights(z9.get(), "{\"81\": 1.0}", &mtmp) ==
        FRK_ERR_INVALID_ARGUMENT);
  frk_measure* wraw = nullptr;
  REQUIRE(frk_measure_from_weights(z9.get(), "{\"0\": 0.5, \"7\": 0.25}", &wraw) == FRK_OK);
  Handle<frk_measure> wm(wraw);
  double mass = 0;
  CHECK(frk_measure_mass(wm.get(), &mass) == FRK_OK);
  CHECK(mass == doctest::Approx(0.75).epsilon(1e-12));

  // Null handles are invalid arguments, not crashes.
  uint64_t card = 0;
  CHECK(frk_group_cardinality(nullptr, &card) == FRK_ERR_INVALID_ARGUMENT);
  CHECK(frk_report_passed(nullptr, nullptr) == FRK_ERR_INVALID_ARGUMENT);
}

TEST_CASE("C API exponent profile and interpolation constant") {
  frk_exponents e;
  REQUIRE(frk_exponent_profile(2, "1", "1", &e) == FRK_OK);
  CHECK(e.r0_num == 6);
  CHECK(e.r0_den == 5);
  CHECK(e.theta_num == 2);
  CHECK(e.theta_den == 3);
  CHECK(e.sigma_num == 12);
  CHECK(e.sigma_den == 11);
  CHECK(e.tau_num == 4);
  CHECK(e.tau_den == 1);
  CHECK(e.conv_r0_num == 3);
  CHECK(e.conv_r0_den == 2);
  CHECK(e.conv_s0_num == 3);
  CHECK(e.conv_s0_den == 1);

  // Rational and decimal literals agree.
  frk_exponents half;
  REQUIRE(frk_exponent_profile(2, "3/2", "0.5", &half) == FRK_OK);
  CHECK(half.r0_num == 6);
  CHECK(half.r0_den == 5);

  CHECK(frk_exponent_profile(2, "1", "2", &e) == FRK_ERR_DOMAIN);
  CHECK(frk_exponent_profile(2, "", "1", &e) == FRK_ERR_PARSE);

  double cbar = 0;
  REQUIRE(frk_cbar_constant(2, "1", "1", 1, 1, 1, 1, 1, &cbar) == FRK_OK);
  CHECK(cbar == doctest::Approx(std::pow(2.0, 1.0 / 3.0)).epsilon(1e-12));
}
