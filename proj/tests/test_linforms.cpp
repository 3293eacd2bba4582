#include <doctest.h>

#include "rgkit/linforms.hpp"
#include "rgkit/repunit.hpp"
#include "test_util.hpp"

using namespace rg;
using namespace rg::linforms;

TEST_CASE("matveev_constant") {
  Real c3 = matveev_constant(3);
  CHECK(c3 > Real("1.6901e10"));
  CHECK(c3 < Real("1.69019e10"));

  // n = 1 collapses to a plain product (the log term vanishes).
  Real e = exp(Real(1));
  Real want1 = Real(16) * e * 5 * 3 * 64 * (e / 2) * (Real("4.4") + 7);
  CHECK(abs(matveev_constant(1) - want1) <= 1e-30 * want1);

  Real prev = matveev_constant(1);
  for (int n = 2; n <= 10; ++n) {
    Real cur = matveev_constant(n);
    CHECK(cur > prev);
    prev = cur;
  }
  CHECK(matveev_constant(4) > c3);
}

TEST_CASE("matveev_lower_bound fixtures") {
  // The three-log form behind the N = 31 pair, with a's (2, 5, 4).
  LinearForm f31{{{Rat(2), Int(5)}, {Rat(5), Int(-3)}, {Rat(4), Int(1)}}};
  auto r = matveev_lower_bound(f31);
  CHECK(!r.zero);
  CHECK(r.log_bound < log(Real("0.0237168")));

  LinearForm zero1{{{Rat(2), Int(2)}, {Rat(4), Int(-1)}}};
  CHECK(matveev_lower_bound(zero1).zero);

  LinearForm zero2{{{Rat(Int(3), Int(2)), Int(1)}, {Rat(Int(2), Int(3)), Int(1)}}};
  CHECK(matveev_lower_bound(zero2).zero);

  LinearForm illposed{{{Rat(2), Int(1)}, {Rat(1), Int(3)}}};
  CHECK_THROWS_AS(matveev_lower_bound(illposed), std::invalid_argument);

  LinearForm last_zero{{{Rat(2), Int(1)}, {Rat(3), Int(0)}}};
  CHECK_THROWS_AS(matveev_lower_bound(last_zero), std::invalid_argument);
}

TEST_CASE("lambda_for_pair examples") {
  SolutionPair p31{{Int(2), 5}, {Int(5), 3}};
  auto lam = lambda_for_pair(p31);
  CHECK(abs(lam.value - Real("0.0237168")) < Real("1e-6"));
  CHECK(lam.route_rel_diff < Real("1e-12"));
  CHECK(lam.window_ok);
  CHECK(lam.value < Real(1) / 31);
  CHECK(lam.upper == Real(1) / 31);

  SolutionPair p8191{{Int(2), 13}, {Int(90), 3}};
  auto lam2 = lambda_for_pair(p8191);
  CHECK(lam2.value > 0);
  CHECK(lam2.value < Real(1) / 8191);
  CHECK(lam2.window_ok);

  SolutionPair degenerate{{Int(5), 3}, {Int(5), 3}};
  CHECK_THROWS_AS(lambda_for_pair(degenerate), std::invalid_argument);
  SolutionPair mismatched{{Int(2), 5}, {Int(7), 3}};
  CHECK_THROWS_AS(lambda_for_pair(mismatched), std::invalid_argument);
}

TEST_CASE("pair growth identity in exact arithmetic") {
  SolutionPair p31{{Int(2), 5}, {Int(5), 3}};
  CHECK(p31.growth_identity_holds());
  SolutionPair p8191{{Int(2), 13}, {Int(90), 3}};
  CHECK(p8191.growth_identity_holds());
}

TEST_CASE("matveev consistency across fixture forms") {
  // |Lambda| >= exp(log_bound) for every nonzero fixture: representation
  // pairs found by the coincidence scan plus random small-rational forms.
  int checked = 0;
  for (const auto& rec : repunit::coincidence_search(100, 1'000'000'000)) {
    SolutionPair pair{rec.representations.items[0], rec.representations.items[1]};
    auto lam = lambda_for_pair(pair);
    auto mv = matveev_lower_bound(pair_form(pair));
    CHECK(!mv.zero);
    CHECK(lam.value >= exp(mv.log_bound));
    CHECK(lam.route_rel_diff <= Real("1e-12"));
    ++checked;
  }
  rgtest::Rng rng(99);
  while (checked < 25) {
    LinearForm form;
    int n = 2 + int(rng.below(3));
    for (int j = 0; j < n; ++j) {
      Int num = 2 + Int(rng.below(50));
      Int den = 1 + Int(rng.below(9));
      Int b = Int(rng.below(13)) - 6;
      if (j == n - 1 && b == 0) b = 1;
      form.entries.push_back({Rat(num, den), b});
    }
    if (form.entries.back().a == 1) continue;
    auto mv = matveev_lower_bound(form);
    if (mv.zero) continue;
    // exact |Lambda| via wide evaluation
    RealX acc = 0;
    for (const auto& e : form.entries)
      acc += RealX(e.b.str()) * log(RealX(numerator(e.a).str()) /
                                    RealX(denominator(e.a).str()));
    CAPTURE(checked);
    CHECK(abs(acc) >= RealX(exp(mv.log_bound)));
    ++checked;
  }
  CHECK(checked >= 25);
}

TEST_CASE("second_base_threshold regimes") {
  // crossover: at ln ln N = 34.3882 the power equals the desk floor
  LogScale at = LogScale::from_loglog(Real("34.3882"));
  auto t = second_base_threshold(at);
  CHECK(t.regime == ThresholdRegime::desk);
  CHECK(abs(pow(at.log_n, Real("0.33479")) - 100000) / 100000 < Real("1e-3"));
  CHECK(t.value == 100001);

  LogScale high = LogScale::from_loglog(Real(40));
  auto th = second_base_threshold(high);
  CHECK(th.regime == ThresholdRegime::matveev);
  CHECK(abs(th.value - exp(Real("13.3916"))) / th.value < Real("1e-4"));

  LogScale low = LogScale::from_loglog(Real(30));
  auto tl = second_base_threshold(low);
  CHECK(tl.regime == ThresholdRegime::desk);
  CHECK(tl.value == 100001);
}

TEST_CASE("second-base contradiction comparison") {
  auto r35 = second_base_contradiction(LogScale::from_loglog(Real(35)));
  CHECK(r35.contradiction);

  auto redge = second_base_contradiction(LogScale::from_loglog(Real("34.3882")));
  CHECK(abs(redge.lhs - redge.rhs) / redge.rhs < Real("0.02"));

  auto r60 = second_base_contradiction(LogScale::from_loglog(Real(60)));
  CHECK(r60.contradiction);
  CHECK(r60.lhs / r60.rhs > 1000);

  CHECK_THROWS_AS(second_base_contradiction(LogScale::from_loglog(Real(34))),
                  std::invalid_argument);
}

TEST_CASE("contradiction crossover sits in [34.38, 34.40]") {
  // Mirror formulas, evaluated just below the operation's hypothesis floor.
  auto sides = [](const Real& ll) {
    Real ln_n = exp(ll);
    Real lhs = ln_n / log(Real("1.5") * exp(Real(1)) *
                          (1 + ln_n / log(Real(100001))));
    Real rhs = Real("1.69019e10") * pow(Real("0.33479") * ll, 3);
    return lhs - rhs;
  };
  CHECK(sides(Real("34.38")) < 0);
  CHECK(sides(Real("34.40")) > 0);
  Real lo("34.38"), hi("34.40");
  for (int i = 0; i < 80; ++i) {
    Real mid = (lo + hi) / 2;
    (sides(mid) < 0 ? lo : hi) = mid;
  }
  CHECK(lo > Real("34.38"));
  CHECK(hi < Real("34.40"));
}
