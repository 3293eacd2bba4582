#pragma once

#include <string>
#include <vector>

#include "rgkit/real.hpp"
#include "rgkit/repunit.hpp"

namespace rg::linforms {

/// Lambda = sum b_j ln a_j with positive rational a_j and integer b_j,
/// last b nonzero.
struct FormEntry {
  Rat a;
  Int b;
};
struct LinearForm {
  std::vector<FormEntry> entries;
};

/// The explicit constant C(n) of the rational-case lower bound for linear
/// forms in logarithms:
///   (16/n!) e^n (2n+3)(n+2) (4(n+1))^(n+1) (en/2) (4.4n + 5.5 ln n + 7).
Real matveev_constant(int n);

struct MatveevBound {
  bool zero = false;   // the form is exactly zero (decided in exact arithmetic)
  Real log_bound;      // -C(n) * Omega * ln(1.5 e B); meaningful when !zero
  Real b_param;        // B
  Real omega;          // product of the A_j
  Real w0;             // ln(1.5 e B), exposed as a derived display value
  int n = 0;
};

/// Zero is decided exactly by reducing prod a_j^b_j over the rationals.
/// Heights A_j = ln max(num, den) in lowest terms;
/// B = max{1, |b_1|A_1/A_n, ..., |b_n|}. Rejects A_n = 0 as ill-posed.
MatveevBound matveev_lower_bound(const LinearForm& form);

/// Two repunit representations of one target, smaller base first.
struct SolutionPair {
  repunit::Solution first, second;

  /// x2^m2 >= x1^m1 + N in exact arithmetic (target growth identity).
  bool growth_identity_holds() const;
};

struct LambdaResult {
  Real value;          // route (i), the explicit three-log combination
  Real route_direct;   // route (ii), ln of the exact rational pair ratio
  Real route_rel_diff;
  Real upper;          // 1 / (x1^m1 - 1)
  bool window_ok = false;  // 0 < value < upper
};

/// The linear form attached to a pair, computed two independent ways:
///   (i)  m1 ln x1 - m2 ln x2 - ln((x1-1)/(x2-1))
///   (ii) ln(x1^m1/(x1^m1 - 1)) - ln(x2^m2/(x2^m2 - 1))
/// Routes must agree to 1e-12 relative or an exception is raised.
LambdaResult lambda_for_pair(const SolutionPair& pair);

/// The Matveev form of a pair, ordered so B = max{m1 ln x1/ln x2,
/// ln(x2-1)/ln x2, m2} comes out of the printed definition.
LinearForm pair_form(const SolutionPair& pair);

enum class ThresholdRegime { matveev, desk };

struct Threshold {
  Real value;
  ThresholdRegime regime;
};

/// Lower bound for the second-smallest base: (ln N)^0.33479 once
/// ln ln N > 34.3882, else the desk-scale floor 100001.
Threshold second_base_threshold(const LogScale& L);

struct ContradictionReport {
  Real lhs;  // ln N / ln(1.5 e (1 + ln N / ln 100001))
  Real rhs;  // 1.69019e10 * (ln x2)^3 at x2 = (ln N)^0.33479
  bool contradiction = false;  // lhs > rhs
};

/// The comparison that forces the second-base lower bound: at
/// x2 = (ln N)^0.33479 the Matveev side must fall below the growth side.
ContradictionReport second_base_contradiction(const LogScale& L);

}  // namespace rg::linforms
