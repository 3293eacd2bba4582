#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rgkit/real.hpp"
#include "rgkit/symbolic.hpp"

namespace rg::lattice {

/// A real function evaluable at integer arguments at two precisions:
/// working precision for the scan, wide precision for boundary re-checks.
struct PointFunction {
  std::function<Real(std::uint64_t)> eval;
  std::function<RealX(std::uint64_t)> eval_wide;
};

struct CloseSetQuery {
  PointFunction f;
  Real m;       // window [M, 2M], both ends closed, M >= 2 (not necessarily integer)
  Real delta;   // in (0, 1/2)
  std::uint64_t budget = 10'000'000;
  unsigned workers = 1;
};

struct CloseSet {
  std::vector<std::uint64_t> points;     // distance < delta, ascending
  std::vector<std::uint64_t> ambiguous;  // within 4 ulp of delta even at wide precision
};

/// Integers x in [M, 2M] with ||f(x)|| < delta. Points whose distance falls
/// within 4 ulp of delta are re-evaluated at wide precision; those still
/// within 4 ulp there are reported separately instead of being classified.
CloseSet enumerate_close(const CloseSetQuery& q);

/// Certifies lambda <= |f^(k)| <= c * lambda on the window.
struct DerivativeWindow {
  int k = 1;
  Real lambda;  // > 0
  Real c;       // >= 1
};

struct CountBound {
  Real bound;             // alpha * M * lambda^(2/(k^2+k)) + 4k
  Real alpha;             // 2k (2c)^(2/(k^2+k))
  bool applicable = false;  // (k+1)! * delta < lambda
};

/// Explicit k-th-derivative-test bound for the size of the close set.
/// Returned regardless of applicability; the flag reports the hypothesis.
CountBound derivative_test_bound(const DerivativeWindow& w, const Real& m,
                                 const Real& delta);

/// Specialized close-point bound for the repunit curve at delta = 1/(N ln M):
/// C_k * (ln N)^(2/(k^2+k)) * M^(1-2/(k+1)), with the published C_k.
Real repunit_count_bound(int k, const LogScale& L, const Real& m);

/// Test/CLI instance families with analytically certified windows.
struct Instance {
  std::string family;  // power_law | x_log_x | repunit | linear | sqrt2_linear
  double c = 1.0;
  double theta = 0.0;       // power_law exponent
  Real log_n;               // repunit family parameter ln N
  int k = 1;
  Real m;
  Real delta;
};

PointFunction make_point_function(const Instance& inst);

/// Closed-form derivative window on [M, 2M], if one is certifiable for the
/// family. For the repunit family this brackets each monomial of g_k by its
/// endpoint extremes; a nonpositive lower bound yields nullopt.
std::optional<DerivativeWindow> analytic_window(const Instance& inst);

}  // namespace rg::lattice
