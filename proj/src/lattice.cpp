#include "rgkit/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "rgkit/analytic.hpp"

namespace rg::lattice {

namespace {

Rat factorial(int n) {
  Rat f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

struct Classified {
  std::vector<std::uint64_t> points, ambiguous;
};

void scan_range(const CloseSetQuery& q, std::uint64_t lo, std::uint64_t hi,
                Classified& out) {
  const Real tol = 4 * ulp_of(q.delta);
  const RealX delta_wide(q.delta);
  const RealX tol_wide = 4 * ulp_of(delta_wide);
  for (std::uint64_t x = lo; x <= hi; ++x) {
    Real d = nearest_int_distance(q.f.eval(x));
    if (abs(d - q.delta) <= tol) {
      RealX dw = nearest_int_distance(q.f.eval_wide(x));
      if (abs(dw - delta_wide) <= tol_wide)
        out.ambiguous.push_back(x);
      else if (dw < delta_wide)
        out.points.push_back(x);
    } else if (d < q.delta) {
      out.points.push_back(x);
    }
  }
}

}  // namespace

CloseSet enumerate_close(const CloseSetQuery& q) {
  if (!(q.m >= 2)) throw std::invalid_argument("enumerate_close: M >= 2");
  if (!(q.delta > 0 && q.delta < Real(0.5)))
    throw std::invalid_argument("enumerate_close: delta in (0, 1/2)");
  std::uint64_t lo = Int(ceil(q.m)).convert_to<std::uint64_t>();
  std::uint64_t hi = Int(floor(2 * q.m)).convert_to<std::uint64_t>();
  if (hi < lo) return {};
  if (hi - lo + 1 > q.budget)
    throw std::invalid_argument("enumerate_close: window exceeds enumeration budget");

  unsigned workers = std::max(1u, q.workers);
  if (workers == 1 || hi - lo < 256) {
    Classified c;
    scan_range(q, lo, hi, c);
    return {std::move(c.points), std::move(c.ambiguous)};
  }
  // Contiguous blocks, merged in block order: ascending output independent
  // of worker count.
  std::vector<Classified> parts(workers);
  std::vector<std::thread> pool;
  std::uint64_t span = (hi - lo) / workers + 1;
  unsigned digits = working_digits();
  for (unsigned w = 0; w < workers; ++w) {
    std::uint64_t a = lo + w * span;
    std::uint64_t b = std::min(hi, a + span - 1);
    if (a > hi) break;
    pool.emplace_back([&, a, b, w, digits] {
      Real::default_precision(digits);
      scan_range(q, a, b, parts[w]);
    });
  }
  for (auto& t : pool) t.join();
  CloseSet out;
  for (auto& p : parts) {
    out.points.insert(out.points.end(), p.points.begin(), p.points.end());
    out.ambiguous.insert(out.ambiguous.end(), p.ambiguous.begin(),
                         p.ambiguous.end());
  }
  return out;
}

CountBound derivative_test_bound(const DerivativeWindow& w, const Real& m,
                                 const Real& delta) {
  if (!(w.lambda > 0) || !(w.c >= 1))
    throw std::invalid_argument("derivative_test_bound: lambda > 0, c >= 1");
  CountBound out;
  Real expo = Real(2) / (Real(w.k) * w.k + w.k);
  out.alpha = 2 * w.k * pow(2 * w.c, expo);
  out.bound = out.alpha * m * pow(w.lambda, expo) + 4 * w.k;
  out.applicable = Real(factorial(w.k + 1)) * delta < w.lambda;
  return out;
}

Real repunit_count_bound(int k, const LogScale& L, const Real& m) {
  if (k < 1 || k > 6) throw std::invalid_argument("repunit_count_bound: k in 1..6");
  if (L.log_n < large_n_floor_ln())
    throw std::invalid_argument("repunit_count_bound: L below the large-N floor");
  if (m < 100000)
    throw std::invalid_argument("repunit_count_bound: M >= 10^5 required");
  Real ck(analytic::printed_constants()[k].c);
  return ck * pow(L.log_n, Real(2) / (Real(k) * k + k)) *
         pow(m, 1 - Real(2) / (k + 1));
}

PointFunction make_point_function(const Instance& inst) {
  if (inst.family == "linear") {
    double c = inst.c;
    return {[c](std::uint64_t x) { return Real(c) * x; },
            [c](std::uint64_t x) { return RealX(c) * x; }};
  }
  if (inst.family == "sqrt2_linear") {
    return {[](std::uint64_t x) { return sqrt(Real(2)) * x; },
            [](std::uint64_t x) { return sqrt(RealX(2)) * x; }};
  }
  if (inst.family == "power_law") {
    double c = inst.c, theta = inst.theta;
    return {[c, theta](std::uint64_t x) { return Real(c) * pow(Real(x), Real(theta)); },
            [c, theta](std::uint64_t x) { return RealX(c) * pow(RealX(x), RealX(theta)); }};
  }
  if (inst.family == "x_log_x") {
    double c = inst.c;
    return {[c](std::uint64_t x) { return Real(c) * x * log(Real(x)); },
            [c](std::uint64_t x) { return RealX(c) * x * log(RealX(x)); }};
  }
  if (inst.family == "repunit") {
    Real ln = inst.log_n;
    RealX lnx(ln);
    return {[ln](std::uint64_t x) { return analytic::f_of(ln, Real(x)); },
            [lnx](std::uint64_t x) { return analytic::f_of(lnx, RealX(x)); }};
  }
  throw std::invalid_argument("unknown instance family: " + inst.family);
}

std::optional<DerivativeWindow> analytic_window(const Instance& inst) {
  const Real a = inst.m, b = 2 * inst.m;
  const int k = inst.k;
  if (inst.family == "linear" || inst.family == "sqrt2_linear") {
    if (k != 1) return std::nullopt;
    Real c = inst.family == "linear" ? Real(inst.c) : sqrt(Real(2));
    return DerivativeWindow{1, abs(c), Real(1)};
  }
  if (inst.family == "power_law") {
    // f^(k) = c * theta (theta-1) ... (theta-k+1) x^(theta-k); monotone on
    // [M, 2M], so the endpoint values bracket it.
    Real coef(inst.c);
    for (int i = 0; i < k; ++i) coef *= Real(inst.theta) - i;
    if (coef == 0) return std::nullopt;
    Real va = abs(coef) * pow(a, Real(inst.theta) - k);
    Real vb = abs(coef) * pow(b, Real(inst.theta) - k);
    Real lo = va < vb ? va : vb;
    Real hi = va < vb ? vb : va;
    return DerivativeWindow{k, lo, hi / lo};
  }
  if (inst.family == "x_log_x") {
    if (k != 2) return std::nullopt;
    // f'' = c / x
    Real lo = Real(inst.c) / b, hi = Real(inst.c) / a;
    return DerivativeWindow{2, lo, hi / lo};
  }
  if (inst.family == "repunit") {
    // Bracket every monomial of g_k by its endpoint extremes: (L+u) is
    // increasing, the reciprocal powers are decreasing. A positive lower
    // bound certifies the window.
    analytic::SymbolicForm g = analytic::derivative_form(k);
    Real ua = log(a - 1), ub = log(b - 1);
    Real va_ = log(a), vb_ = log(b);
    Real lo = 0, hi = 0;
    for (const analytic::Term& t : g.terms) {
      Real mag_hi = abs(Real(t.coeff));
      Real mag_lo = mag_hi;
      if (t.eps) {
        mag_hi *= inst.log_n + ub;
        mag_lo *= inst.log_n + ua;
      }
      mag_hi /= pow(va_, t.a) * pow(a, t.p) * pow(a - 1, t.q);
      mag_lo /= pow(vb_, t.a) * pow(b, t.p) * pow(b - 1, t.q);
      if (t.coeff > 0) {
        hi += mag_hi;
        lo += mag_lo;
      } else {
        hi -= mag_lo;
        lo -= mag_hi;
      }
    }
    if (!(lo > 0)) return std::nullopt;
    return DerivativeWindow{k, lo, hi / lo};
  }
  return std::nullopt;
}

}  // namespace rg::lattice
