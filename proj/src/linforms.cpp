#include "rgkit/linforms.hpp"

#include <stdexcept>

namespace rg::linforms {

namespace {

Real factorial_real(int n) {
  Real f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Real height_log(const Rat& a) {
  Int n = numerator(a), d = denominator(a);
  if (n < 0) n = -n;
  Int h = n > d ? n : d;
  return log(Real(h));
}

// Exact product of a_j^b_j over the rationals.
Rat exact_power_product(const LinearForm& form) {
  Rat prod = 1;
  for (const auto& e : form.entries) {
    Int b = e.b;
    Rat base = e.a;
    if (b < 0) {
      base = Rat(1) / base;
      b = -b;
    }
    Rat acc = 1;
    Rat sq = base;
    Int k = b;
    while (k > 0) {
      if ((k & 1) != 0) acc *= sq;
      k >>= 1;
      if (k > 0) sq *= sq;
    }
    prod *= acc;
  }
  return prod;
}

}  // namespace

Real matveev_constant(int n) {
  if (n < 1) throw std::invalid_argument("matveev_constant: n >= 1");
  Real e = exp(Real(1));
  Real c = Real(16) / factorial_real(n);
  c *= pow(e, n);
  c *= 2 * n + 3;
  c *= n + 2;
  c *= pow(Real(4 * (n + 1)), n + 1);
  c *= e * n / 2;
  c *= Real("4.4") * n + Real("5.5") * log(Real(n)) + 7;
  return c;
}

MatveevBound matveev_lower_bound(const LinearForm& form) {
  if (form.entries.empty())
    throw std::invalid_argument("matveev_lower_bound: empty form");
  for (const auto& e : form.entries)
    if (!(e.a > 0))
      throw std::invalid_argument("matveev_lower_bound: a_j > 0 required");
  if (form.entries.back().b == 0)
    throw std::invalid_argument("matveev_lower_bound: last exponent must be nonzero");

  const int n = static_cast<int>(form.entries.size());
  std::vector<Real> heights(n);
  for (int j = 0; j < n; ++j) heights[j] = height_log(form.entries[j].a);
  if (heights[n - 1] == 0)
    throw std::invalid_argument("matveev_lower_bound: last height is 1 (A_n = 0)");

  MatveevBound out;
  out.n = n;
  if (exact_power_product(form) == 1) {
    out.zero = true;
    return out;
  }
  Real omega = 1;
  for (const Real& a : heights) omega *= a;
  Real b_max = 1;
  for (int j = 0; j + 1 < n; ++j) {
    Real cand = abs(Real(form.entries[j].b)) * heights[j] / heights[n - 1];
    if (cand > b_max) b_max = cand;
  }
  Real last = abs(Real(form.entries[n - 1].b));
  if (last > b_max) b_max = last;

  out.omega = omega;
  out.b_param = b_max;
  out.w0 = log(Real("1.5") * exp(Real(1)) * b_max);
  out.log_bound = -matveev_constant(n) * omega * out.w0;
  return out;
}

bool SolutionPair::growth_identity_holds() const {
  Int lhs = pow(second.base, second.length);
  Int x1m1 = pow(first.base, first.length);
  Int n = repunit::repunit_value(first.base, first.length);
  return lhs >= x1m1 + n;
}

LinearForm pair_form(const SolutionPair& pair) {
  const Int& x1 = pair.first.base;
  const Int& x2 = pair.second.base;
  return {{{Rat(x1), Int(pair.first.length)},
           {Rat(x1 - 1, x2 - 1), Int(-1)},
           {Rat(x2), -Int(pair.second.length)}}};
}

LambdaResult lambda_for_pair(const SolutionPair& pair) {
  const Int& x1 = pair.first.base;
  const Int& x2 = pair.second.base;
  if (!(x1 < x2))
    throw std::invalid_argument("lambda_for_pair: first base must be smaller");
  Int n1 = repunit::repunit_value(x1, pair.first.length);
  Int n2 = repunit::repunit_value(x2, pair.second.length);
  if (n1 != n2)
    throw std::invalid_argument("lambda_for_pair: representations disagree on the target");

  LambdaResult out;
  out.value = Real(pair.first.length) * log(Real(x1)) -
              Real(pair.second.length) * log(Real(x2)) -
              log(Real(x1 - 1) / Real(x2 - 1));
  Int p1 = pow(x1, pair.first.length);
  Int p2 = pow(x2, pair.second.length);
  out.route_direct = log(Real(p1) / Real(p1 - 1)) - log(Real(p2) / Real(p2 - 1));
  out.route_rel_diff = abs(out.value - out.route_direct) / abs(out.route_direct);
  if (out.route_rel_diff > Real("1e-12"))
    throw std::logic_error("lambda_for_pair: evaluation routes disagree");
  out.upper = Real(1) / Real(p1 - 1);
  out.window_ok = out.value > 0 && out.value < out.upper;
  return out;
}

Threshold second_base_threshold(const LogScale& L) {
  if (L.log_n < large_n_floor_ln())
    throw std::invalid_argument("second_base_threshold: L below the large-N floor");
  Real power = pow(L.log_n, Real("0.33479"));
  if (L.loglog() > Real("34.3882")) return {power, ThresholdRegime::matveev};
  Real desk(100001);
  return {power > desk ? power : desk, ThresholdRegime::desk};
}

ContradictionReport second_base_contradiction(const LogScale& L) {
  if (L.loglog() < Real("34.3882"))
    throw std::invalid_argument("second_base_contradiction: ln ln N >= 34.3882 required");
  ContradictionReport rep;
  const Real& ln_n = L.log_n;
  rep.lhs = ln_n / log(Real("1.5") * exp(Real(1)) *
                       (1 + ln_n / log(Real(100001))));
  Real ln_x2 = Real("0.33479") * log(ln_n);
  rep.rhs = Real("1.69019e10") * pow(ln_x2, 3);
  rep.contradiction = rep.lhs > rep.rhs;
  return rep;
}

}  // namespace rg::linforms
