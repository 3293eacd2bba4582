#pragma once

#include <vector>

#include "rgkit/real.hpp"

namespace rg::analytic {

/// One monomial of the closed differentiation algebra for
/// f(x) = (L + ln(x-1)) / ln(x):
///
///   coeff * (L + u)^eps / (v^a * x^p * (x-1)^q),
///
/// with u = ln(x-1), v = ln(x). The algebra is closed under d/dx:
/// differentiating (L+u) yields 1/(x-1), differentiating the reciprocal
/// powers only raises them.
struct Term {
  Rat coeff;
  int eps = 0;  // 0 or 1
  int a = 0;    // power of 1/v
  int p = 0;    // power of 1/x
  int q = 0;    // power of 1/(x-1)

  friend bool operator==(const Term&, const Term&) = default;
};

/// Canonical sum of Terms: sorted by (eps, a, p, q), keys unique, no zero
/// coefficients. order == k means this is g_k = (-1)^k f^(k).
struct SymbolicForm {
  int order = 0;
  std::vector<Term> terms;

  template <class R>
  R eval(const R& log_n, const R& x) const {
    R u = log(x - 1);
    R v = log(x);
    R acc(0);
    for (const Term& t : terms) {
      R val = R(t.coeff);
      if (t.eps) val *= log_n + u;
      if (t.a) val /= pow(v, t.a);
      if (t.p) val /= pow(x, t.p);
      if (t.q) val /= pow(x - 1, t.q);
      acc += val;
    }
    return acc;
  }
};

/// f itself as a form (order 0): (L+u)/v.
SymbolicForm base_form();

/// g_k = (-1)^k f^(k), built by k-fold exact differentiation. k >= 1.
SymbolicForm derivative_form(int k);

/// Forms g_1..g_k_max in one pass.
std::vector<SymbolicForm> derivative_forms(int k_max);

}  // namespace rg::analytic
