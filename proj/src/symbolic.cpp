#include "rgkit/symbolic.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace rg::analytic {

namespace {

std::vector<Term> canonical(const std::vector<Term>& raw) {
  std::map<std::tuple<int, int, int, int>, Rat> acc;
  for (const Term& t : raw) acc[{t.eps, t.a, t.p, t.q}] += t.coeff;
  std::vector<Term> out;
  for (auto& [key, c] : acc) {
    if (c == 0) continue;
    auto [eps, a, p, q] = key;
    out.push_back({c, eps, a, p, q});
  }
  return out;
}

// Raw derivative of one term under the algebra's product rule.
void differentiate_into(const Term& t, std::vector<Term>& out) {
  if (t.eps) out.push_back({t.coeff, 0, t.a, t.p, t.q + 1});
  if (t.a) out.push_back({-Rat(t.a) * t.coeff, t.eps, t.a + 1, t.p + 1, t.q});
  if (t.p) out.push_back({-Rat(t.p) * t.coeff, t.eps, t.a, t.p + 1, t.q});
  if (t.q) out.push_back({-Rat(t.q) * t.coeff, t.eps, t.a, t.p, t.q + 1});
}

}  // namespace

SymbolicForm base_form() { return {0, {{Rat(1), 1, 1, 0, 0}}}; }

SymbolicForm derivative_form(int k) {
  if (k < 1) throw std::invalid_argument("derivative_form: k >= 1");
  std::vector<Term> cur = base_form().terms;
  for (int i = 0; i < k; ++i) {
    std::vector<Term> next;
    for (const Term& t : cur) differentiate_into(t, next);
    cur = canonical(next);
  }
  if (k % 2) {
    for (Term& t : cur) t.coeff = -t.coeff;
  }
  return {k, std::move(cur)};
}

std::vector<SymbolicForm> derivative_forms(int k_max) {
  std::vector<SymbolicForm> out;
  out.reserve(k_max);
  for (int k = 1; k <= k_max; ++k) out.push_back(derivative_form(k));
  return out;
}

}  // namespace rg::analytic
