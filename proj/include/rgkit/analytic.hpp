#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rgkit/polynomial.hpp"
#include "rgkit/real.hpp"
#include "rgkit/symbolic.hpp"

namespace rg::analytic {

/// f(x) = (L + ln(x-1)) / ln(x); the curve whose integer-close points are
/// exactly the repunit representations of N.
template <class R>
R f_of(const R& log_n, const R& x) {
  return (log_n + log(x - 1)) / log(x);
}

/// Working-precision f. Rejects x <= 1.
Real f_value(const LogScale& L, const Real& x);

/// The weight polynomials of g_k: g_k(x) multiplied through by v^(k+1)
/// splits into a (L+u)-carrying part with denominator x^k, whose
/// v-polynomial is table entry (k, k), and plain parts with denominators
/// x^r (x-1)^(k-r), r = 0..k-1, whose v-polynomials are entries (k, r).
class PolyTable {
 public:
  int k_max() const { return k_max_; }
  const Poly& at(int k, int r) const;
  bool has(int k, int r) const;
  void set(int k, int r, Poly p);

 private:
  int k_max_ = 0;
  std::map<std::pair<int, int>, Poly> entries_;
};

/// Reads the table off canonical forms g_1..g_n. Throws if any term fails
/// to match the expected denominator shape (which would mean the
/// differentiation is wrong, not the table).
PolyTable extract_poly_table(const std::vector<SymbolicForm>& forms);

/// The published closed-form row for columns r = 0..6 (r <= k).
Poly closed_form_poly(int k, int r);

/// Table built from the published recurrence with its published base row
/// (kept verbatim, typos and all) — used only to diff against extraction.
PolyTable printed_recurrence_table(int k_max);

struct TableFinding {
  int k, r;
  std::string printed;    // what the published recurrence yields
  std::string extracted;  // what direct differentiation yields
};

/// Cells where the published recurrence disagrees with extraction.
std::vector<TableFinding> recurrence_findings(const PolyTable& extracted,
                                              int k_max);

/// R_k(t) = P_{k,k}(t) / t^(k-1); decreasing in t, so its sup over
/// t >= ln(10^5) sits at the left endpoint.
Real ratio_poly_value(const PolyTable& table, int k, const Real& t);

/// Recompute the certified constants (sharp ratio sup, dyadic ratio sup,
/// and the count-coefficient main term).
Real tau_constant(const PolyTable& table, int k);
Real gamma_constant(const PolyTable& table, int k);

struct PrintedRow {
  double tau, gamma, c;
};
/// The published constants row for k = 1..6 (index 0 unused).
const std::array<PrintedRow, 7>& printed_constants();

struct MarginReport {
  int k = 0;
  Real main_term;        // 2k (2 tau_k / (0.999999 ln^2 10^5))^(2/(k^2+k))
  Real margin;           // published C_k minus main_term
  Real absorption_lhs;   // margin * L_min^(2/(k^2+k)) * (10^5)^(1-2/(k+1))
  bool absorption_ok = false;  // absorption_lhs >= 4k
};
MarginReport c_margin_report(const PolyTable& table, int k,
                             const LogScale& l_min);

struct EnvelopeCheck {
  std::string name;
  Real lower, value, upper;
  bool ok = false;
};
struct EnvelopeReport {
  int k = 0;
  Real x;
  std::vector<EnvelopeCheck> checks;  // sharp sandwich + coarse sandwich
  bool all_ok = false;
};
/// Evaluates g_k at (L, x) and reports both derivative envelopes with
/// signed margins. Hypotheses (L >= ln 10^100000, x >= 10^5) are rejected
/// as errors; envelope failures are reported verdicts.
EnvelopeReport envelope_check(const PolyTable& table, int k, const LogScale& L,
                              const Real& x);

struct CertifyRow {
  int k = 0;
  Real tau_recomputed, gamma_recomputed;
  double tau_printed, gamma_printed, c_printed;
  Real tau_rel_err, gamma_rel_err;
  MarginReport margin;
  bool closed_form_match = false;  // extraction vs closed forms, r <= min(k,6)
  bool ok = false;
};
/// Full constants certificate, k = 1..6.
std::vector<CertifyRow> certify_constants(const PolyTable& table);

}  // namespace rg::analytic
