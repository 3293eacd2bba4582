#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rgkit/real.hpp"

namespace rg::pipeline {

/// Sum of the per-window count bounds over dyadic windows of [m_lo, m_hi),
/// three ways. `inner` uses only windows [M, 2M) fully inside (never above
/// the closed fold), `cover` continues until the windows cover [m_lo, m_hi)
/// (a sound upper bound), `folded` is the closed difference-quotient form
///   D_k (ln N)^(2/(k(k+1))) (m_lo^(-2/(k+1)) - m_hi^(-2/(k+1))),
/// D_k = C_k / (1 - 2^(-2/(k+1))). inner <= folded <= cover always.
struct DyadicSum {
  Real inner, cover, folded;
  unsigned inner_blocks = 0, cover_blocks = 0;
};
DyadicSum dyadic_block_sum(int k, const LogScale& L, const Real& m_lo,
                           const Real& m_hi);

/// D_k = C_k / (1 - 2^(-2/(k+1))), the folded coefficient per k.
Real fold_coefficient(int k);

struct Finding {
  std::string id;
  std::string detail;
};

/// Catalog of identified defects in the printed source material (display
/// typos, inconsistent constants). Stable ids; used by reports and the CLI.
const std::vector<Finding>& findings_catalog();

struct BoundReport {
  std::string variant;   // "all-bases" or "prime-bases"
  std::string regime;
  Real loglog;           // ln ln N (NaN-free; small-n reports carry ln ln N too)
  Real printed_track;    // the printed regime expression, evaluated
  double printed_ceiling = 0;  // the printed per-regime constant
  Real recomputed_track; // re-derived from dyadic folds at the quantized anchors
  Real tail;             // the beyond-cube-of-log support tail
  Real final_value;      // printed_track + tail
  double printed_final = 0;    // 5.9037 or 0.73194
  Real product_value;    // prime variant only: exp(final bound * 1e5/99999)
  double printed_product = 0;  // 2.07913
  unsigned min_length_convention = 2;
  std::vector<Finding> findings;
};

struct BoundOptions {
  unsigned min_length_convention = 2;   // 2 or 3; affects the small-N caveats
  bool with_recomputed = true;          // skip the fold track for grid sweeps
  bool assume_low_exponent_variant = false;  // extend the low anchor regime
};

/// Reciprocal-sum bound over all bases beyond the smallest.
BoundReport all_bases_bound(const LogScale& L, const BoundOptions& opts = {});

/// Reciprocal-sum bound over prime bases beyond the smallest, plus the
/// product bound. Requires N at or above the large-N floor.
BoundReport prime_bases_bound(const LogScale& L, const BoundOptions& opts = {});

/// Regime identification alone (closed on the left, open on the right).
std::string regime_of_all_bases(const Real& loglog, bool low_variant = false);
std::string regime_of_prime_bases(const Real& loglog);

enum class PrimeHeadFloor { power_of_log, desk };

/// Prime-reciprocal head bound over [floor, W):
///   1/ln^2(S) + ln(ln W / ln S), S = (ln N)^0.33479 or 10^5.
/// Rejects W below the floor.
Real prime_interval_bound(const LogScale& L, const Real& w,
                          PrimeHeadFloor floor_mode = PrimeHeadFloor::power_of_log);

/// The support tail beyond (ln N)^3: 1/(3 (ln N)^2 ln ln N).
Real support_tail(const LogScale& L);

struct PrimeSumOptions {
  std::uint64_t budget = 100'000'000;
};
/// Exact-to-precision sum of 1/p over primes in [lo, hi), hi <= 1e8.
Real prime_sum_oracle(std::uint64_t lo, std::uint64_t hi,
                      const PrimeSumOptions& opts = {});

}  // namespace rg::pipeline
