#include "rgkit/repunit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include "rgkit/primes.hpp"

namespace rg::repunit {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kU64Cap = ~0ull;

// Repunit value in u128 with early cutoff: returns cap+1 if the value
// exceeds cap at any point.
u128 value_capped_u128(u64 base, unsigned length, u128 cap) {
  u128 v = 1;
  for (unsigned i = 1; i < length; ++i) {
    if (v > cap / base) return cap + 1;
    v = v * base + 1;
    if (v > cap) return cap + 1;
  }
  return v;
}

// Compare repunit_value(base, length) against target without materializing
// more than needed: -1 below, 0 equal, +1 above.
int compare_value(const Int& base, unsigned length, const Int& target) {
  Int v = 1;
  for (unsigned i = 1; i < length; ++i) {
    v = v * base + 1;
    if (v > target) return 1;
  }
  return v == target ? 0 : -1;
}

unsigned max_length_for(const Int& target) {
  // largest m with 2^(m-1) <= target, i.e. value(2, m) could still be <= target
  unsigned bits = static_cast<unsigned>(msb(target));  // floor(log2)
  return bits + 1;
}

}  // namespace

Int repunit_value(const Int& base, unsigned length) {
  Int v = 0;
  for (unsigned i = 0; i < length; ++i) v = v * base + 1;
  return v;
}

SolutionSet solutions_for(const Int& target, unsigned min_length,
                          bool prime_base_only) {
  if (target < 3) throw std::invalid_argument("solutions_for: target >= 3");
  if (min_length != 2 && min_length != 3)
    throw std::invalid_argument("solutions_for: min_length in {2,3}");

  SolutionSet out{target, min_length, prime_base_only, {}};
  unsigned max_len = max_length_for(target);
  bool small = target <= Int(kU64Cap >> 1);
  u64 t64 = small ? target.convert_to<u64>() : 0;

  for (unsigned len = min_length; len <= max_len; ++len) {
    // value(x, len) is strictly increasing in x; bisect on [2, target].
    Int lo = 2, hi = target;
    if (compare_value(lo, len, target) > 0) continue;
    while (lo <= hi) {
      Int mid = (lo + hi) >> 1;
      int cmp;
      if (small) {
        u128 v = value_capped_u128(mid.convert_to<u64>(), len, t64);
        cmp = v > t64 ? 1 : (v == t64 ? 0 : -1);
      } else {
        cmp = compare_value(mid, len, target);
      }
      if (cmp == 0) {
        out.items.push_back({mid, len});
        break;
      }
      if (cmp < 0)
        lo = mid + 1;
      else
        hi = mid - 1;
    }
  }

  if (prime_base_only) {
    std::erase_if(out.items, [](const Solution& s) { return !is_prime(s.base); });
  }
  std::sort(out.items.begin(), out.items.end(),
            [](const Solution& a, const Solution& b) { return a.base < b.base; });
  return out;
}

Rat reciprocal_tail_sum(const Int& target, unsigned min_length,
                        bool prime_base_only) {
  SolutionSet s = solutions_for(target, min_length, prime_base_only);
  Rat sum = 0;
  for (std::size_t i = 1; i < s.items.size(); ++i)
    sum += Rat(Int(1), s.items[i].base);
  return sum;
}

std::vector<CoincidenceRecord> coincidence_search(
    const Int& base_limit, const Int& value_cap, const CoincidenceOptions& opts) {
  if (base_limit < 3) throw std::invalid_argument("coincidence_search: base_limit >= 3");
  if (value_cap < 31) throw std::invalid_argument("coincidence_search: value_cap >= 31");

  // Budget gate: a candidate is a pair (base, length>=3) with value <= cap.
  // value(y, n) >= y^(n-1), so bases for length n are capped by cap^(1/(n-1));
  // summing those caps overestimates the candidate count slightly.
  double log_cap = value_cap <= Int(kU64Cap)
                       ? std::log(value_cap.convert_to<double>())
                       : static_cast<double>(log(Real(value_cap)));
  u64 blimit = base_limit > Int(kU64Cap) ? kU64Cap : base_limit.convert_to<u64>();
  double estimate = 0;
  for (unsigned n = 3; n < 130; ++n) {
    double ymax = std::exp(log_cap / (n - 1));
    if (ymax < 2) break;
    estimate += std::min(double(blimit), ymax);
  }
  if (estimate > double(opts.work_budget))
    throw budget_error("coincidence_search: candidate budget exceeded");

  // Bases with y^2 + y + 1 > cap contribute nothing.
  double y3 = std::exp(log_cap / 2) + 2;
  if (y3 < double(blimit)) blimit = static_cast<u64>(y3);

  const bool small = value_cap <= Int(kU64Cap >> 1);
  const u64 cap64 = small ? value_cap.convert_to<u64>() : 0;

  struct Entry {
    Int value;
    u64 base;
    unsigned length;
  };

  auto enumerate_range = [&](u64 y_lo, u64 y_hi, std::vector<Entry>& sink) {
    for (u64 y = y_lo; y < y_hi; ++y) {
      if (small) {
        u128 v = u128(1) + y + u128(y) * y;  // length 3
        unsigned len = 3;
        while (v <= cap64) {
          sink.push_back({Int(u64(v)), y, len});
          if (v > (u128(kU64Cap) - 1) / y) break;
          v = v * y + 1;
          ++len;
        }
      } else {
        Int v = repunit_value(Int(y), 3);
        unsigned len = 3;
        while (v <= value_cap) {
          sink.push_back({v, y, len});
          v = v * y + 1;
          ++len;
        }
      }
    }
  };

  std::vector<Entry> entries;
  unsigned workers = std::max(1u, opts.workers);
  if (workers == 1 || blimit < 64) {
    enumerate_range(2, blimit + 1, entries);
  } else {
    // Contiguous base stripes; merge is order-independent because the final
    // result is re-sorted and re-derived per value.
    std::vector<std::vector<Entry>> parts(workers);
    std::vector<std::thread> pool;
    u64 span = (blimit - 1) / workers + 1;
    unsigned digits = working_digits();
    for (unsigned w = 0; w < workers; ++w) {
      u64 lo = 2 + w * span, hi = std::min(blimit + 1, 2 + (w + 1) * span);
      if (lo >= hi) continue;
      pool.emplace_back([&, lo, hi, w, digits] {
        Real::default_precision(digits);
        enumerate_range(lo, hi, parts[w]);
      });
    }
    for (auto& t : pool) t.join();
    for (auto& p : parts)
      entries.insert(entries.end(), p.begin(), p.end());
  }

  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.value != b.value ? a.value < b.value : a.base < b.base;
  });

  std::vector<CoincidenceRecord> out;
  for (std::size_t i = 0; i + 1 < entries.size();) {
    std::size_t j = i;
    while (j + 1 < entries.size() && entries[j + 1].value == entries[i].value) ++j;
    if (j > i && entries[j].base != entries[i].base) {
      // collision: confirm by full re-derivation
      SolutionSet reps = solutions_for(entries[i].value, 3, false);
      unsigned within = 0;
      for (const auto& s : reps.items)
        if (s.base <= base_limit) ++within;
      if (within >= 2) out.push_back({entries[i].value, std::move(reps)});
    }
    i = j + 1;
  }
  return out;
}

}  // namespace rg::repunit
