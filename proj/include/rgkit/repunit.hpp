#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "rgkit/real.hpp"

namespace rg::repunit {

/// One representation of a target as a base-x repunit of given length:
/// 1 + x + x^2 + ... + x^(length-1).
struct Solution {
  Int base;         // >= 2
  unsigned length;  // >= 2
  friend bool operator==(const Solution&, const Solution&) = default;
};

/// All representations of `target`, sorted by strictly increasing base.
/// For a fixed base the repunit value is strictly increasing in length,
/// so no two items share a base.
struct SolutionSet {
  Int target;
  unsigned min_length = 2;
  bool prime_base_only = false;
  std::vector<Solution> items;
};

/// A value with at least two length>=3 representations.
struct CoincidenceRecord {
  Int value;
  SolutionSet representations;  // min_length = 3, complete
};

struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact 1 + base + base^2 + ... + base^(length-1).
Int repunit_value(const Int& base, unsigned length);

/// Complete set of representations of target with length >= min_length
/// (min_length in {2,3}). Base search is monotone integer bisection per
/// length; exact arithmetic throughout. If prime_base_only, keeps only
/// prime bases.
SolutionSet solutions_for(const Int& target, unsigned min_length = 2,
                          bool prime_base_only = false);

/// Exact sum of 1/base over all items after the smallest base
/// (0 if fewer than two items).
Rat reciprocal_tail_sum(const Int& target, unsigned min_length = 2,
                        bool prime_base_only = false);

struct CoincidenceOptions {
  std::uint64_t work_budget = 100'000'000;  // candidate (base, length) pairs
  unsigned workers = 1;
};

/// All N <= value_cap admitting >= 2 representations with length >= 3 and
/// base <= base_limit, ascending by N. Candidates are enumerated into a
/// value-keyed index; collisions are confirmed by full re-derivation
/// through solutions_for. Throws budget_error if the candidate count would
/// exceed the configured budget.
std::vector<CoincidenceRecord> coincidence_search(
    const Int& base_limit, const Int& value_cap,
    const CoincidenceOptions& opts = {});

}  // namespace rg::repunit
