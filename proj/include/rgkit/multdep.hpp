#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <optional>
#include <vector>

#include "rgkit/real.hpp"

namespace rg::multdep {

/// Verdict on the triple (a, b, c) with c = (b-1)/(a-1) in lowest terms.
/// `dependent` means the prime-exponent matrix of the triple has rank <= 2
/// (equivalently some nonzero integer relation a^e1 b^e2 c^e3 = 1 exists).
/// `relation_involves_c` distinguishes relations with e3 != 0 from those
/// already witnessed by a and b alone (a, b powers of a common base).
struct DependenceVerdict {
  bool dependent = false;
  bool relation_involves_c = false;
  std::array<Int, 3> relation{};  // coprime, last nonzero entry positive
  Rat c;
  bool family = false;
  std::uint64_t family_k = 0;
  unsigned family_s = 0, family_t = 0;
};

DependenceVerdict is_dependent(std::uint64_t a, std::uint64_t b);

struct FamilyMatch {
  bool in_family = false;
  std::uint64_t k = 0;  // primitive root of a
  unsigned s = 0, t = 0; // a = k^s, c = k^t
};

/// The structured family: c = (b-1)/(a-1) is an integer power of the
/// primitive root of a (any shared power base must be a power of the
/// primitive root, so testing it alone is complete).
FamilyMatch in_family(std::uint64_t a, std::uint64_t b);

struct ExceptionalPair {
  std::uint64_t a = 0, b = 0;
  Rat c;
  std::array<Int, 3> relation{};
};

struct SearchOptions {
  std::uint64_t budget = 4'000'000'000ull;  // candidate pair evaluations
  unsigned workers = 1;
};

struct search_budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// All pairs a < b <= limit whose triple is dependent through a relation
/// involving c and which fall outside the structured family, ascending by
/// (b, a). Factorization comes from one smallest-prime-factor sieve; the
/// a-loop is pruned by the largest prime factor of b-1 (it must divide a
/// or cancel against a-1 for dependence to be possible).
std::vector<ExceptionalPair> search_exceptional(std::uint64_t limit,
                                                const SearchOptions& opts = {});

}  // namespace rg::multdep
