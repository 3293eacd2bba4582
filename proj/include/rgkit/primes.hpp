#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "rgkit/real.hpp"

namespace rg {

/// Deterministic Miller-Rabin for n < 3.3e24 (covers the full 64-bit range);
/// falls back to the same witness set plus fixed extra rounds above that.
bool is_prime(const Int& n);
bool is_prime_u64(std::uint64_t n);

/// Smallest-prime-factor table for [0, limit]; spf[0] = spf[1] = 0.
std::vector<std::uint32_t> spf_sieve(std::uint32_t limit);

/// Primes in [lo, hi) by segmented sieve. hi <= 2^34 or so keeps memory sane;
/// callers enforce their own budgets.
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& fn);

/// Factor n > 0 using a precomputed spf table (n must be <= table limit).
std::vector<std::pair<std::uint32_t, std::uint32_t>> factor_with_spf(
    std::uint32_t n, const std::vector<std::uint32_t>& spf);

/// General factorization for 64-bit n (trial division + Pollard rho).
std::vector<std::pair<std::uint64_t, std::uint32_t>> factor_u64(std::uint64_t n);

}  // namespace rg
