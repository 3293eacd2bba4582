#include "rgkit/primes.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rg {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Witness set deterministic for n < 3,317,044,064,679,887,385,961,981.
constexpr u64 kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool miller_rabin_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (u64 a : kWitnesses) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool miller_rabin_big(const Int& n) {
  if (n < 2) return false;
  for (u64 p : kWitnesses)
    if (n % p == 0) return n == p;
  Int d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  auto witness_ok = [&](const Int& a) {
    Int x = powm(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == n - 1) return true;
    }
    return false;
  };
  for (u64 a : kWitnesses)
    if (!witness_ok(Int(a))) return false;
  // Fixed-seed extra rounds above the deterministic range.
  u64 state = 0x9e3779b97f4a7c15ull;
  for (int round = 0; round < 25; ++round) {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    Int a = 2 + Int(state) % (n - 3);
    if (!witness_ok(a)) return false;
  }
  return true;
}

u64 pollard_rho(u64 n) {
  if ((n & 1) == 0) return 2;
  u64 seed = 1;
  while (true) {
    u64 x = seed, y = seed, c = seed | 1, d = 1;
    auto step = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = step(x);
      y = step(step(y));
      u64 diff = x > y ? x - y : y - x;
      d = std::gcd(diff, n);
    } while (d == 1);
    if (d != n) return d;
    ++seed;
  }
}

void factor_rec(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (miller_rabin_u64(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

bool is_prime_u64(std::uint64_t n) { return miller_rabin_u64(n); }

bool is_prime(const Int& n) {
  if (n <= std::numeric_limits<std::uint64_t>::max())
    return miller_rabin_u64(n.convert_to<std::uint64_t>());
  return miller_rabin_big(n);
}

std::vector<std::uint32_t> spf_sieve(std::uint32_t limit) {
  std::vector<std::uint32_t> spf(std::size_t(limit) + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf[i] == 0) {
      for (std::uint64_t j = i; j <= limit; j += i)
        if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  return spf;
}

void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& fn) {
  if (hi <= lo) return;
  lo = std::max<std::uint64_t>(lo, 2);
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(double(hi))) + 2;
  std::vector<std::uint64_t> base;
  {
    std::vector<bool> comp(root + 1, false);
    for (std::uint64_t i = 2; i <= root; ++i) {
      if (!comp[i]) {
        base.push_back(i);
        for (std::uint64_t j = i * i; j <= root; j += i) comp[j] = true;
      }
    }
  }
  constexpr std::uint64_t kSegment = 1u << 20;
  std::vector<bool> seg;
  for (std::uint64_t start = lo; start < hi; start += kSegment) {
    std::uint64_t end = std::min(hi, start + kSegment);
    seg.assign(end - start, true);
    for (std::uint64_t p : base) {
      if (p * p >= end) break;
      std::uint64_t first = std::max(p * p, (start + p - 1) / p * p);
      for (std::uint64_t j = first; j < end; j += p) seg[j - start] = false;
    }
    for (std::uint64_t i = start; i < end; ++i)
      if (seg[i - start] && i >= 2) fn(i);
  }
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> factor_with_spf(
    std::uint32_t n, const std::vector<std::uint32_t>& spf) {
  if (n >= spf.size()) throw std::invalid_argument("factor_with_spf: n beyond table");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  while (n > 1) {
    std::uint32_t p = spf[n], e = 0;
    while (n % p == 0) n /= p, ++e;
    out.emplace_back(p, e);
  }
  return out;
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> factor_u64(std::uint64_t n) {
  std::vector<u64> fs;
  factor_rec(n, fs);
  std::sort(fs.begin(), fs.end());
  std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
  for (u64 p : fs) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1);
  }
  return out;
}

}  // namespace rg
