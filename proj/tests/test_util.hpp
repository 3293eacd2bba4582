#pragma once

#include <cstdint>

#include "rgkit/analytic.hpp"
#include "rgkit/real.hpp"

namespace rgtest {

// Deterministic 64-bit generator (splitmix) so failures reproduce.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  double unit() { return double(next() >> 11) / 9007199254740992.0; }
};

// Central finite difference of order k with two Richardson steps, evaluated
// at wide precision. Independent of the symbolic differentiation path.
inline rg::RealX central_fd(const rg::RealX& log_n, const rg::RealX& x, int k,
                            const rg::RealX& h) {
  rg::RealX sum = 0;
  rg::RealX binom = 1;
  for (int j = 0; j <= k; ++j) {
    rg::RealX arg = x + (rg::RealX(k) / 2 - j) * h;
    rg::RealX val = rg::analytic::f_of(log_n, arg);
    sum += (j % 2 ? -binom : binom) * val;
    binom = binom * (k - j) / (j + 1);
  }
  return sum / pow(h, k);
}

inline rg::RealX fd_derivative(const rg::RealX& log_n, const rg::RealX& x,
                               int k, const rg::RealX& h0) {
  // Richardson over the even error expansion: error(h) = c1 h^2 + c2 h^4 + ..
  rg::RealX d1 = central_fd(log_n, x, k, h0);
  rg::RealX d2 = central_fd(log_n, x, k, h0 / 2);
  rg::RealX d3 = central_fd(log_n, x, k, h0 / 4);
  rg::RealX r1 = (4 * d2 - d1) / 3;
  rg::RealX r2 = (4 * d3 - d2) / 3;
  return (16 * r2 - r1) / 15;
}

}  // namespace rgtest
