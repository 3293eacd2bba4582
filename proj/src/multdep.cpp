#include "rgkit/multdep.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "rgkit/primes.hpp"

namespace rg::multdep {

namespace {

using u64 = std::uint64_t;
using Fac = std::vector<std::pair<u64, int>>;  // sorted by prime

Fac to_fac(const std::vector<std::pair<u64, std::uint32_t>>& v) {
  Fac f;
  f.reserve(v.size());
  for (auto [p, e] : v) f.emplace_back(p, static_cast<int>(e));
  return f;
}

Fac fac_spf(std::uint32_t n, const std::vector<std::uint32_t>& spf) {
  Fac f;
  while (n > 1) {
    u64 p = spf[n];
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    f.emplace_back(p, e);
  }
  std::sort(f.begin(), f.end());
  return f;
}

// Exponent vector of (b-1)/(a-1) in lowest terms from the two factorizations.
Fac quotient_exponents(const Fac& num, const Fac& den) {
  Fac out;
  std::size_t i = 0, j = 0;
  while (i < num.size() || j < den.size()) {
    if (j == den.size() || (i < num.size() && num[i].first < den[j].first)) {
      out.push_back(num[i++]);
    } else if (i == num.size() || den[j].first < num[i].first) {
      out.emplace_back(den[j].first, -den[j].second);
      ++j;
    } else {
      int e = num[i].second - den[j].second;
      if (e != 0) out.emplace_back(num[i].first, e);
      ++i, ++j;
    }
  }
  return out;
}

Rat rat_from_exponents(const Fac& f) {
  Int num = 1, den = 1;
  for (auto [p, e] : f) {
    if (e > 0)
      num *= pow(Int(p), static_cast<unsigned>(e));
    else
      den *= pow(Int(p), static_cast<unsigned>(-e));
  }
  return Rat(num, den);
}

struct TripleRows {
  std::vector<u64> primes;
  std::vector<std::array<long long, 3>> cols;  // per prime: (e_a, e_b, e_c)
};

TripleRows build_rows(const Fac& fa, const Fac& fb, const Fac& fc) {
  TripleRows rows;
  std::map<u64, std::array<long long, 3>> m;
  for (auto [p, e] : fa) m[p][0] = e;
  for (auto [p, e] : fb) m[p][1] = e;
  for (auto [p, e] : fc) m[p][2] = e;
  for (auto& [p, col] : m) {
    rows.primes.push_back(p);
    rows.cols.push_back(col);
  }
  return rows;
}

// Rank of the 3-row exponent matrix by fraction-free elimination on the
// transposed (m x 3) integer system; also returns the echelon rows for
// kernel extraction.
int echelon_rank(std::vector<std::array<long long, 3>>& eqs) {
  int rank = 0;
  for (int col = 0; col < 3 && rank < static_cast<int>(eqs.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(eqs.size()); ++r) {
      if (eqs[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(eqs[rank], eqs[pivot]);
    for (int r = 0; r < static_cast<int>(eqs.size()); ++r) {
      if (r == rank || eqs[r][col] == 0) continue;
      long long pr = eqs[rank][col], er = eqs[r][col];
      for (int c = 0; c < 3; ++c) eqs[r][c] = eqs[r][c] * pr - eqs[rank][c] * er;
      long long g = std::gcd(std::gcd(std::abs(eqs[r][0]), std::abs(eqs[r][1])),
                             std::abs(eqs[r][2]));
      if (g > 1)
        for (int c = 0; c < 3; ++c) eqs[r][c] /= g;
    }
    ++rank;
  }
  return rank;
}

// Kernel basis of the (m x 3) system; vectors scaled to coprime integers.
std::vector<std::array<Int, 3>> kernel_basis(
    std::vector<std::array<long long, 3>> eqs) {
  int rank = echelon_rank(eqs);
  // Identify pivot columns in the echelon form.
  std::array<int, 3> pivot_row{-1, -1, -1};
  int r = 0;
  for (int col = 0; col < 3; ++col) {
    if (r < rank && r < static_cast<int>(eqs.size()) && eqs[r][col] != 0 &&
        [&] {
          for (int cc = 0; cc < col; ++cc)
            if (eqs[r][cc] != 0) return false;
          return true;
        }()) {
      pivot_row[col] = r;
      ++r;
    }
  }
  std::vector<std::array<Int, 3>> basis;
  for (int free_col = 0; free_col < 3; ++free_col) {
    if (pivot_row[free_col] >= 0) continue;
    std::array<Rat, 3> v{Rat(0), Rat(0), Rat(0)};
    v[free_col] = 1;
    for (int col = 2; col >= 0; --col) {
      int pr = pivot_row[col];
      if (pr < 0) continue;
      Rat acc = 0;
      for (int c = col + 1; c < 3; ++c) acc += Rat(eqs[pr][c]) * v[c];
      v[col] = -acc / Rat(eqs[pr][col]);
    }
    // clear denominators, reduce, normalize sign of last nonzero
    Int l = 1;
    for (const Rat& x : v) l = lcm(l, denominator(x));
    std::array<Int, 3> iv;
    for (int c = 0; c < 3; ++c) iv[c] = numerator(v[c] * Rat(l));
    Int g = 0;
    for (const Int& x : iv) g = gcd(g, x);
    if (g > 1)
      for (Int& x : iv) x /= g;
    for (int c = 2; c >= 0; --c) {
      if (iv[c] != 0) {
        if (iv[c] < 0)
          for (Int& x : iv) x = -x;
        break;
      }
    }
    basis.push_back(iv);
  }
  return basis;
}

bool relation_reproduces_one(u64 a, u64 b, const Rat& c,
                             const std::array<Int, 3>& e) {
  auto power = [](Rat base, Int k) {
    if (k < 0) {
      base = Rat(1) / base;
      k = -k;
    }
    Rat acc = 1, sq = base;
    while (k > 0) {
      if ((k & 1) != 0) acc *= sq;
      k >>= 1;
      if (k > 0) sq *= sq;
    }
    return acc;
  };
  return power(Rat(a), e[0]) * power(Rat(b), e[1]) * power(c, e[2]) == 1;
}

DependenceVerdict verdict_from(u64 a, u64 b, const Fac& fa, const Fac& fb,
                               const Fac& fam1, const Fac& fbm1) {
  Fac fc = quotient_exponents(fbm1, fam1);
  DependenceVerdict v;
  v.c = rat_from_exponents(fc);
  TripleRows rows = build_rows(fa, fb, fc);
  auto eqs = rows.cols;
  int rank = echelon_rank(eqs);
  if (rank >= 3) return v;
  v.dependent = true;
  auto basis = kernel_basis(rows.cols);
  // Prefer a relation that genuinely involves c.
  const std::array<Int, 3>* pick = nullptr;
  for (const auto& cand : basis)
    if (cand[2] != 0) {
      pick = &cand;
      break;
    }
  if (!pick && !basis.empty()) pick = &basis.front();
  if (!pick) throw std::logic_error("dependent triple without kernel vector");
  v.relation = *pick;
  v.relation_involves_c = v.relation[2] != 0;
  if (!relation_reproduces_one(a, b, v.c, v.relation))
    throw std::logic_error("kernel relation failed exact verification");
  return v;
}

FamilyMatch family_from(const Fac& fa, const Fac& fam1, const Fac& fbm1) {
  FamilyMatch fm;
  Fac fc = quotient_exponents(fbm1, fam1);
  if (fc.empty()) return fm;  // c = 1 cannot occur for b > a anyway
  for (auto [p, e] : fc)
    if (e < 0) return fm;  // c must be an integer
  // primitive root of a: divide all exponents by their gcd
  int s = 0;
  for (auto [p, e] : fa) s = std::gcd(s, e);
  // c = k0^t  <=>  c's support equals k0's and exponents are t * (e/s)
  if (fc.size() != fa.size()) return fm;
  long long t = -1;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    if (fc[i].first != fa[i].first) return fm;
    int base_e = fa[i].second / s;
    if (fc[i].second % base_e != 0) return fm;
    long long ti = fc[i].second / base_e;
    if (t < 0)
      t = ti;
    else if (t != ti)
      return fm;
  }
  if (t < 1) return fm;
  u64 k0 = 1;
  for (auto [p, e] : fa)
    for (int i = 0; i < e / s; ++i) k0 *= p;
  fm.in_family = true;
  fm.k = k0;
  fm.s = static_cast<unsigned>(s);
  fm.t = static_cast<unsigned>(t);
  return fm;
}

void require_pair(u64 a, u64 b) {
  if (!(a >= 2 && b > a))
    throw std::invalid_argument("pair requires b > a >= 2");
}

}  // namespace

DependenceVerdict is_dependent(std::uint64_t a, std::uint64_t b) {
  require_pair(a, b);
  Fac fa = to_fac(factor_u64(a)), fb = to_fac(factor_u64(b));
  Fac fam1 = to_fac(factor_u64(a - 1)), fbm1 = to_fac(factor_u64(b - 1));
  DependenceVerdict v = verdict_from(a, b, fa, fb, fam1, fbm1);
  FamilyMatch fm = family_from(fa, fam1, fbm1);
  v.family = fm.in_family;
  v.family_k = fm.k;
  v.family_s = fm.s;
  v.family_t = fm.t;
  return v;
}

FamilyMatch in_family(std::uint64_t a, std::uint64_t b) {
  require_pair(a, b);
  return family_from(to_fac(factor_u64(a)), to_fac(factor_u64(a - 1)),
                     to_fac(factor_u64(b - 1)));
}

std::vector<ExceptionalPair> search_exceptional(std::uint64_t limit,
                                                const SearchOptions& opts) {
  if (limit < 4) throw std::invalid_argument("search_exceptional: limit >= 4");
  if (limit > 0xFFFFFFFFull)
    throw std::invalid_argument("search_exceptional: limit beyond sieve range");
  const auto spf = spf_sieve(static_cast<std::uint32_t>(limit));

  auto scan_b_range = [&](u64 b_lo, u64 b_hi, std::vector<ExceptionalPair>& out,
                          u64& spent) {
    std::vector<u64> cands;
    for (u64 b = b_lo; b < b_hi; ++b) {
      Fac fbm1 = fac_spf(static_cast<std::uint32_t>(b - 1), spf);
      Fac fb = fac_spf(static_cast<std::uint32_t>(b), spf);
      // Largest prime of b-1 never divides b; for dependence it must divide
      // a or cancel fully against a-1.
      u64 pstar = fbm1.back().first;
      int estar = fbm1.back().second;
      u64 pe = 1;
      for (int i = 0; i < estar; ++i) pe *= pstar;

      cands.clear();
      for (u64 a = pstar; a < b; a += pstar) cands.push_back(a);
      for (u64 a = 1 + pe; a < b; a += pe) cands.push_back(a);
      std::sort(cands.begin(), cands.end());
      cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

      spent += cands.size() + 1;
      if (spent > opts.budget)
        throw search_budget_error("search_exceptional: candidate budget exceeded");

      for (u64 a : cands) {
        if (a < 2) continue;
        Fac fa = fac_spf(static_cast<std::uint32_t>(a), spf);
        Fac fam1 = fac_spf(static_cast<std::uint32_t>(a - 1), spf);
        // Cheap support screen before the exact rank computation: every
        // prime of c must lie in the support of a*b.
        Fac fc = quotient_exponents(fbm1, fam1);
        bool support_ok = true;
        for (const auto& pe : fc) {
          const u64 prime = pe.first;
          auto has = [prime](const Fac& f) {
            return std::any_of(f.begin(), f.end(),
                               [prime](const auto& q) { return q.first == prime; });
          };
          if (!has(fa) && !has(fb)) {
            support_ok = false;
            break;
          }
        }
        if (!support_ok) continue;
        DependenceVerdict v = verdict_from(a, b, fa, fb, fam1, fbm1);
        if (!v.dependent || !v.relation_involves_c) continue;
        if (family_from(fa, fam1, fbm1).in_family) continue;
        out.push_back({a, b, v.c, v.relation});
      }
    }
  };

  unsigned workers = std::max(1u, opts.workers);
  if (workers == 1 || limit < 4096) {
    std::vector<ExceptionalPair> out;
    u64 spent = 0;
    scan_b_range(3, limit + 1, out, spent);
    return out;
  }
  std::vector<std::vector<ExceptionalPair>> parts(workers);
  std::vector<std::thread> pool;
  std::vector<u64> spents(workers, 0);
  std::exception_ptr err;
  std::mutex err_mu;
  u64 span = (limit - 2) / workers + 1;
  for (unsigned w = 0; w < workers; ++w) {
    u64 lo = 3 + w * span, hi = std::min<u64>(limit + 1, lo + span);
    if (lo > limit) break;
    pool.emplace_back([&, lo, hi, w] {
      try {
        scan_b_range(lo, hi, parts[w], spents[w]);
      } catch (...) {
        std::lock_guard<std::mutex> g(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  std::vector<ExceptionalPair> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace rg::multdep
