#include <doctest.h>

#include <numeric>

#include "rgkit/multdep.hpp"
#include "rgkit/primes.hpp"
#include "test_util.hpp"

using namespace rg;
using namespace rg::multdep;

namespace {

// Exact check that a^e1 b^e2 c^e3 == 1.
bool relation_holds(std::uint64_t a, std::uint64_t b, const Rat& c,
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

// Independent rank of the triple's exponent matrix over a random prime
// field; repeated with fresh primes on disagreement suspicion.
int rank_mod_p(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  auto expvec = [&](Rat v) {
    std::map<std::uint64_t, long long> m;
    for (auto [q, e] : factor_u64(numerator(v).convert_to<std::uint64_t>()))
      m[q] += e;
    for (auto [q, e] : factor_u64(denominator(v).convert_to<std::uint64_t>()))
      m[q] -= e;
    return m;
  };
  Rat c(Int(b - 1), Int(a - 1));
  auto va = expvec(Rat(a)), vb = expvec(Rat(b)), vc = expvec(c);
  std::set<std::uint64_t> primes;
  for (auto& [q, e] : va) primes.insert(q);
  for (auto& [q, e] : vb) primes.insert(q);
  for (auto& [q, e] : vc) primes.insert(q);
  std::vector<std::vector<std::uint64_t>> m(3);
  for (auto q : primes) {
    auto get = [&](std::map<std::uint64_t, long long>& v) {
      long long e = v.count(q) ? v[q] : 0;
      return std::uint64_t(((e % (long long)p) + (long long)p) % (long long)p);
    };
    m[0].push_back(get(va));
    m[1].push_back(get(vb));
    m[2].push_back(get(vc));
  }
  auto powmod = [&](std::uint64_t x, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = (__uint128_t)r * x % p;
      x = (__uint128_t)x * x % p;
      e >>= 1;
    }
    return r;
  };
  int rank = 0;
  std::size_t cols = primes.size();
  for (std::size_t col = 0; col < cols && rank < 3; ++col) {
    int pivot = -1;
    for (int r = rank; r < 3; ++r)
      if (m[r][col] % p != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    std::uint64_t inv = powmod(m[rank][col], p - 2);
    for (int r = 0; r < 3; ++r) {
      if (r == rank) continue;
      std::uint64_t factor = (__uint128_t)m[r][col] * inv % p;
      for (std::size_t cc = 0; cc < cols; ++cc) {
        std::uint64_t sub = (__uint128_t)factor * m[rank][cc] % p;
        m[r][cc] = (m[r][cc] + p - sub) % p;
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("is_dependent examples") {
  auto v34 = is_dependent(3, 4);
  CHECK(v34.dependent);
  CHECK(v34.c == Rat(3, 2));
  CHECK(v34.relation == std::array<Int, 3>{-2, 1, 2});
  CHECK(v34.relation_involves_c);
  CHECK(!v34.family);

  auto v27 = is_dependent(2, 7);
  CHECK(!v27.dependent);
  CHECK(v27.c == 6);

  auto v1536 = is_dependent(15, 36);
  CHECK(v1536.dependent);
  CHECK(v1536.c == Rat(5, 2));
  CHECK(relation_holds(15, 36, v1536.c, v1536.relation));

  // common-power pair: dependent, but no relation involves c
  auto v24 = is_dependent(2, 4);
  CHECK(v24.dependent);
  CHECK(!v24.relation_involves_c);
  CHECK(v24.relation[2] == 0);
  CHECK(relation_holds(2, 4, v24.c, v24.relation));
}

TEST_CASE("in_family examples") {
  auto f25 = in_family(2, 5);
  CHECK(f25.in_family);
  CHECK(f25.k == 2);
  CHECK(f25.s == 1);
  CHECK(f25.t == 2);

  auto f413 = in_family(4, 13);
  CHECK(f413.in_family);
  CHECK(f413.k == 2);
  CHECK(f413.s == 2);
  CHECK(f413.t == 2);

  CHECK(!in_family(6, 16).in_family);
  CHECK(!in_family(3, 4).in_family);
  // non-integer quotient
  CHECK(!in_family(4, 9).in_family);
}

TEST_CASE("family members are always dependent") {
  rgtest::Rng rng(31);
  for (int i = 0; i < 400; ++i) {
    std::uint64_t k = 2 + rng.below(12);
    unsigned s = 1 + unsigned(rng.below(3));
    unsigned t = 1 + unsigned(rng.below(3));
    std::uint64_t a = 1;
    for (unsigned j = 0; j < s; ++j) a *= k;
    std::uint64_t c = 1;
    for (unsigned j = 0; j < t; ++j) c *= k;
    std::uint64_t b = c * (a - 1) + 1;
    if (a < 2 || b <= a || b > 4'000'000'000ull) continue;
    auto fam = in_family(a, b);
    CAPTURE(a);
    CAPTURE(b);
    CHECK(fam.in_family);
    auto v = is_dependent(a, b);
    CHECK(v.dependent);
    CHECK(v.family);
  }
}

TEST_CASE("kernel relations reproduce one exactly on random pairs") {
  rgtest::Rng rng(12);
  int dependents = 0;
  for (int i = 0; i < 10'000; ++i) {
    std::uint64_t a = 2 + rng.below(100);
    std::uint64_t b = a + 1 + rng.below(300);
    auto v = is_dependent(a, b);
    if (!v.dependent) continue;
    ++dependents;
    CAPTURE(a);
    CAPTURE(b);
    REQUIRE(relation_holds(a, b, v.c, v.relation));
    CHECK((v.relation[0] != 0 || v.relation[1] != 0 || v.relation[2] != 0));
  }
  CHECK(dependents > 0);
}

TEST_CASE("rank agrees with a prime-field oracle") {
  rgtest::Rng rng(77);
  const std::uint64_t primes[] = {1'000'000'007ull, 998'244'353ull,
                                  2'147'483'647ull};
  for (int i = 0; i < 1000; ++i) {
    std::uint64_t a = 2 + rng.below(2000);
    std::uint64_t b = a + 1 + rng.below(2000);
    auto v = is_dependent(a, b);
    // exponents here are tiny, far below any of the oracle primes, so the
    // mod-p rank equals the rational rank
    int r = rank_mod_p(a, b, primes[i % 3]);
    CAPTURE(a);
    CAPTURE(b);
    CHECK(v.dependent == (r <= 2));
  }
}

TEST_CASE("search matches the printed lists") {
  auto ten = search_exceptional(10'000);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> got;
  for (const auto& p : ten) got.emplace_back(p.a, p.b);
  CHECK(got == std::vector<std::pair<std::uint64_t, std::uint64_t>>{
                   {3, 4},
                   {4, 9},
                   {6, 16},
                   {16, 25},
                   {15, 36},
                   {6, 81},
                   {16, 81},
                   {40, 625},
                   {169, 729},
                   {91, 4096}});

  auto tiny = search_exceptional(10);
  REQUIRE(tiny.size() == 2);
  CHECK(tiny[0].a == 3);
  CHECK(tiny[0].b == 4);
  CHECK(tiny[1].a == 4);
  CHECK(tiny[1].b == 9);

  for (const auto& p : ten) CHECK(relation_holds(p.a, p.b, p.c, p.relation));
}

TEST_CASE("search equals the naive double-loop oracle at 300") {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> naive;
  for (std::uint64_t b = 3; b <= 300; ++b) {
    for (std::uint64_t a = 2; a < b; ++a) {
      auto v = is_dependent(a, b);
      if (v.dependent && v.relation_involves_c && !v.family)
        naive.emplace_back(a, b);
    }
  }
  auto got = search_exceptional(300);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> got_pairs;
  for (const auto& p : got) got_pairs.emplace_back(p.a, p.b);
  std::sort(naive.begin(), naive.end(), [](auto& x, auto& y) {
    return x.second != y.second ? x.second < y.second : x.first < y.first;
  });
  CHECK(got_pairs == naive);
}

TEST_CASE("search determinism and budget") {
  SearchOptions two;
  two.workers = 2;
  auto a = search_exceptional(3000);
  auto b = search_exceptional(3000, two);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].a == b[i].a);
    CHECK(a[i].b == b[i].b);
    CHECK(a[i].relation == b[i].relation);
  }
  SearchOptions tiny;
  tiny.budget = 50;
  CHECK_THROWS_AS(search_exceptional(10'000, tiny), search_budget_error);
}

TEST_CASE("pair preconditions") {
  CHECK_THROWS_AS(is_dependent(1, 5), std::invalid_argument);
  CHECK_THROWS_AS(is_dependent(4, 4), std::invalid_argument);
  CHECK_THROWS_AS(in_family(5, 3), std::invalid_argument);
  CHECK_THROWS_AS(search_exceptional(3), std::invalid_argument);
}
