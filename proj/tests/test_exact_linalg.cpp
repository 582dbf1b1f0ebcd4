#include <gtest/gtest.h>

#include <random>

#include "rigidity/linalg/abelian_group.hpp"
#include "rigidity/linalg/integer_matrix.hpp"
#include "rigidity/linalg/prime_field_matrix.hpp"

using namespace rigidity;

namespace {

// Plain row reduction on a dense copy.
std::size_t oracle_rank(const PrimeFieldMatrix& m) {
  const std::int64_t p = m.modulus();
  auto d = m.dense();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < m.rows() && d[piv][c] == 0) ++piv;
    if (piv == m.rows()) continue;
    std::swap(d[piv], d[rank]);
    std::int64_t inv = 1;
    for (std::int64_t e = p - 2, b = d[rank][c]; e; e >>= 1, b = b * b % p)
      if (e & 1) inv = inv * b % p;
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      std::int64_t f = d[r][c] * inv % p;
      if (!f) continue;
      for (std::size_t j = c; j < m.cols(); ++j)
        d[r][j] = static_cast<std::uint32_t>(((d[r][j] - f * d[rank][j]) % p + p) % p);
    }
    ++rank;
  }
  return rank;
}

PrimeFieldMatrix random_sparse(std::mt19937_64& rng, std::uint32_t p, std::size_t r, std::size_t c,
                               double density) {
  std::bernoulli_distribution keep(density);
  std::vector<PrimeFieldMatrix::Entry> e;
  for (std::uint32_t i = 0; i < r; ++i)
    for (std::uint32_t j = 0; j < c; ++j)
      if (keep(rng)) e.push_back({i, j, static_cast<std::uint32_t>(1 + rng() % (p - 1))});
  return {p, r, c, std::move(e)};
}

// gcd of all k x k minors, k = 1..min(m, n).
std::vector<BigInt> determinantal_divisors(const IntegerMatrix& a) {
  std::vector<BigInt> out;
  const std::size_t m = a.rows(), n = a.cols();
  for (std::size_t k = 1; k <= std::min(m, n); ++k) {
    BigInt g = 0;
    std::vector<bool> rs(m, false), cs(n, false);
    std::fill(rs.begin(), rs.begin() + k, true);
    do {
      std::fill(cs.begin(), cs.end(), false);
      std::fill(cs.begin(), cs.begin() + k, true);
      do {
        IntegerMatrix sub(k, k);
        std::size_t ii = 0;
        for (std::size_t i = 0; i < m; ++i) {
          if (!rs[i]) continue;
          std::size_t jj = 0;
          for (std::size_t j = 0; j < n; ++j)
            if (cs[j]) sub(ii, jj++) = a(i, j);
          ++ii;
        }
        g = gcd(g, determinant(sub));
      } while (std::prev_permutation(cs.begin(), cs.end()));
    } while (std::prev_permutation(rs.begin(), rs.end()));
    if (g == 0) break;
    out.push_back(g);
  }
  return out;
}

void expect_certified(const IntegerMatrix& m) {
  auto s = smith_normal_form(m);
  EXPECT_EQ(s.U * m * s.V, s.diagonal_matrix());
  EXPECT_EQ(s.V * s.V_inv, IntegerMatrix::identity(m.cols()));
  BigInt du = determinant(s.U), dv = determinant(s.V);
  EXPECT_TRUE(du == 1 || du == -1);
  EXPECT_TRUE(dv == 1 || dv == -1);
  for (std::size_t i = 1; i < s.factors.size(); ++i) EXPECT_EQ(s.factors[i] % s.factors[i - 1], 0);
  for (const auto& d : s.factors) EXPECT_GT(d, 0);
}

std::vector<BigInt> big(std::initializer_list<long long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(GfRank, Examples) {
  EXPECT_EQ(gf_rank(PrimeFieldMatrix::identity(3, 5)), 5u);
  EXPECT_EQ(gf_rank(PrimeFieldMatrix(3, 4, 7, {})), 0u);
  // d_1 of the full simplex on 4 points: edges (i<j) -> v_j - v_i
  std::vector<PrimeFieldMatrix::Entry> e;
  std::uint32_t col = 0;
  for (std::uint32_t i = 0; i < 4; ++i)
    for (std::uint32_t j = i + 1; j < 4; ++j, ++col) {
      e.push_back({i, col, 2});
      e.push_back({j, col, 1});
    }
  PrimeFieldMatrix d1(3, 4, 6, e);
  EXPECT_EQ(oracle_rank(d1), 3u);
  EXPECT_EQ(gf_rank(d1), 3u);
  EXPECT_EQ(dense_rank(d1), 3u);
}

TEST(GfRank, RejectsMalformedEntries) {
  EXPECT_THROW(PrimeFieldMatrix(3, 2, 2, {{0, 0, 3}}), std::invalid_argument);
  EXPECT_THROW(PrimeFieldMatrix(3, 2, 2, {{0, 0, 1}, {0, 0, 2}}), std::invalid_argument);
  EXPECT_THROW(PrimeFieldMatrix(3, 2, 2, {{2, 0, 1}}), std::out_of_range);
}

TEST(GfRank, SparseAndDenseAgreeWithOracle) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    std::uint32_t p = std::vector<std::uint32_t>{2, 3, 5, 7, 101}[trial % 5];
    std::size_t r = 1 + rng() % 120, c = 1 + rng() % 120;
    double density = std::vector<double>{0.01, 0.05, 0.2, 0.6}[trial % 4];
    auto m = random_sparse(rng, p, r, c, density);
    auto expected = oracle_rank(m);
    ASSERT_EQ(gf_rank(m), expected);
    ASSERT_EQ(dense_rank(m), expected);
    ASSERT_EQ(gf_rank(m.transposed()), expected);
  }
  for (std::size_t n : {200u, 400u}) {
    auto m = random_sparse(rng, 3, n, n, 0.01);
    EXPECT_EQ(gf_rank(m), oracle_rank(m));
    EXPECT_EQ(dense_rank(m), oracle_rank(m));
  }
}

TEST(GfRank, RankPlusNullityIsColumnCount) {
  // nullity counted independently as the number of null vectors in F_p^n for tiny n
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint32_t p = trial % 2 ? 2 : 3;
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 6;
    auto m = random_sparse(rng, p, r, c, 0.4);
    auto d = m.dense();
    std::uint64_t total = 1, null = 0;
    for (std::size_t j = 0; j < c; ++j) total *= p;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::vector<std::uint64_t> x(c);
      for (std::size_t j = 0, v = code; j < c; ++j, v /= p) x[j] = v % p;
      bool zero = true;
      for (std::size_t i = 0; i < r && zero; ++i) {
        std::uint64_t s = 0;
        for (std::size_t j = 0; j < c; ++j) s += d[i][j] * x[j];
        zero = s % p == 0;
      }
      null += zero;
    }
    std::size_t nullity = 0;
    while (null > 1) null /= p, ++nullity;
    EXPECT_EQ(gf_rank(m) + nullity, c);
  }
}

TEST(GfRank, DoesNotMutateInput) {
  std::mt19937_64 rng(9);
  auto m = random_sparse(rng, 7, 30, 30, 0.2);
  auto copy = m;
  gf_rank(m);
  dense_rank(m);
  ASSERT_EQ(m.entries().size(), copy.entries().size());
  for (std::size_t i = 0; i < m.entries().size(); ++i) {
    EXPECT_EQ(m.entries()[i].row, copy.entries()[i].row);
    EXPECT_EQ(m.entries()[i].value, copy.entries()[i].value);
  }
}

TEST(Smith, Examples) {
  EXPECT_EQ(smith_normal_form(IntegerMatrix{{2, 0}, {0, 3}}).factors, big({1, 6}));
  EXPECT_EQ(smith_normal_form(IntegerMatrix{{4, 0}, {0, 6}}).factors, big({2, 12}));
  EXPECT_TRUE(smith_normal_form(IntegerMatrix(3, 2)).factors.empty());
  expect_certified(IntegerMatrix{{4, 0}, {0, 6}});
  expect_certified(IntegerMatrix(3, 2));
}

TEST(Smith, RandomMatchesDeterminantalDivisors) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t m = 1 + rng() % 4, n = 1 + rng() % 4;
    IntegerMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = static_cast<long long>(rng() % 41) - 20;
    if (trial % 5 == 0 && m > 1)
      for (std::size_t j = 0; j < n; ++j) a(m - 1, j) = 3 * a(0, j);
    expect_certified(a);
    auto dd = determinantal_divisors(a);
    auto s = smith_normal_form(a, Certificates::None);
    ASSERT_EQ(s.factors.size(), dd.size());
    BigInt prev = 1;
    for (std::size_t k = 0; k < dd.size(); ++k) {
      EXPECT_EQ(s.factors[k], dd[k] / prev);
      prev = dd[k];
    }
  }
}

TEST(Smith, LargeEntriesStayExact) {
  IntegerMatrix a{{1'000'000'007LL, 998'244'353LL}, {123'456'789'012LL, 987'654'321'098LL}};
  a(0, 0) *= BigInt("1000000000000000000000");
  expect_certified(a);
  auto s = smith_normal_form(a);
  EXPECT_EQ(s.factors[0] * s.factors[1], abs(determinant(a)));
}

TEST(AbelianKernel, Examples) {
  auto z6 = PresentedAbelianGroup::from_factors(big({6}));
  auto z2 = PresentedAbelianGroup::from_factors(big({2}));
  auto k = abelian_kernel(IntegerMatrix{{1}}, z6, z2);
  EXPECT_EQ(k.kernel.invariant_factors(), big({3}));
  EXPECT_EQ(*k.image_order, 2);

  auto g = PresentedAbelianGroup::from_factors(big({2, 6}));
  auto h = PresentedAbelianGroup::from_factors(big({5}));
  auto k0 = abelian_kernel(IntegerMatrix(2, 1), g, h);
  EXPECT_EQ(k0.kernel.invariant_factors(), g.invariant_factors());

  auto z44 = PresentedAbelianGroup::from_factors(big({4, 4}));
  auto z4 = PresentedAbelianGroup::from_factors(big({4}));
  auto ks = abelian_kernel(IntegerMatrix{{1}, {1}}, z44, z4);
  EXPECT_EQ(ks.kernel.invariant_factors(), big({4}));
  // exhaustive: the kernel is {(a, -a)}, cyclic of order 4
  int count = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) count += (a + b) % 4 == 0;
  EXPECT_EQ(count, 4);
  for (std::size_t i = 0; i < ks.inclusion.rows(); ++i) {
    auto row = ks.inclusion.row(i);
    EXPECT_EQ((row[0] + row[1]) % 4, 0);
  }
}

TEST(AbelianKernel, RejectsIncompatibleMap) {
  auto z6 = PresentedAbelianGroup::from_factors(big({6}));
  auto z4 = PresentedAbelianGroup::from_factors(big({4}));
  EXPECT_THROW(abelian_kernel(IntegerMatrix{{1}}, z6, z4), IncompatibleMap);
}

TEST(AbelianKernel, BookkeepingOnRandomMaps) {
  // |ker| counted by brute force over the source elements
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<long long> sd{2 + (long long)(rng() % 5), 2 + (long long)(rng() % 5)};
    long long t = 12;
    auto src = PresentedAbelianGroup::from_factors(big({sd[0], sd[1]}));
    auto tgt = PresentedAbelianGroup::from_factors(big({t}));
    // a generator of order d may go to multiples of t / gcd(t, d)
    IntegerMatrix f(2, 1);
    for (int i = 0; i < 2; ++i) {
      long long step = t / std::gcd(t, sd[i]);
      f(i, 0) = step * static_cast<long long>(rng() % 12);
    }
    auto k = abelian_kernel(f, src, tgt);
    long long brute = 0;
    for (long long a = 0; a < sd[0]; ++a)
      for (long long b = 0; b < sd[1]; ++b)
        brute += (a * static_cast<long long>(f(0, 0)) + b * static_cast<long long>(f(1, 0))) % t == 0;
    EXPECT_EQ(*k.kernel.order(), brute);
  }
}

TEST(TensorModP, Examples) {
  EXPECT_EQ(tensor_mod_p(PresentedAbelianGroup::from_factors(big({20})), 2), 1u);
  EXPECT_EQ(tensor_mod_p(PresentedAbelianGroup::from_factors(big({4, 8})), 2), 2u);
  EXPECT_EQ(tensor_mod_p(PresentedAbelianGroup::from_factors(big({20})), 3), 0u);
  EXPECT_EQ(tensor_mod_p(PresentedAbelianGroup::from_factors(big({0, 3})), 3), 2u);
}

TEST(PresentedGroup, InvariantFactorsDivide) {
  PresentedAbelianGroup g(3, IntegerMatrix{{2, 4, 0}, {0, 6, 0}});
  const auto& d = g.invariant_factors();
  ASSERT_EQ(d, big({2, 6, 0}));
  EXPECT_FALSE(g.order());
  EXPECT_EQ(g.free_rank(), 1u);
  EXPECT_EQ(*PresentedAbelianGroup::from_factors(big({6, 10})).order(), 60);
}
