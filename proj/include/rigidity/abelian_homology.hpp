#pragma once

// Dimensions of H_n(G; Z/p) for finite abelian G. The closed form is the
// Poincare series (1+x)^r / (1-x^2)^s with r = dim G (x) Z/p and s = dim of
// the p-torsion; an explicit periodic resolution covers cyclic groups
// independently.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rigidity/linalg/abelian_group.hpp"
#include "rigidity/linalg/prime_field_matrix.hpp"
#include "rigidity/unit_group.hpp"

namespace rigidity {

inline constexpr int kDefaultHomologyDegree = 6;

class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  // Factors equal to 1 are dropped; the rest must form a divisibility chain.
  explicit FiniteAbelianGroup(std::vector<std::uint64_t> factors) {
    for (auto d : factors) {
      if (d == 0) throw std::invalid_argument("finite abelian group needs nonzero factors");
      if (d != 1) d_.push_back(d);
    }
    for (std::size_t i = 1; i < d_.size(); ++i)
      if (d_[i] % d_[i - 1]) throw std::invalid_argument("invariant factors must divide successively");
  }
  // Arbitrary cyclic decomposition Z/m_1 x ... x Z/m_k, normalized.
  static FiniteAbelianGroup from_cyclic(const std::vector<std::uint64_t>& m) {
    std::vector<BigInt> f(m.begin(), m.end());
    auto g = PresentedAbelianGroup::from_factors(f);
    std::vector<std::uint64_t> d;
    for (const auto& v : g.invariant_factors()) d.push_back(static_cast<std::uint64_t>(v));
    return FiniteAbelianGroup(d);
  }

  const std::vector<std::uint64_t>& invariant_factors() const { return d_; }
  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (auto d : d_) o *= d;
    return o;
  }
  PresentedAbelianGroup presentation() const {
    return PresentedAbelianGroup::from_factors(std::vector<BigInt>(d_.begin(), d_.end()));
  }

 private:
  std::vector<std::uint64_t> d_;
};

struct HomologyRanks {
  std::size_t r = 0;  // dim G (x) Z/p
  std::size_t s = 0;  // dim _pG
};

// r from the cokernel of multiplication by p, s from its kernel; both
// through the presented-group machinery.
inline HomologyRanks homology_ranks(const FiniteAbelianGroup& g, std::uint64_t p) {
  auto pres = g.presentation();
  const std::size_t n = pres.generator_count();
  HomologyRanks out;
  // G / pG = Z^n / (R + pZ^n)
  IntegerMatrix rel = pres.relations().stacked([&] {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = p;
    return m;
  }());
  PresentedAbelianGroup quotient(n, rel);
  for (const auto& d : quotient.invariant_factors()) {
    if (d != p) throw std::logic_error("G/pG is not elementary abelian");
    ++out.r;
  }
  IntegerMatrix times_p(n, n);
  for (std::size_t i = 0; i < n; ++i) times_p(i, i) = p;
  auto ker = abelian_kernel(times_p, pres, pres);
  BigInt order = *ker.kernel.order();
  while (order > 1) {
    if (order % p != 0) throw std::logic_error("p-torsion subgroup order is not a power of p");
    order /= p;
    ++out.s;
  }
  return out;
}

inline std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

// Coefficients of (1+x)^r (1-x^2)^{-s} through degree nmax.
inline std::vector<std::uint64_t> poincare_coefficients(std::size_t r, std::size_t s, int nmax) {
  std::vector<std::uint64_t> c(nmax + 1, 0);
  for (int n = 0; n <= nmax; ++n)
    for (int k = 0; 2 * k <= n; ++k) {
      std::uint64_t gamma = s == 0 ? (k == 0 ? 1 : 0) : binomial(std::int64_t(s) + k - 1, k);
      c[n] += binomial(std::int64_t(r), n - 2 * k) * gamma;
    }
  return c;
}

inline std::vector<std::uint64_t> homology_dims_formula(const FiniteAbelianGroup& g,
                                                        std::uint64_t p,
                                                        int nmax = kDefaultHomologyDegree) {
  if (!is_prime(p)) throw std::invalid_argument("coefficient prime must be prime");
  auto ranks = homology_ranks(g, p);
  if (ranks.r != ranks.s) throw std::logic_error("dim G/pG differs from dim _pG for finite G");
  return poincare_coefficients(ranks.r, ranks.s, nmax);
}

// H_n(Z/m; Z/p) from the periodic resolution
//   Z[G] <-(T-1)- Z[G] <-(N)- Z[G] <-(T-1)- ...
// tensored down to Z/p, where T-1 becomes 0 and N becomes m.
inline std::vector<std::uint64_t> cyclic_oracle(std::uint64_t m, std::uint64_t p,
                                                int nmax = kDefaultHomologyDegree) {
  if (m == 0) throw std::invalid_argument("cyclic group order must be positive");
  const auto q = static_cast<std::uint32_t>(p);
  auto differential_rank = [&](int n) -> std::size_t {
    if (n <= 0) return 0;
    std::uint64_t entry = (n % 2 == 1) ? 0 : m % p;
    std::vector<PrimeFieldMatrix::Entry> e;
    if (entry) e.push_back({0, 0, static_cast<std::uint32_t>(entry)});
    return gf_rank(PrimeFieldMatrix(q, 1, 1, e));
  };
  std::vector<std::uint64_t> out;
  for (int n = 0; n <= nmax; ++n)
    out.push_back(1 - differential_rank(n) - differential_rank(n + 1));
  return out;
}

struct UnitHomologyComparison {
  std::vector<std::uint64_t> dims_k, dims_R;
  HomologyRanks ranks_k, ranks_R;
  bool equal = false;
};

inline UnitHomologyComparison unit_homology_compare(const UnitGroupData& k_units,
                                                    const UnitGroupData& R_units, std::uint64_t p,
                                                    int nmax = kDefaultHomologyDegree) {
  FiniteAbelianGroup gk(k_units.invariant_factors()), gR(R_units.invariant_factors());
  UnitHomologyComparison c;
  c.ranks_k = homology_ranks(gk, p);
  c.ranks_R = homology_ranks(gR, p);
  c.dims_k = homology_dims_formula(gk, p, nmax);
  c.dims_R = homology_dims_formula(gR, p, nmax);
  c.equal = c.dims_k == c.dims_R;
  return c;
}

}  // namespace rigidity
