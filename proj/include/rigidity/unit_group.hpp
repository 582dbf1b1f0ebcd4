#pragma once

// Unit groups of truncated local rings: structure with a full discrete-log
// table, p-th roots by residue search plus Newton lifting, roots of unity,
// and the class map A^x -> k^x/(k^x)^p.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rigidity/errors.hpp"
#include "rigidity/linalg/abelian_group.hpp"
#include "rigidity/ring.hpp"

namespace rigidity {

inline constexpr std::uint64_t kUnitGroupGuard = 1'000'000;

// y with y^p = x, or nullopt when the residue of x is not a p-th power in
// F_q. Among several roots the one lifting the smallest residue root is
// returned.
inline std::optional<RingElement> hensel_pth_root(const RingElement& x, std::uint32_t p) {
  const auto& ring = x.ring();
  const auto& f = ring->field();
  if (!is_prime(p)) throw std::invalid_argument("root degree must be prime");
  if (p % f.characteristic() == 0)
    throw std::invalid_argument("p equals the residue characteristic; p is not invertible");
  if (!x.is_unit()) throw NotAUnit();
  std::optional<FieldElem> root;
  for (FieldElem c = 1; c < f.order() && !root; ++c)
    if (f.pow(c, p) == x.constant_term()) root = c;
  if (!root) return std::nullopt;
  RingElement y = ring->constant(*root);
  const RingElement p_elem = ring->from_int(p);
  for (int it = 0; it <= ring->trunc(); ++it) {
    RingElement err = y.pow(p) - x;
    if (err.is_zero()) return y;
    y = y - err / (p_elem * y.pow(p - 1));
  }
  throw std::logic_error("Newton lifting did not converge");
}

class UnitGroupData {
 public:
  explicit UnitGroupData(RingPtr ring, std::uint64_t guard = kUnitGroupGuard)
      : ring_(std::move(ring)) {
    const std::uint64_t size = ring_->checked_size(guard * ring_->q());
    ordinal_.assign(size, -1);
    for (std::uint64_t i = 0; i < size; ++i) {
      // constant coefficient is the least significant digit
      if (i % ring_->q() == 0) continue;
      ordinal_[i] = static_cast<std::int64_t>(units_.size());
      units_.push_back(i);
    }
    if (units_.size() > guard)
      throw GuardExceeded("unit group larger than " + std::to_string(guard));
    elements_.reserve(units_.size());
    for (auto idx : units_) elements_.push_back(ring_->element_at(idx));
    const std::size_t one = static_cast<std::size_t>(ordinal_[1]);
    structure_ = finite_abelian_structure(units_.size(), one, [&](std::size_t a, std::size_t b) {
      return static_cast<std::size_t>(ordinal_[(elements_[a] * elements_[b]).index()]);
    });
  }

  const RingPtr& ring() const { return ring_; }
  std::size_t order() const { return units_.size(); }
  const std::vector<RingElement>& units() const { return elements_; }
  const std::vector<std::uint64_t>& invariant_factors() const {
    return structure_.invariant_factors;
  }
  std::vector<RingElement> generators() const {
    std::vector<RingElement> g;
    for (auto id : structure_.generators) g.push_back(elements_[id]);
    return g;
  }
  const std::vector<std::uint64_t>& dlog(const RingElement& u) const {
    return structure_.dlog.at(ordinal(u));
  }
  std::size_t ordinal(const RingElement& u) const {
    if (!u.is_unit()) throw NotAUnit();
    return static_cast<std::size_t>(ordinal_.at(u.index()));
  }
  RingElement from_exponents(const std::vector<std::uint64_t>& e) const {
    RingElement r = ring_->one();
    auto g = generators();
    for (std::size_t i = 0; i < e.size(); ++i) r = r * g[i].pow(e[i]);
    return r;
  }

  // F_q^x factor followed by the invariant factors of 1 + m, i.e. the
  // decomposition A^x = F_q^x x (1 + m).
  std::vector<std::uint64_t> residue_split_factors() const {
    const std::uint64_t p0 = ring_->field().characteristic();
    std::vector<std::uint64_t> out{ring_->q() - 1};
    for (auto d : structure_.invariant_factors) {
      std::uint64_t part = 1;
      while (d % p0 == 0) {
        d /= p0;
        part *= p0;
      }
      if (part > 1) out.push_back(part);
    }
    return out;
  }

 private:
  RingPtr ring_;
  std::vector<std::uint64_t> units_;
  std::vector<std::int64_t> ordinal_;
  std::vector<RingElement> elements_;
  FiniteAbelianStructure structure_;
};

// Derived data for one coefficient prime p != char.
struct UnitPrimeReport {
  std::uint32_t prime = 0;
  std::vector<std::uint64_t> mu_p;           // indices of x with x^p = 1
  std::vector<std::uint64_t> mu_p_residue;   // same inside F_q
  std::vector<std::uint64_t> kernel_pi;      // units whose residue is a p-th power
  std::vector<std::uint64_t> pth_powers;     // (A^x)^p
  std::vector<std::uint64_t> hensel_roots;   // units where hensel_pth_root succeeds
  std::size_t r = 0;                         // dim A^x (x) Z/p
  std::size_t s = 0;                         // dim of the p-torsion
  std::size_t r_residue = 0, s_residue = 0;  // same for k^x

  bool kernel_is_pth_powers() const { return kernel_pi == pth_powers; }
  bool hensel_matches_kernel() const { return hensel_roots == kernel_pi; }
  bool roots_of_unity_constant() const { return mu_p == mu_p_residue; }
};

inline UnitPrimeReport unit_prime_report(const UnitGroupData& units, std::uint32_t p) {
  const auto& ring = units.ring();
  const auto& f = ring->field();
  if (!is_prime(p)) throw std::invalid_argument("coefficient prime must be prime");
  if (p == f.characteristic()) throw std::invalid_argument("p must differ from the characteristic");
  UnitPrimeReport rep;
  rep.prime = p;
  std::vector<char> residue_power(f.order(), 0);
  for (FieldElem c = 1; c < f.order(); ++c) residue_power[f.pow(c, p)] = 1;
  for (FieldElem c = 1; c < f.order(); ++c)
    if (f.pow(c, p) == 1) rep.mu_p_residue.push_back(c);

  std::vector<std::uint64_t> powers;
  for (const auto& u : units.units()) {
    auto up = u.pow(p);
    if (up.is_one()) rep.mu_p.push_back(u.index());
    if (residue_power[u.constant_term()]) rep.kernel_pi.push_back(u.index());
    powers.push_back(up.index());
    if (auto y = hensel_pth_root(u, p)) {
      if (y->pow(p) != u) throw std::logic_error("returned root does not satisfy y^p = x");
      rep.hensel_roots.push_back(u.index());
    }
  }
  std::sort(powers.begin(), powers.end());
  powers.erase(std::unique(powers.begin(), powers.end()), powers.end());
  rep.pth_powers = std::move(powers);

  for (auto d : units.invariant_factors())
    if (d % p == 0) ++rep.r;
  std::size_t m = rep.mu_p.size();
  while (m > 1 && m % p == 0) {
    m /= p;
    ++rep.s;
  }
  if (m != 1) throw std::logic_error("p-torsion subgroup order is not a power of p");
  rep.r_residue = (f.order() - 1) % p == 0 ? 1 : 0;
  std::size_t mk = rep.mu_p_residue.size();
  while (mk > 1 && mk % p == 0) {
    mk /= p;
    ++rep.s_residue;
  }
  return rep;
}

inline constexpr std::uint64_t kTorsionScanGuard = 20'000'000;

// Units with x^e = 1. Only fibres over residues c with c^e = 1 can contain
// such x, so only those are scanned.
inline std::vector<std::uint64_t> roots_of_unity(const RingPtr& ring, std::uint64_t e,
                                                 std::uint64_t guard = kTorsionScanGuard) {
  const auto& f = ring->field();
  const std::uint64_t size = ring->checked_size(UINT64_MAX / 2);
  const std::uint64_t q = ring->q(), fibre = size / q;
  std::vector<FieldElem> residues;
  for (FieldElem c = 1; c < q; ++c)
    if (f.pow(c, e) == 1) residues.push_back(c);
  if (residues.size() * fibre > guard) throw GuardExceeded("torsion scan exceeds guard");
  std::vector<std::uint64_t> out;
  for (std::uint64_t j = 0; j < fibre; ++j)
    for (auto c : residues) {
      const std::uint64_t idx = j * q + c;
      if (ring->element_at(idx).pow(e).is_one()) out.push_back(idx);
    }
  std::sort(out.begin(), out.end());
  return out;
}

// Invariant factors of the p-part of A^x for p != char, read off from the
// counts |{x : x^(p^j) = 1}|; the factors with exponent >= j number
// log_p of the ratio of consecutive counts.
inline std::vector<std::uint64_t> primary_unit_factors(const RingPtr& ring, std::uint32_t p,
                                                       std::uint64_t guard = kTorsionScanGuard) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (p == ring->field().characteristic()) throw std::invalid_argument("p must differ from the characteristic");
  std::uint64_t part = ring->q() - 1, top = 1;
  int e = 0;
  while (part % p == 0) part /= p, top *= p, ++e;
  std::vector<int> at_least;  // at_least[j-1] = #factors with exponent >= j
  std::uint64_t prev = 1, pj = 1;
  for (int j = 1; j <= e; ++j) {
    pj *= p;
    const std::uint64_t c = roots_of_unity(ring, pj, guard).size();
    if (c % prev) throw std::logic_error("torsion counts are not nested");
    std::uint64_t ratio = c / prev;
    int k = 0;
    while (ratio > 1 && ratio % p == 0) ratio /= p, ++k;
    if (ratio != 1) throw std::logic_error("torsion count ratio is not a power of p");
    at_least.push_back(k);
    prev = c;
  }
  if (prev != top) throw std::logic_error("p-part order mismatch");
  const int width = at_least.empty() ? 0 : at_least.front();
  std::vector<std::uint64_t> out;
  for (int i = width - 1; i >= 0; --i) {
    std::uint64_t d = 1;
    for (int k : at_least)
      if (k > i) d *= p;
    out.push_back(d);
  }
  return out;
}

}  // namespace rigidity
