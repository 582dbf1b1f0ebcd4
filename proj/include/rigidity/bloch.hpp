#pragma once

// Pre-Bloch group p(A) on generators [x] with x, 1-x units, modulo the
// five-term relation; phi([x]) = x (x) (1-x) into the sigma-coinvariants of
// A^x (x) A^x; B(A) = ker phi.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rigidity/errors.hpp"
#include "rigidity/linalg/abelian_group.hpp"
#include "rigidity/linalg/prime_field_matrix.hpp"
#include "rigidity/pgl2_orbit.hpp"
#include "rigidity/unit_group.hpp"

namespace rigidity {

inline constexpr std::array<int, 5> kFiveTermSigns{1, -1, 1, -1, 1};

// x, y, 1-x, 1-y, x-y all units.
inline bool is_admissible_pair(const RingElement& x, const RingElement& y) {
  const auto one = x.ring()->one();
  return x.is_unit() && y.is_unit() && (one - x).is_unit() && (one - y).is_unit() &&
         (x - y).is_unit();
}

// (x, y, y/x, (1-x^-1)/(1-y^-1), (1-x)/(1-y)) with signs +,-,+,-,+, or
// nullopt for an inadmissible pair.
inline std::optional<std::array<RingElement, 5>> five_term_relation(const RingElement& x,
                                                                    const RingElement& y) {
  if (!is_admissible_pair(x, y)) return std::nullopt;
  const auto one = x.ring()->one();
  return std::array<RingElement, 5>{x, y, y / x, (one - x.inverse()) / (one - y.inverse()),
                                    (one - x) / (one - y)};
}

struct PreBlochPresentation {
  RingPtr ring;
  std::vector<RingElement> generators;
  std::vector<std::int64_t> generator_of;  // element index -> generator id, or -1
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // generator ids (x, y) per row
  IntegerMatrix relations;

  std::size_t id_of(const RingElement& x) const {
    auto g = generator_of.at(x.index());
    if (g < 0) throw std::invalid_argument("element is not a pre-Bloch generator");
    return static_cast<std::size_t>(g);
  }
};

// `order`, when given, permutes the generator list: generator i is the
// order[i]-th admissible element.
inline PreBlochPresentation build_pre_bloch(const RingPtr& ring,
                                            std::span<const std::size_t> order = {}) {
  PreBlochPresentation pb;
  pb.ring = ring;
  auto adm = enumerate_admissible(ring);
  if (!order.empty()) {
    if (order.size() != adm.size()) throw std::invalid_argument("permutation has the wrong length");
    for (auto i : order) pb.generators.push_back(adm.at(i));
  } else {
    pb.generators = adm;
  }
  pb.generator_of.assign(*ring->size(), -1);
  for (std::size_t i = 0; i < pb.generators.size(); ++i) {
    auto& slot = pb.generator_of[pb.generators[i].index()];
    if (slot >= 0) throw std::invalid_argument("permutation repeats a generator");
    slot = static_cast<std::int64_t>(i);
  }
  const std::size_t n = pb.generators.size();
  pb.relations = IntegerMatrix(0, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto rel = five_term_relation(pb.generators[i], pb.generators[j]);
      if (!rel) continue;
      std::vector<BigInt> row(n);
      for (std::size_t t = 0; t < 5; ++t) row[pb.id_of((*rel)[t])] += kFiveTermSigns[t];
      pb.relations.append_row(row);
      pb.pairs.emplace_back(i, j);
    }
  return pb;
}

// (A^x (x) A^x)_sigma on e_ij = g_i (x) g_j, g the invariant-factor basis:
// gcd(d_i, d_j) e_ij = 0 and e_ij + e_ji = 0.
struct SigmaTensorSquare {
  std::vector<std::uint64_t> factors;
  PresentedAbelianGroup group;

  std::size_t rank() const { return factors.size(); }
  std::size_t index(std::size_t i, std::size_t j) const { return i * rank() + j; }
};

inline SigmaTensorSquare sigma_tensor_square(const std::vector<std::uint64_t>& factors) {
  SigmaTensorSquare t;
  t.factors = factors;
  const std::size_t r = factors.size(), n = r * r;
  IntegerMatrix rel(0, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<BigInt> row(n);
      row[t.index(i, j)] = std::gcd(factors[i], factors[j]);
      rel.append_row(row);
      if (j < i) continue;
      std::vector<BigInt> sym(n);
      sym[t.index(i, j)] += 1;
      sym[t.index(j, i)] += 1;
      rel.append_row(sym);
    }
  t.group = PresentedAbelianGroup(n, std::move(rel));
  return t;
}

// x (x) y in e_ij coordinates.
inline std::vector<BigInt> tensor_word(const UnitGroupData& units, const SigmaTensorSquare& t,
                                       const RingElement& x, const RingElement& y) {
  const auto& a = units.dlog(x);
  const auto& b = units.dlog(y);
  std::vector<BigInt> w(t.rank() * t.rank());
  for (std::size_t i = 0; i < t.rank(); ++i)
    for (std::size_t j = 0; j < t.rank(); ++j) w[t.index(i, j)] = BigInt(a[i]) * b[j];
  return w;
}

struct BlochResult {
  PreBlochPresentation pre;
  PresentedAbelianGroup pre_group;
  SigmaTensorSquare target;
  IntegerMatrix phi;  // row per generator
  KernelResult bloch;
  std::uint32_t prime = 0;

  const std::vector<BigInt>& pre_bloch_factors() const { return pre_group.invariant_factors(); }
  const std::vector<BigInt>& bloch_factors() const { return bloch.kernel.invariant_factors(); }
  std::size_t bloch_mod_p() const { return tensor_mod_p(bloch.kernel, prime); }
};

inline BlochResult compute_bloch(const UnitGroupData& units, std::uint32_t p,
                                 std::span<const std::size_t> order = {}) {
  if (!is_prime(p)) throw std::invalid_argument("coefficient prime must be prime");
  const auto& ring = units.ring();
  const auto one = ring->one();
  BlochResult r{build_pre_bloch(ring, order), {}, sigma_tensor_square(units.invariant_factors()),
                {}, {}, p};
  const std::size_t n = r.pre.generators.size();
  r.pre_group = PresentedAbelianGroup(n, r.pre.relations);
  r.phi = IntegerMatrix(0, r.target.group.generator_count());
  for (const auto& x : r.pre.generators) r.phi.append_row(tensor_word(units, r.target, x, one - x));
  for (std::size_t i = 0; i < r.pre.relations.rows(); ++i)
    if (!r.target.group.is_zero(r.phi.left_multiply(r.pre.relations.row(i))))
      throw PhiNotWellDefined("five-term relation " + std::to_string(i) + " survives phi");
  r.bloch = abelian_kernel(r.phi, r.pre_group, r.target.group);
  return r;
}

namespace detail {

inline PrimeFieldMatrix reduce_mod(const IntegerMatrix& m, std::uint32_t p) {
  std::vector<PrimeFieldMatrix::Entry> e;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      BigInt v = m(i, j) % p;
      if (v < 0) v += p;
      if (v != 0)
        e.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                     static_cast<std::uint32_t>(v)});
    }
  return {p, m.rows(), m.cols(), std::move(e)};
}

}  // namespace detail

struct BlochComparison {
  bool relations_preserved = false;  // [x]_k -> [x]_R kills p(k)'s relations
  bool natural = false;              // phi_R o incl = (units map) o phi_k
  bool carries_kernel = false;       // B(k) lands in B(R)
  IntegerMatrix kernel_map;          // rows: B(k) generators in B(R) generators
  std::size_t dim_k = 0, dim_R = 0, image_dim = 0;

  bool verified() const { return relations_preserved && natural && carries_kernel; }
  bool injective() const { return image_dim == dim_k; }
  bool surjective() const { return image_dim == dim_R; }
};

// Induced map B(k) (x) Z/p -> B(R) (x) Z/p for k embedded as constants.
inline BlochComparison bloch_comparison_mod_p(const UnitGroupData& k_units, const BlochResult& bk,
                                              const UnitGroupData& R_units, const BlochResult& bR) {
  const auto& k = k_units.ring();
  const auto& R = R_units.ring();
  if (!(k->field() == R->field())) throw std::invalid_argument("k is not the residue field of R");
  if (bk.prime != bR.prime) throw std::invalid_argument("results computed for different primes");
  const std::uint32_t p = bk.prime;
  BlochComparison c;
  const std::size_t ak = bk.pre.generators.size(), aR = bR.pre.generators.size();

  IntegerMatrix incl(ak, aR);
  for (std::size_t i = 0; i < ak; ++i)
    incl(i, bR.pre.id_of(embed_constant(bk.pre.generators[i], R))) = 1;

  c.relations_preserved = true;
  for (std::size_t i = 0; i < bk.pre.relations.rows() && c.relations_preserved; ++i)
    c.relations_preserved = bR.pre_group.is_zero(incl.left_multiply(bk.pre.relations.row(i)));

  // e_ij -> sum M_ia M_jb e_ab with M the unit-group map on generators
  auto gens = k_units.generators();
  const std::size_t rk = gens.size(), rR = bR.target.rank();
  std::vector<std::vector<std::uint64_t>> M;
  for (const auto& g : gens) M.push_back(R_units.dlog(embed_constant(g, R)));
  IntegerMatrix tmap(rk * rk, rR * rR);
  for (std::size_t i = 0; i < rk; ++i)
    for (std::size_t j = 0; j < rk; ++j)
      for (std::size_t a = 0; a < rR; ++a)
        for (std::size_t b = 0; b < rR; ++b)
          tmap(bk.target.index(i, j), bR.target.index(a, b)) += BigInt(M[i][a]) * M[j][b];
  c.natural = true;
  for (std::size_t i = 0; i < ak && c.natural; ++i) {
    auto lhs = bR.phi.left_multiply(incl.row(i));
    auto rhs = tmap.left_multiply(bk.phi.row(i));
    for (std::size_t t = 0; t < lhs.size(); ++t) lhs[t] -= rhs[t];
    c.natural = bR.target.group.is_zero(lhs);
  }

  const std::size_t gk = bk.bloch.inclusion.rows(), gR = bR.bloch.inclusion.rows();
  c.kernel_map = IntegerMatrix(0, gR);
  c.carries_kernel = true;
  for (std::size_t i = 0; i < gk && c.carries_kernel; ++i) {
    std::vector<BigInt> coords;
    c.carries_kernel =
        in_row_space(bR.bloch.lattice, incl.left_multiply(bk.bloch.inclusion.row(i)), &coords);
    if (c.carries_kernel) c.kernel_map.append_row(coords);
  }
  if (!c.carries_kernel) return c;
  if (gk == 0) c.kernel_map = IntegerMatrix(0, gR);

  const auto& rel_k = bk.bloch.kernel.relations();
  const auto& rel_R = bR.bloch.kernel.relations();
  c.dim_k = tensor_mod_p(bk.bloch.kernel, p);
  c.dim_R = tensor_mod_p(bR.bloch.kernel, p);
  if (c.dim_k != gk - gf_rank(detail::reduce_mod(rel_k, p)) ||
      c.dim_R != gR - gf_rank(detail::reduce_mod(rel_R, p)))
    throw std::logic_error("B (x) Z/p dimension disagrees with its presentation");
  const std::size_t base = gf_rank(detail::reduce_mod(rel_R, p));
  c.image_dim = gf_rank(detail::reduce_mod(rel_R.stacked(c.kernel_map), p)) - base;
  return c;
}

struct FaceFiveTermCheck {
  std::size_t pairs = 0, matched = 0;
  bool pass() const { return pairs == matched; }
};

// Face i of (0, inf, 1, v_x, v_y) against relation term 4 - i.
inline FaceFiveTermCheck face_five_term_crosscheck(const RingPtr& ring) {
  FaceFiveTermCheck out;
  auto adm = enumerate_admissible(ring);
  for (const auto& x : adm)
    for (const auto& y : adm) {
      auto rel = five_term_relation(x, y);
      if (!rel) continue;
      ++out.pairs;
      bool ok = true;
      OrbitSimplex s{x, y};
      for (std::size_t i = 0; i < 5 && ok; ++i) {
        auto [sign, face] = orbit_face(s, i);
        ok = face.size() == 1 && face[0] == (*rel)[4 - i] && sign == kFiveTermSigns[4 - i];
      }
      out.matched += ok;
    }
  return out;
}

}  // namespace rigidity
