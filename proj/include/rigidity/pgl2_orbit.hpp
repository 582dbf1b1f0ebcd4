#pragma once

// PGL_2(A) acting on general-position tuples of P^1(A). Every orbit of
// (p+1)-tuples has a unique representative (0, inf, 1, (1,a_1), ...); the
// cross-ratio tuples (a_1, ...) span the bottom row D of the E^1 page.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "rigidity/abelian_homology.hpp"
#include "rigidity/errors.hpp"
#include "rigidity/proj_complex.hpp"
#include "rigidity/unit_group.hpp"

namespace rigidity {

// 2x2 matrix [a b; c d] up to unit scalars, acting on column vectors.
class ProjectiveMatrix {
 public:
  ProjectiveMatrix(RingElement a, RingElement b, RingElement c, RingElement d)
      : m_{std::move(a), std::move(b), std::move(c), std::move(d)} {
    if (!det().is_unit()) throw std::invalid_argument("matrix is not invertible");
    canonicalize();
  }
  static ProjectiveMatrix identity(const RingPtr& r) {
    return {r->one(), r->zero(), r->zero(), r->one()};
  }

  const RingElement& a() const { return m_[0]; }
  const RingElement& b() const { return m_[1]; }
  const RingElement& c() const { return m_[2]; }
  const RingElement& d() const { return m_[3]; }
  RingElement det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

  ProjPoint apply(const ProjPoint& v) const {
    return ProjPoint::normalize(m_[0] * v.u + m_[1] * v.w, m_[2] * v.u + m_[3] * v.w);
  }
  ProjectiveMatrix operator*(const ProjectiveMatrix& o) const {
    return {m_[0] * o.m_[0] + m_[1] * o.m_[2], m_[0] * o.m_[1] + m_[1] * o.m_[3],
            m_[2] * o.m_[0] + m_[3] * o.m_[2], m_[2] * o.m_[1] + m_[3] * o.m_[3]};
  }
  ProjectiveMatrix inverse() const { return {m_[3], -m_[1], -m_[2], m_[0]}; }

  bool is_identity() const {
    return m_[0].is_one() && m_[1].is_zero() && m_[2].is_zero() && m_[3].is_one();
  }
  friend bool operator==(const ProjectiveMatrix& x, const ProjectiveMatrix& y) {
    return x.m_ == y.m_;
  }

 private:
  // First unit entry in reading order becomes 1.
  void canonicalize() {
    for (const auto& e : m_)
      if (e.is_unit()) {
        RingElement s = e.inverse();
        for (auto& x : m_) x = x * s;
        return;
      }
  }
  std::array<RingElement, 4> m_;
};

using OrbitSimplex = std::vector<RingElement>;

struct Frame {
  ProjectiveMatrix transform;
  OrbitSimplex alphas;
};

// The unique g with g(v0, v1, v2) = (0, inf, 1), and the coordinates a_i of
// the remaining points g v_i = (1, a_i).
inline Frame canonical_frame(std::span<const ProjPoint> sigma) {
  if (sigma.size() < 3) throw std::invalid_argument("canonical frame needs at least three points");
  if (!is_general_position(sigma)) throw TupleNotGP();
  const auto& [u0, w0] = sigma[0];
  const auto& [u1, w1] = sigma[1];
  // h = [v0 v1]; h^{-1} v2 = (x, y)
  RingElement dinv = (u0 * w1 - u1 * w0).inverse();
  RingElement i00 = w1 * dinv, i01 = -(u1 * dinv), i10 = -(w0 * dinv), i11 = u0 * dinv;
  const auto& [u2, w2] = sigma[2];
  RingElement x = i00 * u2 + i01 * w2, y = i10 * u2 + i11 * w2;
  RingElement xi = x.inverse(), yi = y.inverse();
  Frame f{ProjectiveMatrix(i00 * xi, i01 * xi, i10 * yi, i11 * yi), {}};
  for (std::size_t i = 3; i < sigma.size(); ++i) {
    ProjPoint v = f.transform.apply(sigma[i]);
    f.alphas.push_back(v.w);  // v.u is 1 since v is in general position with inf
  }
  return f;
}

inline std::vector<ProjPoint> framed_tuple(const OrbitSimplex& s, const RingPtr& ring) {
  std::vector<ProjPoint> t{ProjPoint::zero(ring), ProjPoint::infinity(ring), ProjPoint::one(ring)};
  for (const auto& a : s) t.push_back(ProjPoint::affine(a));
  return t;
}

// a, 1-a units and pairwise differences units.
inline bool is_admissible_simplex(const OrbitSimplex& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s[i].is_unit() || !(s[i].ring()->one() - s[i]).is_unit()) return false;
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!(s[i] - s[j]).is_unit()) return false;
  }
  return true;
}

// Delete point i of (0, inf, 1, v_a1, ...) and re-canonicalize.
inline std::pair<int, OrbitSimplex> orbit_face(const OrbitSimplex& s, std::size_t i) {
  if (s.empty()) throw std::invalid_argument("orbit face needs a nonempty simplex");
  auto t = framed_tuple(s, s.front().ring());
  if (i >= t.size()) throw std::out_of_range("face index out of range");
  t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
  return {(i % 2 == 0) ? 1 : -1, canonical_frame(t).alphas};
}

// Elements x with x and 1-x units, in index order.
inline std::vector<RingElement> enumerate_admissible(const RingPtr& ring,
                                                     std::uint64_t guard = kP1Guard) {
  const std::uint64_t size = ring->checked_size(guard);
  std::vector<RingElement> out;
  for (std::uint64_t i = 0; i < size; ++i) {
    auto x = ring->element_at(i);
    if (x.is_unit() && (ring->one() - x).is_unit()) out.push_back(std::move(x));
  }
  return out;
}

struct OrbitComplex {
  RingPtr ring;
  std::uint32_t prime = 0;
  std::vector<TupleBasis> basis;           // basis[d]: element indices of (a_1..a_{d+1})
  std::vector<PrimeFieldMatrix> boundary;  // boundary[d]: D_d -> D_{d-1}; [0] empty
  std::vector<std::vector<char>> rational;  // all a_i constant
  bool rational_face_closed = true;        // checked on every computed face

  int dmax() const { return static_cast<int>(basis.size()) - 1; }
  std::size_t basis_size(int d) const { return basis.at(d).size(); }
  OrbitSimplex simplex(int d, std::size_t i) const {
    OrbitSimplex s;
    for (auto idx : basis.at(d)[i]) s.push_back(ring->element_at(idx));
    return s;
  }
  bool boundaries_compose_to_zero() const {
    for (std::size_t d = 1; d + 1 < basis.size(); ++d)
      if (!(boundary[d] * boundary[d + 1]).is_zero()) return false;
    return true;
  }
  // dim H_d(D) for d = 0..through (D_0 is the E^1_{3,0} column).
  std::vector<std::size_t> homology_dims(int through) const {
    if (through >= dmax()) throw std::invalid_argument("homology degree must be below dmax");
    std::vector<std::size_t> rank(through + 2, 0);
    for (int d = 1; d <= through + 1; ++d) rank[d] = gf_rank(boundary[d]);
    std::vector<std::size_t> h;
    for (int d = 0; d <= through; ++d) h.push_back(basis_size(d) - rank[d] - rank[d + 1]);
    return h;
  }
};

// Admissible tuples of lengths 1..dmax+1 as element-index tuples.
inline std::vector<TupleBasis> enumerate_orbit_bases(const RingPtr& ring, int dmax,
                                                     std::uint64_t guard = kBasisGuard) {
  auto adm = enumerate_admissible(ring);
  std::vector<std::uint32_t> color;
  for (const auto& a : adm) color.push_back(a.constant_term());
  auto local = enumerate_colored_tuples(color, dmax, guard);
  for (auto& b : local)
    for (auto& v : b.flat) v = static_cast<std::uint32_t>(adm[v].index());
  return local;
}

inline OrbitComplex assemble_orbit_complex(const RingPtr& ring, std::vector<TupleBasis> bases,
                                           std::uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("coefficient prime must be prime");
  OrbitComplex oc;
  oc.ring = ring;
  oc.prime = p;
  oc.basis = std::move(bases);
  const std::size_t levels = oc.basis.size();
  oc.boundary.resize(levels);
  oc.rational.resize(levels);
  const std::uint32_t q = ring->q();
  for (std::size_t d = 0; d < levels; ++d) {
    auto& flag = oc.rational[d];
    flag.resize(oc.basis[d].size());
    for (std::size_t i = 0; i < flag.size(); ++i) {
      auto t = oc.basis[d][i];
      flag[i] = std::all_of(t.begin(), t.end(), [&](std::uint32_t v) { return v < q; });
    }
  }
  std::vector<std::uint32_t> key;
  for (std::size_t d = 1; d < levels; ++d) {
    std::vector<PrimeFieldMatrix::Contribution> parts;
    const auto& lower = oc.basis[d - 1];
    for (std::size_t c = 0; c < oc.basis[d].size(); ++c) {
      OrbitSimplex s = oc.simplex(static_cast<int>(d), c);
      for (std::size_t i = 0; i < s.size() + 3; ++i) {
        auto [sign, face] = orbit_face(s, i);
        key.clear();
        for (const auto& a : face) key.push_back(static_cast<std::uint32_t>(a.index()));
        std::size_t row = lower.find(key);
        if (row == TupleBasis::npos) throw std::logic_error("orbit face is not admissible");
        if (oc.rational[d][c] && !oc.rational[d - 1][row]) oc.rational_face_closed = false;
        parts.push_back({static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(c), sign});
      }
    }
    oc.boundary[d] = PrimeFieldMatrix::accumulate(p, lower.size(), oc.basis[d].size(), parts);
  }
  oc.boundary[0] = PrimeFieldMatrix(p, 0, oc.basis[0].size(), {});
  return oc;
}

inline OrbitComplex build_orbit_complex(const RingPtr& ring, int dmax, std::uint32_t p) {
  return assemble_orbit_complex(ring, enumerate_orbit_bases(ring, dmax), p);
}

struct QuotientComplex {
  std::vector<std::vector<std::size_t>> keep;  // non-rational indices of D(R) per degree
  std::vector<PrimeFieldMatrix> boundary;      // induced, boundary[0] empty
  bool subcomplex_verified = false;            // D(k) embeds as a face-closed subcomplex
  std::vector<std::size_t> homology;           // dims H_0(Q), ..., reported only

  std::size_t basis_size(int d) const { return keep.at(d).size(); }
  bool boundaries_compose_to_zero() const {
    for (std::size_t d = 1; d + 1 < boundary.size(); ++d)
      if (!(boundary[d] * boundary[d + 1]).is_zero()) return false;
    return true;
  }
};

// Q = D(R)/D(k) for k the residue field of R embedded as constants.
// Homology is computed through degree dmax-1.
inline QuotientComplex build_quotient_complex(const OrbitComplex& dk, const OrbitComplex& dR) {
  if (!(dk.ring->field() == dR.ring->field()))
    throw std::invalid_argument("residue field does not match the coefficient field");
  if (dk.ring->num_monomials() != 1) throw std::invalid_argument("k must be the residue field");
  if (dk.prime != dR.prime || dk.dmax() != dR.dmax())
    throw std::invalid_argument("complexes built with different parameters");
  QuotientComplex qc;
  const std::size_t levels = dR.basis.size();
  bool ok = dR.rational_face_closed && dk.rational_face_closed;
  // constants keep their index under F_q -> R, so bases compare directly
  std::vector<std::vector<std::size_t>> image(levels);
  for (std::size_t d = 0; d < levels && ok; ++d) {
    std::size_t rational_count = 0;
    for (auto f : dR.rational[d]) rational_count += f ? 1 : 0;
    if (rational_count != dk.basis[d].size()) ok = false;
    for (std::size_t i = 0; i < dk.basis[d].size() && ok; ++i) {
      std::size_t j = dR.basis[d].find(dk.basis[d][i]);
      if (j == TupleBasis::npos || !dR.rational[d][j]) ok = false;
      image[d].push_back(j);
    }
  }
  // D(k)'s differential agrees with the restriction of D(R)'s to constants
  for (std::size_t d = 1; d < levels && ok; ++d) {
    auto restricted = dR.boundary[d].submatrix(image[d - 1], image[d]);
    if (restricted.entries().size() != dk.boundary[d].entries().size()) ok = false;
    for (std::size_t e = 0; e < restricted.entries().size() && ok; ++e) {
      const auto& x = restricted.entries()[e];
      const auto& y = dk.boundary[d].entries()[e];
      if (x.row != y.row || x.col != y.col || x.value != y.value) ok = false;
    }
  }
  qc.subcomplex_verified = ok;
  qc.keep.resize(levels);
  for (std::size_t d = 0; d < levels; ++d)
    for (std::size_t i = 0; i < dR.basis[d].size(); ++i)
      if (!dR.rational[d][i]) qc.keep[d].push_back(i);
  qc.boundary.resize(levels);
  qc.boundary[0] = PrimeFieldMatrix(dR.prime, 0, qc.keep[0].size(), {});
  for (std::size_t d = 1; d < levels; ++d)
    qc.boundary[d] = dR.boundary[d].submatrix(qc.keep[d - 1], qc.keep[d]);
  std::vector<std::size_t> rank(levels + 1, 0);
  for (std::size_t d = 1; d < levels; ++d) rank[d] = gf_rank(qc.boundary[d]);
  for (std::size_t d = 0; d + 1 < levels; ++d)
    qc.homology.push_back(qc.keep[d].size() - rank[d] - rank[d + 1]);
  return qc;
}

struct E1Page {
  std::uint32_t prime = 0;
  // dims[column][row]
  std::vector<std::vector<std::uint64_t>> dims;

  std::uint64_t at(int column, int row) const { return dims.at(column).at(row); }
};

// Columns 0, 1: H_q(A^x; Z/p) (Borel and torus stabilizers); column 2: the
// trivial stabilizer of (0, inf, 1); columns c >= 3: one trivial stabilizer
// per admissible (c-2)-tuple, so only row 0 is nonzero.
inline E1Page e1_page_from_factors(const RingPtr& ring, const std::vector<std::uint64_t>& unit_factors,
                                   std::uint32_t p, int qmax, int pmax = 4) {
  E1Page page;
  page.prime = p;
  auto h = homology_dims_formula(FiniteAbelianGroup(unit_factors), p, qmax);
  page.dims.assign(pmax + 1, std::vector<std::uint64_t>(qmax + 1, 0));
  for (int c = 0; c <= std::min(pmax, 1); ++c) page.dims[c] = h;
  if (pmax >= 2) page.dims[2][0] = 1;
  if (pmax >= 3) {
    auto bases = enumerate_orbit_bases(ring, pmax - 3);
    for (int c = 3; c <= pmax; ++c) page.dims[c][0] = bases[c - 3].size();
  }
  return page;
}

inline E1Page e1_page(const UnitGroupData& units, std::uint32_t p, int qmax, int pmax = 4) {
  return e1_page_from_factors(units.ring(), units.invariant_factors(), p, qmax, pmax);
}

// Brute force over PGL_2(A).
struct StabilizerReport {
  std::uint64_t group_order = 0;
  std::uint64_t point = 0, pair = 0, triple = 0;  // stabilizers of 0, (0,inf), (0,inf,1)
  std::uint64_t expected_point = 0, expected_pair = 0, expected_triple = 1;
  std::vector<std::uint64_t> orbit_counts;  // on C_0, C_1, C_2

  bool matches() const {
    return point == expected_point && pair == expected_pair && triple == expected_triple &&
           orbit_counts == std::vector<std::uint64_t>{1, 1, 1};
  }
};

inline std::vector<ProjectiveMatrix> enumerate_pgl2(const RingPtr& ring,
                                                    std::uint64_t guard = 100'000) {
  const std::uint64_t n = ring->checked_size(1000);
  if (n * n * n > 100 * guard) throw GuardExceeded("PGL_2 enumeration too large");
  std::vector<RingElement> el;
  for (std::uint64_t i = 0; i < n; ++i) el.push_back(ring->element_at(i));
  std::vector<ProjectiveMatrix> g;
  // a = 1
  for (const auto& b : el)
    for (const auto& c : el)
      for (const auto& d : el)
        if ((d - b * c).is_unit()) g.emplace_back(ring->one(), b, c, d);
  // a non-unit, b = 1
  for (const auto& a : el) {
    if (a.is_unit()) continue;
    for (const auto& c : el)
      for (const auto& d : el)
        if ((a * d - c).is_unit()) g.emplace_back(a, ring->one(), c, d);
  }
  if (g.size() > guard) throw GuardExceeded("|PGL_2(A)| exceeds guard");
  return g;
}

inline StabilizerReport stabilizer_orders(const RingPtr& ring) {
  ProjectiveLine line(ring);
  auto group = enumerate_pgl2(ring);
  StabilizerReport rep;
  rep.group_order = group.size();
  const std::uint64_t a = *ring->size();
  const std::uint64_t units = a - a / ring->q();
  rep.expected_point = units * a;  // |B/D|
  rep.expected_pair = units;       // |T/D|
  // action table
  const std::size_t np = line.size();
  std::vector<std::uint32_t> act(group.size() * np);
  for (std::size_t g = 0; g < group.size(); ++g)
    for (std::size_t v = 0; v < np; ++v)
      act[g * np + v] = static_cast<std::uint32_t>(line.id_of(group[g].apply(line[v])));
  const std::size_t zero = line.id_of(ProjPoint::zero(ring)), inf = line.id_of(ProjPoint::infinity(ring)),
                    one = line.id_of(ProjPoint::one(ring));
  for (std::size_t g = 0; g < group.size(); ++g) {
    const auto* row = &act[g * np];
    if (row[zero] != zero) continue;
    ++rep.point;
    if (row[inf] != inf) continue;
    ++rep.pair;
    if (row[one] == one) ++rep.triple;
  }
  auto bases = enumerate_colored_tuples(residue_colors(line.points()), 2);
  for (const auto& b : bases) {
    std::vector<char> seen(b.size(), 0);
    std::uint64_t orbits = 0;
    std::vector<std::uint32_t> img(b.arity);
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (seen[i]) continue;
      ++orbits;
      auto t = b[i];
      for (std::size_t g = 0; g < group.size(); ++g) {
        for (std::size_t k = 0; k < b.arity; ++k) img[k] = act[g * np + t[k]];
        seen[b.find(img)] = 1;
      }
    }
    rep.orbit_counts.push_back(orbits);
  }
  return rep;
}

// Uniform over PGL_2(A) by rejection from GL_2(A).
inline ProjectiveMatrix random_pgl2(const RingPtr& ring, std::mt19937_64& rng) {
  const std::uint64_t n = *ring->size();
  for (;;) {
    auto a = ring->element_at(rng() % n), b = ring->element_at(rng() % n),
         c = ring->element_at(rng() % n), d = ring->element_at(rng() % n);
    if ((a * d - b * c).is_unit()) return {a, b, c, d};
  }
}

inline std::vector<ProjPoint> random_gp_tuple(const ProjectiveLine& line, std::size_t len,
                                              std::mt19937_64& rng) {
  if (len > line.ring()->q() + 1) throw std::invalid_argument("no GP tuple that long");
  std::vector<ProjPoint> t;
  std::vector<std::uint32_t> used;
  while (t.size() < len) {
    std::size_t id = rng() % line.size();
    auto c = line.residue_class(id);
    if (std::find(used.begin(), used.end(), c) != used.end()) continue;
    used.push_back(c);
    t.push_back(line[id]);
  }
  return t;
}

}  // namespace rigidity
