#pragma once

// P^1(A) for a truncated local ring A, the general-position relation, and
// the chain complex whose degree-d chains are ordered (d+1)-tuples of
// pairwise general-position points, with Z/p coefficients.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "rigidity/errors.hpp"
#include "rigidity/linalg/prime_field_matrix.hpp"
#include "rigidity/ring.hpp"

namespace rigidity {

inline constexpr std::uint64_t kP1Guard = 100'000;
inline constexpr std::uint64_t kBasisGuard = 1'000'000;

// Canonical representative: (1, b), or (a, 1) with a a non-unit.
struct ProjPoint {
  RingElement u, w;

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.u == b.u && a.w == b.w; }

  static ProjPoint normalize(const RingElement& u, const RingElement& w) {
    if (u.is_unit()) return {u.ring()->one(), w / u};
    if (w.is_unit()) return {u / w, w.ring()->one()};
    throw std::invalid_argument("vector is not unimodular");
  }
  static ProjPoint zero(const RingPtr& r) { return {r->one(), r->zero()}; }
  static ProjPoint infinity(const RingPtr& r) { return {r->zero(), r->one()}; }
  static ProjPoint one(const RingPtr& r) { return {r->one(), r->one()}; }
  static ProjPoint affine(const RingElement& b) { return {b.ring()->one(), b}; }

  // Residue class in P^1(F_q), numbered 0..q-1 for (1, c) and q for (0, 1).
  std::uint32_t residue_class() const {
    const auto& f = u.ring()->field();
    if (u.is_unit()) return f.mul(w.constant_term(), f.inv(u.constant_term()));
    return f.order();
  }
};

inline RingElement det2(const ProjPoint& a, const ProjPoint& b) { return a.u * b.w - b.u * a.w; }

// Pairwise 2x2 determinants are units.
inline bool is_general_position(std::span<const ProjPoint> pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (!det2(pts[i], pts[j]).is_unit()) return false;
  return true;
}

class ProjectiveLine {
 public:
  explicit ProjectiveLine(RingPtr ring, std::uint64_t guard = kP1Guard) : ring_(std::move(ring)) {
    const std::uint64_t size = ring_->checked_size(guard);
    const std::uint64_t nonunits = size / ring_->q();
    if (size + nonunits > guard)
      throw GuardExceeded("|P^1(A)| exceeds " + std::to_string(guard));
    points_.reserve(size + nonunits);
    for (std::uint64_t b = 0; b < size; ++b) points_.push_back(ProjPoint::affine(ring_->element_at(b)));
    for (std::uint64_t j = 0; j < nonunits; ++j)
      points_.push_back({ring_->element_at(j * ring_->q()), ring_->one()});
    for (const auto& p : points_) residue_.push_back(p.residue_class());
  }

  const RingPtr& ring() const { return ring_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<ProjPoint>& points() const { return points_; }
  const ProjPoint& operator[](std::size_t i) const { return points_[i]; }
  std::uint32_t residue_class(std::size_t id) const { return residue_[id]; }

  // Id of a canonical point: (1, b) -> index(b); (a, 1) -> |A| + index(a)/q.
  std::size_t id_of(const ProjPoint& p) const {
    const std::uint64_t size = *ring_->size();
    if (p.u.is_one()) return p.w.index();
    if (!p.w.is_one() || p.u.is_unit()) throw std::invalid_argument("point is not canonical");
    return size + p.u.index() / ring_->q();
  }

 private:
  RingPtr ring_;
  std::vector<ProjPoint> points_;
  std::vector<std::uint32_t> residue_;
};

inline std::vector<ProjPoint> enumerate_p1(const RingPtr& ring) { return ProjectiveLine(ring).points(); }

// Flat list of ordered tuples of a fixed length, sorted lexicographically.
struct TupleBasis {
  std::size_t arity = 0;
  std::vector<std::uint32_t> flat;

  std::size_t size() const { return arity ? flat.size() / arity : 0; }
  std::span<const std::uint32_t> operator[](std::size_t i) const {
    return {flat.data() + i * arity, arity};
  }
  // Position of `t` (length arity), or npos.
  std::size_t find(std::span<const std::uint32_t> t) const {
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      auto m = (*this)[mid];
      if (std::lexicographical_compare(m.begin(), m.end(), t.begin(), t.end()))
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo < size() && std::equal(t.begin(), t.end(), (*this)[lo].begin())) return lo;
    return npos;
  }
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

// Ordered tuples over vertices 0..n-1 with pairwise distinct colors, for
// lengths 1..dmax+1. Color equality is exactly failure of general position.
inline std::vector<TupleBasis> enumerate_colored_tuples(const std::vector<std::uint32_t>& color,
                                                        int dmax,
                                                        std::uint64_t guard = kBasisGuard) {
  std::vector<TupleBasis> bases(dmax + 1);
  const std::size_t n = color.size();
  for (int d = 0; d <= dmax; ++d) bases[d].arity = d + 1;
  std::vector<std::uint32_t> cur;
  std::function<void()> rec = [&] {
    const std::size_t len = cur.size();
    if (len) {
      auto& b = bases[len - 1];
      b.flat.insert(b.flat.end(), cur.begin(), cur.end());
      if (b.size() > guard)
        throw GuardExceeded("degree " + std::to_string(len - 1) + " basis exceeds " +
                            std::to_string(guard));
    }
    if (static_cast<int>(len) == dmax + 1) return;
    for (std::uint32_t v = 0; v < n; ++v) {
      bool ok = true;
      for (auto c : cur)
        if (color[c] == color[v]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(v);
      rec();
      cur.pop_back();
    }
  };
  rec();
  return bases;
}

// Alternating-face boundary C_d -> C_{d-1} of tuple bases, over Z/p.
inline PrimeFieldMatrix tuple_boundary(const TupleBasis& lower, const TupleBasis& upper,
                                       std::uint32_t p) {
  std::vector<PrimeFieldMatrix::Entry> e;
  e.reserve(upper.size() * upper.arity);
  std::vector<std::uint32_t> face(lower.arity);
  for (std::size_t c = 0; c < upper.size(); ++c) {
    auto t = upper[c];
    for (std::size_t i = 0; i < upper.arity; ++i) {
      std::size_t k = 0;
      for (std::size_t j = 0; j < upper.arity; ++j)
        if (j != i) face[k++] = t[j];
      std::size_t row = lower.find(face);
      if (row == TupleBasis::npos) throw std::logic_error("face missing from lower basis");
      std::uint32_t v = (i % 2 == 0) ? 1 : p - 1;
      e.push_back({static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(c), v % p});
    }
  }
  return {p, lower.size(), upper.size(), std::move(e)};
}

enum class RankBackend { Sparse, Dense };

inline std::size_t matrix_rank(const PrimeFieldMatrix& m, RankBackend b) {
  return b == RankBackend::Sparse ? gf_rank(m) : dense_rank(m);
}

struct GPComplex {
  RingPtr ring;
  std::uint32_t prime = 0;
  std::vector<ProjPoint> vertices;
  std::vector<TupleBasis> basis;        // basis[d]: (d+1)-tuples of vertex ids
  std::vector<PrimeFieldMatrix> boundary;  // boundary[d]: C_d -> C_{d-1}; [0] empty
  PrimeFieldMatrix augmentation;        // 1 x |C_0|, all ones

  int dmax() const { return static_cast<int>(basis.size()) - 1; }
  std::size_t basis_size(int d) const { return basis.at(d).size(); }

  static GPComplex assemble(RingPtr ring, std::vector<ProjPoint> vertices,
                            std::vector<TupleBasis> bases, std::uint32_t p) {
    if (!is_prime(p)) throw std::invalid_argument("coefficient prime must be prime");
    GPComplex c;
    c.ring = std::move(ring);
    c.prime = p;
    c.vertices = std::move(vertices);
    c.basis = std::move(bases);
    c.boundary.resize(c.basis.size());
    for (std::size_t d = 1; d < c.basis.size(); ++d)
      c.boundary[d] = tuple_boundary(c.basis[d - 1], c.basis[d], p);
    std::vector<PrimeFieldMatrix::Entry> e;
    for (std::size_t i = 0; i < c.basis[0].size(); ++i)
      e.push_back({0, static_cast<std::uint32_t>(i), 1});
    c.augmentation = PrimeFieldMatrix(p, 1, c.basis[0].size(), std::move(e));
    return c;
  }

  // d o d = 0 in every degree and eps o d_1 = 0.
  bool boundaries_compose_to_zero() const {
    if (basis.size() > 1 && !(augmentation * boundary[1]).is_zero()) return false;
    for (std::size_t d = 1; d + 1 < basis.size(); ++d)
      if (!(boundary[d] * boundary[d + 1]).is_zero()) return false;
    return true;
  }

  // Reduced homology dims in degrees 0..through, requires through < dmax.
  std::vector<std::size_t> homology_dims(int through, RankBackend backend = RankBackend::Sparse) const {
    if (through >= dmax()) throw std::invalid_argument("homology degree must be below dmax");
    std::vector<std::size_t> rank(basis.size() + 1, 0);
    rank[0] = basis_size(0) ? 1 : 0;  // augmentation
    for (int d = 1; d <= through + 1; ++d) rank[d] = matrix_rank(boundary[d], backend);
    std::vector<std::size_t> h;
    for (int d = 0; d <= through; ++d) h.push_back(basis_size(d) - rank[d] - rank[d + 1]);
    return h;
  }
};

inline std::vector<std::uint32_t> residue_colors(const std::vector<ProjPoint>& pts) {
  std::vector<std::uint32_t> c;
  c.reserve(pts.size());
  for (const auto& p : pts) c.push_back(p.residue_class());
  return c;
}

// Complex on an explicit vertex set (a subcomplex when the set is a subset).
inline GPComplex build_gp_complex_on(const RingPtr& ring, std::vector<ProjPoint> vertices, int dmax,
                                     std::uint32_t p) {
  auto bases = enumerate_colored_tuples(residue_colors(vertices), dmax);
  return GPComplex::assemble(ring, std::move(vertices), std::move(bases), p);
}

inline GPComplex build_gp_complex(const RingPtr& ring, int dmax, std::uint32_t p) {
  return build_gp_complex_on(ring, ProjectiveLine(ring).points(), dmax, p);
}

// Highest degree whose vanishing the finite residue field still supports.
inline int asserted_degree_limit(const RingPtr& ring, int dmax) {
  return std::min(dmax - 1, static_cast<int>(ring->q()) - 2);
}

}  // namespace rigidity
