#pragma once

// SL_n over A = F[t_1..t_m]/m^L and its congruence filtration
// C^i = ker(SL_n(A) -> SL_n(A/m^i)). Layers C^i/C^{i+1} are read off by
// rho_i, the degree-i coefficient matrices.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "rigidity/errors.hpp"
#include "rigidity/linalg/abelian_group.hpp"
#include "rigidity/linalg/prime_field_matrix.hpp"
#include "rigidity/ring.hpp"

namespace rigidity {

inline constexpr std::uint64_t kClosureGuard = 20'000;
inline constexpr std::uint64_t kLayerGuard = 1'000'000;

class SquareMatrix {
 public:
  SquareMatrix(RingPtr ring, std::size_t n) : ring_(std::move(ring)), n_(n) {
    a_.assign(n * n, ring_->zero());
  }
  static SquareMatrix identity(const RingPtr& ring, std::size_t n) {
    SquareMatrix m(ring, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ring->one();
    return m;
  }

  const RingPtr& ring() const { return ring_; }
  std::size_t n() const { return n_; }
  RingElement& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const RingElement& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  SquareMatrix operator*(const SquareMatrix& b) const {
    SquareMatrix c(ring_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k) {
        const auto& x = (*this)(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < n_; ++j) c(i, j) = c(i, j) + x * b(k, j);
      }
    return c;
  }
  SquareMatrix operator-(const SquareMatrix& b) const {
    SquareMatrix c(ring_, n_);
    for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] = a_[i] - b.a_[i];
    return c;
  }
  friend bool operator==(const SquareMatrix& x, const SquareMatrix& y) { return x.a_ == y.a_; }

  RingElement det() const { return minor_det(std::vector<std::size_t>(), 0); }

  // Adjugate over det^{-1}.
  SquareMatrix inverse() const {
    RingElement d = det();
    if (!d.is_unit()) throw NotAUnit();
    RingElement di = d.inverse();
    SquareMatrix inv(ring_, n_);
    if (n_ == 1) {
      inv(0, 0) = di;
      return inv;
    }
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        SquareMatrix sub(ring_, n_ - 1);
        for (std::size_t r = 0, rr = 0; r < n_; ++r) {
          if (r == i) continue;
          for (std::size_t c = 0, cc = 0; c < n_; ++c) {
            if (c == j) continue;
            sub(rr, cc++) = (*this)(r, c);
          }
          ++rr;
        }
        RingElement cof = sub.det();
        if ((i + j) % 2) cof = -cof;
        inv(j, i) = cof * di;
      }
    return inv;
  }

  SquareMatrix pow(std::uint64_t e) const {
    SquareMatrix r = identity(ring_, n_), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  std::vector<std::uint64_t> key() const {
    std::vector<std::uint64_t> k;
    k.reserve(a_.size());
    for (const auto& x : a_) k.push_back(x.index());
    return k;
  }

 private:
  // Laplace expansion along the first unused row.
  RingElement minor_det(std::vector<std::size_t> used_cols, std::size_t row) const {
    if (row == n_) return ring_->one();
    RingElement s = ring_->zero();
    int sign = 1;
    for (std::size_t c = 0; c < n_; ++c) {
      if (std::find(used_cols.begin(), used_cols.end(), c) != used_cols.end()) continue;
      const auto& x = (*this)(row, c);
      if (!x.is_zero()) {
        auto next = used_cols;
        next.push_back(c);
        RingElement t = x * minor_det(next, row + 1);
        s = sign > 0 ? s + t : s - t;
      }
      sign = -sign;
    }
    return s;
  }

  RingPtr ring_;
  std::size_t n_;
  std::vector<RingElement> a_;
};

inline SquareMatrix commutator(const SquareMatrix& x, const SquareMatrix& y) {
  return x * y * x.inverse() * y.inverse();
}

// Largest i <= L with X - I in m^i.
inline int congruence_level(const SquareMatrix& x) {
  const auto& r = x.ring();
  if (r->vars() == 0) throw std::invalid_argument("congruence filtration needs at least one variable");
  const auto& id = SquareMatrix::identity(r, x.n());
  SquareMatrix d = x - id;
  int level = r->trunc();
  for (std::size_t i = 0; i < x.n(); ++i)
    for (std::size_t j = 0; j < x.n(); ++j) level = std::min(level, d(i, j).valuation());
  return level;
}

// (X_lambda)_lambda over the degree-i monomials, in monomial order.
struct LiePartitionVector {
  std::size_t n = 0;
  std::vector<Exponents> partitions;
  std::vector<std::vector<FieldElem>> blocks;  // row-major n x n over F

  friend bool operator==(const LiePartitionVector& a, const LiePartitionVector& b) {
    return a.partitions == b.partitions && a.blocks == b.blocks;
  }
  bool is_zero() const {
    for (const auto& b : blocks)
      for (auto v : b)
        if (v) return false;
    return true;
  }
};

inline LiePartitionVector rho(int i, const SquareMatrix& x) {
  const auto& r = x.ring();
  if (i < 1 || i >= r->trunc()) throw std::invalid_argument("rho_i needs 1 <= i < L");
  if (congruence_level(x) < i) throw LevelTooLow();
  LiePartitionVector v;
  v.n = x.n();
  for (auto mono : r->monomials_of_degree(i)) {
    v.partitions.push_back(r->monomials()[mono]);
    std::vector<FieldElem> block(x.n() * x.n());
    for (std::size_t a = 0; a < x.n(); ++a)
      for (std::size_t b = 0; b < x.n(); ++b) block[a * x.n() + b] = x(a, b).coefficients()[mono];
    v.blocks.push_back(std::move(block));
  }
  return v;
}

inline LiePartitionVector add(const FiniteField& f, const LiePartitionVector& a,
                              const LiePartitionVector& b) {
  if (a.partitions != b.partitions) throw std::invalid_argument("partition sets differ");
  LiePartitionVector c = a;
  for (std::size_t k = 0; k < c.blocks.size(); ++k)
    for (std::size_t e = 0; e < c.blocks[k].size(); ++e)
      c.blocks[k][e] = f.add(a.blocks[k][e], b.blocks[k][e]);
  return c;
}

inline bool trace_zero(const FiniteField& f, const LiePartitionVector& v) {
  for (const auto& b : v.blocks) {
    FieldElem t = 0;
    for (std::size_t a = 0; a < v.n; ++a) t = f.add(t, b[a * v.n + a]);
    if (t) return false;
  }
  return true;
}

// First-order term of [X, Y]: sum over lambda + mu = nu of [X_lambda, Y_mu].
inline LiePartitionVector bracket(const RingPtr& r, const LiePartitionVector& x,
                                  const LiePartitionVector& y, int degree) {
  const auto& f = r->field();
  const std::size_t n = x.n;
  LiePartitionVector out;
  out.n = n;
  std::map<Exponents, std::size_t> slot;
  for (auto mono : r->monomials_of_degree(degree)) {
    slot[r->monomials()[mono]] = out.partitions.size();
    out.partitions.push_back(r->monomials()[mono]);
    out.blocks.emplace_back(n * n, 0);
  }
  for (std::size_t a = 0; a < x.partitions.size(); ++a)
    for (std::size_t b = 0; b < y.partitions.size(); ++b) {
      Exponents nu = x.partitions[a];
      for (std::size_t k = 0; k < nu.size(); ++k) nu[k] += y.partitions[b][k];
      auto& blk = out.blocks.at(slot.at(nu));
      const auto& X = x.blocks[a];
      const auto& Y = y.blocks[b];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          FieldElem s = 0;
          for (std::size_t k = 0; k < n; ++k)
            s = f.add(s, f.sub(f.mul(X[i * n + k], Y[k * n + j]), f.mul(Y[i * n + k], X[k * n + j])));
          blk[i * n + j] = f.add(blk[i * n + j], s);
        }
    }
  return out;
}

// Uniform element of C^i: I + (entries in m^i), then the first column is
// scaled by det^{-1}.
inline SquareMatrix random_congruence_element(const RingPtr& r, std::size_t n, int i,
                                              std::mt19937_64& rng) {
  SquareMatrix x = SquareMatrix::identity(r, n);
  std::vector<std::size_t> monos;
  for (int d = i; d < r->trunc(); ++d)
    for (auto m : r->monomials_of_degree(d)) monos.push_back(m);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<FieldElem> c(r->num_monomials(), 0);
      for (auto m : monos) c[m] = static_cast<FieldElem>(rng() % r->q());
      x(a, b) = x(a, b) + r->from_coefficients(c);
    }
  RingElement di = x.det().inverse();
  for (std::size_t a = 0; a < n; ++a) x(a, 0) = x(a, 0) * di;
  return x;
}

// Elements of C^i whose rho_i images are c E_ab (a != b) and c (E_aa - E_a+1,a+1)
// for c running over an additive basis of F; together over all lambda these
// hit an additive basis of the trace-zero tuples.
inline std::vector<SquareMatrix> layer_witnesses(const RingPtr& r, std::size_t n, int i) {
  const auto& f = r->field();
  std::vector<FieldElem> fbasis;
  for (int k = 0; k < f.ext_degree(); ++k) {
    FieldElem v = 1;
    for (int s = 0; s < k; ++s) v *= f.characteristic();  // power basis x^k has index p^k
    fbasis.push_back(v);
  }
  std::vector<SquareMatrix> out;
  for (auto mono : r->monomials_of_degree(i))
    for (auto c : fbasis) {
      RingElement m = r->monomial(mono, c);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          if (a == b) continue;
          SquareMatrix x = SquareMatrix::identity(r, n);
          x(a, b) = m;
          out.push_back(std::move(x));
        }
      for (std::size_t a = 0; a + 1 < n; ++a) {
        SquareMatrix x = SquareMatrix::identity(r, n);
        x(a, a) = r->one() + m;
        x(a + 1, a + 1) = (r->one() + m).inverse();
        out.push_back(std::move(x));
      }
    }
  return out;
}

struct CommutatorReport {
  std::size_t trials = 0, level_ok = 0, leading_ok = 0;
  bool pass() const { return level_ok == trials && leading_ok == trials; }
};

inline CommutatorReport commutator_check(const RingPtr& r, std::size_t n, int i, int j,
                                         std::size_t trials, std::mt19937_64& rng) {
  CommutatorReport rep;
  const int L = r->trunc();
  for (std::size_t t = 0; t < trials; ++t) {
    auto x = random_congruence_element(r, n, i, rng);
    auto y = random_congruence_element(r, n, j, rng);
    auto c = commutator(x, y);
    ++rep.trials;
    int lvl = congruence_level(c);
    if (lvl >= std::min(i + j, L)) ++rep.level_ok;
    if (i + j >= L) {
      rep.leading_ok += c == SquareMatrix::identity(r, n);
    } else {
      rep.leading_ok += rho(i + j, c) == bracket(r, rho(i, x), rho(j, y), i + j);
    }
  }
  return rep;
}

struct AdditivityReport {
  std::size_t trials = 0, additive = 0, trace_zero = 0;
  bool pass() const { return additive == trials && trace_zero == trials; }
};

inline AdditivityReport rho_additivity_check(const RingPtr& r, std::size_t n, int i,
                                             std::size_t trials, std::mt19937_64& rng) {
  AdditivityReport rep;
  const auto& f = r->field();
  for (std::size_t t = 0; t < trials; ++t) {
    auto x = random_congruence_element(r, n, i, rng);
    auto y = random_congruence_element(r, n, i, rng);
    auto rx = rho(i, x);
    ++rep.trials;
    rep.additive += rho(i, x * y) == add(f, rx, rho(i, y));
    rep.trace_zero += trace_zero(f, rx);
  }
  return rep;
}

// (n^2 - 1) * C(i+m-1, m-1) * e: |C^i/C^{i+1}| = p^this.
inline std::uint64_t layer_log_char(const RingPtr& r, std::size_t n, int i) {
  return static_cast<std::uint64_t>(n * n - 1) * r->monomials_of_degree(i).size() *
         static_cast<std::uint64_t>(r->field().ext_degree());
}

// All of C^i, by running through I + M_n(m^i) and keeping det = 1.
inline std::vector<SquareMatrix> enumerate_congruence(const RingPtr& r, std::size_t n, int i,
                                                      std::uint64_t guard = kLayerGuard) {
  std::vector<std::size_t> monos;
  for (int d = i; d < r->trunc(); ++d)
    for (auto m : r->monomials_of_degree(d)) monos.push_back(m);
  const std::size_t slots = n * n * monos.size();
  std::uint64_t total = 1;
  for (std::size_t s = 0; s < slots; ++s) {
    total *= r->q();
    if (total > guard) throw GuardExceeded("congruence enumeration exceeds guard");
  }
  std::vector<SquareMatrix> out;
  std::vector<FieldElem> digits(slots, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t v = code;
    for (auto& d : digits) {
      d = static_cast<FieldElem>(v % r->q());
      v /= r->q();
    }
    SquareMatrix x = SquareMatrix::identity(r, n);
    std::size_t s = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        std::vector<FieldElem> c(r->num_monomials(), 0);
        for (auto m : monos) c[m] = digits[s++];
        x(a, b) = x(a, b) + r->from_coefficients(c);
      }
    if (x.det().is_one()) out.push_back(std::move(x));
  }
  return out;
}

struct LayerReport {
  int layer = 0;
  std::uint64_t log_char_size = 0;     // predicted exponent
  bool witnesses_ok = false;           // rho_i onto the trace-zero tuples
  bool exhaustive = false;             // false: sampled
  bool kernel_ok = false;              // ker rho_i = C^{i+1}
  std::optional<std::uint64_t> counted_ratio_log;  // log_p |C^i| / |C^{i+1}| when enumerated
  bool pass() const {
    return witnesses_ok && kernel_ok &&
           (!counted_ratio_log || *counted_ratio_log == log_char_size);
  }
};

inline LayerReport layer_iso_check(const RingPtr& r, std::size_t n, int i, std::mt19937_64& rng,
                                   std::size_t samples = 1000) {
  const auto& f = r->field();
  LayerReport rep;
  rep.layer = i;
  rep.log_char_size = layer_log_char(r, n, i);
  // witnesses hit E_ab and H_a blocks with c in the additive basis
  auto w = layer_witnesses(r, n, i);
  rep.witnesses_ok = w.size() == rep.log_char_size;
  std::vector<FieldElem> seen;
  for (const auto& x : w) {
    if (!x.det().is_one() || congruence_level(x) < i) rep.witnesses_ok = false;
    auto v = rho(i, x);
    if (!trace_zero(f, v) || v.is_zero()) rep.witnesses_ok = false;
  }
  // span check: the rho images are linearly independent over F_p
  {
    const std::uint32_t p = f.characteristic();
    const std::size_t e = static_cast<std::size_t>(f.ext_degree());
    std::vector<PrimeFieldMatrix::Entry> entries;
    std::size_t width = 0;
    for (std::size_t row = 0; row < w.size(); ++row) {
      auto v = rho(i, w[row]);
      std::size_t col = 0;
      for (const auto& b : v.blocks)
        for (auto x : b)
          for (std::size_t k = 0; k < e; ++k, ++col) {
            FieldElem digit = x;
            for (std::size_t s = 0; s < k; ++s) digit /= p;
            digit %= p;
            if (digit)
              entries.push_back({static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(col), digit});
          }
      width = col;
    }
    PrimeFieldMatrix m(p, w.size(), width, std::move(entries));
    if (gf_rank(m) != w.size()) rep.witnesses_ok = false;
  }
  try {
    auto all = enumerate_congruence(r, n, i);
    rep.exhaustive = true;
    std::size_t next = 0;
    rep.kernel_ok = true;
    for (const auto& x : all) {
      bool in_next = congruence_level(x) >= i + 1;
      next += in_next;
      if (rho(i, x).is_zero() != in_next) rep.kernel_ok = false;
    }
    std::uint64_t ratio = all.size() / std::max<std::size_t>(next, 1), lg = 0;
    if (all.size() % std::max<std::size_t>(next, 1)) rep.kernel_ok = false;
    while (ratio > 1 && ratio % f.characteristic() == 0) ratio /= f.characteristic(), ++lg;
    if (ratio == 1) rep.counted_ratio_log = lg;
    else rep.kernel_ok = false;
  } catch (const GuardExceeded&) {
    rep.exhaustive = false;
    rep.kernel_ok = true;
    for (std::size_t s = 0; s < samples; ++s) {
      auto x = random_congruence_element(r, n, i, rng);
      if (rho(i, x).is_zero() != (congruence_level(x) >= i + 1)) rep.kernel_ok = false;
    }
    // sample C^{i+1} as well, whose rho_i must vanish
    if (i + 1 < r->trunc())
      for (std::size_t s = 0; s < samples; ++s)
        if (!rho(i, random_congruence_element(r, n, i + 1, rng)).is_zero()) rep.kernel_ok = false;
  }
  return rep;
}

// Subgroups of a finite matrix group, elements held by key.
class FiniteMatrixGroup {
 public:
  explicit FiniteMatrixGroup(std::vector<SquareMatrix> elements) : el_(std::move(elements)) {
    for (std::size_t i = 0; i < el_.size(); ++i) id_[el_[i].key()] = i;
  }
  std::size_t size() const { return el_.size(); }
  const SquareMatrix& operator[](std::size_t i) const { return el_[i]; }
  std::size_t id(const SquareMatrix& x) const {
    auto it = id_.find(x.key());
    if (it == id_.end()) throw std::logic_error("product left the group");
    return it->second;
  }
  std::size_t mul(std::size_t a, std::size_t b) const { return id(el_[a] * el_[b]); }

  // <gens> by breadth-first multiplication; returns membership flags.
  std::vector<char> closure(const std::vector<std::size_t>& gens, std::size_t identity) const {
    std::vector<char> in(el_.size(), 0);
    std::vector<std::size_t> frontier{identity};
    in[identity] = 1;
    while (!frontier.empty()) {
      std::vector<std::size_t> next;
      for (auto x : frontier)
        for (auto g : gens) {
          auto y = mul(x, g);
          if (!in[y]) {
            in[y] = 1;
            next.push_back(y);
          }
        }
      frontier = std::move(next);
    }
    return in;
  }

  // Normal closure in <conj> of the subgroup generated by gens; gens grow
  // until stable under conjugation.
  std::vector<char> normal_closure(std::vector<std::size_t> gens, const std::vector<std::size_t>& conj,
                                   std::size_t identity, std::vector<std::size_t>* final_gens = nullptr) const {
    for (;;) {
      auto in = closure(gens, identity);
      std::vector<std::size_t> extra;
      for (auto s : conj) {
        SquareMatrix si = el_[s].inverse();
        for (auto g : gens) {
          auto c = id(el_[s] * el_[g] * si);
          if (!in[c] && std::find(extra.begin(), extra.end(), c) == extra.end()) extra.push_back(c);
        }
      }
      if (extra.empty()) {
        if (final_gens) *final_gens = gens;
        return in;
      }
      gens.insert(gens.end(), extra.begin(), extra.end());
    }
  }

 private:
  std::vector<SquareMatrix> el_;
  std::map<std::vector<std::uint64_t>, std::size_t> id_;
};

struct AbelianizationReport {
  std::uint64_t order = 0;
  std::vector<std::uint64_t> invariant_factors;  // of C/[C,C]
  std::vector<std::uint64_t> gamma_sizes;        // |Gamma^i|, i = 1..L
  std::vector<std::uint64_t> filtration_sizes;   // |C^i|, i = 1..L
  bool gamma_in_filtration = false;              // Gamma^i subset of C^i
  bool commutator_equals_c2 = false;
  bool klingenberg_exception = false;            // n = 2 with char 2 or F_3

  bool lower_central_matches() const { return gamma_sizes == filtration_sizes; }
};

inline AbelianizationReport abelianization_small(const RingPtr& r, std::size_t n,
                                                 std::uint64_t guard = kClosureGuard) {
  auto all = enumerate_congruence(r, n, 1, std::max<std::uint64_t>(guard * 100, kLayerGuard));
  if (all.size() > guard) throw GuardExceeded("|C| exceeds closure guard");
  FiniteMatrixGroup g(std::move(all));
  const std::size_t e = g.id(SquareMatrix::identity(r, n));
  AbelianizationReport rep;
  rep.order = g.size();
  rep.klingenberg_exception = n == 2 && (r->field().characteristic() == 2 || r->q() == 3);

  std::vector<std::size_t> gens;
  for (int i = 1; i < r->trunc(); ++i)
    for (const auto& w : layer_witnesses(r, n, i)) gens.push_back(g.id(w));
  if (g.closure(gens, e) != std::vector<char>(g.size(), 1))
    throw std::logic_error("layer witnesses do not generate C");

  const int L = r->trunc();
  std::vector<std::vector<char>> filtration;
  for (int i = 1; i <= L; ++i) {
    std::vector<char> in(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) in[x] = congruence_level(g[x]) >= i;
    filtration.push_back(std::move(in));
  }
  rep.gamma_in_filtration = true;
  std::vector<std::size_t> level_gens = gens;
  std::vector<char> gamma(g.size(), 1);
  std::vector<char> derived;
  for (int i = 1; i <= L; ++i) {
    if (i > 1) {
      std::vector<std::size_t> comm;
      for (auto s : gens)
        for (auto t : level_gens) {
          auto c = g.id(commutator(g[s], g[t]));
          if (c != e && std::find(comm.begin(), comm.end(), c) == comm.end()) comm.push_back(c);
        }
      gamma = g.normal_closure(comm, gens, e, &level_gens);
      if (i == 2) derived = gamma;
    }
    std::uint64_t gs = 0, fs = 0;
    for (std::size_t x = 0; x < g.size(); ++x) {
      gs += gamma[x];
      fs += filtration[i - 1][x];
      if (gamma[x] && !filtration[i - 1][x]) rep.gamma_in_filtration = false;
    }
    rep.gamma_sizes.push_back(gs);
    rep.filtration_sizes.push_back(fs);
  }
  if (derived.empty()) derived = gamma;
  rep.commutator_equals_c2 = derived == (L >= 2 ? filtration[1] : filtration[0]);

  // coset ids of C/[C,C]
  std::vector<std::size_t> coset(g.size(), static_cast<std::size_t>(-1)), reps;
  std::vector<std::size_t> members;
  for (std::size_t x = 0; x < g.size(); ++x)
    if (derived[x]) members.push_back(x);
  for (std::size_t x = 0; x < g.size(); ++x) {
    if (coset[x] != static_cast<std::size_t>(-1)) continue;
    for (auto h : members) coset[g.mul(x, h)] = reps.size();
    reps.push_back(x);
  }
  auto st = finite_abelian_structure(reps.size(), coset[e], [&](std::size_t a, std::size_t b) {
    return coset[g.mul(reps[a], reps[b])];
  });
  rep.invariant_factors = st.invariant_factors;
  return rep;
}

// X^{s p} = X with s = p^{-1} mod char^k, char^k >= L: every element of C
// has a p-th root X^s.
struct PthRootReport {
  std::size_t samples = 0, ok = 0;
  std::uint64_t exponent_bound = 0, s = 0;
  bool pass() const { return ok == samples; }
};

inline PthRootReport pth_root_check(const RingPtr& r, std::size_t n, std::uint32_t p,
                                    std::size_t samples, std::mt19937_64& rng) {
  const std::uint64_t c = r->field().characteristic();
  if (!is_prime(p) || p == c) throw std::invalid_argument("p must be a prime different from char");
  PthRootReport rep;
  rep.exponent_bound = 1;
  while (rep.exponent_bound < static_cast<std::uint64_t>(r->trunc())) rep.exponent_bound *= c;
  for (std::uint64_t s = 1; s < rep.exponent_bound + 1; ++s)
    if ((s * p) % rep.exponent_bound == 1 % rep.exponent_bound) {
      rep.s = s;
      break;
    }
  for (std::size_t t = 0; t < samples; ++t) {
    auto x = random_congruence_element(r, n, 1, rng);
    auto y = x.pow(rep.s);
    ++rep.samples;
    rep.ok += y.pow(p) == x && congruence_level(y) >= 1 && y.det().is_one();
  }
  return rep;
}

struct AcyclicityReport {
  std::vector<bool> layer_elementary;  // layers C^j/C^{j+1}, j = 1..i-1
  std::uint64_t log_char_quotient = 0;  // log_char |C/C^i|
  std::optional<std::size_t> h1_mod_p;  // dim H_1(C/C^i; Z/p) when enumerable
  bool pass() const {
    return std::all_of(layer_elementary.begin(), layer_elementary.end(), [](bool b) { return b; }) &&
           (!h1_mod_p || *h1_mod_p == 0);
  }
};

// The quotient C/C^i is the first congruence subgroup over A/m^i.
inline AcyclicityReport layer_acyclicity(const RingPtr& r, std::size_t n, int i, std::uint32_t p) {
  const auto& f = r->field();
  if (!is_prime(p) || p == f.characteristic())
    throw std::invalid_argument("p must be a prime different from char");
  if (i < 2 || i > r->trunc()) throw std::invalid_argument("need 2 <= i <= L");
  AcyclicityReport rep;
  for (int j = 1; j < i; ++j) {
    auto w = layer_witnesses(r, n, j);
    bool ok = true;
    for (std::size_t a = 0; a < w.size() && ok; ++a) {
      ok = congruence_level(w[a].pow(f.characteristic())) >= j + 1;
      for (std::size_t b = a + 1; b < w.size() && ok; ++b)
        ok = congruence_level(commutator(w[a], w[b])) >= j + 1;
    }
    rep.layer_elementary.push_back(ok);
    rep.log_char_quotient += layer_log_char(r, n, j);
  }
  auto quotient = Ring::make(f, r->vars(), i);
  try {
    auto ab = abelianization_small(quotient, n);
    std::uint64_t log = 0, o = ab.order;
    while (o > 1 && o % f.characteristic() == 0) o /= f.characteristic(), ++log;
    if (o != 1 || log != rep.log_char_quotient) rep.layer_elementary.push_back(false);
    std::size_t dim = 0;
    for (auto d : ab.invariant_factors) dim += d % p == 0;
    rep.h1_mod_p = dim;
  } catch (const GuardExceeded&) {
  }
  return rep;
}

}  // namespace rigidity
