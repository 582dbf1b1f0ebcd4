#pragma once

// Finitely presented abelian groups Z^n / (row space of R), homomorphisms
// given by integer matrices acting on row vectors, kernels of such maps,
// and structure recovery for finite abelian groups given by a
// multiplication table.

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rigidity/errors.hpp"
#include "rigidity/linalg/integer_matrix.hpp"

namespace rigidity {

class PresentedAbelianGroup {
 public:
  PresentedAbelianGroup() = default;
  PresentedAbelianGroup(std::size_t generators, IntegerMatrix relations)
      : n_(generators), rel_(std::move(relations)) {
    if (rel_.rows() == 0) rel_ = IntegerMatrix(0, n_);
    if (rel_.cols() != n_) throw std::invalid_argument("relation width must equal generator count");
    snf_ = smith_normal_form(rel_, Certificates::Right);
    for (const auto& d : snf_.factors)
      if (d != 1) factors_.push_back(d);
    for (std::size_t i = snf_.rank(); i < n_; ++i) factors_.push_back(0);
  }
  // Z/d_1 x Z/d_2 x ... with d = 0 meaning Z.
  static PresentedAbelianGroup from_factors(const std::vector<BigInt>& d) {
    IntegerMatrix r(0, d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      std::vector<BigInt> row(d.size());
      row[i] = d[i];
      if (d[i] != 0) r.append_row(row);
    }
    return {d.size(), std::move(r)};
  }

  std::size_t generator_count() const { return n_; }
  const IntegerMatrix& relations() const { return rel_; }
  const SmithForm& smith() const { return snf_; }

  // Invariant factors other than 1, divisibility chain, 0 = free summand.
  const std::vector<BigInt>& invariant_factors() const { return factors_; }
  std::size_t free_rank() const { return n_ - snf_.rank(); }
  std::optional<BigInt> order() const {
    if (free_rank()) return std::nullopt;
    BigInt o = 1;
    for (const auto& d : factors_) o *= d;
    return o;
  }
  // Does the word (coefficient vector over the generators) vanish?
  bool is_zero(const std::vector<BigInt>& word) const { return in_row_space(snf_, word); }

 private:
  std::size_t n_ = 0;
  IntegerMatrix rel_;
  SmithForm snf_;
  std::vector<BigInt> factors_;
};

// dim_{Z/p} (G (x) Z/p): factors divisible by p, free summands included.
inline std::size_t tensor_mod_p(const PresentedAbelianGroup& g, std::uint64_t p) {
  std::size_t count = 0;
  for (const auto& d : g.invariant_factors())
    if (d % p == 0) ++count;
  return count;
}

struct KernelResult {
  PresentedAbelianGroup kernel;
  // Kernel generators as rows, in source-generator coordinates.
  IntegerMatrix inclusion;
  // |image f| when the target is finite.
  std::optional<BigInt> image_order;
  // Smith form of the kernel lattice; inclusion row i = d_i * V^{-1} row i.
  SmithForm lattice;
};

// Kernel of f: source -> target, f given by rows (images of the source
// generators in target coordinates).
inline KernelResult abelian_kernel(const IntegerMatrix& f, const PresentedAbelianGroup& source,
                                   const PresentedAbelianGroup& target) {
  const std::size_t a = source.generator_count(), b = target.generator_count();
  if (f.rows() != a || f.cols() != b) throw std::invalid_argument("map shape does not match groups");
  for (std::size_t i = 0; i < source.relations().rows(); ++i) {
    auto img = f.left_multiply(source.relations().row(i));
    if (!target.is_zero(img))
      throw IncompatibleMap("source relation " + std::to_string(i) + " is not killed by the map");
  }
  // x is in the kernel lattice iff (x, y) is a left null vector of [f; R_t].
  IntegerMatrix stacked = f.stacked(target.relations());
  SmithForm s = smith_normal_form(stacked, Certificates::Left);
  IntegerMatrix proj(0, a);
  for (std::size_t i = s.rank(); i < stacked.rows(); ++i) {
    std::vector<BigInt> r(a);
    for (std::size_t j = 0; j < a; ++j) r[j] = s.U(i, j);
    proj.append_row(r);
  }
  if (proj.rows() == 0) proj = IntegerMatrix(0, a);
  SmithForm lattice = smith_normal_form(proj, Certificates::Right);
  const std::size_t k = lattice.rank();
  IntegerMatrix basis(k, a);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < a; ++j) basis(i, j) = lattice.factors[i] * lattice.V_inv(i, j);

  IntegerMatrix rel(0, k);
  for (std::size_t i = 0; i < source.relations().rows(); ++i) {
    std::vector<BigInt> coords;
    if (!in_row_space(lattice, source.relations().row(i), &coords))
      throw std::logic_error("source relation outside kernel lattice");
    rel.append_row(coords);
  }
  KernelResult out{PresentedAbelianGroup(k, std::move(rel)), basis, std::nullopt, lattice};

  for (std::size_t i = 0; i < k; ++i)
    if (!target.is_zero(f.left_multiply(basis.row(i))))
      throw std::logic_error("kernel generator does not map to zero");

  if (auto t = target.order()) {
    // coker f = Z^b / rowspace([f; R_t]); |im f| = |T| / |coker f|.
    BigInt coker = 1;
    if (s.rank() < b) coker = 0;
    for (const auto& d : s.factors) coker *= d;
    if (coker != 0) {
      out.image_order = *t / coker;
      auto src = source.order();
      auto ker = out.kernel.order();
      if (src && ker && *src != *ker * *out.image_order)
        throw std::logic_error("index bookkeeping |source| = |ker| |im| failed");
    }
  }
  return out;
}

// Structure of a finite abelian group on element ids 0..n-1.
struct FiniteAbelianStructure {
  std::vector<std::uint64_t> invariant_factors;  // d_1 | d_2 | ..., all > 1
  std::vector<std::size_t> generators;           // ids, one per factor
  // Exponent vector of every element w.r.t. the generators, entries in [0, d_i).
  std::vector<std::vector<std::uint64_t>> dlog;

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (auto d : invariant_factors) o *= d;
    return o;
  }
};

// Grows the subgroup generated so far one element at a time, re-diagonalizing
// the relation lattice with a Smith form after each extension.
template <class Mul>
FiniteAbelianStructure finite_abelian_structure(std::size_t n, std::size_t identity, Mul mul) {
  auto power = [&](std::size_t x, std::uint64_t e) {
    std::size_t r = identity, b = x;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  };
  std::vector<std::size_t> gens;
  std::vector<std::uint64_t> orders;
  std::vector<std::vector<std::uint64_t>> dlog(n);
  std::vector<char> known(n, 0);
  std::vector<std::size_t> members{identity};
  known[identity] = 1;

  for (std::size_t x = 0; x < n; ++x) {
    if (known[x]) continue;
    std::uint64_t k = 1;
    std::size_t y = x;
    while (!known[y]) {
      y = mul(y, x);
      ++k;
    }
    const std::size_t r = gens.size();
    // relations on (old gens..., x): d_i e_i and k e_x - dlog(x^k)
    IntegerMatrix rel(r + 1, r + 1);
    for (std::size_t i = 0; i < r; ++i) rel(i, i) = orders[i];
    for (std::size_t i = 0; i < r; ++i) rel(r, i) = -BigInt(dlog[y][i]);
    rel(r, r) = k;
    SmithForm s = smith_normal_form(rel, Certificates::Right);
    if (s.rank() != r + 1) throw std::logic_error("relation lattice lost full rank");

    // enumerate the enlarged subgroup with exponents in the old basis
    std::vector<std::size_t> next;
    next.reserve(members.size() * k);
    std::vector<std::vector<std::uint64_t>> old_exp;
    old_exp.reserve(members.size() * k);
    for (std::size_t h : members) {
      std::size_t z = h;
      for (std::uint64_t j = 0; j < k; ++j) {
        next.push_back(z);
        auto e = dlog[h];
        e.push_back(j);
        old_exp.push_back(std::move(e));
        z = mul(z, x);
      }
    }
    const std::uint64_t sub_order = next.size();
    std::vector<std::size_t> old_gens = gens;
    old_gens.push_back(x);

    std::vector<std::size_t> new_gens;
    std::vector<std::uint64_t> new_orders;
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j <= r; ++j) {
      std::uint64_t d = static_cast<std::uint64_t>(s.factors[j]);
      if (d == 1) continue;
      std::size_t g = identity;
      for (std::size_t i = 0; i <= r; ++i) {
        BigInt e = s.V_inv(j, i) % BigInt(sub_order);
        if (e < 0) e += sub_order;
        g = mul(g, power(old_gens[i], static_cast<std::uint64_t>(e)));
      }
      new_gens.push_back(g);
      new_orders.push_back(d);
      keep.push_back(j);
    }
    for (std::size_t idx = 0; idx < next.size(); ++idx) {
      std::vector<BigInt> ev(r + 1);
      for (std::size_t i = 0; i <= r; ++i) ev[i] = old_exp[idx][i];
      auto w = s.V.left_multiply(ev);
      std::vector<std::uint64_t> e;
      e.reserve(keep.size());
      for (std::size_t t = 0; t < keep.size(); ++t) {
        BigInt v = w[keep[t]] % BigInt(new_orders[t]);
        if (v < 0) v += new_orders[t];
        e.push_back(static_cast<std::uint64_t>(v));
      }
      dlog[next[idx]] = std::move(e);
      known[next[idx]] = 1;
    }
    members = std::move(next);
    gens = std::move(new_gens);
    orders = std::move(new_orders);
  }
  return {orders, gens, dlog};
}

}  // namespace rigidity
