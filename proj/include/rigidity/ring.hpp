#pragma once

// Truncated local rings A = F_q[t_1..t_m]/m^l. Elements are dense
// coefficient vectors over the monomials of total degree < l, ordered by
// total degree and then by decreasing exponent vector (t_1 before t_2).

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rigidity/errors.hpp"
#include "rigidity/field.hpp"

namespace rigidity {

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

using Exponents = std::vector<int>;

class RingElement;

class Ring : public std::enable_shared_from_this<Ring> {
 public:
  static RingPtr make(FiniteField field, int vars, int trunc) {
    return RingPtr(new Ring(std::move(field), vars, trunc));
  }
  // Convenience: prime field coefficients, default modulus.
  static RingPtr make(std::uint32_t characteristic, int vars, int trunc, int ext = 1) {
    return make(FiniteField(characteristic, ext, {}), vars, trunc);
  }

  const FiniteField& field() const { return field_; }
  std::uint32_t q() const { return field_.order(); }
  int vars() const { return vars_; }
  int trunc() const { return trunc_; }
  std::size_t num_monomials() const { return monomials_.size(); }
  const std::vector<Exponents>& monomials() const { return monomials_; }
  int monomial_degree(std::size_t i) const { return degree_[i]; }
  // Index of the product monomial, or -1 when it lies in m^l.
  int product_index(std::size_t i, std::size_t j) const {
    return product_[i * monomials_.size() + j];
  }
  std::optional<std::size_t> monomial_index(const Exponents& e) const {
    for (std::size_t i = 0; i < monomials_.size(); ++i)
      if (monomials_[i] == e) return i;
    return std::nullopt;
  }
  // Monomials of exact total degree d, in table order.
  std::vector<std::size_t> monomials_of_degree(int d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < monomials_.size(); ++i)
      if (degree_[i] == d) out.push_back(i);
    return out;
  }

  // |A| = q^M, or nullopt if it does not fit in 64 bits.
  std::optional<std::uint64_t> size() const {
    std::uint64_t s = 1;
    for (std::size_t i = 0; i < monomials_.size(); ++i) {
      if (s > UINT64_MAX / q()) return std::nullopt;
      s *= q();
    }
    return s;
  }
  std::uint64_t checked_size(std::uint64_t guard) const {
    auto s = size();
    if (!s || *s > guard)
      throw GuardExceeded("ring " + descriptor() + " has more than " + std::to_string(guard) +
                          " elements");
    return *s;
  }

  std::string descriptor() const {
    std::ostringstream os;
    os << field_.descriptor() << "[t" << vars_ << "]/m^" << trunc_;
    return os.str();
  }
  // FNV-1a over the descriptor text; stable across runs and platforms.
  std::uint64_t descriptor_hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : descriptor()) {
      h ^= ch;
      h *= 1099511628211ULL;
    }
    return h;
  }
  bool same_as(const Ring& o) const {
    return field_ == o.field_ && vars_ == o.vars_ && trunc_ == o.trunc_;
  }

  RingElement zero() const;
  RingElement one() const;
  RingElement constant(FieldElem c) const;
  RingElement from_int(std::int64_t v) const;
  RingElement variable(int i) const;
  RingElement monomial(std::size_t index, FieldElem coeff) const;
  RingElement element_at(std::uint64_t index) const;
  RingElement from_coefficients(std::vector<FieldElem> coeffs) const;

 private:
  Ring(FiniteField field, int vars, int trunc)
      : field_(std::move(field)), vars_(vars), trunc_(trunc) {
    if (vars < 0) throw std::invalid_argument("number of variables must be >= 0");
    if (trunc < 1) throw std::invalid_argument("truncation order must be >= 1");
    int max_deg = vars == 0 ? 0 : trunc - 1;
    Exponents cur(vars, 0);
    for (int d = 0; d <= max_deg; ++d) {
      // decreasing lex within degree d
      std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == vars - 1) {
          cur[pos] = left;
          monomials_.push_back(cur);
          degree_.push_back(d);
          return;
        }
        for (int k = left; k >= 0; --k) {
          cur[pos] = k;
          rec(pos + 1, left - k);
        }
      };
      if (vars == 0) {
        monomials_.push_back({});
        degree_.push_back(0);
      } else {
        rec(0, d);
      }
    }
    std::size_t m = monomials_.size();
    product_.assign(m * m, -1);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (degree_[i] + degree_[j] > max_deg) continue;
        Exponents e(vars);
        for (int v = 0; v < vars; ++v) e[v] = monomials_[i][v] + monomials_[j][v];
        product_[i * m + j] = static_cast<int>(*monomial_index(e));
      }
  }

  FiniteField field_;
  int vars_;
  int trunc_;
  std::vector<Exponents> monomials_;
  std::vector<int> degree_;
  std::vector<int> product_;
};

class RingElement {
 public:
  RingElement() = default;
  RingElement(RingPtr ring, std::vector<FieldElem> coeffs)
      : ring_(std::move(ring)), c_(std::move(coeffs)) {}

  const RingPtr& ring() const { return ring_; }
  const std::vector<FieldElem>& coefficients() const { return c_; }
  FieldElem coefficient(std::size_t i) const { return c_[i]; }
  FieldElem constant_term() const { return c_[0]; }

  bool is_zero() const {
    for (auto v : c_)
      if (v) return false;
    return true;
  }
  bool is_one() const {
    if (c_[0] != 1) return false;
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i]) return false;
    return true;
  }
  bool is_constant() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i]) return false;
    return true;
  }
  // Local ring: unit iff the residue is nonzero.
  bool is_unit() const { return c_[0] != 0; }

  // Lowest total degree carrying a nonzero coefficient; trunc if zero.
  int valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i]) return ring_->monomial_degree(i);
    return ring_->vars() == 0 ? 1 : ring_->trunc();
  }

  // Mixed-radix index, constant coefficient least significant.
  std::uint64_t index() const {
    std::uint64_t idx = 0;
    for (std::size_t i = c_.size(); i-- > 0;) idx = idx * ring_->q() + c_[i];
    return idx;
  }

  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.c_ == b.c_ && (a.ring_ == b.ring_ || a.ring_->same_as(*b.ring_));
  }
  friend bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }
  // Canonical order: by index.
  friend bool operator<(const RingElement& a, const RingElement& b) {
    for (std::size_t i = a.c_.size(); i-- > 0;)
      if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
  }

  RingElement operator+(const RingElement& b) const {
    check(b);
    const auto& f = ring_->field();
    std::vector<FieldElem> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = f.add(c_[i], b.c_[i]);
    return {ring_, std::move(r)};
  }
  RingElement operator-(const RingElement& b) const {
    check(b);
    const auto& f = ring_->field();
    std::vector<FieldElem> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = f.sub(c_[i], b.c_[i]);
    return {ring_, std::move(r)};
  }
  RingElement operator-() const {
    const auto& f = ring_->field();
    std::vector<FieldElem> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = f.neg(c_[i]);
    return {ring_, std::move(r)};
  }
  RingElement operator*(const RingElement& b) const {
    check(b);
    const auto& f = ring_->field();
    const std::size_t m = c_.size();
    std::vector<FieldElem> r(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (!c_[i]) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (!b.c_[j]) continue;
        int k = ring_->product_index(i, j);
        if (k < 0) continue;
        r[k] = f.add(r[k], f.mul(c_[i], b.c_[j]));
      }
    }
    return {ring_, std::move(r)};
  }
  RingElement scaled(FieldElem s) const {
    const auto& f = ring_->field();
    std::vector<FieldElem> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = f.mul(c_[i], s);
    return {ring_, std::move(r)};
  }
  RingElement& operator+=(const RingElement& b) { return *this = *this + b; }
  RingElement& operator-=(const RingElement& b) { return *this = *this - b; }
  RingElement& operator*=(const RingElement& b) { return *this = *this * b; }

  // a = c(1 + n) with n nilpotent; a^{-1} = c^{-1} sum_k (-n)^k.
  RingElement inverse() const {
    if (!is_unit()) throw NotAUnit();
    const auto& f = ring_->field();
    FieldElem cinv = f.inv(c_[0]);
    RingElement u = scaled(cinv);  // 1 + n
    RingElement neg_n = ring_->one() - u;
    RingElement term = ring_->one(), sum = ring_->one();
    int steps = ring_->vars() == 0 ? 0 : ring_->trunc() - 1;
    for (int k = 0; k < steps; ++k) {
      term = term * neg_n;
      sum = sum + term;
    }
    return sum.scaled(cinv);
  }
  RingElement operator/(const RingElement& b) const { return *this * b.inverse(); }

  RingElement pow(std::uint64_t n) const {
    RingElement r = ring_->one(), a = *this;
    while (n) {
      if (n & 1) r = r * a;
      a = a * a;
      n >>= 1;
    }
    return r;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (!c_[i]) continue;
      if (!first) os << "+";
      first = false;
      bool mono = ring_->monomial_degree(i) > 0;
      if (!mono || c_[i] != 1) os << c_[i];
      const auto& e = ring_->monomials()[i];
      for (std::size_t v = 0; v < e.size(); ++v) {
        if (!e[v]) continue;
        os << "t" << (v + 1);
        if (e[v] > 1) os << "^" << e[v];
      }
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  void check(const RingElement& b) const {
    if (ring_ != b.ring_) throw RingMismatch();
  }

  RingPtr ring_;
  std::vector<FieldElem> c_;
};

inline RingElement Ring::zero() const {
  return {shared_from_this(), std::vector<FieldElem>(monomials_.size(), 0)};
}
inline RingElement Ring::one() const { return constant(1); }
inline RingElement Ring::constant(FieldElem c) const {
  std::vector<FieldElem> v(monomials_.size(), 0);
  v[0] = c;
  return {shared_from_this(), std::move(v)};
}
inline RingElement Ring::from_int(std::int64_t v) const { return constant(field_.from_int(v)); }
inline RingElement Ring::variable(int i) const {
  Exponents e(vars_, 0);
  e.at(i) = 1;
  auto idx = monomial_index(e);
  if (!idx) return zero();  // t_i = 0 when l = 1
  return monomial(*idx, 1);
}
inline RingElement Ring::monomial(std::size_t index, FieldElem coeff) const {
  std::vector<FieldElem> v(monomials_.size(), 0);
  v.at(index) = coeff;
  return {shared_from_this(), std::move(v)};
}
inline RingElement Ring::element_at(std::uint64_t index) const {
  std::vector<FieldElem> v(monomials_.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = static_cast<FieldElem>(index % q());
    index /= q();
  }
  return {shared_from_this(), std::move(v)};
}
inline RingElement Ring::from_coefficients(std::vector<FieldElem> coeffs) const {
  if (coeffs.size() != monomials_.size())
    throw std::invalid_argument("coefficient vector has wrong length");
  for (auto c : coeffs)
    if (c >= q()) throw std::invalid_argument("coefficient not a reduced field element");
  return {shared_from_this(), std::move(coeffs)};
}

// Image of a constant of the residue field under F_q -> A. The residue
// field must be the coefficient field of `target`.
inline RingElement embed_constant(const RingElement& c, const RingPtr& target) {
  if (!c.is_constant()) throw std::invalid_argument("element is not a constant");
  if (!(c.ring()->field() == target->field())) throw RingMismatch();
  return target->constant(c.constant_term());
}

}  // namespace rigidity
