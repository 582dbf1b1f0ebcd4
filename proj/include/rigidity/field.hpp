#pragma once

// Finite fields F_q, q = p^e with e <= 3, realized as F_p[x]/(f) for a
// stored monic irreducible f. Elements are indices 0..q-1; the index of
// c_0 + c_1 x + ... + c_{e-1} x^{e-1} is sum c_j p^j, so the prime field
// occupies indices 0..p-1 with the obvious meaning.

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rigidity {

using FieldElem = std::uint32_t;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class FiniteField {
 public:
  static constexpr std::uint32_t kMaxOrder = 1024;

  // Prime field F_p.
  explicit FiniteField(std::uint32_t characteristic)
      : FiniteField(characteristic, 1, {}) {}

  // F_{p^e}. An empty modulus selects the first monic irreducible of degree
  // e in lexicographic coefficient order. Modulus coefficients are given
  // constant term first and must include the leading 1.
  FiniteField(std::uint32_t characteristic, int ext_degree,
              std::vector<std::uint32_t> modulus)
      : p_(characteristic), e_(ext_degree), modulus_(std::move(modulus)) {
    if (!is_prime(p_))
      throw std::invalid_argument("field characteristic " + std::to_string(p_) +
                                  " is not prime");
    if (e_ < 1 || e_ > 3)
      throw std::invalid_argument("extension degree must be in [1, 3]");
    std::uint64_t q = 1;
    for (int i = 0; i < e_; ++i) q *= p_;
    if (q > kMaxOrder)
      throw std::invalid_argument("field order " + std::to_string(q) +
                                  " exceeds table limit");
    q_ = static_cast<std::uint32_t>(q);
    if (modulus_.empty()) {
      modulus_ = first_irreducible(p_, e_);
    } else {
      if (static_cast<int>(modulus_.size()) != e_ + 1 || modulus_.back() != 1)
        throw std::invalid_argument("modulus must be monic of degree e");
      for (auto c : modulus_)
        if (c >= p_) throw std::invalid_argument("modulus coefficient not reduced");
      if (!is_irreducible(p_, modulus_))
        throw std::invalid_argument("modulus is reducible over the prime field");
    }
    build_tables();
  }

  std::uint32_t characteristic() const { return p_; }
  int ext_degree() const { return e_; }
  std::uint32_t order() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  FieldElem add(FieldElem a, FieldElem b) const { return add_[a * q_ + b]; }
  FieldElem sub(FieldElem a, FieldElem b) const { return add_[a * q_ + neg_[b]]; }
  FieldElem mul(FieldElem a, FieldElem b) const { return mul_[a * q_ + b]; }
  FieldElem neg(FieldElem a) const { return neg_[a]; }
  // inv(0) is 0; callers check for zero.
  FieldElem inv(FieldElem a) const { return inv_[a]; }
  FieldElem from_int(std::int64_t v) const {
    auto r = static_cast<FieldElem>(((v % static_cast<std::int64_t>(p_)) + p_) % p_);
    return r;
  }
  FieldElem pow(FieldElem a, std::uint64_t n) const {
    FieldElem r = 1;
    while (n) {
      if (n & 1) r = mul(r, a);
      a = mul(a, a);
      n >>= 1;
    }
    return r;
  }

  // Canonical text used for hashing and report echoes.
  std::string descriptor() const {
    std::ostringstream os;
    os << "F" << p_ << "^" << e_ << "[";
    for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
    os << "]";
    return os.str();
  }

  bool operator==(const FiniteField& o) const {
    return p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_;
  }

  // Exhaustive root search; sufficient for irreducibility up to degree 3.
  static bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& f) {
    int deg = static_cast<int>(f.size()) - 1;
    if (deg <= 1) return deg == 1;
    if (deg > 3) throw std::invalid_argument("irreducibility check limited to degree <= 3");
    for (std::uint32_t x = 0; x < p; ++x) {
      std::uint64_t acc = 0;
      for (int i = deg; i >= 0; --i) acc = (acc * x + f[i]) % p;
      if (acc == 0) return false;
    }
    return true;
  }

  static std::vector<std::uint32_t> first_irreducible(std::uint32_t p, int e) {
    std::vector<std::uint32_t> f(e + 1, 0);
    f[e] = 1;
    if (e == 1) return f;  // x
    std::uint64_t count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::uint64_t c = code;
      for (int i = 0; i < e; ++i) {
        f[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      if (is_irreducible(p, f)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");
  }

 private:
  void build_tables() {
    std::vector<std::uint32_t> digits_a(e_), digits_b(e_);
    auto digits = [&](FieldElem v, std::vector<std::uint32_t>& d) {
      for (int i = 0; i < e_; ++i) {
        d[i] = v % p_;
        v /= p_;
      }
    };
    auto encode = [&](const std::vector<std::uint32_t>& d) {
      FieldElem v = 0;
      for (int i = e_ - 1; i >= 0; --i) v = v * p_ + d[i];
      return v;
    };
    add_.assign(std::size_t(q_) * q_, 0);
    mul_.assign(std::size_t(q_) * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);
    std::vector<std::uint32_t> sum(e_), prod(2 * e_ - 1);
    for (FieldElem a = 0; a < q_; ++a) {
      digits(a, digits_a);
      for (FieldElem b = 0; b < q_; ++b) {
        digits(b, digits_b);
        for (int i = 0; i < e_; ++i) sum[i] = (digits_a[i] + digits_b[i]) % p_;
        add_[a * q_ + b] = static_cast<std::uint16_t>(encode(sum));
        std::fill(prod.begin(), prod.end(), 0);
        for (int i = 0; i < e_; ++i)
          for (int j = 0; j < e_; ++j)
            prod[i + j] = (prod[i + j] + digits_a[i] * digits_b[j]) % p_;
        // reduce by the monic modulus from the top
        for (int k = 2 * e_ - 2; k >= e_; --k) {
          std::uint32_t c = prod[k];
          if (!c) continue;
          prod[k] = 0;
          for (int i = 0; i < e_; ++i)
            prod[k - e_ + i] = (prod[k - e_ + i] + (p_ - c) * modulus_[i]) % p_;
        }
        std::vector<std::uint32_t> low(prod.begin(), prod.begin() + e_);
        mul_[a * q_ + b] = static_cast<std::uint16_t>(encode(low));
      }
    }
    for (FieldElem a = 0; a < q_; ++a) {
      for (FieldElem b = 0; b < q_; ++b) {
        if (add_[a * q_ + b] == 0) neg_[a] = static_cast<std::uint16_t>(b);
        if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<std::uint16_t>(b);
      }
    }
  }

  std::uint32_t p_;
  int e_;
  std::vector<std::uint32_t> modulus_;
  std::uint32_t q_ = 0;
  std::vector<std::uint16_t> add_, mul_, neg_, inv_;
};

}  // namespace rigidity
