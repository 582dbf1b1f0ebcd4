#pragma once

// Dense arbitrary-precision integer matrices and Smith normal form with
// unimodular certificates U, V (and V^{-1}) such that U * M * V = D.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rigidity {

using BigInt = boost::multiprecision::cpp_int;

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      for (auto v : row) a_.emplace_back(v);
    }
  }

  static IntegerMatrix identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static IntegerMatrix diagonal(const std::vector<BigInt>& d) {
    IntegerMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<BigInt> row(std::size_t i) const {
    return {a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_};
  }
  void append_row(const std::vector<BigInt>& r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
    a_.insert(a_.end(), r.begin(), r.end());
    ++rows_;
  }
  // Stack `below` under this matrix; column counts must agree.
  IntegerMatrix stacked(const IntegerMatrix& below) const {
    if (cols_ != below.cols_) throw std::invalid_argument("column count mismatch");
    IntegerMatrix out = *this;
    out.a_.insert(out.a_.end(), below.a_.begin(), below.a_.end());
    out.rows_ += below.rows_;
    return out;
  }
  IntegerMatrix transposed() const {
    IntegerMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const BigInt& v) { return v == 0; });
  }
  bool operator==(const IntegerMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  IntegerMatrix operator*(const IntegerMatrix& b) const {
    if (cols_ != b.rows_) throw std::invalid_argument("dimension mismatch in product");
    IntegerMatrix c(rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const BigInt& v = (*this)(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += v * b(k, j);
      }
    return c;
  }

  // Row vector times matrix.
  std::vector<BigInt> left_multiply(const std::vector<BigInt>& x) const {
    if (x.size() != rows_) throw std::invalid_argument("dimension mismatch in vector product");
    std::vector<BigInt> y(cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j) y[j] += x[i] * (*this)(i, j);
    }
    return y;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }
  // row_i += k * row_j
  void add_row_multiple(std::size_t i, std::size_t j, const BigInt& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(j, c) != 0) (*this)(i, c) += k * (*this)(j, c);
  }
  // col_i += k * col_j
  void add_col_multiple(std::size_t i, std::size_t j, const BigInt& k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < rows_; ++r)
      if ((*this)(r, j) != 0) (*this)(r, i) += k * (*this)(r, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
  }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
      os << "[";
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
      os << "]\n";
    }
    return os.str();
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> a_;
};

// Fraction-free (Bareiss) determinant.
inline BigInt determinant(IntegerMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      m.swap_rows(k, piv);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

enum class Certificates : unsigned {
  None = 0,
  Left = 1,   // U
  Right = 2,  // V and V^{-1}
  Both = 3,
};
inline bool has(Certificates c, Certificates bit) {
  return (static_cast<unsigned>(c) & static_cast<unsigned>(bit)) != 0;
}

struct SmithForm {
  // Nonzero diagonal entries d_1 | d_2 | ... | d_rank, all positive.
  std::vector<BigInt> factors;
  std::size_t rows = 0, cols = 0;
  IntegerMatrix U, V, V_inv;  // populated per the requested certificates
  Certificates certificates = Certificates::None;

  std::size_t rank() const { return factors.size(); }

  // Full rows x cols diagonal matrix D.
  IntegerMatrix diagonal_matrix() const {
    IntegerMatrix d(rows, cols);
    for (std::size_t i = 0; i < factors.size(); ++i) d(i, i) = factors[i];
    return d;
  }
};

inline SmithForm smith_normal_form(const IntegerMatrix& input,
                                   Certificates want = Certificates::Both) {
  IntegerMatrix a = input;  // working copy; the input is never touched
  const std::size_t m = a.rows(), n = a.cols();
  const bool left = has(want, Certificates::Left);
  const bool right = has(want, Certificates::Right);
  SmithForm s;
  s.rows = m;
  s.cols = n;
  s.certificates = want;
  if (left) s.U = IntegerMatrix::identity(m);
  if (right) {
    s.V = IntegerMatrix::identity(n);
    s.V_inv = IntegerMatrix::identity(n);
  }

  auto row_swap = [&](std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    if (left) s.U.swap_rows(i, j);
  };
  auto row_add = [&](std::size_t i, std::size_t j, const BigInt& k) {
    a.add_row_multiple(i, j, k);
    if (left) s.U.add_row_multiple(i, j, k);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    if (right) {
      s.V.swap_cols(i, j);
      s.V_inv.swap_rows(i, j);
    }
  };
  // col_i += k col_j; V <- V E, V^{-1} <- E^{-1} V^{-1}.
  auto col_add = [&](std::size_t i, std::size_t j, const BigInt& k) {
    a.add_col_multiple(i, j, k);
    if (right) {
      s.V.add_col_multiple(i, j, k);
      s.V_inv.add_row_multiple(j, i, -k);
    }
  };

  const std::size_t lim = std::min(m, n);
  for (std::size_t t = 0; t < lim; ++t) {
    // smallest nonzero entry of the trailing block as pivot
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        const BigInt& v = a(i, j);
        if (v == 0) continue;
        if (pi == m || abs(v) < abs(a(pi, pj))) {
          pi = i;
          pj = j;
          if (abs(v) == 1) goto found;
        }
      }
  found:
    if (pi == m) break;
    row_swap(t, pi);
    col_swap(t, pj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        BigInt qt = a(i, t) / a(t, t);
        row_add(i, t, -qt);
        if (a(i, t) != 0) {
          row_swap(t, i);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        BigInt qt = a(t, j) / a(t, t);
        col_add(j, t, -qt);
        if (a(t, j) != 0) {
          col_swap(t, j);
          dirty = true;
        }
      }
      if (dirty) continue;
      // column and row t are clear; enforce divisibility of the rest
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            row_add(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      if (left) s.U.negate_row(t);
    }
    s.factors.push_back(a(t, t));
  }
  return s;
}

// Is the row vector z in the row space of the matrix whose Smith form is
// `s`? On success `coords` receives c with z = sum c_i * (d_i * V^{-1} row i).
inline bool in_row_space(const SmithForm& s, const std::vector<BigInt>& z,
                         std::vector<BigInt>* coords = nullptr) {
  if (!has(s.certificates, Certificates::Right))
    throw std::invalid_argument("row-space test needs right certificates");
  std::vector<BigInt> w = s.V.left_multiply(z);
  std::vector<BigInt> c(s.rank());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i < s.rank()) {
      if (w[i] % s.factors[i] != 0) return false;
      c[i] = w[i] / s.factors[i];
    } else if (w[i] != 0) {
      return false;
    }
  }
  if (coords) *coords = std::move(c);
  return true;
}

inline BigInt gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace rigidity
