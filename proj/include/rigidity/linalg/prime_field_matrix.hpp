#pragma once

// Sparse matrices over Z/p and their rank: a Markowitz-style sparse
// eliminator and a dense elimination backend used for cross-checks.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rigidity {

class PrimeFieldMatrix {
 public:
  struct Entry {
    std::uint32_t row, col, value;
    bool operator<(const Entry& o) const { return row != o.row ? row < o.row : col < o.col; }
  };

  PrimeFieldMatrix() = default;
  PrimeFieldMatrix(std::uint32_t modulus, std::size_t rows, std::size_t cols,
                   std::vector<Entry> entries)
      : p_(modulus), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (p_ < 2) throw std::invalid_argument("modulus must be >= 2");
    std::sort(entries_.begin(), entries_.end());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const auto& e = entries_[i];
      if (e.row >= rows_ || e.col >= cols_) throw std::out_of_range("entry outside matrix");
      if (e.value == 0 || e.value >= p_) throw std::invalid_argument("entry not in [1, p-1]");
      if (i && entries_[i - 1].row == e.row && entries_[i - 1].col == e.col)
        throw std::invalid_argument("duplicate matrix entry");
    }
  }

  // Builds from signed contributions, summing duplicates mod p and
  // dropping zeros.
  struct Contribution {
    std::uint32_t row, col;
    std::int64_t value;
  };
  static PrimeFieldMatrix accumulate(std::uint32_t modulus, std::size_t rows, std::size_t cols,
                                     const std::vector<Contribution>& parts) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::int64_t> acc;
    const auto p = static_cast<std::int64_t>(modulus);
    for (const auto& c : parts) {
      auto& v = acc[{c.row, c.col}];
      v = ((v + c.value) % p + p) % p;
    }
    std::vector<Entry> e;
    e.reserve(acc.size());
    for (const auto& [rc, v] : acc)
      if (v) e.push_back({rc.first, rc.second, static_cast<std::uint32_t>(v)});
    return {modulus, rows, cols, std::move(e)};
  }

  static PrimeFieldMatrix identity(std::uint32_t modulus, std::size_t n) {
    std::vector<Entry> e;
    for (std::size_t i = 0; i < n; ++i)
      e.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i), 1});
    return {modulus, n, n, std::move(e)};
  }

  std::uint32_t modulus() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }

  std::vector<std::vector<std::uint32_t>> dense() const {
    std::vector<std::vector<std::uint32_t>> d(rows_, std::vector<std::uint32_t>(cols_, 0));
    for (const auto& e : entries_) d[e.row][e.col] = e.value;
    return d;
  }

  PrimeFieldMatrix transposed() const {
    std::vector<Entry> t;
    t.reserve(entries_.size());
    for (const auto& e : entries_) t.push_back({e.col, e.row, e.value});
    return {p_, cols_, rows_, std::move(t)};
  }

  // Keep the listed rows and columns, renumbered in the given order.
  PrimeFieldMatrix submatrix(const std::vector<std::size_t>& keep_rows,
                             const std::vector<std::size_t>& keep_cols) const {
    std::vector<std::int64_t> rmap(rows_, -1), cmap(cols_, -1);
    for (std::size_t i = 0; i < keep_rows.size(); ++i) rmap.at(keep_rows[i]) = std::int64_t(i);
    for (std::size_t j = 0; j < keep_cols.size(); ++j) cmap.at(keep_cols[j]) = std::int64_t(j);
    std::vector<Entry> s;
    for (const auto& e : entries_)
      if (rmap[e.row] >= 0 && cmap[e.col] >= 0)
        s.push_back({static_cast<std::uint32_t>(rmap[e.row]),
                     static_cast<std::uint32_t>(cmap[e.col]), e.value});
    return {p_, keep_rows.size(), keep_cols.size(), std::move(s)};
  }

  // Entry (i, j) moves to (row_perm[i], col_perm[j]).
  PrimeFieldMatrix permuted(const std::vector<std::size_t>& row_perm,
                            const std::vector<std::size_t>& col_perm) const {
    std::vector<Entry> s;
    s.reserve(entries_.size());
    for (const auto& e : entries_)
      s.push_back({static_cast<std::uint32_t>(row_perm.at(e.row)),
                   static_cast<std::uint32_t>(col_perm.at(e.col)), e.value});
    return {p_, rows_, cols_, std::move(s)};
  }

  // this * b over Z/p.
  PrimeFieldMatrix operator*(const PrimeFieldMatrix& b) const {
    if (cols_ != b.rows_ || p_ != b.p_) throw std::invalid_argument("incompatible product");
    // rows of b indexed for lookup
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> brow(b.rows_);
    for (const auto& e : b.entries_) brow[e.row].push_back({e.col, e.value});
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> acc;
    for (const auto& e : entries_)
      for (const auto& [c, v] : brow[e.col]) {
        auto& slot = acc[{e.row, c}];
        slot = (slot + std::uint64_t(e.value) * v) % p_;
      }
    std::vector<Entry> out;
    for (const auto& [rc, v] : acc)
      if (v) out.push_back({rc.first, rc.second, static_cast<std::uint32_t>(v)});
    return {p_, rows_, b.cols_, std::move(out)};
  }

  bool is_zero() const { return entries_.empty(); }

 private:
  std::uint32_t p_ = 2;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Entry> entries_;
};

namespace detail {

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p prime: a^{p-2}
  std::uint64_t r = 1, b = a % p;
  std::uint32_t e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

}  // namespace detail

// Sparse Gaussian elimination with a Markowitz-style pivot rule: the
// sparsest live row, and within it the sparsest live column. The input is
// copied; the modulus must be prime.
inline std::size_t gf_rank(const PrimeFieldMatrix& m) {
  using SparseRow = std::vector<std::pair<std::uint32_t, std::uint32_t>>;  // (col, val)
  const std::uint32_t p = m.modulus();
  std::vector<SparseRow> rows(m.rows());
  for (const auto& e : m.entries()) rows[e.row].push_back({e.col, e.value});
  std::vector<std::size_t> col_count(m.cols(), 0);
  std::vector<std::vector<std::uint32_t>> col_rows(m.cols());
  for (std::uint32_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r]) {
      ++col_count[c];
      col_rows[c].push_back(r);
    }
  std::set<std::pair<std::size_t, std::uint32_t>> queue;  // (nnz, row)
  for (std::uint32_t r = 0; r < rows.size(); ++r)
    if (!rows[r].empty()) queue.insert({rows[r].size(), r});
  std::vector<char> alive(rows.size(), 1);

  auto find = [](const SparseRow& row, std::uint32_t c) -> const std::uint32_t* {
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(c, std::uint32_t(0)));
    if (it != row.end() && it->first == c) return &it->second;
    return nullptr;
  };

  std::size_t rank = 0;
  SparseRow merged;
  while (!queue.empty()) {
    auto [nnz, r] = *queue.begin();
    queue.erase(queue.begin());
    const SparseRow& prow = rows[r];
    std::uint32_t pc = prow.front().first, pv = prow.front().second;
    for (const auto& [c, v] : prow)
      if (col_count[c] < col_count[pc]) {
        pc = c;
        pv = v;
      }
    const std::uint32_t pinv = detail::inv_mod(pv, p);
    alive[r] = 0;
    for (const auto& [c, v] : prow) --col_count[c];
    ++rank;

    for (std::uint32_t s : col_rows[pc]) {
      if (!alive[s]) continue;
      const std::uint32_t* sv = find(rows[s], pc);
      if (!sv) continue;
      // s <- s - (s[pc] / pv) * prow
      const std::uint64_t f = (std::uint64_t(p - *sv) * pinv) % p;
      queue.erase({rows[s].size(), s});
      merged.clear();
      const SparseRow& a = rows[s];
      std::size_t i = 0, j = 0;
      while (i < a.size() || j < prow.size()) {
        if (j == prow.size() || (i < a.size() && a[i].first < prow[j].first)) {
          merged.push_back(a[i++]);
        } else if (i == a.size() || prow[j].first < a[i].first) {
          auto c = prow[j].first;
          auto v = static_cast<std::uint32_t>(f * prow[j].second % p);
          ++j;
          if (v) {
            merged.push_back({c, v});
            ++col_count[c];
            col_rows[c].push_back(s);
          }
        } else {
          auto c = a[i].first;
          auto v = static_cast<std::uint32_t>((a[i].second + f * prow[j].second) % p);
          ++i;
          ++j;
          if (v)
            merged.push_back({c, v});
          else
            --col_count[c];
        }
      }
      rows[s].swap(merged);
      if (!rows[s].empty()) queue.insert({rows[s].size(), s});
    }
    col_rows[pc].clear();
    col_rows[pc].shrink_to_fit();
  }
  return rank;
}

// Dense row-echelon elimination with lazy modular reduction of the rows
// below the pivot. Independent of the sparse path above.
inline std::size_t dense_rank(const PrimeFieldMatrix& m) {
  const std::uint64_t p = m.modulus();
  // eliminate along the shorter dimension
  const PrimeFieldMatrix& src = m;
  const bool transpose = m.rows() > m.cols();
  const std::size_t nr = transpose ? m.cols() : m.rows();
  const std::size_t nc = transpose ? m.rows() : m.cols();
  std::vector<std::vector<std::uint64_t>> a(nr, std::vector<std::uint64_t>(nc, 0));
  for (const auto& e : src.entries()) {
    if (transpose)
      a[e.col][e.row] = e.value;
    else
      a[e.row][e.col] = e.value;
  }
  const std::uint64_t budget = (~std::uint64_t(0) - p) / ((p - 1) * (p - 1) + 1);
  std::vector<std::uint64_t> pending(nr, 0);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < nc && rank < nr; ++col) {
    std::size_t piv = nr;
    for (std::size_t i = rank; i < nr; ++i) {
      a[i][col] %= p;
      if (a[i][col]) {
        piv = i;
        break;
      }
    }
    if (piv == nr) continue;
    std::swap(a[piv], a[rank]);
    std::swap(pending[piv], pending[rank]);
    auto& prow = a[rank];
    for (std::size_t j = col; j < nc; ++j) prow[j] %= p;
    const std::uint64_t pinv = detail::inv_mod(static_cast<std::uint32_t>(prow[col]), m.modulus());
    for (std::size_t j = col; j < nc; ++j) prow[j] = prow[j] * pinv % p;
    for (std::size_t i = rank + 1; i < nr; ++i) {
      auto& row = a[i];
      const std::uint64_t c = row[col] % p;
      if (!c) {
        row[col] = 0;
        continue;
      }
      if (pending[i] >= budget) {
        for (std::size_t j = col; j < nc; ++j) row[j] %= p;
        pending[i] = 0;
      }
      const std::uint64_t f = p - c;
      std::uint64_t* __restrict dst = row.data();
      const std::uint64_t* __restrict srcp = prow.data();
      for (std::size_t j = col; j < nc; ++j) dst[j] += f * srcp[j];
      ++pending[i];
    }
    ++rank;
  }
  return rank;
}

}  // namespace rigidity
