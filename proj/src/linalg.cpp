#include "cubecat/linalg.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

namespace cubecat {

namespace {

void normalize(SparseMatrix::Column& col) {
  std::sort(col.begin(), col.end());
  std::size_t out = 0;
  for (std::size_t i = 0; i < col.size();) {
    const int r = col[i].first;
    long long v = 0;
    for (; i < col.size() && col[i].first == r; ++i) v += col[i].second;
    if (v != 0) col[out++] = {r, v};
  }
  col.resize(out);
}

}  // namespace

void SparseMatrix::set_column(int c, Column entries) {
  normalize(entries);
  if (!entries.empty() && (entries.front().first < 0 || entries.back().first >= rows_))
    throw std::out_of_range("sparse matrix row index out of range");
  cols_.at(c) = std::move(entries);
}

void SparseMatrix::add(int r, int c, long long v) {
  if (r < 0 || r >= rows_) throw std::out_of_range("sparse matrix row index out of range");
  Column& col = cols_.at(c);
  auto it = std::lower_bound(col.begin(), col.end(), std::pair<int, long long>{r, LLONG_MIN});
  if (it != col.end() && it->first == r) {
    it->second += v;
    if (it->second == 0) col.erase(it);
  } else if (v != 0) {
    col.insert(it, {r, v});
  }
}

long long SparseMatrix::at(int r, int c) const {
  const Column& col = cols_.at(c);
  auto it = std::lower_bound(col.begin(), col.end(), std::pair<int, long long>{r, LLONG_MIN});
  return (it != col.end() && it->first == r) ? it->second : 0;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : cols_) n += c.size();
  return n;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& rhs) const {
  if (cols() != rhs.rows()) throw std::invalid_argument("matrix product: dimension mismatch");
  SparseMatrix out(rows_, rhs.cols());
  for (int c = 0; c < rhs.cols(); ++c) {
    Column acc;
    for (const auto& [k, v] : rhs.cols_[c])
      for (const auto& [r, w] : cols_[k]) acc.emplace_back(r, v * w);
    normalize(acc);
    out.cols_[c] = std::move(acc);
  }
  return out;
}

SparseMatrix SparseMatrix::operator-() const {
  SparseMatrix out = *this;
  for (auto& col : out.cols_)
    for (auto& e : col) e.second = -e.second;
  return out;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols() != rhs.cols()) throw std::invalid_argument("matrix sum: dimension mismatch");
  SparseMatrix out(rows_, cols());
  for (int c = 0; c < cols(); ++c) {
    Column acc = cols_[c];
    acc.insert(acc.end(), rhs.cols_[c].begin(), rhs.cols_[c].end());
    normalize(acc);
    out.cols_[c] = std::move(acc);
  }
  return out;
}

SparseMatrix SparseMatrix::transposed() const {
  SparseMatrix out(cols(), rows_);
  for (int c = 0; c < cols(); ++c)
    for (const auto& [r, v] : cols_[c]) out.cols_[r].emplace_back(c, v);
  return out;
}

bool SparseMatrix::operator==(const SparseMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_;
}

std::vector<std::vector<long long>> SparseMatrix::to_dense() const {
  std::vector<std::vector<long long>> d(rows_, std::vector<long long>(cols(), 0));
  for (int c = 0; c < cols(); ++c)
    for (const auto& [r, v] : cols_[c]) d[r][c] = v;
  return d;
}

SparseMatrix SparseMatrix::identity(int n) {
  SparseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.cols_[i] = {{i, 1}};
  return m;
}

SparseMatrix SparseMatrix::diagonal(const std::vector<long long>& d) {
  const int n = static_cast<int>(d.size());
  SparseMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    if (d[i] != 0) m.cols_[i] = {{i, d[i]}};
  return m;
}

SparseMatrix SparseMatrix::restricted(const std::vector<int>& row_ids, const std::vector<int>& col_ids) const {
  std::vector<int> new_row(rows_, -1);
  for (std::size_t i = 0; i < row_ids.size(); ++i) new_row.at(row_ids[i]) = static_cast<int>(i);
  SparseMatrix out(static_cast<int>(row_ids.size()), static_cast<int>(col_ids.size()));
  for (std::size_t j = 0; j < col_ids.size(); ++j) {
    Column col;
    for (const auto& [r, v] : cols_.at(col_ids[j]))
      if (new_row[r] >= 0) col.emplace_back(new_row[r], v);
    normalize(col);
    out.cols_[j] = std::move(col);
  }
  return out;
}

// ---------------------------------------------------------------------------

F2System::F2System(int variables) : n_(variables), words_((variables + 1 + 63) / 64) {}

void F2System::add_equation(const std::vector<int>& vars, bool rhs) {
  std::vector<std::uint64_t> row(words_, 0);
  for (int v : vars) {
    if (v < 0 || v >= n_) throw std::out_of_range("F2 variable out of range");
    row[v / 64] ^= std::uint64_t{1} << (v % 64);
  }
  if (rhs) row[n_ / 64] ^= std::uint64_t{1} << (n_ % 64);
  rows_.push_back(std::move(row));
}

F2System::Reduced F2System::reduce() const {
  Reduced r;
  r.rows = rows_;
  auto bit = [](const std::vector<std::uint64_t>& row, int j) { return (row[j / 64] >> (j % 64)) & 1u; };
  std::size_t next = 0;
  for (int col = 0; col < n_ && next < r.rows.size(); ++col) {
    std::size_t piv = next;
    while (piv < r.rows.size() && !bit(r.rows[piv], col)) ++piv;
    if (piv == r.rows.size()) continue;
    std::swap(r.rows[piv], r.rows[next]);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      if (i == next || !bit(r.rows[i], col)) continue;
      for (int w = 0; w < words_; ++w) r.rows[i][w] ^= r.rows[next][w];
    }
    r.pivot_col.push_back(col);
    ++next;
  }
  for (std::size_t i = next; i < r.rows.size(); ++i)
    if (bit(r.rows[i], n_)) r.consistent = false;
  r.rows.resize(next);
  return r;
}

std::optional<std::vector<std::uint8_t>> F2System::solve(const std::vector<std::uint8_t>& free_value) const {
  const Reduced r = reduce();
  if (!r.consistent) return std::nullopt;
  std::vector<std::uint8_t> x(n_, 0);
  std::vector<bool> is_pivot(n_, false);
  for (int c : r.pivot_col) is_pivot[c] = true;
  if (!free_value.empty()) {
    if (static_cast<int>(free_value.size()) != n_) throw std::invalid_argument("free value vector has wrong size");
    for (int j = 0; j < n_; ++j)
      if (!is_pivot[j]) x[j] = free_value[j] & 1u;
  }
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    std::uint8_t v = (row[n_ / 64] >> (n_ % 64)) & 1u;
    for (int j = 0; j < n_; ++j)
      if (!is_pivot[j] && x[j] && ((row[j / 64] >> (j % 64)) & 1u)) v ^= 1u;
    x[r.pivot_col[i]] = v;
  }
  return x;
}

int F2System::nullity() const {
  const Reduced r = reduce();
  if (!r.consistent) return -1;
  return n_ - static_cast<int>(r.pivot_col.size());
}

}  // namespace cubecat
