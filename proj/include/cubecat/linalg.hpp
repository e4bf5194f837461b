#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace cubecat {

/// Integer matrix stored by columns; each column is a row-sorted list of
/// nonzero entries.
class SparseMatrix {
 public:
  using Column = std::vector<std::pair<int, long long>>;

  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}

  int rows() const { return rows_; }
  int cols() const { return static_cast<int>(cols_.size()); }
  const std::vector<Column>& columns() const { return cols_; }
  const Column& column(int c) const { return cols_[c]; }
  /// Replace column c; entries need not be sorted and may repeat.
  void set_column(int c, Column entries);
  void add(int r, int c, long long v);

  long long at(int r, int c) const;
  std::size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }

  SparseMatrix operator*(const SparseMatrix& rhs) const;
  SparseMatrix operator-() const;
  SparseMatrix operator+(const SparseMatrix& rhs) const;
  SparseMatrix transposed() const;
  bool operator==(const SparseMatrix& rhs) const;

  std::vector<std::vector<long long>> to_dense() const;
  static SparseMatrix identity(int n);
  static SparseMatrix diagonal(const std::vector<long long>& d);

  /// Submatrix on the given row and column index sets (in that order).
  SparseMatrix restricted(const std::vector<int>& row_ids, const std::vector<int>& col_ids) const;

 private:
  int rows_ = 0;
  std::vector<Column> cols_;
};

/// Linear system over F_2: rows are equations sum_{j in row} x_j = rhs.
class F2System {
 public:
  explicit F2System(int variables);
  int variables() const { return n_; }
  void add_equation(const std::vector<int>& vars, bool rhs);
  std::size_t equations() const { return rows_.size(); }

  /// Some solution with free variables fixed by `free_value` (all zero when
  /// empty); nullopt if the system is inconsistent.
  std::optional<std::vector<std::uint8_t>> solve(const std::vector<std::uint8_t>& free_value = {}) const;
  /// Number of free variables of the reduced system (-1 if inconsistent).
  int nullity() const;

 private:
  struct Reduced {
    std::vector<std::vector<std::uint64_t>> rows;
    std::vector<int> pivot_col;
    bool consistent = true;
  };
  Reduced reduce() const;

  int n_;
  int words_;
  std::vector<std::vector<std::uint64_t>> rows_;  // n_ bits + 1 rhs bit
};

}  // namespace cubecat
