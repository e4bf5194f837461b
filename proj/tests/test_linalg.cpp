#include <doctest.h>

#include <random>

#include "cubecat/linalg.hpp"

using namespace cubecat;

namespace {

using Dense = std::vector<std::vector<long long>>;

Dense dense_mul(const Dense& a, const Dense& b) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  Dense out(n, std::vector<long long>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t l = 0; l < k; ++l) out[i][j] += a[i][l] * b[l][j];
  return out;
}

SparseMatrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_int_distribution<int> val(-2, 2);
  SparseMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (const int v = val(rng)) m.add(r, c, v);
  return m;
}

}  // namespace

TEST_CASE("sparse products agree with dense products") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const SparseMatrix a = random_matrix(rng, 4, 5);
    const SparseMatrix b = random_matrix(rng, 5, 3);
    CHECK((a * b).to_dense() == dense_mul(a.to_dense(), b.to_dense()));
    CHECK((a * b).transposed() == b.transposed() * a.transposed());
    CHECK((a + (-a)).is_zero());
  }
}

TEST_CASE("columns are normalized on insertion") {
  SparseMatrix m(3, 1);
  m.set_column(0, {{2, 1}, {0, 4}, {2, -1}, {1, 3}});
  CHECK(m.at(0, 0) == 4);
  CHECK(m.at(1, 0) == 3);
  CHECK(m.at(2, 0) == 0);
  CHECK(m.nonzeros() == 2);
}

TEST_CASE("restriction, identity and diagonal") {
  const SparseMatrix d = SparseMatrix::diagonal({1, -1, 5});
  CHECK(d.at(1, 1) == -1);
  CHECK(d * SparseMatrix::identity(3) == d);
  const SparseMatrix r = d.restricted({0, 2}, {2});
  CHECK(r.rows() == 2);
  CHECK(r.cols() == 1);
  CHECK(r.at(1, 0) == 5);
  CHECK(r.at(0, 0) == 0);
}

TEST_CASE("F2 systems") {
  // x0 + x1 = 1, x1 + x2 = 0
  F2System s(3);
  s.add_equation({0, 1}, true);
  s.add_equation({1, 2}, false);
  CHECK(s.nullity() == 1);
  const auto x = s.solve();
  REQUIRE(x);
  CHECK(((*x)[0] ^ (*x)[1]) == 1);
  CHECK(((*x)[1] ^ (*x)[2]) == 0);

  s.add_equation({0, 2}, false);  // contradicts the sum of the first two
  CHECK_FALSE(s.solve());
  CHECK(s.nullity() == -1);
}

TEST_CASE("F2 solutions honour every equation on random systems") {
  std::mt19937_64 rng(5);
  std::bernoulli_distribution coin(0.3);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 70;  // more than one 64-bit word
    // Build equations from a planted solution so the system is consistent.
    std::vector<std::uint8_t> planted(n);
    for (auto& b : planted) b = coin(rng);
    F2System s(n);
    std::vector<std::vector<int>> eqs;
    std::vector<bool> rhs;
    for (int e = 0; e < 50; ++e) {
      std::vector<int> vars;
      bool r = false;
      for (int v = 0; v < n; ++v)
        if (coin(rng)) {
          vars.push_back(v);
          r ^= planted[v];
        }
      s.add_equation(vars, r);
      eqs.push_back(vars);
      rhs.push_back(r);
    }
    const auto x = s.solve();
    REQUIRE(x);
    for (std::size_t e = 0; e < eqs.size(); ++e) {
      bool sum = false;
      for (int v : eqs[e]) sum ^= (*x)[v];
      CHECK(sum == rhs[e]);
    }
  }
}
