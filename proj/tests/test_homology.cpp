#include <doctest.h>

#include <functional>
#include <map>
#include <random>
#include <set>

#include "cubecat/homology.hpp"
#include "cubecat/pipeline.hpp"

using namespace cubecat;

namespace {

DenseMatrix dense(const std::vector<std::vector<long long>>& rows) {
  DenseMatrix m;
  for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
  return m;
}

DenseMatrix mul(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.size(), std::vector<BigInt>(b.empty() ? 0 : b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < out[i].size(); ++j)
      for (std::size_t k = 0; k < b.size(); ++k) out[i][j] += a[i][k] * b[k][j];
  return out;
}

// gcd of all k x k minors, by brute force: the product d1...dk of the first k
// invariant factors.
BigInt minor_gcd(const DenseMatrix& m, int k) {
  const int r = static_cast<int>(m.size()), c = static_cast<int>(m[0].size());
  BigInt g = 0;
  std::vector<int> rows(k), cols(k);
  std::function<BigInt(std::vector<int>, std::vector<int>)> det = [&](std::vector<int> rs, std::vector<int> cs) -> BigInt {
    if (rs.size() == 1) return m[rs[0]][cs[0]];
    BigInt sum = 0;
    for (std::size_t j = 0; j < cs.size(); ++j) {
      std::vector<int> r2(rs.begin() + 1, rs.end()), c2 = cs;
      c2.erase(c2.begin() + j);
      const BigInt sub = det(r2, c2) * m[rs[0]][cs[j]];
      sum += (j % 2 ? -sub : sub);
    }
    return sum;
  };
  std::function<void(int, int, int, int)> pick = [&](int ri, int rstart, int ci, int cstart) {
    if (ri < k) {
      for (int x = rstart; x < r; ++x) {
        rows[ri] = x;
        pick(ri + 1, x + 1, ci, cstart);
      }
      return;
    }
    if (ci < k) {
      for (int x = cstart; x < c; ++x) {
        cols[ci] = x;
        pick(ri, rstart, ci + 1, x + 1);
      }
      return;
    }
    g = boost::multiprecision::gcd(g, boost::multiprecision::abs(det(rows, cols)));
  };
  pick(0, 0, 0, 0);
  return g;
}

// Rank over Q via exact rational elimination.
int rational_rank(const SparseMatrix& s) {
  using boost::multiprecision::cpp_rational;
  std::vector<std::vector<cpp_rational>> a(s.rows(), std::vector<cpp_rational>(s.cols()));
  for (int c = 0; c < s.cols(); ++c)
    for (const auto& [r, v] : s.column(c)) a[r][c] = v;
  int rank = 0;
  for (int c = 0; c < s.cols() && rank < s.rows(); ++c) {
    int p = rank;
    while (p < s.rows() && a[p][c] == 0) ++p;
    if (p == s.rows()) continue;
    std::swap(a[p], a[rank]);
    for (int r = rank + 1; r < s.rows(); ++r) {
      const cpp_rational f = a[r][c] / a[rank][c];
      for (int k = c; k < s.cols(); ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("Smith normal form examples") {
  CHECK(smith_normal_form(dense({{2, 4}, {6, 8}})).diagonal == std::vector<BigInt>{2, 4});
  CHECK(smith_normal_form(dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).diagonal == std::vector<BigInt>{1, 1, 1});
  CHECK(smith_normal_form(dense({{0, 0}, {0, 0}})).diagonal.empty());
}

TEST_CASE("Smith normal form transforms and divisibility on random matrices") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> val(-6, 6);
  for (int trial = 0; trial < 40; ++trial) {
    const int r = 2 + trial % 3, c = 2 + (trial / 3) % 3;
    DenseMatrix m(r, std::vector<BigInt>(c));
    for (auto& row : m)
      for (auto& x : row) x = val(rng);
    const SNFResult s = smith_normal_form(m, true);
    REQUIRE(s.left);
    REQUIRE(s.right);
    const DenseMatrix d = mul(mul(*s.left, m), *s.right);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        const BigInt want = (i == j && i < static_cast<int>(s.diagonal.size())) ? s.diagonal[i] : BigInt(0);
        CHECK(d[i][j] == want);
      }
    BigInt prod = 1;
    for (std::size_t k = 0; k < s.diagonal.size(); ++k) {
      CHECK(s.diagonal[k] > 0);
      if (k > 0) CHECK(s.diagonal[k] % s.diagonal[k - 1] == 0);
      prod *= s.diagonal[k];
      CHECK(prod == minor_gcd(m, static_cast<int>(k) + 1));
    }
    // Sparse path gives the same factors.
    SparseMatrix sp(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        if (m[i][j] != 0) sp.add(i, j, static_cast<long long>(m[i][j]));
    CHECK(invariant_factors(sp) == s.diagonal);
    CHECK(rank_mod_p(sp, 1000003) == static_cast<int>(s.diagonal.size()));
  }
}

TEST_CASE("coefficient parsing") {
  CHECK(Coefficients::parse("Z").ring == Coefficients::Ring::Z);
  CHECK(Coefficients::parse("Q").to_string() == "Q");
  CHECK(Coefficients::parse("F2").p == 2);
  CHECK_THROWS_AS(Coefficients::parse("F4"), HomologyError);
  CHECK_THROWS_AS(Coefficients::parse("R"), HomologyError);
}

TEST_CASE("unknot and unlinks") {
  const FrobeniusSystem kh = builtin_system(SystemKind::Khovanov);
  const HomologyTable h = compute_homology(parse_pd("Loop[1]"), kh, Coefficients{});
  CHECK(h.entries.size() == 2);
  CHECK(h.entries.at({0, 1}).rank == 1);
  CHECK(h.entries.at({0, -1}).rank == 1);
  const LaurentPoly q_plus_inv{{1, 1}, {-1, 1}};
  CHECK(kauffman_bracket_oracle(parse_pd("Loop[1]")) == q_plus_inv);
  CHECK(graded_euler_characteristic(h) == q_plus_inv);
  const LaurentPoly sq{{2, 1}, {0, 2}, {-2, 1}};
  CHECK(kauffman_bracket_oracle(parse_pd("Loop[1];Loop[2]")) == sq);
}

TEST_CASE("right-handed trefoil over Z") {
  const LinkDiagram t = trefoil_pd().mirror();
  const Pipeline p = build_pipeline(t, builtin_system(SystemKind::Khovanov));
  const HomologyTable h = homology_table(p.complex, Coefficients{});
  int torsion_groups = 0;
  for (const auto& [ij, e] : h.entries) torsion_groups += static_cast<int>(e.torsion.size());
  CHECK(h.total_rank() == 4);
  CHECK(torsion_groups == 1);
  CHECK(h.entries.at({0, 1}).rank == 1);
  CHECK(h.entries.at({0, 3}).rank == 1);
  CHECK(h.entries.at({2, 5}).rank == 1);
  CHECK(h.entries.at({3, 9}).rank == 1);
  CHECK(h.entries.at({3, 7}).torsion == std::vector<BigInt>{2});

  // Rational oracle on every bidegree block.
  const HomologyTable hq = homology_table(p.complex, Coefficients::parse("Q"));
  std::map<std::pair<int, int>, int> oracle;
  std::set<int> js;
  for (const auto& q : p.complex.qdeg) js.insert(q.begin(), q.end());
  for (int j : js) {
    std::vector<std::vector<int>> ids(p.complex.slots());
    for (int k = 0; k < p.complex.slots(); ++k)
      for (std::size_t g = 0; g < p.complex.qdeg[k].size(); ++g)
        if (p.complex.qdeg[k][g] == j) ids[k].push_back(static_cast<int>(g));
    std::vector<int> rk(p.complex.slots(), 0);
    for (int k = 0; k + 1 < p.complex.slots(); ++k)
      if (!ids[k].empty() && !ids[k + 1].empty())
        rk[k] = rational_rank(p.complex.d[k].restricted(ids[k + 1], ids[k]));
    for (int k = 0; k < p.complex.slots(); ++k)
      if (int b = static_cast<int>(ids[k].size()) - rk[k] - (k ? rk[k - 1] : 0))
        oracle[{p.complex.min_degree + k, j}] = b;
  }
  std::map<std::pair<int, int>, int> got;
  for (const auto& [ij, e] : hq.entries) got[ij] = e.rank;
  CHECK(got == oracle);
}

TEST_CASE("F2 Betti numbers dominate free ranks") {
  for (const char* pd : {"X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]", "X[4,2,5,1];X[8,6,1,5];X[6,3,7,4];X[2,7,3,8]",
                         "X[1,4,2,3];X[3,2,4,1]"}) {
    const LinkDiagram d = parse_pd(pd);
    for (SystemKind k : {SystemKind::Khovanov, SystemKind::Nested, SystemKind::Odd}) {
      const Pipeline p = build_pipeline(d, builtin_system(k));
      const HomologyTable z = homology_table(p.complex, Coefficients{});
      const HomologyTable f2 = homology_table(p.complex, Coefficients::parse("F2"));
      for (const auto& [ij, e] : z.entries) {
        const auto it = f2.entries.find(ij);
        CHECK((it != f2.entries.end() ? it->second.rank : 0) >= e.rank);
      }
      CHECK(graded_euler_characteristic(z) == graded_euler_characteristic(p.complex));
      CHECK(graded_euler_characteristic(f2) == graded_euler_characteristic(p.complex));
    }
  }
}

TEST_CASE("Hopf link Euler characteristic matches the state sum") {
  const LinkDiagram h = parse_pd("X[1,4,2,3];X[3,2,4,1]");
  const Pipeline p = build_pipeline(h, builtin_system(SystemKind::Khovanov));
  CHECK(graded_euler_characteristic(p.complex) == kauffman_bracket_oracle(h));
}

TEST_CASE("parallel blocks give the same table") {
  const LinkDiagram d = parse_pd("X[4,2,5,1];X[8,6,1,5];X[6,3,7,4];X[2,7,3,8]");
  const Pipeline p = build_pipeline(d, builtin_system(SystemKind::Odd));
  CHECK(homology_table(p.complex, Coefficients{}, 1).entries == homology_table(p.complex, Coefficients{}, 4).entries);
}
