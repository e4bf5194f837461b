#include <doctest.h>

#include <numeric>

#include "cubecat/diagram.hpp"
#include "cubecat/resolution.hpp"

using namespace cubecat;

namespace {

// Independent circle count: union-find over the 4c slot endpoints, joined by
// edges and by the smoothing arcs.
int circle_count_oracle(const LinkDiagram& d, std::uint32_t bits) {
  const int c = d.crossing_count();
  std::vector<int> parent(4 * c);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  std::vector<int> first_slot(d.n_edges() + 1, -1);
  for (int x = 0; x < c; ++x)
    for (int p = 0; p < 4; ++p) {
      const int e = d.crossings()[x].edges[p];
      if (first_slot[e] < 0) first_slot[e] = 4 * x + p;
      else unite(first_slot[e], 4 * x + p);
    }
  for (int x = 0; x < c; ++x) {
    if ((bits >> x) & 1u) {
      unite(4 * x, 4 * x + 3);
      unite(4 * x + 1, 4 * x + 2);
    } else {
      unite(4 * x, 4 * x + 1);
      unite(4 * x + 2, 4 * x + 3);
    }
  }
  int n = 0;
  for (int s = 0; s < 4 * c; ++s)
    if (find(s) == s) ++n;
  return n + static_cast<int>(d.loops().size());
}

}  // namespace

TEST_CASE("trefoil parses with three negative crossings") {
  const LinkDiagram t = trefoil_pd();
  CHECK(t.crossing_count() == 3);
  CHECK(t.c_minus() == 3);
  CHECK(t.c_plus() == 0);
  CHECK(t.components() == 1);
  CHECK(t.planar_map().euler_ok());
  const LinkDiagram m = t.mirror();
  CHECK(m.c_plus() == 3);
  CHECK(m.c_minus() == 0);
}

TEST_CASE("Hopf link") {
  const LinkDiagram h = parse_pd("X[1,4,2,3];X[3,2,4,1]");
  CHECK(h.crossing_count() == 2);
  CHECK(h.components() == 2);
  CHECK(h.c_minus() == 2);
  CHECK(resolve(h, SmoothingWord::from_string("00")).size() == 2);
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(parse_pd(""), ParseError);
  CHECK_THROWS_AS(parse_pd("X[1,4,2,3]"), ParseError);
  CHECK_THROWS_AS(parse_pd("X[1,2,3"), ParseError);
  CHECK_THROWS_AS(parse_pd("X[1,1,1,1]"), ParseError);
  CHECK_THROWS_AS(parse_pd("X[1,4,2,5];X[3,6,4,1];X[5,2,6,7]"), ParseError);
}

TEST_CASE("serialize round trip and reversal") {
  const LinkDiagram t = trefoil_pd();
  const LinkDiagram u = parse_pd(t.serialize());
  CHECK(u.serialize() == t.serialize());
  const LinkDiagram r = t.reversed();
  CHECK(r.c_plus() == t.c_plus());
  CHECK(r.c_minus() == t.c_minus());
  CHECK(parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").serialize() == t.serialize());
  CHECK(parse_pd("Loop[1];Loop[2]").components() == 2);
}

TEST_CASE("trefoil circle counts") {
  const LinkDiagram t = trefoil_pd();
  CHECK(resolve(t, SmoothingWord::from_string("000")).size() == 3);
  CHECK(resolve(t, SmoothingWord::from_string("111")).size() == 2);
  for (std::uint32_t b = 0; b < 8; ++b)
    CHECK(resolve(t, SmoothingWord(b, 3)).size() == circle_count_oracle(t, b));
}

TEST_CASE("smoothing word validation") {
  CHECK_THROWS_AS(SmoothingWord::from_string("01x"), ResolutionError);
  CHECK_THROWS_AS(resolve(trefoil_pd(), SmoothingWord::from_string("01")), ResolutionError);
}

TEST_CASE("saddles change circle count by one") {
  const LinkDiagram t = trefoil_pd();
  for (std::uint32_t b = 0; b < 8; ++b)
    for (int x = 0; x < 3; ++x) {
      if ((b >> x) & 1u) continue;
      const SmoothingWord w(b, 3);
      const SaddleData s = classify_saddle(t, w, x);
      const int n = resolve(t, w).size();
      const int m = resolve(t, w.with_bit(x)).size();
      CHECK(m - n == (s.kind == SaddleKind::Split ? 1 : -1));
    }
}
