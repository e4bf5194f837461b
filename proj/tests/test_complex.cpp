#include <doctest.h>

#include <algorithm>
#include <random>

#include "cubecat/complex.hpp"
#include "cubecat/pipeline.hpp"

using namespace cubecat;

namespace {

const char* kBigonUnlink = "X[2,3,4,1];X[4,3,2,1]";

// Direct substitution: eps(e1) eps(e2) eps(e3) eps(e4) = psi on every face
// with a nonzero value.
bool substitution_oracle(const EdgeCube& cube, const FaceCocycle& psi, const SignAssignment& eps) {
  for (std::size_t f = 0; f < psi.faces.size(); ++f) {
    if (psi.psi[f] == 0) continue;
    const Face& face = psi.faces[f];
    const std::uint32_t v = face.vertex, a = v | (1u << face.i), b = v | (1u << face.j);
    const int prod = eps.eps[cube.edge_id(v, face.i)] * eps.eps[cube.edge_id(v, face.j)] *
                     eps.eps[cube.edge_id(a, face.j)] * eps.eps[cube.edge_id(b, face.i)];
    // A commuting face (psi = -1) needs an odd number of -1 signs so that the
    // signed square anticommutes.
    if (prod != psi.psi[f]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("cube shapes") {
  const Hypercube t = build_hypercube(trefoil_pd(), builtin_system(SystemKind::Khovanov));
  CHECK(t.cube.vertex_count() == 8);
  CHECK(t.cube.edge_count() == 12);
  const Hypercube u = build_hypercube(parse_pd("Loop[1]"), builtin_system(SystemKind::Khovanov));
  CHECK(u.cube.vertex_count() == 1);
  CHECK(u.cube.edge_count() == 0);
  CHECK(u.cube.rank(0) == 2);
  const Hypercube h = build_hypercube(parse_pd("X[1,4,2,3];X[3,2,4,1]"), builtin_system(SystemKind::Khovanov));
  CHECK(h.cube.vertex_count() == 4);
  CHECK(h.cube.edge_count() == 4);
}

TEST_CASE("Khovanov faces all commute and the standard rule solves them") {
  for (const char* pd : {"X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]", "X[4,2,5,1];X[8,6,1,5];X[6,3,7,4];X[2,7,3,8]"}) {
    const Hypercube h = build_hypercube(parse_pd(pd), builtin_system(SystemKind::Khovanov));
    const FaceCocycle psi = face_cocycle(h.cube);
    for (int p : psi.psi) CHECK(p == -1);
    CHECK(three_cube_violations(h.cube, psi) == 0);
    const SignAssignment std_eps = standard_sign_assignment(h.cube);
    CHECK(satisfies(h.cube, psi, std_eps));
    CHECK(substitution_oracle(h.cube, psi, std_eps));
    const auto solved = solve_sign_assignment(h.cube, psi);
    REQUIRE(solved);
    CHECK(substitution_oracle(h.cube, psi, *solved));
  }
}

TEST_CASE("standard rule counts ones before the changing letter") {
  const EdgeCube cube(3);
  const SignAssignment s = standard_sign_assignment(cube);
  CHECK(s.eps[cube.edge_id(0b000, 2)] == 1);
  CHECK(s.eps[cube.edge_id(0b001, 2)] == -1);
  CHECK(s.eps[cube.edge_id(0b011, 2)] == 1);
  CHECK(s.eps[cube.edge_id(0b010, 0)] == 1);
}

TEST_CASE("one-crossing cube takes the positive tie-break") {
  const Hypercube h = build_hypercube(parse_pd("X[1,2,2,1]"), builtin_system(SystemKind::Nested));
  const auto eps = solve_sign_assignment(h.cube, face_cocycle(h.cube));
  REQUIRE(eps);
  CHECK(eps->eps == std::vector<int>{1});
}

TEST_CASE("nested trefoil: solver output satisfies every face by substitution") {
  const Hypercube h = build_hypercube(trefoil_pd(), builtin_system(SystemKind::Nested));
  const FaceCocycle psi = face_cocycle(h.cube);
  CHECK(psi.faces.size() == 6);
  const auto eps = solve_sign_assignment(h.cube, psi);
  REQUIRE(eps);
  CHECK(substitution_oracle(h.cube, psi, *eps));
  CHECK(d_squared_zero(assemble_complex(h.cube, *eps)));
}

TEST_CASE("torus face: nested anticommutes, odd vanishes, Khovanov commutes") {
  const LinkDiagram d = parse_pd(kBigonUnlink, OrientMode::Numbering);
  for (std::uint32_t w = 0; w < 4; ++w) CHECK(resolve(d, SmoothingWord(w, 2)).size() == (w == 1 || w == 2 ? 2 : 1));
  const FaceCocycle n = face_cocycle(build_hypercube(d, builtin_system(SystemKind::Nested)).cube);
  const FaceCocycle k = face_cocycle(build_hypercube(d, builtin_system(SystemKind::Khovanov)).cube);
  const FaceCocycle o = face_cocycle(build_hypercube(d, builtin_system(SystemKind::Odd)).cube);
  REQUIRE(n.psi.size() == 1);
  CHECK(n.psi[0] == 1);
  CHECK(k.psi[0] == -1);
  CHECK(o.psi[0] == 0);
}

TEST_CASE("every 3-cube has even anticommutative parity") {
  const LinkDiagram f = parse_pd("X[4,2,5,1];X[8,6,1,5];X[6,3,7,4];X[2,7,3,8]");
  for (SystemKind k : {SystemKind::Khovanov, SystemKind::Nested, SystemKind::Odd}) {
    const Hypercube h = build_hypercube(f, builtin_system(k));
    CHECK(three_cube_violations(h.cube, face_cocycle(h.cube)) == 0);
  }
}

TEST_CASE("unknot complex and d squared") {
  const Pipeline p = build_pipeline(parse_pd("Loop[1]"), builtin_system(SystemKind::Khovanov));
  CHECK(p.complex.slots() == 1);
  CHECK(p.complex.min_degree == 0);
  std::vector<int> q = p.complex.qdeg[0];
  std::sort(q.begin(), q.end());
  CHECK(q == std::vector<int>{-1, 1});
  for (SystemKind k : {SystemKind::Khovanov, SystemKind::Nested, SystemKind::Odd})
    CHECK(d_squared_zero(build_pipeline(trefoil_pd(), builtin_system(k)).complex));
}

TEST_CASE("random sign assignments are valid") {
  const Pipeline p = build_pipeline(parse_pd(kBigonUnlink, OrientMode::Numbering), builtin_system(SystemKind::Odd));
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    const auto eps = random_sign_assignment(p.hypercube.cube, p.psi, rng);
    REQUIRE(eps);
    CHECK(satisfies(p.hypercube.cube, p.psi, *eps));
    CHECK(d_squared_zero(assemble_complex(p.hypercube.cube, *eps)));
  }
}

TEST_CASE("cone of the identity is acyclic") {
  const Hypercube h = build_hypercube(trefoil_pd(), builtin_system(SystemKind::Khovanov));
  std::vector<SparseMatrix> id;
  for (std::uint32_t v = 0; v < h.cube.vertex_count(); ++v) id.push_back(SparseMatrix::identity(h.cube.rank(v)));
  const EdgeCube cone = cone_cube(h.cube, h.cube, id);
  CHECK(cone.dim() == 4);
  const FaceCocycle psi = face_cocycle(cone);
  const auto eps = solve_sign_assignment(cone, psi);
  REQUIRE(eps);
  const ChainComplex c = assemble_complex(cone, *eps);
  CHECK(d_squared_zero(c));
  CHECK(homology_table(c, Coefficients{}).entries.empty());
  CHECK(restrict_signs(cone, *eps, 0).eps.size() == 12);
}
