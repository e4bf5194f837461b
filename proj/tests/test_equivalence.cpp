#include <doctest.h>

#include "cubecat/equivalence.hpp"

using namespace cubecat;

TEST_CASE("phi on single vertices") {
  // Loop: one circle at depth 0.
  const Hypercube u = build_hypercube(parse_pd("Loop[1]"), builtin_system(SystemKind::Nested));
  CHECK(build_phi(u)[0] == SparseMatrix::identity(2));

  // The bigon unlink has a vertex with one circle inside another.
  const Hypercube h = build_hypercube(parse_pd("X[2,3,4,1];X[4,3,2,1]", OrientMode::Numbering),
                                      builtin_system(SystemKind::Nested));
  const auto phi = build_phi(h);
  bool seen = false;
  for (std::uint32_t v = 0; v < 4; ++v) {
    if (h.states[v].depth != std::vector<int>{0, 1}) continue;
    seen = true;
    // diag(1, 1) on the depth-0 circle tensored with diag(1, -1) on the other.
    CHECK(phi[v] == SparseMatrix::diagonal({1, 1, -1, -1}));
  }
  CHECK(seen);
}

TEST_CASE("the eight intertwining signs") {
  const auto table = phi_intertwining_table();
  REQUIRE(table.size() == 8);
  for (const auto& e : table) {
    CAPTURE(e.op);
    CAPTURE(e.depth_parity);
    CHECK(e.ok());
  }
  // Comultiplications carry the only sign changes.
  for (const auto& e : table) {
    if (e.op == "d1") CHECK(e.observed == (e.depth_parity ? 1 : -1));
    if (e.op == "d0") CHECK(e.observed == (e.depth_parity ? -1 : 1));
    if (e.op[0] == 'm') CHECK(e.observed == 1);
  }
}

TEST_CASE("nested and Khovanov complexes are isomorphic") {
  const ConeCertificate u = verify_theorem1(parse_pd("Loop[1]"));
  CHECK(u.ok());
  const ConeCertificate t = verify_theorem1(trefoil_pd());
  CHECK(t.ok());
  CHECK(t.intertwining.value_or(false));
  const ConeCertificate b = verify_theorem1(parse_pd("X[2,3,4,1];X[4,3,2,1]", OrientMode::Numbering));
  CHECK(b.ok());
  CHECK(b.anticommuting_faces > 0);
}

TEST_CASE("a wrong vertical map is rejected") {
  // The identity does not intertwine the nested and Khovanov cubes on a
  // diagram with nested saddles.
  const LinkDiagram d = parse_pd("X[2,3,4,1];X[4,3,2,1]", OrientMode::Numbering);
  const Hypercube n = build_hypercube(d, builtin_system(SystemKind::Nested));
  const Hypercube k = build_hypercube(d, builtin_system(SystemKind::Khovanov));
  CHECK_FALSE(certify_cone(n, k, identity_maps(n.cube), "identity", Coefficients{}, 1).ok());
}

TEST_CASE("sign assignment equivalence") {
  const Pipeline p = build_pipeline(trefoil_pd(), builtin_system(SystemKind::Khovanov));
  const SignEquivalence same = verify_sign_equivalence(p.hypercube.cube, p.eps, p.eps);
  CHECK(same.ok());
  for (int e : same.eta) CHECK(e == 1);

  const SignAssignment std_eps = standard_sign_assignment(p.hypercube.cube);
  CHECK(verify_sign_equivalence(p.hypercube.cube, std_eps, p.eps).ok());

  // Flipping one edge breaks the cocycle condition: no eta exists.
  SignAssignment broken = p.eps;
  broken.eps[0] = -broken.eps[0];
  CHECK_FALSE(verify_sign_equivalence(p.hypercube.cube, p.eps, broken).consistent);

  const RandomSignReport r = random_sign_trials(trefoil_pd(), builtin_system(SystemKind::Nested), 100, 17);
  CHECK(r.trials == 100);
  CHECK(r.ok());
}

TEST_CASE("sign-decorated systems on the trefoil") {
  const LinkDiagram t = trefoil_pd();
  const Hypercube kh = build_hypercube(t, builtin_system(SystemKind::Khovanov));
  // e1 = e2 = -1 flips the unnested multiplication only.
  SignParams m0;
  m0.e[0] = m0.e[1] = -1;
  const ParametrizedSystem ps = parametrized_system(m0);
  REQUIRE(ps.constraints.all());
  const Hypercube h = build_hypercube(t, ps.system);
  const ConeCertificate c = certify_cone(h, kh, identity_maps(h.cube), "identity", Coefficients{}, 1);
  CHECK(c.ok());

  const SignClassification s = classify_sign_systems({t}, 1, false);
  CHECK(s.satisfying == 32);
  CHECK(s.ok());
  REQUIRE(!s.members.empty());
  CHECK(s.members.front().index == 0);
  CHECK(s.members.front().vertical == "identity");
}

TEST_CASE("mod 2 agreement and outer faces") {
  const Mod2Comparison u = compare_mod2(parse_pd("Loop[1]"));
  CHECK(u.equal);
  CHECK(u.odd.entries.size() == 2);
  CHECK(u.odd.entries.at({0, 1}).rank == 1);
  CHECK(compare_mod2(trefoil_pd()).equal);

  for (const char* pd : {"X[1,4,2,3];X[3,2,4,1]", "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]"}) {
    const OuterFaceReport r = verify_outer_face_invariance(parse_pd(pd));
    CHECK(r.invariant);
    CHECK(r.tables.size() == r.faces.size() + 1);
  }
}
