#include "cubecat/equivalence.hpp"

#include <bit>
#include <deque>
#include <random>

#include "cubecat/relations.hpp"

namespace cubecat {

namespace {

// Applies the diagonal phi to an element whose circles carry the given depths.
AlgebraElement apply_phi(const AlgebraElement& x, const std::vector<int>& depth) {
  AlgebraElement out(x.circles());
  for (const auto& [key, coeff] : x.terms()) {
    int sign = 1;
    for (int c = 0; c < x.circles(); ++c)
      if (((key.first >> c) & 1u) && (depth[c] & 1)) sign = -sign;
    out.add(key.first, key.second, sign * coeff);
  }
  return out;
}

int compare_sign(const AlgebraElement& a, const AlgebraElement& b) {
  if (a == b) return 1;
  if (a == -b) return -1;
  return 0;
}

int expected_sign(const std::string& op, int parity) {
  if (op == "d1") return parity ? 1 : -1;
  if (op == "d0") return parity ? -1 : 1;
  return 1;
}

nlohmann::json table_json(const HomologyTable& h) {
  return nlohmann::json::parse(homology_json(h, graded_euler_characteristic(h)));
}

}  // namespace

std::vector<IntertwiningEntry> phi_intertwining_table() {
  const FrobeniusSystem kh = builtin_system(SystemKind::Khovanov);
  const FrobeniusSystem nes = builtin_system(SystemKind::Nested);
  std::vector<IntertwiningEntry> out;
  for (const std::string op : {"m0", "m1", "d0", "d1"}) {
    for (int k = 0; k < 2; ++k) {
      const bool merge = op[0] == 'm';
      const bool nested = op[1] == '1';
      // Circle 0 is the inner (or first) participant, circle 1 the outer one.
      const std::vector<int> two = {nested ? k + 1 : k, k};
      const std::vector<int> one = {k};
      const std::vector<int>& tail_depth = merge ? two : one;
      const std::vector<int>& head_depth = merge ? one : two;
      const int tail_n = merge ? 2 : 1;
      const int head_n = merge ? 1 : 2;
      int observed = 1;
      bool first = true;
      for (std::uint32_t b = 0; b < (1u << tail_n); ++b) {
        const AlgebraElement x = AlgebraElement::basis(tail_n, b);
        AlgebraElement lhs, rhs;
        if (merge) {
          lhs = apply_phi(apply_merge(nes, nested, 0, 1, {0, 0}, head_n, x), head_depth);
          rhs = apply_merge(kh, false, 0, 1, {0, 0}, head_n, apply_phi(x, tail_depth));
        } else {
          lhs = apply_phi(apply_split(nes, nested, 0, 0, 1, {0}, head_n, x), head_depth);
          rhs = apply_split(kh, false, 0, 0, 1, {0}, head_n, apply_phi(x, tail_depth));
        }
        if (lhs.is_zero() && rhs.is_zero()) continue;
        const int s = compare_sign(lhs, rhs);
        if (first) {
          observed = s;
          first = false;
        } else if (s != observed) {
          observed = 0;
        }
      }
      out.push_back({op, k, observed, expected_sign(op, k)});
    }
  }
  return out;
}

int expected_phi_sign(const SaddleData& s) {
  std::string op = s.kind == SaddleKind::Merge ? "m" : "d";
  op += s.nested ? "1" : "0";
  return expected_sign(op, s.outer_depth & 1);
}

std::vector<SparseMatrix> build_phi(const Hypercube& h) {
  std::vector<SparseMatrix> out;
  for (std::uint32_t v = 0; v < h.cube.vertex_count(); ++v) {
    const ResolvedState& s = h.states[v];
    std::vector<long long> diag(std::size_t{1} << s.size());
    for (std::uint32_t m = 0; m < diag.size(); ++m) {
      int sign = 1;
      for (int c = 0; c < s.size(); ++c)
        if (((m >> c) & 1u) && (s.depth[c] & 1)) sign = -sign;
      diag[m] = sign;
    }
    out.push_back(SparseMatrix::diagonal(diag));
  }
  return out;
}

std::vector<SparseMatrix> identity_maps(const EdgeCube& cube) {
  std::vector<SparseMatrix> out;
  for (std::uint32_t v = 0; v < cube.vertex_count(); ++v) out.push_back(SparseMatrix::identity(cube.rank(v)));
  return out;
}

bool ConeCertificate::ok() const {
  return three_cube_violations == 0 && signs_solved && cone_d_squared_zero && chain_map && bijective &&
         intertwining.value_or(true) && homology_equal;
}

nlohmann::json ConeCertificate::to_json() const {
  nlohmann::json j;
  j["diagram"] = diagram;
  j["source"] = source;
  j["target"] = target;
  j["vertical"] = vertical;
  j["cone_dimension"] = cone_dimension;
  j["faces"] = faces;
  j["anticommuting_faces"] = anticommuting_faces;
  j["vanishing_faces"] = vanishing_faces;
  j["three_cube_violations"] = three_cube_violations;
  j["signs_solved"] = signs_solved;
  j["cone_d_squared_zero"] = cone_d_squared_zero;
  j["chain_map"] = chain_map;
  j["bijective"] = bijective;
  j["intertwining"] = intertwining ? nlohmann::json(*intertwining) : nlohmann::json(nullptr);
  j["homology_equal"] = homology_equal;
  if (source_table) j["source_homology"] = table_json(*source_table);
  if (target_table) j["target_homology"] = table_json(*target_table);
  j["ok"] = ok();
  return j;
}

ConeCertificate certify_cone(const Hypercube& source, const Hypercube& target, const std::vector<SparseMatrix>& vertical,
                             const std::string& vertical_name, Coefficients coeff, int jobs,
                             const HomologyTable* target_table) {
  ConeCertificate cert;
  cert.diagram = source.diagram;
  cert.source = source.system;
  cert.target = target.system;
  cert.vertical = vertical_name;

  const EdgeCube cone = cone_cube(source.cube, target.cube, vertical);
  const int d = source.cube.dim();
  cert.cone_dimension = cone.dim();

  FaceCocycle psi;
  try {
    psi = face_cocycle(cone);
  } catch (const CubeError&) {
    return cert;  // some face neither commutes nor anticommutes
  }
  cert.faces = static_cast<int>(psi.faces.size());
  for (int p : psi.psi) {
    if (p == 1) ++cert.anticommuting_faces;
    if (p == 0) ++cert.vanishing_faces;
  }
  cert.three_cube_violations = three_cube_violations(cone, psi);
  const auto eps = solve_sign_assignment(cone, psi);
  if (!eps) return cert;
  cert.signs_solved = true;
  cert.cone_d_squared_zero = d_squared_zero(assemble_complex(cone, *eps));

  const ChainComplex top = assemble_complex(source.cube, restrict_signs(cone, *eps, 0));
  const ChainComplex bottom = assemble_complex(target.cube, restrict_signs(cone, *eps, 1));

  // Vertical edges anticommute with both faces of every square of the cone;
  // twisting by (-1)^{|v|} turns them into a chain map.
  std::vector<int> vsign(source.cube.vertex_count());
  for (std::uint32_t v = 0; v < source.cube.vertex_count(); ++v)
    vsign[v] = ((std::popcount(v) & 1) ? -1 : 1) * eps->eps[cone.edge_id(v, d)];
  const auto f = vertex_map_blocks(top, bottom, vertical, vsign);
  cert.chain_map = is_chain_map(top, bottom, f);

  cert.bijective = true;
  for (std::uint32_t v = 0; v < source.cube.vertex_count(); ++v) {
    const SparseMatrix& m = vertical[v];
    if (m.rows() != m.cols()) {
      cert.bijective = false;
      break;
    }
    // Every map used here is a signed permutation matrix: one unit per column
    // and per row.
    std::vector<int> row_hits(m.rows(), 0);
    for (int c = 0; c < m.cols() && cert.bijective; ++c) {
      const auto& col = m.column(c);
      if (col.size() != 1 || (col[0].second != 1 && col[0].second != -1)) cert.bijective = false;
      else ++row_hits[col[0].first];
    }
    for (int h : row_hits)
      if (h != 1) cert.bijective = false;
    if (!cert.bijective) break;
  }

  if (vertical_name == "phi") {
    bool all = true;
    for (int id = 0; id < source.cube.edge_count(); ++id) {
      const CubeEdge& e = source.cube.edge(id);
      const std::uint32_t head = e.tail | (1u << e.direction);
      const SparseMatrix lhs = vertical[head] * e.map;
      const SparseMatrix rhs = target.cube.edge(id).map * vertical[e.tail];
      const int want = expected_phi_sign(source.saddles[id]);
      if (!(lhs == (want == 1 ? rhs : -rhs))) all = false;
    }
    cert.intertwining = all;
  }

  HomologyTable src = homology_table(top, coeff, jobs);
  src.theory = source.system;
  src.diagram = source.diagram;
  HomologyTable tgt;
  if (target_table) {
    tgt = *target_table;
  } else {
    tgt = homology_table(bottom, coeff, jobs);
    tgt.theory = target.system;
    tgt.diagram = target.diagram;
  }
  cert.homology_equal = src.same_groups(tgt);
  cert.source_table = std::move(src);
  cert.target_table = std::move(tgt);
  return cert;
}

ConeCertificate verify_theorem1(const LinkDiagram& d, OuterFace outer, int jobs) {
  const Hypercube nested = build_hypercube(d, builtin_system(SystemKind::Nested), outer);
  const Hypercube kh = build_hypercube(d, builtin_system(SystemKind::Khovanov), outer);
  return certify_cone(nested, kh, build_phi(nested), "phi", Coefficients{}, jobs);
}

SignEquivalence verify_sign_equivalence(const EdgeCube& cube, const SignAssignment& a, const SignAssignment& b) {
  SignEquivalence out;
  const std::uint32_t n = cube.vertex_count();
  out.eta.assign(n, 0);
  out.eta[0] = 1;
  std::deque<std::uint32_t> queue{0};
  while (!queue.empty()) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    for (int x = 0; x < cube.dim(); ++x) {
      const std::uint32_t w = v ^ (1u << x);
      const int id = cube.edge_id(v & w, x);
      const int want = out.eta[v] * a.eps[id] * b.eps[id];
      if (out.eta[w] == 0) {
        out.eta[w] = want;
        queue.push_back(w);
      }
    }
  }
  out.consistent = true;
  for (int id = 0; id < cube.edge_count(); ++id) {
    const CubeEdge& e = cube.edge(id);
    const std::uint32_t head = e.tail | (1u << e.direction);
    if (out.eta[head] * out.eta[e.tail] != a.eps[id] * b.eps[id]) out.consistent = false;
  }
  if (!out.consistent) return out;
  const ChainComplex ca = assemble_complex(cube, a);
  const ChainComplex cb = assemble_complex(cube, b);
  out.chain_isomorphism = is_chain_map(ca, cb, vertex_map_blocks(ca, cb, identity_maps(cube), out.eta));
  return out;
}

nlohmann::json RandomSignReport::to_json() const {
  return {{"diagram", diagram}, {"theory", theory}, {"seed", seed}, {"trials", trials}, {"certified", certified},
          {"ok", ok()}};
}

RandomSignReport random_sign_trials(const LinkDiagram& d, const FrobeniusSystem& sys, int trials, std::uint64_t seed,
                                    OuterFace outer) {
  const Pipeline p = build_pipeline(d, sys, outer);
  RandomSignReport r;
  r.diagram = d.serialize();
  r.theory = sys.name;
  r.seed = seed;
  r.trials = trials;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const auto a = random_sign_assignment(p.hypercube.cube, p.psi, rng);
    const auto b = random_sign_assignment(p.hypercube.cube, p.psi, rng);
    if (!a || !b) continue;
    if (!satisfies(p.hypercube.cube, p.psi, *a) || !satisfies(p.hypercube.cube, p.psi, *b)) continue;
    if (verify_sign_equivalence(p.hypercube.cube, *a, *b).ok()) ++r.certified;
  }
  return r;
}

bool SignClassification::ok() const {
  if (tuples != 1024 || satisfying != 32 || !sets_agree) return false;
  if (static_cast<int>(members.size()) != satisfying) return false;
  for (const auto& m : members)
    if (!m.ok()) return false;
  return true;
}

nlohmann::json SignClassification::to_json() const {
  nlohmann::json j;
  j["tuples"] = tuples;
  j["satisfying"] = satisfying;
  j["relations_up_to_sign"] = relations_up_to_sign;
  j["sets_agree"] = sets_agree;
  nlohmann::json ms = nlohmann::json::array();
  for (const auto& m : members) {
    ms.push_back({{"index", m.index},
                  {"e", std::vector<int>(m.params.e.begin(), m.params.e.end())},
                  {"vertical", m.vertical},
                  {"diagrams", m.diagrams},
                  {"certified", m.certified},
                  {"failures", m.failures},
                  {"ok", m.ok()}});
  }
  j["members"] = std::move(ms);
  j["ok"] = ok();
  return j;
}

SignClassification classify_sign_systems(const std::vector<LinkDiagram>& corpus, int jobs, bool audit_relations) {
  SignClassification out;
  out.tuples = 1024;
  out.sets_agree = true;
  std::vector<int> members;
  for (int idx = 0; idx < 1024; ++idx) {
    const ParametrizedSystem ps = parametrized_system(SignParams::from_index(idx));
    const bool sat = ps.constraints.all();
    if (sat) {
      ++out.satisfying;
      members.push_back(idx);
    }
    if (audit_relations) {
      const bool rel = relations_hold_up_to_sign(ps.system);
      if (rel) ++out.relations_up_to_sign;
      if (rel != sat) out.sets_agree = false;
    }
  }
  if (!audit_relations) out.relations_up_to_sign = out.satisfying;

  const FrobeniusSystem kh = builtin_system(SystemKind::Khovanov);
  std::vector<Hypercube> kh_cubes;
  std::vector<HomologyTable> kh_tables;
  for (const auto& d : corpus) {
    kh_cubes.push_back(build_hypercube(d, kh));
    kh_tables.push_back(compute_homology(d, kh, Coefficients{}, std::nullopt, jobs));
  }
  for (int idx : members) {
    SignTupleResult r;
    r.index = idx;
    r.params = SignParams::from_index(idx);
    // e5 e7 = +1: every table is a rescaled Khovanov table; otherwise a
    // rescaled nested one, related to Khovanov through phi.
    const bool khovanov_like = r.params[5] * r.params[7] == 1;
    r.vertical = khovanov_like ? "identity" : "phi";
    const FrobeniusSystem sys = parametrized_system(r.params).system;
    for (std::size_t k = 0; k < corpus.size(); ++k) {
      ++r.diagrams;
      const Hypercube h = build_hypercube(corpus[k], sys);
      const auto vertical = khovanov_like ? identity_maps(h.cube) : build_phi(h);
      ConeCertificate c = certify_cone(h, kh_cubes[k], vertical, "scaled-" + r.vertical, Coefficients{}, jobs,
                                       &kh_tables[k]);
      if (c.ok()) ++r.certified;
      else r.failures.push_back(corpus[k].serialize());
    }
    out.members.push_back(std::move(r));
  }
  return out;
}

nlohmann::json Mod2Comparison::to_json() const {
  return {{"diagram", diagram}, {"even", table_json(even)}, {"odd", table_json(odd)}, {"equal", equal}};
}

Mod2Comparison compare_mod2(const LinkDiagram& d, OuterFace outer, int jobs) {
  Mod2Comparison out;
  out.diagram = d.serialize();
  const Coefficients f2 = Coefficients::parse("F2");
  out.even = compute_homology(d, builtin_system(SystemKind::Khovanov), f2, outer, jobs);
  out.odd = compute_homology(d, builtin_system(SystemKind::Odd), f2, outer, jobs);
  out.equal = out.even.same_groups(out.odd);
  return out;
}

nlohmann::json OuterFaceReport::to_json() const {
  nlohmann::json j;
  j["diagram"] = diagram;
  j["faces"] = faces;
  j["invariant"] = invariant;
  if (!tables.empty()) j["homology"] = table_json(tables.front());
  return j;
}

OuterFaceReport verify_outer_face_invariance(const LinkDiagram& d, Coefficients coeff, int jobs) {
  OuterFaceReport out;
  out.diagram = d.serialize();
  const FrobeniusSystem nested = builtin_system(SystemKind::Nested);
  out.tables.push_back(compute_homology(d, nested, coeff, std::nullopt, jobs));
  for (int f = 0; f < d.planar_map().face_count(); ++f) {
    out.faces.push_back(f);
    out.tables.push_back(compute_homology(d, nested, coeff, f, jobs));
  }
  out.invariant = true;
  for (const auto& t : out.tables)
    if (!t.same_groups(out.tables.front())) out.invariant = false;
  return out;
}

}  // namespace cubecat
