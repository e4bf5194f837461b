#include "cubecat/complex.hpp"

#include <bit>

#include <json.hpp>

namespace cubecat {

EdgeCube::EdgeCube(int dim) : dim_(dim) {
  if (dim < 0 || dim > 24) throw CubeError("cube dimension out of range");
  qdeg_.resize(std::size_t{1} << dim);
  edge_index_.assign((std::size_t{1} << dim) * dim, -1);
  for (std::uint32_t v = 0; v < vertex_count(); ++v)
    for (int x = 0; x < dim; ++x) {
      if ((v >> x) & 1u) continue;
      edge_index_[v * dim + x] = static_cast<int>(edges_.size());
      edges_.push_back(CubeEdge{v, x, SparseMatrix()});
    }
}

int EdgeCube::edge_id(std::uint32_t v, int direction) const {
  if (v >= vertex_count() || direction < 0 || direction >= dim_) return -1;
  return edge_index_[v * dim_ + direction];
}

void EdgeCube::set_edge_map(std::uint32_t v, int direction, SparseMatrix map) {
  const int id = edge_id(v, direction);
  if (id < 0) throw CubeError("not an edge of the cube");
  const std::uint32_t head = v | (1u << direction);
  if (map.cols() != rank(v) || map.rows() != rank(head)) throw CubeError("edge map has wrong shape");
  edges_[id].map = std::move(map);
}

Hypercube build_hypercube(const LinkDiagram& d, const FrobeniusSystem& sys, OuterFace outer) {
  const int c = d.crossing_count();
  if (c > 16) throw CubeError("too many crossings for a full cube of resolutions");
  Hypercube h;
  h.system = sys.name;
  h.diagram = d.serialize();
  h.cube = EdgeCube(c);
  h.cube.hshift = -d.c_minus();
  const int qshift = d.c_plus() - 2 * d.c_minus();
  const PlanarMap& map = d.planar_map();
  for (std::uint32_t v = 0; v < h.cube.vertex_count(); ++v) {
    h.states.push_back(resolve(map, SmoothingWord(v, c), outer));
    const int n = h.states.back().size();
    if (n > 24) throw CubeError("too many circles in a resolution");
    std::vector<int> q(std::size_t{1} << n);
    for (std::uint32_t m = 0; m < q.size(); ++m)
      q[m] = n - 2 * std::popcount(m) + std::popcount(v) + qshift;
    h.cube.set_vertex(v, std::move(q));
  }
  h.saddles.resize(h.cube.edge_count());
  for (int id = 0; id < h.cube.edge_count(); ++id) {
    const CubeEdge& e = h.cube.edge(id);
    const std::uint32_t head = e.tail | (1u << e.direction);
    const ResolvedState& ts = h.states[e.tail];
    const ResolvedState& hs = h.states[head];
    SaddleData s = classify_saddle(ts, hs, map, e.direction);
    SparseMatrix m(h.cube.rank(head), h.cube.rank(e.tail));
    for (int b = 0; b < h.cube.rank(e.tail); ++b) {
      const AlgebraElement img =
          apply_edge_map(sys, s, hs.size(), AlgebraElement::basis(ts.size(), static_cast<std::uint32_t>(b)))
              .at_t_zero();
      SparseMatrix::Column col;
      for (const auto& [key, coeff] : img.terms()) col.emplace_back(static_cast<int>(key.first), coeff);
      m.set_column(b, std::move(col));
    }
    h.cube.set_edge_map(e.tail, e.direction, std::move(m));
    h.saddles[id] = std::move(s);
  }
  return h;
}

int FaceCocycle::index(std::uint32_t v, int i, int j) const {
  if (i > j) std::swap(i, j);
  const std::size_t k = (static_cast<std::size_t>(v) * dim + i) * dim + j;
  return k < lookup.size() ? lookup[k] : -1;
}

FaceCocycle face_cocycle(const EdgeCube& cube) {
  FaceCocycle out;
  const int dim = cube.dim();
  out.dim = dim;
  out.lookup.assign(static_cast<std::size_t>(cube.vertex_count()) * dim * dim, -1);
  for (std::uint32_t v = 0; v < cube.vertex_count(); ++v)
    for (int i = 0; i < dim; ++i) {
      if ((v >> i) & 1u) continue;
      for (int j = i + 1; j < dim; ++j) {
        if ((v >> j) & 1u) continue;
        const auto& a = cube.edge(cube.edge_id(v, i)).map;
        const auto& b = cube.edge(cube.edge_id(v | (1u << i), j)).map;
        const auto& c = cube.edge(cube.edge_id(v, j)).map;
        const auto& d = cube.edge(cube.edge_id(v | (1u << j), i)).map;
        const SparseMatrix p1 = b * a;
        const SparseMatrix p2 = d * c;
        int psi;
        if (p1.is_zero() && p2.is_zero()) psi = 0;
        else if (p1 == -p2) psi = 1;
        else if (p1 == p2) psi = -1;
        else
          throw CubeError("face at vertex " + std::to_string(v) + " directions " + std::to_string(i) + "," +
                          std::to_string(j) + " neither commutes nor anticommutes");
        out.lookup[(static_cast<std::size_t>(v) * dim + i) * dim + j] = static_cast<int>(out.faces.size());
        out.faces.push_back(Face{v, i, j});
        out.psi.push_back(psi);
      }
    }
  return out;
}

int three_cube_violations(const EdgeCube& cube, const FaceCocycle& psi) {
  int bad = 0;
  const int dim = cube.dim();
  for (std::uint32_t v = 0; v < cube.vertex_count(); ++v)
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j)
        for (int k = j + 1; k < dim; ++k) {
          if (v & ((1u << i) | (1u << j) | (1u << k))) continue;
          const int f[6] = {psi.index(v, i, j),          psi.index(v, i, k),          psi.index(v, j, k),
                            psi.index(v | 1u << k, i, j), psi.index(v | 1u << j, i, k), psi.index(v | 1u << i, j, k)};
          int prod = 1;
          for (int id : f) prod *= psi.psi[id];
          if (prod == 0) continue;
          if (prod != 1) ++bad;
        }
  return bad;
}

namespace {

std::array<int, 4> face_edges(const EdgeCube& cube, const Face& f) {
  return {cube.edge_id(f.vertex, f.i), cube.edge_id(f.vertex | (1u << f.i), f.j), cube.edge_id(f.vertex, f.j),
          cube.edge_id(f.vertex | (1u << f.j), f.i)};
}

F2System sign_system(const EdgeCube& cube, const FaceCocycle& psi) {
  F2System sys(cube.edge_count());
  for (std::size_t k = 0; k < psi.faces.size(); ++k) {
    if (psi.psi[k] == 0) continue;
    const auto e = face_edges(cube, psi.faces[k]);
    sys.add_equation({e[0], e[1], e[2], e[3]}, psi.psi[k] == -1);
  }
  return sys;
}

std::optional<SignAssignment> to_signs(const std::optional<std::vector<std::uint8_t>>& x) {
  if (!x) return std::nullopt;
  SignAssignment s;
  s.eps.reserve(x->size());
  for (auto b : *x) s.eps.push_back(b ? -1 : 1);
  return s;
}

}  // namespace

FaceCocycle complete_cocycle(const FaceCocycle& psi, const EdgeCube& cube, const std::vector<int>& eps) {
  FaceCocycle out = psi;
  for (std::size_t k = 0; k < out.faces.size(); ++k) {
    if (out.psi[k] != 0) continue;
    int prod = 1;
    for (int e : face_edges(cube, out.faces[k])) prod *= eps[e];
    out.psi[k] = prod;
  }
  return out;
}

std::optional<SignAssignment> solve_sign_assignment(const EdgeCube& cube, const FaceCocycle& psi) {
  return to_signs(sign_system(cube, psi).solve());
}

std::optional<SignAssignment> random_sign_assignment(const EdgeCube& cube, const FaceCocycle& psi,
                                                     std::mt19937_64& rng) {
  std::vector<std::uint8_t> free(cube.edge_count());
  for (auto& b : free) b = static_cast<std::uint8_t>(rng() & 1u);
  return to_signs(sign_system(cube, psi).solve(free));
}

bool satisfies(const EdgeCube& cube, const FaceCocycle& psi, const SignAssignment& eps) {
  if (static_cast<int>(eps.eps.size()) != cube.edge_count()) return false;
  for (std::size_t k = 0; k < psi.faces.size(); ++k) {
    if (psi.psi[k] == 0) continue;
    int prod = 1;
    for (int e : face_edges(cube, psi.faces[k])) prod *= eps.eps[e];
    if (prod != psi.psi[k]) return false;
  }
  return true;
}

SignAssignment standard_sign_assignment(const EdgeCube& cube) {
  SignAssignment s;
  for (const auto& e : cube.edges()) s.eps.push_back(std::popcount(e.tail & ((1u << e.direction) - 1u)) % 2 ? -1 : 1);
  return s;
}

std::size_t ChainComplex::size() const {
  std::size_t n = 0;
  for (const auto& q : qdeg) n += q.size();
  return n;
}

ChainComplex assemble_complex(const EdgeCube& cube, const SignAssignment& eps) {
  if (static_cast<int>(eps.eps.size()) != cube.edge_count()) throw CubeError("sign assignment has wrong size");
  const int dim = cube.dim();
  ChainComplex c;
  c.min_degree = cube.hshift;
  c.qdeg.resize(dim + 1);
  c.generators.resize(dim + 1);
  std::vector<int> offset(cube.vertex_count());
  for (std::uint32_t v = 0; v < cube.vertex_count(); ++v) {
    const int k = std::popcount(v);
    offset[v] = static_cast<int>(c.qdeg[k].size());
    for (int b = 0; b < cube.rank(v); ++b) {
      c.qdeg[k].push_back(cube.qdeg(v)[b]);
      c.generators[k].emplace_back(v, b);
    }
  }
  for (int k = 0; k < dim; ++k) {
    SparseMatrix d(static_cast<int>(c.qdeg[k + 1].size()), static_cast<int>(c.qdeg[k].size()));
    for (std::size_t g = 0; g < c.generators[k].size(); ++g) {
      const auto [v, b] = c.generators[k][g];
      SparseMatrix::Column col;
      for (int x = 0; x < dim; ++x) {
        if ((v >> x) & 1u) continue;
        const int id = cube.edge_id(v, x);
        const int base = offset[v | (1u << x)];
        for (const auto& [r, val] : cube.edge(id).map.column(b)) col.emplace_back(base + r, eps.eps[id] * val);
      }
      d.set_column(static_cast<int>(g), std::move(col));
    }
    c.d.push_back(std::move(d));
  }
  return c;
}

bool d_squared_zero(const ChainComplex& c) {
  for (std::size_t k = 0; k + 1 < c.d.size(); ++k)
    if (!(c.d[k + 1] * c.d[k]).is_zero()) return false;
  return true;
}

EdgeCube cone_cube(const EdgeCube& source, const EdgeCube& target, const std::vector<SparseMatrix>& vertical) {
  if (source.dim() != target.dim()) throw CubeError("cone: cubes of different dimension");
  const int d = source.dim();
  if (vertical.size() != source.vertex_count()) throw CubeError("cone: one vertical map per vertex required");
  EdgeCube cone(d + 1);
  cone.hshift = source.hshift;
  const std::uint32_t low = 1u << d;
  for (std::uint32_t v = 0; v < low; ++v) {
    cone.set_vertex(v, source.qdeg(v));
    cone.set_vertex(v | low, target.qdeg(v));
  }
  for (std::uint32_t v = 0; v < low; ++v) {
    for (int x = 0; x < d; ++x) {
      if ((v >> x) & 1u) continue;
      cone.set_edge_map(v, x, source.edge(source.edge_id(v, x)).map);
      cone.set_edge_map(v | low, x, target.edge(target.edge_id(v, x)).map);
    }
    cone.set_edge_map(v, d, vertical[v]);
  }
  return cone;
}

SignAssignment restrict_signs(const EdgeCube& cone, const SignAssignment& eps, int side) {
  const int d = cone.dim() - 1;
  const std::uint32_t base = side ? (1u << d) : 0u;
  SignAssignment out;
  for (std::uint32_t v = 0; v < (1u << d); ++v)
    for (int x = 0; x < d; ++x)
      if (!((v >> x) & 1u)) out.eps.push_back(eps.eps[cone.edge_id(v | base, x)]);
  return out;
}

std::vector<SparseMatrix> vertex_map_blocks(const ChainComplex& src, const ChainComplex& tgt,
                                            const std::vector<SparseMatrix>& maps,
                                            const std::vector<int>& vertex_sign) {
  if (src.slots() != tgt.slots() || src.min_degree != tgt.min_degree)
    throw CubeError("vertex map between complexes of different shape");
  std::vector<SparseMatrix> out;
  for (int k = 0; k < src.slots(); ++k) {
    std::vector<int> tgt_offset(maps.size(), -1);
    for (std::size_t g = 0; g < tgt.generators[k].size(); ++g) {
      const auto [v, b] = tgt.generators[k][g];
      if (b == 0) tgt_offset[v] = static_cast<int>(g);
    }
    SparseMatrix f(static_cast<int>(tgt.qdeg[k].size()), static_cast<int>(src.qdeg[k].size()));
    for (std::size_t g = 0; g < src.generators[k].size(); ++g) {
      const auto [v, b] = src.generators[k][g];
      SparseMatrix::Column col;
      for (const auto& [r, val] : maps[v].column(b)) col.emplace_back(tgt_offset[v] + r, vertex_sign[v] * val);
      f.set_column(static_cast<int>(g), std::move(col));
    }
    out.push_back(std::move(f));
  }
  return out;
}

bool is_chain_map(const ChainComplex& src, const ChainComplex& tgt, const std::vector<SparseMatrix>& f) {
  if (static_cast<int>(f.size()) != src.slots()) return false;
  for (std::size_t k = 0; k < src.d.size(); ++k)
    if (!(f[k + 1] * src.d[k] == tgt.d[k] * f[k])) return false;
  return true;
}

std::string cube_json(const Hypercube& h, const FaceCocycle& psi, const SignAssignment& eps) {
  nlohmann::json out;
  out["system"] = h.system;
  out["diagram"] = h.diagram;
  out["dimension"] = h.cube.dim();
  nlohmann::json vertices = nlohmann::json::array();
  for (std::uint32_t v = 0; v < h.cube.vertex_count(); ++v) {
    const ResolvedState& s = h.states[v];
    vertices.push_back({{"word", s.word.to_string()}, {"rank", h.cube.rank(v)}, {"depth", s.depth}, {"circles", s.circles}});
  }
  out["vertices"] = std::move(vertices);
  nlohmann::json edges = nlohmann::json::array();
  for (int id = 0; id < h.cube.edge_count(); ++id) {
    const CubeEdge& e = h.cube.edge(id);
    const SaddleData& s = h.saddles[id];
    edges.push_back({{"tail", SmoothingWord(e.tail, h.cube.dim()).to_string()},
                     {"crossing", e.direction},
                     {"kind", s.kind == SaddleKind::Merge ? "merge" : "split"},
                     {"nested", s.nested},
                     {"epsilon", eps.eps.at(id)}});
  }
  out["edges"] = std::move(edges);
  nlohmann::json faces = nlohmann::json::array();
  for (std::size_t k = 0; k < psi.faces.size(); ++k) {
    const Face& f = psi.faces[k];
    faces.push_back({{"vertex", SmoothingWord(f.vertex, h.cube.dim()).to_string()},
                     {"directions", {f.i, f.j}},
                     {"psi", psi.psi[k]}});
  }
  out["faces"] = std::move(faces);
  return out.dump(2);
}

}  // namespace cubecat
