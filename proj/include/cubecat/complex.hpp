#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubecat/diagram.hpp"
#include "cubecat/frobenius.hpp"
#include "cubecat/linalg.hpp"
#include "cubecat/resolution.hpp"

namespace cubecat {

class CubeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CubeEdge {
  std::uint32_t tail = 0;
  int direction = 0;
  /// Columns indexed by tail basis, rows by head basis.
  SparseMatrix map;
};

/// A commutative-up-to-sign cube of free modules.  Vertices are bitmasks of
/// length `dim`; edges are listed in lexicographic (vertex, direction) order.
class EdgeCube {
 public:
  EdgeCube() = default;
  explicit EdgeCube(int dim);

  int dim() const { return dim_; }
  std::uint32_t vertex_count() const { return 1u << dim_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<CubeEdge>& edges() const { return edges_; }
  const CubeEdge& edge(int id) const { return edges_[id]; }
  int edge_id(std::uint32_t v, int direction) const;

  int rank(std::uint32_t v) const { return static_cast<int>(qdeg_[v].size()); }
  /// Quantum degree of each basis element of vertex v.
  const std::vector<int>& qdeg(std::uint32_t v) const { return qdeg_[v]; }
  void set_vertex(std::uint32_t v, std::vector<int> qdeg) { qdeg_[v] = std::move(qdeg); }
  void set_edge_map(std::uint32_t v, int direction, SparseMatrix map);

  /// Homological degree of vertex v is popcount(v) + hshift.
  int hshift = 0;

 private:
  int dim_ = 0;
  std::vector<std::vector<int>> qdeg_;
  std::vector<CubeEdge> edges_;
  std::vector<int> edge_index_;
};

/// Hypercube of resolutions of a diagram under a Frobenius system (t = 0).
struct Hypercube {
  EdgeCube cube;
  std::vector<ResolvedState> states;
  /// Saddle data per edge id.
  std::vector<SaddleData> saddles;
  std::string system;
  std::string diagram;
};

Hypercube build_hypercube(const LinkDiagram& d, const FrobeniusSystem& sys, OuterFace outer = std::nullopt);

struct Face {
  std::uint32_t vertex = 0;
  int i = 0;
  int j = 0;  // i < j, both bits clear in vertex
};

/// psi = +1 anticommutative, -1 commutative, 0 when both composites vanish.
struct FaceCocycle {
  std::vector<Face> faces;
  std::vector<int> psi;
  int dim = 0;
  /// Face index of (v, i, j), or -1.
  int index(std::uint32_t v, int i, int j) const;
  std::vector<int> lookup;
};

FaceCocycle face_cocycle(const EdgeCube& cube);

/// Number of 3-cubes (with no vanishing face) whose six face values do not
/// multiply to +1.
int three_cube_violations(const EdgeCube& cube, const FaceCocycle& psi);

/// Replace vanishing faces by the value an assignment realizes there.
FaceCocycle complete_cocycle(const FaceCocycle& psi, const EdgeCube& cube, const std::vector<int>& eps);

struct SignAssignment {
  std::vector<int> eps;  // per edge id
};

/// Faces with psi = 0 impose no equation.  Free variables default to +1.
std::optional<SignAssignment> solve_sign_assignment(const EdgeCube& cube, const FaceCocycle& psi);
/// Random solution: free variables drawn from `rng`.
std::optional<SignAssignment> random_sign_assignment(const EdgeCube& cube, const FaceCocycle& psi, std::mt19937_64& rng);
bool satisfies(const EdgeCube& cube, const FaceCocycle& psi, const SignAssignment& eps);
/// (-1)^{number of 1s in the vertex before the changing letter}.
SignAssignment standard_sign_assignment(const EdgeCube& cube);

struct ChainComplex {
  int min_degree = 0;
  /// Per homological slot k (degree min_degree + k): q-degree of each generator.
  std::vector<std::vector<int>> qdeg;
  /// Per slot: (vertex, basis index) of each generator.
  std::vector<std::vector<std::pair<std::uint32_t, int>>> generators;
  /// d[k]: slot k -> slot k+1.
  std::vector<SparseMatrix> d;

  int slots() const { return static_cast<int>(qdeg.size()); }
  std::size_t size() const;
};

ChainComplex assemble_complex(const EdgeCube& cube, const SignAssignment& eps);
/// Exact check of d[k+1] * d[k] == 0 for every k.
bool d_squared_zero(const ChainComplex& c);

/// Cone cube: `source` on top (last bit 0), `target` below (last bit 1),
/// joined by the given vertical map at each vertex.
EdgeCube cone_cube(const EdgeCube& source, const EdgeCube& target, const std::vector<SparseMatrix>& vertical);
/// Face restriction of a cone's sign assignment to top (0) or bottom (1).
SignAssignment restrict_signs(const EdgeCube& cone, const SignAssignment& eps, int side);

/// Block matrices of a vertexwise map between two complexes on the same cube
/// shape, scaled per vertex by `vertex_sign`.
std::vector<SparseMatrix> vertex_map_blocks(const ChainComplex& src, const ChainComplex& tgt,
                                            const std::vector<SparseMatrix>& maps, const std::vector<int>& vertex_sign);
/// f d_src == d_tgt f in every slot.
bool is_chain_map(const ChainComplex& src, const ChainComplex& tgt, const std::vector<SparseMatrix>& f);

std::string cube_json(const Hypercube& h, const FaceCocycle& psi, const SignAssignment& eps);

}  // namespace cubecat
