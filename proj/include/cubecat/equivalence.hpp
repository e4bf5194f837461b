#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubecat/complex.hpp"
#include "cubecat/homology.hpp"
#include "cubecat/pipeline.hpp"

namespace cubecat {

/// Sign sigma with phi_head o E^nested = sigma * E^kh o phi_tail for one
/// elementary operation whose outer participant sits at depth parity k.
struct IntertwiningEntry {
  std::string op;  // "m0", "m1", "d0", "d1"
  int depth_parity = 0;
  int observed = 0;  // +1, -1, or 0 when neither holds
  int expected = 0;
  bool ok() const { return observed == expected; }
};

/// The eight local checks, evaluated with t symbolic.
std::vector<IntertwiningEntry> phi_intertwining_table();
/// Expected sigma for a hypercube edge.
int expected_phi_sign(const SaddleData& s);

/// phi_v = tensor of diag(1, (-1)^depth(c)) over the circles of each state.
std::vector<SparseMatrix> build_phi(const Hypercube& h);
std::vector<SparseMatrix> identity_maps(const EdgeCube& cube);

/// Certificate that a vertexwise isomorphism between two hypercubes extends,
/// after sign-solving its cone, to an isomorphism of chain complexes.
struct ConeCertificate {
  std::string diagram;
  std::string source;
  std::string target;
  std::string vertical;  // "phi" or "identity"
  int cone_dimension = 0;
  int faces = 0;
  int anticommuting_faces = 0;
  int vanishing_faces = 0;
  int three_cube_violations = -1;
  bool signs_solved = false;
  bool cone_d_squared_zero = false;
  bool chain_map = false;
  bool bijective = false;
  /// Per-edge check against the intertwining table (phi verticals only).
  std::optional<bool> intertwining;
  bool homology_equal = false;
  std::optional<HomologyTable> source_table;
  std::optional<HomologyTable> target_table;

  bool ok() const;
  nlohmann::json to_json() const;
};

/// `vertical[v]` maps source vertex v to target vertex v.  When
/// `target_table` is given it is reused instead of being recomputed.
ConeCertificate certify_cone(const Hypercube& source, const Hypercube& target, const std::vector<SparseMatrix>& vertical,
                             const std::string& vertical_name, Coefficients coeff, int jobs,
                             const HomologyTable* target_table = nullptr);

/// Nested complex is isomorphic to the Khovanov complex via phi.
ConeCertificate verify_theorem1(const LinkDiagram& d, OuterFace outer = std::nullopt, int jobs = 1);

struct SignEquivalence {
  bool consistent = false;  // eta exists with eta(h) eta(t) = eps(e) eps'(e)
  std::vector<int> eta;
  bool chain_isomorphism = false;
  bool ok() const { return consistent && chain_isomorphism; }
};

SignEquivalence verify_sign_equivalence(const EdgeCube& cube, const SignAssignment& a, const SignAssignment& b);

struct RandomSignReport {
  std::string diagram;
  std::string theory;
  std::uint64_t seed = 0;
  int trials = 0;
  int certified = 0;
  bool ok() const { return certified == trials; }
  nlohmann::json to_json() const;
};

/// Draws `trials` pairs of random sign assignments for one cocycle and
/// certifies each pair through a vertex-sign isomorphism.
RandomSignReport random_sign_trials(const LinkDiagram& d, const FrobeniusSystem& sys, int trials, std::uint64_t seed,
                                    OuterFace outer = std::nullopt);

struct SignTupleResult {
  int index = 0;
  SignParams params;
  std::string vertical;  // identity or phi
  int diagrams = 0;
  int certified = 0;
  std::vector<std::string> failures;
  bool ok() const { return certified == diagrams && failures.empty(); }
};

struct SignClassification {
  int tuples = 0;
  int satisfying = 0;              // all five constraints
  int relations_up_to_sign = 0;    // full relation audit holds up to sign
  bool sets_agree = false;
  std::vector<SignTupleResult> members;

  bool ok() const;
  nlohmann::json to_json() const;
};

/// Enumerates all 2^10 sign tuples.  With a non-empty corpus every surviving
/// tuple is certified isomorphic to the Khovanov complex on each diagram.
SignClassification classify_sign_systems(const std::vector<LinkDiagram>& corpus, int jobs = 1,
                                         bool audit_relations = true);

struct Mod2Comparison {
  std::string diagram;
  HomologyTable even;
  HomologyTable odd;
  bool equal = false;
  nlohmann::json to_json() const;
};

Mod2Comparison compare_mod2(const LinkDiagram& d, OuterFace outer = std::nullopt, int jobs = 1);

struct OuterFaceReport {
  std::string diagram;
  std::vector<int> faces;
  std::vector<HomologyTable> tables;
  bool invariant = false;
  nlohmann::json to_json() const;
};

/// Nested homology for every choice of root face (one override at a time).
OuterFaceReport verify_outer_face_invariance(const LinkDiagram& d, Coefficients coeff = Coefficients{}, int jobs = 1);

}  // namespace cubecat
