#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cubecat {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One end of an edge: the crossing it is attached to and the slot (0..3,
/// counterclockwise, slot 0 = incoming under-strand).  Crossingless loops have
/// crossing == -1.
struct SlotRef {
  int crossing = -1;
  int slot = -1;
  bool operator==(const SlotRef&) const = default;
};

/// A dart is an edge traversed in one direction.  Dart 2e runs from the
/// edge's first end to its second end, dart 2e+1 the other way.
inline int dart_of(int edge, bool reversed) { return 2 * edge + (reversed ? 1 : 0); }
inline int edge_of_dart(int dart) { return dart / 2; }

/// Rotation-system view of a 4-valent diagram: crossings with edges listed
/// counterclockwise, plus crossingless loops.  Edge ids are 0-based here; the
/// text format uses 1-based labels.
class PlanarMap {
 public:
  PlanarMap() = default;

  /// `ends[e]` gives the two ends of edge e; for oriented diagrams ends[e][0]
  /// is the tail.  Loops have both ends unset.
  PlanarMap(std::vector<std::array<int, 4>> quads, std::vector<std::array<SlotRef, 2>> ends);

  int crossing_count() const { return static_cast<int>(quads_.size()); }
  int edge_count() const { return static_cast<int>(ends_.size()); }
  const std::vector<std::array<int, 4>>& quads() const { return quads_; }
  const std::array<SlotRef, 2>& ends(int edge) const { return ends_[edge]; }
  bool is_loop(int edge) const { return ends_[edge][0].crossing < 0; }

  /// The dart leaving crossing `x` through `slot`.
  int dart_leaving(int x, int slot) const;

  int face_count() const { return face_count_; }
  /// Face on the left of a dart.
  int left_face(int dart) const { return left_face_[dart]; }
  /// Face filling the corner between slots p and p+1 (mod 4) at crossing x.
  int corner_face(int x, int p) const { return left_face_[dart_leaving(x, p)]; }

  /// Connected components of the underlying graph (loops are their own
  /// component).
  int graph_component_count() const { return graph_components_; }
  int graph_component_of_edge(int edge) const { return edge_component_[edge]; }
  int graph_component_of_face(int face) const { return face_component_[face]; }
  /// Default root face of each graph component: left of its smallest edge.
  int default_outer_face(int component) const { return default_outer_[component]; }

  /// V - E + F = 2 for every connected component.
  bool euler_ok() const;

 private:
  void trace_faces();

  std::vector<std::array<int, 4>> quads_;
  std::vector<std::array<SlotRef, 2>> ends_;
  std::vector<int> left_face_;
  int face_count_ = 0;
  int graph_components_ = 0;
  std::vector<int> edge_component_;
  std::vector<int> face_component_;
  std::vector<int> default_outer_;
};

struct Crossing {
  /// 1-based edge labels, counterclockwise from the incoming under-strand.
  std::array<int, 4> edges{};
  int sign = 0;
};

enum class OrientMode {
  /// Over-only components must be orientable from under-strands; otherwise error.
  Strict,
  /// Ambiguous over-strands follow consecutive edge numbering.
  Numbering,
};

/// Oriented link diagram parsed from a PD code.  Immutable once built.
class LinkDiagram {
 public:
  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  const std::vector<Crossing>& crossings() const { return crossings_; }
  int n_edges() const { return map_.edge_count(); }
  int c_plus() const { return c_plus_; }
  int c_minus() const { return c_minus_; }
  int components() const { return components_; }
  /// 1-based labels of crossingless circles.
  const std::vector<int>& loops() const { return loops_; }
  const PlanarMap& planar_map() const { return map_; }

  /// Canonical text form; parse_pd(serialize()) reproduces the diagram.
  std::string serialize() const;
  LinkDiagram mirror() const;
  /// Same diagram with every component's orientation reversed.
  LinkDiagram reversed() const;

  friend LinkDiagram parse_pd(std::string_view text, OrientMode mode);
  friend LinkDiagram unlink(int n);

 private:
  static LinkDiagram build(std::vector<std::array<int, 4>> quads, std::vector<int> loops,
                           OrientMode mode, const std::vector<int>* forced_over_dir);

  std::vector<Crossing> crossings_;
  std::vector<int> loops_;
  PlanarMap map_;
  int c_plus_ = 0;
  int c_minus_ = 0;
  int components_ = 0;
};

/// Accepts `X[a,b,c,d]` and `Loop[k]` tokens separated by `;`, `,` or
/// whitespace, optionally wrapped in `PD[...]`.
LinkDiagram parse_pd(std::string_view text, OrientMode mode = OrientMode::Strict);

/// Left-handed trefoil, X[1,4,2,5] X[3,6,4,1] X[5,2,6,3].
LinkDiagram trefoil_pd();

/// n-component crossingless unlink.
LinkDiagram unlink(int n);

/// Planar map from unoriented 4-tuples (1-based labels).  Used for shadows
/// where crossing information is irrelevant.
PlanarMap shadow_map(const std::vector<std::array<int, 4>>& quads);

}  // namespace cubecat
