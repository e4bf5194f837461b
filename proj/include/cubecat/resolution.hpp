#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubecat/diagram.hpp"

namespace cubecat {

/// A vertex of the cube of resolutions: bit x is the smoothing at crossing x.
class SmoothingWord {
 public:
  SmoothingWord() = default;
  SmoothingWord(std::uint32_t bits, int length);
  /// "010" means crossing 0 -> 0, crossing 1 -> 1, crossing 2 -> 0.
  static SmoothingWord from_string(const std::string& s);

  std::uint32_t bits() const { return bits_; }
  int length() const { return length_; }
  int height() const;
  bool bit(int x) const { return (bits_ >> x) & 1u; }
  SmoothingWord with_bit(int x) const { return SmoothingWord(bits_ | (1u << x), length_); }
  std::string to_string() const;

 private:
  std::uint32_t bits_ = 0;
  int length_ = 0;
};

class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Root-face override: the face (of the unsmoothed map) that is glued to the
/// unbounded region.  Only the graph component owning that face is affected.
using OuterFace = std::optional<int>;

/// Circles of one full smoothing, in canonical order (depth, smallest arc).
struct ResolvedState {
  SmoothingWord word;
  /// Each circle as the cyclic sequence of 1-based arc (edge) labels.
  std::vector<std::vector<int>> circles;
  /// nes(c): number of circles strictly containing circle c.
  std::vector<int> depth;
  /// circle index for each 0-based edge.
  std::vector<int> circle_of_edge;
  /// Chosen root face per graph component.
  std::vector<int> outer_faces;
  /// Number of regions of the smoothed picture (including the root).
  int region_count = 0;

  int size() const { return static_cast<int>(circles.size()); }
};

/// Trace the circles of the smoothing, compute nesting from the face
/// structure and order circles canonically.
ResolvedState resolve(const PlanarMap& map, SmoothingWord word, OuterFace outer = std::nullopt);
ResolvedState resolve(const LinkDiagram& d, SmoothingWord word, OuterFace outer = std::nullopt);

/// Nesting depth from a state's region tree (recomputed; the state already
/// carries the result).
std::vector<int> nesting_depths(const PlanarMap& map, const ResolvedState& state);

enum class SaddleKind { Merge, Split };

struct SaddleData {
  SaddleKind kind = SaddleKind::Merge;
  bool nested = false;
  /// Merge: two tail circles, ordered inner-first when nested.
  std::vector<int> source_circles;
  /// Split: two head circles, ordered inner-first when nested.
  std::vector<int> target_circles;
  /// For each tail circle not involved in the saddle, its head index (-1 for
  /// involved circles).
  std::vector<int> carried;
  int crossing = -1;
  /// Depth of the outer participant (for the nes-dependent vertex map).
  int outer_depth = 0;
};

SaddleData classify_saddle(const ResolvedState& tail, const ResolvedState& head, const PlanarMap& map, int crossing);
SaddleData classify_saddle(const LinkDiagram& d, SmoothingWord word, int crossing, OuterFace outer = std::nullopt);

/// Debug/golden dump of every state.
std::string states_json(const LinkDiagram& d, OuterFace outer = std::nullopt);

}  // namespace cubecat
