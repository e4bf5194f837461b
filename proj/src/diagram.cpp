#include "cubecat/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>

namespace cubecat {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

// ---------------------------------------------------------------------------
// PlanarMap

PlanarMap::PlanarMap(std::vector<std::array<int, 4>> quads, std::vector<std::array<SlotRef, 2>> ends)
    : quads_(std::move(quads)), ends_(std::move(ends)) {
  trace_faces();
}

int PlanarMap::dart_leaving(int x, int slot) const {
  const int e = quads_[x][slot];
  const SlotRef here{x, slot};
  return ends_[e][0] == here ? dart_of(e, false) : dart_of(e, true);
}

void PlanarMap::trace_faces() {
  const int n_darts = 2 * edge_count();
  left_face_.assign(n_darts, -1);
  face_count_ = 0;
  for (int start = 0; start < n_darts; ++start) {
    if (left_face_[start] >= 0) continue;
    int dart = start;
    do {
      left_face_[dart] = face_count_;
      const int e = edge_of_dart(dart);
      if (is_loop(e)) break;
      // Arrive at the far end and turn clockwise: the face stays on the left.
      const SlotRef arrive = (dart % 2 == 0) ? ends_[e][1] : ends_[e][0];
      dart = dart_leaving(arrive.crossing, (arrive.slot + 3) % 4);
    } while (dart != start);
    ++face_count_;
  }

  UnionFind uf(edge_count());
  for (const auto& q : quads_)
    for (int p = 1; p < 4; ++p) uf.unite(q[0], q[p]);
  std::map<int, int> root_to_component;
  edge_component_.assign(edge_count(), -1);
  for (int e = 0; e < edge_count(); ++e) {
    const int r = uf.find(e);
    auto [it, inserted] = root_to_component.try_emplace(r, static_cast<int>(root_to_component.size()));
    edge_component_[e] = it->second;
  }
  graph_components_ = static_cast<int>(root_to_component.size());
  face_component_.assign(face_count_, -1);
  for (int d = 0; d < n_darts; ++d) face_component_[left_face_[d]] = edge_component_[edge_of_dart(d)];
  default_outer_.assign(graph_components_, -1);
  for (int e = 0; e < edge_count(); ++e) {
    int& slot = default_outer_[edge_component_[e]];
    if (slot < 0) slot = left_face_[dart_of(e, false)];
  }
}

bool PlanarMap::euler_ok() const {
  std::vector<int> v(graph_components_, 0), e(graph_components_, 0), f(graph_components_, 0);
  std::vector<bool> has_crossing(graph_components_, false);
  for (const auto& q : quads_) {
    const int c = edge_component_[q[0]];
    ++v[c];
    has_crossing[c] = true;
  }
  for (int i = 0; i < edge_count(); ++i) ++e[edge_component_[i]];
  for (int i = 0; i < face_count_; ++i) ++f[face_component_[i]];
  for (int c = 0; c < graph_components_; ++c) {
    if (!has_crossing[c]) continue;
    if (v[c] - e[c] + f[c] != 2) return false;
  }
  return true;
}

PlanarMap shadow_map(const std::vector<std::array<int, 4>>& quads) {
  int n = 0;
  for (const auto& q : quads)
    for (int label : q) n = std::max(n, label);
  std::vector<std::array<SlotRef, 2>> ends(n);
  std::vector<int> seen(n, 0);
  std::vector<std::array<int, 4>> zero_based;
  for (int x = 0; x < static_cast<int>(quads.size()); ++x) {
    std::array<int, 4> q{};
    for (int p = 0; p < 4; ++p) {
      const int e = quads[x][p] - 1;
      if (e < 0 || seen[e] >= 2) throw ParseError("shadow: bad edge label");
      ends[e][seen[e]++] = SlotRef{x, p};
      q[p] = e;
    }
    zero_based.push_back(q);
  }
  for (int e = 0; e < n; ++e)
    if (seen[e] != 2) throw ParseError("shadow: edge " + std::to_string(e + 1) + " not closed");
  return PlanarMap(std::move(zero_based), std::move(ends));
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Tokens {
  std::vector<std::array<int, 4>> quads;
  std::vector<int> loops;
};

class Scanner {
 public:
  explicit Scanner(std::string_view s) : s_(s) {}

  void skip_separators() {
    while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == ';' || s_[pos_] == ','))
      ++pos_;
  }
  bool done() {
    skip_separators();
    return pos_ >= s_.size();
  }
  bool consume(std::string_view word) {
    if (s_.substr(pos_, word.size()) == word) {
      pos_ += word.size();
      return true;
    }
    return false;
  }
  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  int integer() {
    skip_ws();
    const std::size_t begin = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (begin == pos_) fail("expected edge label");
    if (pos_ - begin > 9) fail("edge label too large");
    return std::stoi(std::string(s_.substr(begin, pos_ - begin)));
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("malformed PD code at offset " + std::to_string(pos_) + ": " + what);
  }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Tokens tokenize(std::string_view text) {
  text = strip(text);
  if (text.substr(0, 3) == "PD[") {
    if (text.back() != ']') throw ParseError("malformed PD code: unterminated PD[ wrapper");
    text = text.substr(3, text.size() - 4);
  }
  Tokens out;
  Scanner sc(text);
  while (!sc.done()) {
    if (sc.consume("X[")) {
      std::array<int, 4> q{};
      for (int i = 0; i < 4; ++i) {
        if (i > 0) sc.expect(',');
        q[i] = sc.integer();
      }
      sc.expect(']');
      out.quads.push_back(q);
    } else if (sc.consume("Loop[")) {
      out.loops.push_back(sc.integer());
      sc.expect(']');
    } else {
      sc.fail("unknown token");
    }
  }
  return out;
}

enum class SlotDir : std::int8_t { Unknown = 0, In = 1, Out = 2 };

SlotDir opposite(SlotDir d) { return d == SlotDir::In ? SlotDir::Out : SlotDir::In; }

}  // namespace

LinkDiagram LinkDiagram::build(std::vector<std::array<int, 4>> quads, std::vector<int> loops, OrientMode mode,
                               const std::vector<int>* forced_over_dir) {
  if (quads.empty() && loops.empty()) throw ParseError("empty diagram");

  std::map<int, int> occurrences;
  for (const auto& q : quads)
    for (int label : q) {
      if (label <= 0) throw ParseError("edge labels must be positive");
      ++occurrences[label];
    }
  for (int label : loops) {
    if (label <= 0) throw ParseError("edge labels must be positive");
    if (occurrences.count(label)) throw ParseError("loop label " + std::to_string(label) + " reused");
    occurrences[label] = 2;
  }
  std::vector<int> bad;
  for (const auto& [label, count] : occurrences)
    if (count != 2) bad.push_back(label);
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << "edges ";
    for (std::size_t i = 0; i < bad.size(); ++i) msg << (i ? "," : "") << bad[i];
    msg << " do not appear exactly twice";
    throw ParseError(msg.str());
  }
  const int n_edges = static_cast<int>(occurrences.size());
  if (occurrences.rbegin()->first != n_edges) throw ParseError("edge labels must be exactly 1..n");

  const int c = static_cast<int>(quads.size());
  // Occurrence list per edge.
  std::vector<std::vector<SlotRef>> occ(n_edges);
  for (int x = 0; x < c; ++x)
    for (int p = 0; p < 4; ++p) occ[quads[x][p] - 1].push_back(SlotRef{x, p});

  std::vector<std::array<SlotDir, 4>> dir(c);
  std::queue<SlotRef> work;
  auto assign = [&](SlotRef s, SlotDir d) {
    SlotDir& cur = dir[s.crossing][s.slot];
    if (cur == d) return;
    if (cur != SlotDir::Unknown) throw ParseError("inconsistent orientation at crossing " + std::to_string(s.crossing + 1));
    cur = d;
    work.push(s);
  };
  auto propagate = [&]() {
    while (!work.empty()) {
      const SlotRef s = work.front();
      work.pop();
      const SlotDir d = dir[s.crossing][s.slot];
      // The other end of the same edge has the opposite role.
      const int e = quads[s.crossing][s.slot] - 1;
      for (const SlotRef& o : occ[e])
        if (!(o == s)) assign(o, opposite(d));
      // Along the strand through the crossing, in at one side means out at the other.
      assign(SlotRef{s.crossing, (s.slot + 2) % 4}, opposite(d));
    }
  };

  for (int x = 0; x < c; ++x) {
    assign(SlotRef{x, 0}, SlotDir::In);
    assign(SlotRef{x, 2}, SlotDir::Out);
    if (forced_over_dir) {
      // +1: over strand runs d -> b, i.e. slot 3 incoming.
      if ((*forced_over_dir)[x] > 0) assign(SlotRef{x, 3}, SlotDir::In);
      else assign(SlotRef{x, 1}, SlotDir::In);
    }
  }
  propagate();
  for (int x = 0; x < c; ++x) {
    if (dir[x][1] != SlotDir::Unknown) continue;
    if (mode == OrientMode::Strict)
      throw ParseError("ambiguous orientation at crossing " + std::to_string(x + 1) +
                       " (over-only component); use numbering orientation");
    const int b = quads[x][1], d = quads[x][3];
    const bool d_to_b = (b - d == 1) || (d - b > 1);
    assign(SlotRef{x, d_to_b ? 3 : 1}, SlotDir::In);
    propagate();
  }

  LinkDiagram out;
  out.loops_ = loops;
  std::sort(out.loops_.begin(), out.loops_.end());
  std::vector<std::array<SlotRef, 2>> ends(n_edges);
  for (int x = 0; x < c; ++x)
    for (int p = 0; p < 4; ++p) {
      const int e = quads[x][p] - 1;
      ends[e][dir[x][p] == SlotDir::Out ? 0 : 1] = SlotRef{x, p};
    }
  std::vector<std::array<int, 4>> zero_based(c);
  for (int x = 0; x < c; ++x) {
    Crossing cr;
    cr.edges = quads[x];
    cr.sign = dir[x][3] == SlotDir::In ? +1 : -1;
    (cr.sign > 0 ? out.c_plus_ : out.c_minus_) += 1;
    out.crossings_.push_back(cr);
    for (int p = 0; p < 4; ++p) zero_based[x][p] = quads[x][p] - 1;
  }
  out.map_ = PlanarMap(std::move(zero_based), std::move(ends));
  if (!out.map_.euler_ok()) throw ParseError("non-planar edge data (Euler characteristic check failed)");

  UnionFind strands(n_edges);
  for (const auto& q : quads) {
    strands.unite(q[0] - 1, q[2] - 1);
    strands.unite(q[1] - 1, q[3] - 1);
  }
  int comps = 0;
  for (int e = 0; e < n_edges; ++e)
    if (strands.find(e) == e) ++comps;
  out.components_ = comps;
  return out;
}

LinkDiagram parse_pd(std::string_view text, OrientMode mode) {
  Tokens t = tokenize(text);
  return LinkDiagram::build(std::move(t.quads), std::move(t.loops), mode, nullptr);
}

LinkDiagram trefoil_pd() { return parse_pd("X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]"); }

LinkDiagram unlink(int n) {
  if (n <= 0) throw ParseError("empty diagram");
  std::vector<int> loops(n);
  std::iota(loops.begin(), loops.end(), 1);
  return LinkDiagram::build({}, std::move(loops), OrientMode::Strict, nullptr);
}

std::string LinkDiagram::serialize() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& cr : crossings_) {
    out << (first ? "" : ";") << "X[" << cr.edges[0] << ',' << cr.edges[1] << ',' << cr.edges[2] << ','
        << cr.edges[3] << ']';
    first = false;
  }
  for (int loop : loops_) {
    out << (first ? "" : ";") << "Loop[" << loop << ']';
    first = false;
  }
  return out.str();
}

LinkDiagram LinkDiagram::mirror() const {
  std::vector<std::array<int, 4>> quads;
  std::vector<int> over_dir;
  for (const auto& cr : crossings_) {
    const auto& e = cr.edges;
    // The old over-strand becomes the under-strand; start from its incoming slot.
    if (cr.sign > 0) {
      quads.push_back({e[3], e[0], e[1], e[2]});
      // Old under a -> c now runs over from slot 1 to slot 3: negative.
      over_dir.push_back(-1);
    } else {
      quads.push_back({e[1], e[2], e[3], e[0]});
      over_dir.push_back(+1);
    }
  }
  return build(std::move(quads), loops_, OrientMode::Strict, &over_dir);
}

LinkDiagram LinkDiagram::reversed() const {
  std::vector<std::array<int, 4>> quads;
  std::vector<int> over_dir;
  for (const auto& cr : crossings_) {
    const auto& e = cr.edges;
    quads.push_back({e[2], e[3], e[0], e[1]});
    // Old slot 3 is new slot 1; reversing flips which over slot is incoming.
    over_dir.push_back(cr.sign);
  }
  return build(std::move(quads), loops_, OrientMode::Strict, &over_dir);
}

}  // namespace cubecat
