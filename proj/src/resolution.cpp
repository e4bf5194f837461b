#include "cubecat/resolution.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <set>
#include <utility>

#include <json.hpp>

namespace cubecat {

SmoothingWord::SmoothingWord(std::uint32_t bits, int length) : bits_(bits), length_(length) {
  if (length < 0 || length > 31) throw ResolutionError("smoothing word length out of range");
  if (length < 32 && (bits >> length) != 0) throw ResolutionError("smoothing word has bits beyond its length");
}

SmoothingWord SmoothingWord::from_string(const std::string& s) {
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') bits |= 1u << i;
    else if (s[i] != '0') throw ResolutionError("smoothing word must be a string of 0/1");
  }
  return SmoothingWord(bits, static_cast<int>(s.size()));
}

int SmoothingWord::height() const { return std::popcount(bits_); }

std::string SmoothingWord::to_string() const {
  std::string s(length_, '0');
  for (int i = 0; i < length_; ++i)
    if (bit(i)) s[i] = '1';
  return s;
}

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

// Slot joined to `p` by the given smoothing: 0 pairs (0,1),(2,3); 1 pairs (0,3),(1,2).
int partner_slot(int p, bool one) {
  static constexpr int zero[4] = {1, 0, 3, 2};
  static constexpr int onep[4] = {3, 2, 1, 0};
  return one ? onep[p] : zero[p];
}

std::vector<int> root_faces(const PlanarMap& map, OuterFace outer) {
  std::vector<int> roots(map.graph_component_count());
  for (int c = 0; c < map.graph_component_count(); ++c) roots[c] = map.default_outer_face(c);
  if (outer) {
    if (*outer < 0 || *outer >= map.face_count()) throw ResolutionError("outer face index out of range");
    roots[map.graph_component_of_face(*outer)] = *outer;
  }
  return roots;
}

// Region tree: circles are nodes 0..C-1, regions C..C+R-1.  Returns depth per
// (unsorted) circle and the number of regions.
std::pair<std::vector<int>, int> depths_from_regions(const PlanarMap& map, SmoothingWord word,
                                                     const std::vector<int>& circle_of_edge, int n_circles,
                                                     const std::vector<int>& roots) {
  UnionFind faces(map.face_count());
  for (int x = 0; x < map.crossing_count(); ++x) {
    if (word.bit(x)) faces.unite(map.corner_face(x, 0), map.corner_face(x, 2));
    else faces.unite(map.corner_face(x, 1), map.corner_face(x, 3));
  }
  for (std::size_t i = 1; i < roots.size(); ++i) faces.unite(roots[0], roots[i]);

  std::vector<int> region_id(map.face_count(), -1);
  int n_regions = 0;
  for (int f = 0; f < map.face_count(); ++f) {
    const int r = faces.find(f);
    if (region_id[r] < 0) region_id[r] = n_regions++;
    region_id[f] = region_id[r];
  }

  std::set<std::pair<int, int>> links;
  for (int e = 0; e < map.edge_count(); ++e) {
    const int c = circle_of_edge[e];
    links.emplace(c, n_circles + region_id[map.left_face(dart_of(e, false))]);
    links.emplace(c, n_circles + region_id[map.left_face(dart_of(e, true))]);
  }
  const int n_nodes = n_circles + n_regions;
  if (static_cast<int>(links.size()) != n_nodes - 1)
    throw ResolutionError("face structure of smoothing is not a tree (" + std::to_string(links.size()) +
                          " links, " + std::to_string(n_nodes) + " nodes)");
  std::vector<std::vector<int>> adj(n_nodes);
  for (const auto& [a, b] : links) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> dist(n_nodes, -1);
  const int root = n_circles + region_id[roots[0]];
  std::queue<int> q;
  dist[root] = 0;
  q.push(root);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : adj[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
  }
  std::vector<int> depth(n_circles);
  for (int c = 0; c < n_circles; ++c) {
    if (dist[c] < 0) throw ResolutionError("face structure of smoothing is disconnected");
    depth[c] = (dist[c] - 1) / 2;
  }
  return {depth, n_regions};
}

}  // namespace

ResolvedState resolve(const PlanarMap& map, SmoothingWord word, OuterFace outer) {
  if (word.length() != map.crossing_count())
    throw ResolutionError("smoothing word length " + std::to_string(word.length()) + " does not match " +
                          std::to_string(map.crossing_count()) + " crossings");
  const int n_edges = map.edge_count();
  UnionFind arcs(n_edges);
  for (int x = 0; x < map.crossing_count(); ++x) {
    const auto& q = map.quads()[x];
    const bool one = word.bit(x);
    arcs.unite(q[0], q[partner_slot(0, one)]);
    arcs.unite(q[2], q[partner_slot(2, one)]);
  }

  // Walk each circle from its smallest edge in the edge's own direction.
  std::vector<int> raw_circle(n_edges, -1);
  std::vector<std::vector<int>> raw_cycles;
  for (int start = 0; start < n_edges; ++start) {
    if (raw_circle[start] >= 0) continue;
    const int id = static_cast<int>(raw_cycles.size());
    std::vector<int> cycle;
    int e = start;
    bool forward = true;
    while (true) {
      cycle.push_back(e + 1);
      raw_circle[e] = id;
      if (map.is_loop(e)) break;
      const SlotRef at = map.ends(e)[forward ? 1 : 0];
      const int p = partner_slot(at.slot, word.bit(at.crossing));
      const SlotRef next{at.crossing, p};
      const int ne = map.quads()[at.crossing][p];
      const bool nforward = map.ends(ne)[0] == next;
      if (ne == start && nforward) break;
      e = ne;
      forward = nforward;
    }
    raw_cycles.push_back(std::move(cycle));
  }
  const int n_circles = static_cast<int>(raw_cycles.size());

  const std::vector<int> roots = root_faces(map, outer);
  auto [raw_depth, n_regions] = depths_from_regions(map, word, raw_circle, n_circles, roots);

  std::vector<int> order(n_circles);
  std::iota(order.begin(), order.end(), 0);
  // raw circles are discovered in order of smallest edge, so id breaks ties.
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return raw_depth[a] < raw_depth[b]; });
  std::vector<int> rank(n_circles);
  for (int i = 0; i < n_circles; ++i) rank[order[i]] = i;

  ResolvedState st;
  st.word = word;
  st.outer_faces = roots;
  st.region_count = n_regions;
  st.circles.resize(n_circles);
  st.depth.resize(n_circles);
  for (int c = 0; c < n_circles; ++c) {
    st.circles[rank[c]] = std::move(raw_cycles[c]);
    st.depth[rank[c]] = raw_depth[c];
  }
  st.circle_of_edge.resize(n_edges);
  for (int e = 0; e < n_edges; ++e) st.circle_of_edge[e] = rank[raw_circle[e]];
  return st;
}

ResolvedState resolve(const LinkDiagram& d, SmoothingWord word, OuterFace outer) {
  return resolve(d.planar_map(), word, outer);
}

std::vector<int> nesting_depths(const PlanarMap& map, const ResolvedState& state) {
  return depths_from_regions(map, state.word, state.circle_of_edge, state.size(), state.outer_faces).first;
}

SaddleData classify_saddle(const ResolvedState& tail, const ResolvedState& head, const PlanarMap& map, int x) {
  if (x < 0 || x >= map.crossing_count()) throw ResolutionError("crossing index out of range");
  if (tail.word.bit(x) || !head.word.bit(x)) throw ResolutionError("saddle must go from bit 0 to bit 1");
  const auto& q = map.quads()[x];
  const int ta = tail.circle_of_edge[q[0]];
  const int tc = tail.circle_of_edge[q[2]];
  const int ha = head.circle_of_edge[q[0]];
  const int hb = head.circle_of_edge[q[1]];

  SaddleData s;
  s.crossing = x;
  s.carried.assign(tail.size(), -1);
  if (ta != tc) {
    if (ha != hb) throw ResolutionError("saddle changes circle count inconsistently");
    s.kind = SaddleKind::Merge;
    s.nested = tail.depth[ta] != tail.depth[tc];
    s.source_circles = {ta, tc};
    if (s.nested && tail.depth[tc] > tail.depth[ta]) s.source_circles = {tc, ta};
    s.target_circles = {ha};
    s.outer_depth = std::min(tail.depth[ta], tail.depth[tc]);
  } else if (ha != hb) {
    s.kind = SaddleKind::Split;
    s.nested = head.depth[ha] != head.depth[hb];
    s.source_circles = {ta};
    s.target_circles = {ha, hb};
    if (s.nested && head.depth[hb] > head.depth[ha]) s.target_circles = {hb, ha};
    s.outer_depth = std::min(head.depth[ha], head.depth[hb]);
  } else {
    throw ResolutionError("saddle connects a circle to itself without splitting it");
  }
  for (int c = 0; c < tail.size(); ++c) {
    if (std::find(s.source_circles.begin(), s.source_circles.end(), c) != s.source_circles.end()) continue;
    s.carried[c] = head.circle_of_edge[tail.circles[c].front() - 1];
  }
  if (static_cast<int>(head.size()) != tail.size() + (s.kind == SaddleKind::Split ? 1 : -1))
    throw ResolutionError("saddle circle count mismatch");
  return s;
}

SaddleData classify_saddle(const LinkDiagram& d, SmoothingWord word, int crossing, OuterFace outer) {
  const ResolvedState tail = resolve(d, word, outer);
  const ResolvedState head = resolve(d, word.with_bit(crossing), outer);
  return classify_saddle(tail, head, d.planar_map(), crossing);
}

std::string states_json(const LinkDiagram& d, OuterFace outer) {
  nlohmann::json out;
  out["diagram"] = d.serialize();
  nlohmann::json states = nlohmann::json::array();
  const int c = d.crossing_count();
  for (std::uint32_t bits = 0; bits < (1u << c); ++bits) {
    const ResolvedState st = resolve(d, SmoothingWord(bits, c), outer);
    nlohmann::json s;
    s["word"] = st.word.to_string();
    s["circles"] = st.circles;
    s["depth"] = st.depth;
    states.push_back(std::move(s));
  }
  out["states"] = std::move(states);
  return out.dump(2);
}

}  // namespace cubecat
