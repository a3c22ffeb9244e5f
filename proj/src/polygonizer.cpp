#include "faceart/polygonizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <utility>

namespace faceart {

std::string_view to_string(NodingMode m) {
  return m == NodingMode::shared_endpoints ? "shared-endpoints" : "full-geometric";
}

std::optional<NodingMode> parse_noding_mode(std::string_view s) {
  if (s == "shared-endpoints") return NodingMode::shared_endpoints;
  if (s == "full-geometric") return NodingMode::full_geometric;
  return std::nullopt;
}

namespace {

// Snaps points closer than the tolerance onto one representative. The first
// point inserted in a neighborhood becomes the representative.
class NodeIndex {
 public:
  explicit NodeIndex(double tol) : tol_(tol) {}

  int find_or_add(Point p) {
    const auto cx = static_cast<std::int64_t>(std::floor(p.x / tol_));
    const auto cy = static_cast<std::int64_t>(std::floor(p.y / tol_));
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = cells_.find({cx + dx, cy + dy});
        if (it == cells_.end()) continue;
        for (int id : it->second) {
          if (distance(points_[id], p) <= tol_) return id;
        }
      }
    }
    const int id = static_cast<int>(points_.size());
    points_.push_back(p);
    cells_[{cx, cy}].push_back(id);
    return id;
  }

  Point point(int id) const { return points_[id]; }
  std::size_t size() const { return points_.size(); }

 private:
  struct CellHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& c) const {
      return std::hash<std::int64_t>{}(c.first * 73856093LL) ^ std::hash<std::int64_t>{}(c.second * 19349663LL);
    }
  };

  double tol_;
  std::vector<Point> points_;
  std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::vector<int>, CellHash> cells_;
};

using NodePath = std::vector<int>;

struct SplitPoint {
  double t;
  Point p;
};

struct Segment {
  std::size_t path;
  std::size_t index;  // segment index within the path
  Point a;
  Point b;
  double min_x;
  double max_x;
};

// Records every crossing, touch and collinear overlap as split points on the
// segments involved.
std::vector<std::vector<SplitPoint>> intersection_splits(const std::vector<Segment>& segs) {
  std::vector<std::vector<SplitPoint>> splits(segs.size());
  std::vector<std::size_t> order(segs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return segs[l].min_x < segs[r].min_x; });

  auto add_split = [&](std::size_t s, double t) {
    const Segment& seg = segs[s];
    const double len = distance(seg.a, seg.b);
    if (t * len <= kSnapTolerance || (1.0 - t) * len <= kSnapTolerance) return;
    splits[s].push_back({t, seg.a + t * (seg.b - seg.a)});
  };

  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const Segment& s1 = segs[order[oi]];
    const double ymin1 = std::min(s1.a.y, s1.b.y) - kSnapTolerance;
    const double ymax1 = std::max(s1.a.y, s1.b.y) + kSnapTolerance;
    for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
      const Segment& s2 = segs[order[oj]];
      if (s2.min_x > s1.max_x + kSnapTolerance) break;
      if (std::max(s2.a.y, s2.b.y) < ymin1 || std::min(s2.a.y, s2.b.y) > ymax1) continue;

      const Point d1 = s1.b - s1.a;
      const Point d2 = s2.b - s2.a;
      const double len1 = std::hypot(d1.x, d1.y);
      const double len2 = std::hypot(d2.x, d2.y);
      const double denom = cross(d1, d2);
      if (std::abs(denom) > 1e-12 * len1 * len2) {
        const double t = cross(s2.a - s1.a, d2) / denom;
        const double u = cross(s2.a - s1.a, d1) / denom;
        const double t_tol = kSnapTolerance / len1;
        const double u_tol = kSnapTolerance / len2;
        if (t < -t_tol || t > 1.0 + t_tol || u < -u_tol || u > 1.0 + u_tol) continue;
        add_split(order[oi], std::clamp(t, 0.0, 1.0));
        add_split(order[oj], std::clamp(u, 0.0, 1.0));
      } else {
        // Parallel: only collinear overlaps matter.
        auto off_line = [](Point q, Point a, Point d, double len) { return std::abs(cross(d, q - a)) / len; };
        if (off_line(s2.a, s1.a, d1, len1) > kSnapTolerance) continue;
        for (Point q : {s2.a, s2.b}) {
          const double t = dot(q - s1.a, d1) / (len1 * len1);
          if (t > 0.0 && t < 1.0) add_split(order[oi], t);
        }
        for (Point q : {s1.a, s1.b}) {
          const double u = dot(q - s2.a, d2) / (len2 * len2);
          if (u > 0.0 && u < 1.0) add_split(order[oj], u);
        }
      }
    }
  }
  return splits;
}

}  // namespace

NodingResult node_edges(const EdgeSet& raw) {
  NodingResult result;
  result.edges.noding_mode = raw.noding_mode;
  NodeIndex index(kSnapTolerance);

  std::vector<NodePath> paths;
  for (const Polyline& line : raw.edges) {
    NodePath path;
    for (const Point& p : line) {
      const int id = index.find_or_add(p);
      if (!path.empty() && path.back() == id) {
        ++result.dropped_segments;
        continue;
      }
      path.push_back(id);
    }
    if (path.size() >= 2) paths.push_back(std::move(path));
  }

  if (raw.noding_mode == NodingMode::full_geometric) {
    std::vector<Segment> segs;
    for (std::size_t pi = 0; pi < paths.size(); ++pi) {
      for (std::size_t k = 0; k + 1 < paths[pi].size(); ++k) {
        const Point a = index.point(paths[pi][k]);
        const Point b = index.point(paths[pi][k + 1]);
        segs.push_back({pi, k, a, b, std::min(a.x, b.x), std::max(a.x, b.x)});
      }
    }
    auto splits = intersection_splits(segs);

    std::vector<NodePath> rebuilt(paths.size());
    for (std::size_t s = 0; s < segs.size(); ++s) {
      const Segment& seg = segs[s];
      NodePath& out = rebuilt[seg.path];
      if (seg.index == 0) out.push_back(paths[seg.path][0]);
      auto& sp = splits[s];
      std::sort(sp.begin(), sp.end(), [](const SplitPoint& l, const SplitPoint& r) { return l.t < r.t; });
      for (const SplitPoint& p : sp) {
        const int id = index.find_or_add(p.p);
        if (out.back() != id) out.push_back(id);
      }
      const int end = paths[seg.path][seg.index + 1];
      if (out.back() != end) out.push_back(end);
    }
    paths = std::move(rebuilt);
  }

  // A vertex is a node when it ends a line or occurs more than once overall.
  std::vector<int> occurrences(index.size(), 0);
  std::vector<char> is_node(index.size(), 0);
  for (const NodePath& path : paths) {
    for (int id : path) ++occurrences[id];
    is_node[path.front()] = 1;
    is_node[path.back()] = 1;
  }
  for (std::size_t id = 0; id < occurrences.size(); ++id) {
    if (occurrences[id] >= 2) is_node[id] = 1;
  }

  std::vector<NodePath> pieces;
  for (const NodePath& path : paths) {
    NodePath current{path.front()};
    for (std::size_t k = 1; k < path.size(); ++k) {
      current.push_back(path[k]);
      if (is_node[path[k]] && k + 1 < path.size()) {
        pieces.push_back(current);
        current = {path[k]};
      }
    }
    pieces.push_back(std::move(current));
  }

  std::vector<NodePath> unique;
  std::set<NodePath> seen;
  for (NodePath& piece : pieces) {
    if (piece.size() < 2) continue;
    if (piece.size() == 2 && piece[0] == piece[1]) continue;
    NodePath reversed(piece.rbegin(), piece.rend());
    if (!seen.insert(std::min(piece, reversed)).second) continue;
    unique.push_back(std::move(piece));
  }

  for (const NodePath& path : unique) {
    Polyline line;
    line.reserve(path.size());
    for (int id : path) line.push_back(index.point(id));
    result.edges.edges.push_back(std::move(line));
  }
  return result;
}

namespace {

struct Graph {
  std::vector<Point> nodes;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<std::pair<int, int>>> adjacency;  // (neighbor, edge id)
};

Graph build_graph(const EdgeSet& noded) {
  Graph g;
  NodeIndex index(kSnapTolerance);
  std::set<std::pair<int, int>> seen;
  for (const Polyline& line : noded.edges) {
    for (std::size_t k = 0; k + 1 < line.size(); ++k) {
      const int a = index.find_or_add(line[k]);
      const int b = index.find_or_add(line[k + 1]);
      if (a == b) continue;
      const auto key = std::minmax(a, b);
      if (seen.insert(key).second) g.edges.emplace_back(key.first, key.second);
    }
  }
  g.nodes.resize(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) g.nodes[i] = index.point(static_cast<int>(i));
  g.adjacency.resize(g.nodes.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [a, b] = g.edges[e];
    g.adjacency[a].emplace_back(b, static_cast<int>(e));
    g.adjacency[b].emplace_back(a, static_cast<int>(e));
  }
  return g;
}

// Edges whose removal disconnects the graph, which includes every dangle.
std::vector<char> find_bridges(const Graph& g) {
  const std::size_t n = g.nodes.size();
  std::vector<char> bridge(g.edges.size(), 0);
  std::vector<int> disc(n, -1);
  std::vector<int> low(n, 0);
  int timer = 0;

  struct Frame {
    int node;
    int parent_edge;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (std::size_t root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    stack.push_back({static_cast<int>(root), -1, 0});
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& adj = g.adjacency[f.node];
      if (f.next < adj.size()) {
        const auto [to, edge] = adj[f.next++];
        if (edge == f.parent_edge) continue;
        if (disc[to] == -1) {
          disc[to] = low[to] = timer++;
          stack.push_back({to, edge, 0});
        } else {
          low[f.node] = std::min(low[f.node], disc[to]);
        }
      } else {
        const Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          Frame& parent = stack.back();
          low[parent.node] = std::min(low[parent.node], low[done.node]);
          if (low[done.node] > disc[parent.node]) bridge[done.parent_edge] = 1;
        }
      }
    }
  }
  return bridge;
}

// Splits a closed walk that revisits vertices into simple cycles.
std::vector<std::vector<int>> simple_cycles(const std::vector<int>& walk) {
  std::vector<std::vector<int>> cycles;
  std::vector<int> stack;
  std::unordered_map<int, std::size_t> pos;
  for (int v : walk) {
    auto it = pos.find(v);
    if (it != pos.end()) {
      const std::size_t k = it->second;
      std::vector<int> cyc(stack.begin() + static_cast<std::ptrdiff_t>(k), stack.end());
      for (std::size_t i = k + 1; i < stack.size(); ++i) pos.erase(stack[i]);
      stack.resize(k + 1);
      if (cyc.size() >= 3) cycles.push_back(std::move(cyc));
    } else {
      pos[v] = stack.size();
      stack.push_back(v);
    }
  }
  if (stack.size() >= 3) cycles.push_back(std::move(stack));
  return cycles;
}

bool point_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

Ring canonical_ring(const std::vector<Point>& pts) {
  const auto start = std::min_element(pts.begin(), pts.end(), point_less);
  Ring ring(start, pts.end());
  ring.insert(ring.end(), pts.begin(), start);
  ring.push_back(ring.front());
  return ring;
}

}  // namespace

PolygonizeResult polygonize(const EdgeSet& noded) {
  PolygonizeResult result;
  Graph g = build_graph(noded);
  const std::vector<char> bridge = find_bridges(g);
  result.removed_cut_edges = static_cast<std::size_t>(std::count(bridge.begin(), bridge.end(), 1));

  // Half-edge 2e runs edges[e].first -> second, 2e+1 the reverse.
  const std::size_t n_half = 2 * g.edges.size();
  auto origin = [&](std::size_t h) { return h % 2 == 0 ? g.edges[h / 2].first : g.edges[h / 2].second; };
  auto target = [&](std::size_t h) { return h % 2 == 0 ? g.edges[h / 2].second : g.edges[h / 2].first; };

  std::vector<std::vector<std::size_t>> outgoing(g.nodes.size());
  for (std::size_t h = 0; h < n_half; ++h) {
    if (!bridge[h / 2]) outgoing[origin(h)].push_back(h);
  }
  std::vector<std::size_t> slot(n_half, 0);
  for (auto& out : outgoing) {
    std::vector<std::pair<double, std::size_t>> keyed;
    keyed.reserve(out.size());
    for (std::size_t h : out) {
      const Point d = g.nodes[target(h)] - g.nodes[origin(h)];
      keyed.emplace_back(std::atan2(d.y, d.x), h);
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 0; i < keyed.size(); ++i) {
      out[i] = keyed[i].second;
      slot[out[i]] = i;
    }
  }

  // Turning to the clockwise-previous edge at each node traces the face on the
  // left, so bounded faces come out counterclockwise.
  auto next_half = [&](std::size_t h) {
    const std::size_t twin = h ^ 1U;
    const auto& out = outgoing[target(h)];
    const std::size_t i = slot[twin];
    return out[(i + out.size() - 1) % out.size()];
  };

  std::vector<char> visited(n_half, 0);
  std::vector<Ring> rings;
  std::vector<double> areas;
  for (std::size_t h0 = 0; h0 < n_half; ++h0) {
    if (bridge[h0 / 2] || visited[h0]) continue;
    std::vector<int> walk;
    std::size_t h = h0;
    while (!visited[h]) {
      visited[h] = 1;
      walk.push_back(origin(h));
      h = next_half(h);
    }
    for (const auto& cycle : simple_cycles(walk)) {
      std::vector<Point> pts;
      pts.reserve(cycle.size() + 1);
      for (int v : cycle) pts.push_back(g.nodes[v]);
      Ring closed = pts;
      closed.push_back(pts.front());
      const double a = signed_area(closed);
      if (a <= 0.0) continue;
      if (a <= kMinFaceArea) {
        ++result.sliver_faces;
        continue;
      }
      rings.push_back(canonical_ring(pts));
      areas.push_back(a);
    }
  }

  std::vector<std::size_t> order(rings.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<Box> boxes(rings.size());
  for (std::size_t i = 0; i < rings.size(); ++i) boxes[i] = bounds(rings[i]);
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    if (boxes[l].min_x != boxes[r].min_x) return boxes[l].min_x < boxes[r].min_x;
    if (boxes[l].min_y != boxes[r].min_y) return boxes[l].min_y < boxes[r].min_y;
    if (areas[l] != areas[r]) return areas[l] < areas[r];
    return std::lexicographical_compare(rings[l].begin(), rings[l].end(), rings[r].begin(), rings[r].end(), point_less);
  });

  result.faces.reserve(rings.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    result.faces.push_back({static_cast<int>(i), PolygonGeom{std::move(rings[order[i]]), {}}});
  }
  return result;
}

FaceAreaSummary face_areas_summary(std::span<const FacePolygon> faces) {
  FaceAreaSummary s;
  s.count = faces.size();
  for (const FacePolygon& f : faces) s.total_area += area(f.geometry);
  if (s.count > 0) s.mean_area = s.total_area / static_cast<double>(s.count);
  return s;
}

}  // namespace faceart
