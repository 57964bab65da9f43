#include "ingnet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ingnet/kernels.hpp"

namespace ingnet {

double local_clustering(std::size_t degree, std::uint64_t triangles) {
  if (degree < 2) return 0.0;
  const double pairs = static_cast<double>(degree) * static_cast<double>(degree - 1) / 2.0;
  return static_cast<double>(triangles) / pairs;
}

ClusteringStats clustering_stats(const InGraph& g) {
  ClusteringStats s;
  const auto per_node = kernels::node_triangles_parallel(g);
  s.local_clustering.resize(g.node_count());
  std::uint64_t corner_sum = 0;
  double cc_sum = 0.0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto d = g.degree(u);
    corner_sum += per_node[u];
    s.connected_triples += d < 2 ? 0 : static_cast<std::uint64_t>(d) * (d - 1) / 2;
    s.local_clustering[u] = local_clustering(d, per_node[u]);
    cc_sum += s.local_clustering[u];
  }
  s.triangle_count = corner_sum / 3;
  if (g.node_count() > 0) s.avg_clustering_coefficient = cc_sum / static_cast<double>(g.node_count());
  if (s.connected_triples > 0)
    s.fraction_closed_triangles =
        3.0 * static_cast<double>(s.triangle_count) / static_cast<double>(s.connected_triples);
  return s;
}

std::vector<NodeId> largest_component(const InGraph& g) {
  const auto n = g.node_count();
  std::vector<std::uint32_t> comp(n, std::numeric_limits<std::uint32_t>::max());
  std::vector<NodeId> best;
  std::vector<NodeId> current;
  std::uint32_t next = 0;
  // Components are discovered in order of their smallest node id, so a
  // strict '>' keeps the earliest one on ties.
  for (NodeId s = 0; s < n; ++s) {
    if (comp[s] != std::numeric_limits<std::uint32_t>::max()) continue;
    current.assign(1, s);
    comp[s] = next;
    for (std::size_t head = 0; head < current.size(); ++head) {
      for (NodeId v : g.neighbors(current[head])) {
        if (comp[v] == std::numeric_limits<std::uint32_t>::max()) {
          comp[v] = next;
          current.push_back(v);
        }
      }
    }
    ++next;
    if (current.size() > best.size()) best = current;
  }
  std::sort(best.begin(), best.end());
  return best;
}

std::uint32_t diameter(const InGraph& g) {
  if (g.empty()) throw std::invalid_argument("diameter of an empty graph is undefined");
  const auto nodes = largest_component(g);
  const auto ecc = kernels::eccentricities_parallel(g, nodes);
  return *std::max_element(ecc.begin(), ecc.end());
}

double avg_edge_weight(const InGraph& g) {
  if (g.edge_count() == 0) throw std::invalid_argument("average edge weight needs at least one edge");
  return static_cast<double>(g.total_weight()) / static_cast<double>(g.edge_count());
}

DegreeHistogram degree_distribution(const InGraph& g, bool cumulative) {
  DegreeHistogram h;
  h.cumulative = cumulative;
  for (NodeId u = 0; u < g.node_count(); ++u) ++h.entries[g.degree(u)];
  if (cumulative) {
    std::size_t running = 0;
    for (auto it = h.entries.rbegin(); it != h.entries.rend(); ++it) {
      running += it->second;
      it->second = running;
    }
  }
  return h;
}

std::optional<double> loglog_slope(const DegreeHistogram& h, std::size_t min_degree) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [d, c] : h.entries) {
    if (d == 0 || d < min_degree || c == 0) continue;
    pts.emplace_back(std::log(static_cast<double>(d)), std::log(static_cast<double>(c)));
  }
  if (pts.size() < 2) return std::nullopt;
  const double n = static_cast<double>(pts.size());
  double mx = 0, my = 0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0) return std::nullopt;
  return sxy / sxx;
}

std::optional<StrongestEdge> strongest_edge(const InGraph& g) {
  std::optional<Edge> best;
  // edges() is ordered by (u, v), which is lexicographic name order.
  for (const auto& e : g.edges()) {
    if (!best || e.weight > best->weight) best = e;
  }
  if (!best) return std::nullopt;
  return StrongestEdge{g.name(best->u), g.name(best->v), best->weight};
}

StatsReport compute_stats(const InGraph& g) {
  StatsReport r;
  r.node_count = g.node_count();
  r.edge_count = g.edge_count();
  const auto cs = clustering_stats(g);
  r.avg_clustering_coefficient = cs.avg_clustering_coefficient;
  r.triangle_count = cs.triangle_count;
  r.fraction_closed_triangles = cs.fraction_closed_triangles;
  if (g.empty())
    r.warnings.push_back("graph has no nodes; diameter omitted");
  else
    r.diameter = diameter(g);
  if (g.edge_count() == 0)
    r.warnings.push_back("graph has no edges; avg_edge_weight omitted");
  else
    r.avg_edge_weight = avg_edge_weight(g);
  r.strongest_edge = strongest_edge(g);
  r.degree_tail_slope = loglog_slope(degree_distribution(g, true));
  return r;
}

nlohmann::json to_json(const StatsReport& r) {
  nlohmann::json j = nlohmann::json::object();
  j["directed"] = false;
  j["weighted"] = true;
  j["node_count"] = r.node_count;
  j["edge_count"] = r.edge_count;
  j["avg_clustering_coefficient"] = r.avg_clustering_coefficient;
  j["triangle_count"] = r.triangle_count;
  j["fraction_closed_triangles"] = r.fraction_closed_triangles;
  if (r.diameter) j["diameter"] = *r.diameter;
  if (r.avg_edge_weight) j["avg_edge_weight"] = *r.avg_edge_weight;
  if (r.strongest_edge)
    j["strongest_edge"] = {{"u", r.strongest_edge->u}, {"v", r.strongest_edge->v},
                           {"weight", r.strongest_edge->weight}};
  if (r.degree_tail_slope) j["degree_tail_slope"] = *r.degree_tail_slope;
  j["warnings"] = r.warnings;
  return j;
}

nlohmann::json to_json(const DegreeHistogram& h) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [d, c] : h.entries) entries.push_back({{"degree", d}, {"count", c}});
  return {{"cumulative", h.cumulative}, {"entries", entries}};
}

std::string histogram_csv(const DegreeHistogram& h) {
  std::ostringstream out;
  out << "degree," << (h.cumulative ? "nodes_with_degree_at_least" : "count") << '\n';
  for (const auto& [d, c] : h.entries) out << d << ',' << c << '\n';
  return out.str();
}

}  // namespace ingnet
