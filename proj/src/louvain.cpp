#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "ingnet/community.hpp"

namespace ingnet {

namespace {

// Aggregated graph of one Louvain level. `self` is the ordered-pair weight
// of a node's internal edges (twice the internal edge weight), so that
// degree[u] = self[u] + sum of adjacent weights.
struct LevelGraph {
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> targets;
  std::vector<Weight> weights;
  std::vector<Weight> self;
  std::vector<Weight> degree;

  std::size_t size() const { return self.size(); }
};

LevelGraph level_from(const InGraph& g) {
  LevelGraph lg;
  const auto n = g.node_count();
  lg.offsets.resize(n + 1);
  lg.self.assign(n, 0);
  lg.degree.resize(n);
  for (NodeId u = 0; u < n; ++u) {
    auto nb = g.neighbors(u);
    auto w = g.weights(u);
    lg.targets.insert(lg.targets.end(), nb.begin(), nb.end());
    lg.weights.insert(lg.weights.end(), w.begin(), w.end());
    lg.offsets[u + 1] = lg.targets.size();
    lg.degree[u] = g.strength(u);
  }
  return lg;
}

// Fisher-Yates with the raw engine output, so the order depends only on
// the seed and not on the standard library's distribution code.
void shuffle(std::vector<std::uint32_t>& order, std::mt19937_64& rng) {
  for (std::size_t i = order.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
}

// Local-moving phase. Returns true if any node changed community.
bool move_nodes(const LevelGraph& lg, std::vector<std::uint32_t>& comm, double two_m,
                const LouvainOptions& opt, std::mt19937_64& rng) {
  const auto n = lg.size();
  std::vector<Weight> tot(lg.degree.begin(), lg.degree.end());
  std::vector<Weight> link(n, 0);
  std::vector<std::uint32_t> touched;
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  shuffle(order, rng);

  bool moved_any = false;
  for (std::size_t sweep = 0; sweep < opt.max_sweeps; ++sweep) {
    std::size_t moves = 0;
    for (auto u : order) {
      const auto current = comm[u];
      const auto ku = static_cast<double>(lg.degree[u]);
      touched.clear();
      for (std::size_t e = lg.offsets[u]; e < lg.offsets[u + 1]; ++e) {
        const auto c = comm[lg.targets[e]];
        if (link[c] == 0) touched.push_back(c);
        link[c] += lg.weights[e];
      }
      tot[current] -= lg.degree[u];
      // Gain of joining c, scaled by 2m: k_u,in(c) * 2m - resolution * tot(c) * k_u.
      auto gain = [&](std::uint32_t c) {
        return static_cast<double>(link[c]) * two_m - opt.resolution * static_cast<double>(tot[c]) * ku;
      };
      auto best = current;
      double best_gain = gain(current);
      for (auto c : touched) {
        const double g = gain(c);
        if (g > best_gain) {
          best_gain = g;
          best = c;
        }
      }
      tot[best] += lg.degree[u];
      comm[u] = best;
      if (best != current) ++moves;
      for (auto c : touched) link[c] = 0;
    }
    if (moves == 0) break;
    moved_any = true;
  }
  return moved_any;
}

// Renumbers comm to 0..k-1 in order of first appearance and returns k.
std::uint32_t renumber(std::vector<std::uint32_t>& comm) {
  std::vector<std::uint32_t> id(comm.size(), std::numeric_limits<std::uint32_t>::max());
  std::uint32_t next = 0;
  for (auto& c : comm) {
    if (id[c] == std::numeric_limits<std::uint32_t>::max()) id[c] = next++;
    c = id[c];
  }
  return next;
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<std::uint32_t>& comm, std::uint32_t k) {
  LevelGraph out;
  out.self.assign(k, 0);
  out.degree.assign(k, 0);
  std::vector<std::vector<std::pair<std::uint32_t, Weight>>> rows(k);
  for (std::uint32_t u = 0; u < lg.size(); ++u) {
    const auto cu = comm[u];
    out.self[cu] += lg.self[u];
    out.degree[cu] += lg.degree[u];
    for (std::size_t e = lg.offsets[u]; e < lg.offsets[u + 1]; ++e) {
      const auto cv = comm[lg.targets[e]];
      if (cv == cu)
        out.self[cu] += lg.weights[e];
      else
        rows[cu].emplace_back(cv, lg.weights[e]);
    }
  }
  out.offsets.assign(k + 1, 0);
  for (std::uint32_t c = 0; c < k; ++c) {
    auto& row = rows[c];
    std::sort(row.begin(), row.end());
    for (std::size_t i = 0; i < row.size();) {
      Weight sum = 0;
      std::size_t j = i;
      for (; j < row.size() && row[j].first == row[i].first; ++j) sum += row[j].second;
      out.targets.push_back(row[i].first);
      out.weights.push_back(sum);
      i = j;
    }
    out.offsets[c + 1] = out.targets.size();
  }
  return out;
}

}  // namespace

LouvainResult louvain_weighted(const InGraph& g, const LouvainOptions& options) {
  if (g.edge_count() == 0) throw std::invalid_argument("louvain needs at least one edge");
  if (!(options.resolution > 0.0)) throw std::invalid_argument("resolution must be positive");

  std::mt19937_64 rng(options.seed);
  const double two_m = 2.0 * static_cast<double>(g.total_weight());
  LevelGraph level = level_from(g);
  std::vector<std::uint32_t> node_comm(g.node_count());
  std::iota(node_comm.begin(), node_comm.end(), 0u);

  LouvainResult result;
  result.level_modularity.push_back(
      modularity(g, Partition::from_labels(node_comm), options.resolution));

  while (true) {
    std::vector<std::uint32_t> comm(level.size());
    std::iota(comm.begin(), comm.end(), 0u);
    if (!move_nodes(level, comm, two_m, options, rng)) break;
    const auto k = renumber(comm);
    for (auto& c : node_comm) c = comm[c];
    result.level_modularity.push_back(
        modularity(g, Partition::from_labels(node_comm), options.resolution));
    if (k == level.size()) break;
    level = aggregate(level, comm, k);
  }
  result.partition = Partition::from_labels(node_comm);
  return result;
}

}  // namespace ingnet
