#include "msq/lexnet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <limits>
#include <random>
#include <set>
#include <unordered_map>

#include "msq/error.hpp"
#include "msq/util.hpp"

namespace msq {

// ------------------------------------------------------------------ WordGraph

WordGraph::WordGraph(std::vector<std::string> nodes, std::vector<WeightedEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  const std::size_t n = nodes_.size();
  adjacency_.resize(n);
  degree_.assign(n, 0.0);
  std::sort(edges_.begin(), edges_.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  CompensatedSum total;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& edge = edges_[e];
    if (edge.u >= edge.v || edge.v >= n) {
      throw Error(ErrorCode::InvariantViolation, "edge endpoints must satisfy u < v < node count");
    }
    if (e > 0 && edges_[e - 1].u == edge.u && edges_[e - 1].v == edge.v) {
      throw Error(ErrorCode::InvariantViolation,
                  "duplicate edge " + nodes_[edge.u] + " - " + nodes_[edge.v]);
    }
    if (!std::isfinite(edge.weight) || edge.weight < 0.0) {
      throw Error(ErrorCode::InvariantViolation, "edge weight must be finite and non-negative");
    }
    adjacency_[edge.u].push_back({edge.v, edge.weight});
    adjacency_[edge.v].push_back({edge.u, edge.weight});
    degree_[edge.u] += edge.weight;
    degree_[edge.v] += edge.weight;
    total.add(edge.weight);
  }
  total_weight_ = total.value();
}

WordGraph WordGraph::from_edges(std::size_t node_count, std::vector<WeightedEdge> edges) {
  std::vector<std::string> names(node_count);
  for (std::size_t i = 0; i < node_count; ++i) names[i] = std::to_string(i);
  return WordGraph(std::move(names), std::move(edges));
}

std::size_t WordGraph::index_of(const std::string& token) const {
  const auto it = std::find(nodes_.begin(), nodes_.end(), token);
  if (it == nodes_.end()) throw Error(ErrorCode::InvariantViolation, "no node '" + token + "'");
  return static_cast<std::size_t>(it - nodes_.begin());
}

WordGraph build_graph(std::span<const SimilarityPair> pairs, double threshold,
                      std::span<const std::string> extra_nodes) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::ConfigError, "similarity threshold must lie in [0, 1]");
  }
  std::vector<std::string> nodes(extra_nodes.begin(), extra_nodes.end());
  for (const auto& p : pairs) {
    nodes.push_back(p.a);
    nodes.push_back(p.b);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  auto index = [&](const std::string& token) {
    return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), token) -
                                    nodes.begin());
  };
  std::vector<WeightedEdge> edges;
  for (const auto& p : pairs) {
    if (p.a == p.b) throw Error(ErrorCode::InvariantViolation, "self-pair for '" + p.a + "'");
    if (!(p.similarity >= threshold)) continue;
    auto u = index(p.a);
    auto v = index(p.b);
    if (u > v) std::swap(u, v);
    edges.push_back({u, v, p.similarity});
  }
  return WordGraph(std::move(nodes), std::move(edges));
}

void write_edge_list(std::ostream& out, const WordGraph& graph) {
  for (const auto& e : graph.edges()) {
    out << graph.nodes()[e.u] << ' ' << graph.nodes()[e.v] << ' ' << format_double(e.weight)
        << '\n';
  }
}

// ------------------------------------------------------------------ Partition

Partition Partition::from_labels(std::span<const std::int64_t> labels) {
  Partition p;
  p.community_of_.assign(labels.size(), kUnassigned);
  std::unordered_map<std::int64_t, CommunityId> dense;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) continue;
    auto [it, inserted] = dense.emplace(labels[i], static_cast<CommunityId>(dense.size()));
    if (inserted) p.communities_.emplace_back();
    p.community_of_[i] = it->second;
    p.communities_[static_cast<std::size_t>(it->second)].push_back(i);
  }
  return p;
}

Partition Partition::singletons(std::size_t node_count) {
  std::vector<std::int64_t> labels(node_count);
  std::iota(labels.begin(), labels.end(), 0);
  return from_labels(labels);
}

std::size_t Partition::unassigned_count() const {
  return static_cast<std::size_t>(
      std::count(community_of_.begin(), community_of_.end(), kUnassigned));
}

double modularity(const WordGraph& graph, const Partition& partition) {
  if (partition.node_count() != graph.node_count() || !partition.covers_all()) {
    throw Error(ErrorCode::PartitionMismatch,
                "partition does not assign every graph node to a community");
  }
  const double m = graph.total_weight();
  if (m == 0.0) return 0.0;

  const std::size_t c_count = partition.community_count();
  std::vector<CompensatedSum> inside(c_count);
  std::vector<CompensatedSum> total(c_count);
  for (const auto& e : graph.edges()) {
    const auto cu = partition.community_of(e.u);
    if (cu == partition.community_of(e.v)) inside[static_cast<std::size_t>(cu)].add(2.0 * e.weight);
  }
  for (std::size_t i = 0; i < graph.node_count(); ++i) {
    total[static_cast<std::size_t>(partition.community_of(i))].add(graph.degree(i));
  }
  CompensatedSum q;
  const double two_m = 2.0 * m;
  for (std::size_t c = 0; c < c_count; ++c) {
    const double share = total[c].value() / two_m;
    q.add(inside[c].value() / two_m - share * share);
  }
  return q.value();
}

// -------------------------------------------------------------------- Louvain

namespace {

// Graph of one Louvain level. `loop[i]` holds the intra-community weight
// folded into meta-node i, counted twice (both edge directions).
struct LevelGraph {
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency;
  std::vector<double> loop;
  std::vector<double> degree;
  double two_m = 0.0;

  std::size_t size() const { return adjacency.size(); }
};

LevelGraph level_from(const WordGraph& graph) {
  LevelGraph g;
  const std::size_t n = graph.node_count();
  g.adjacency.resize(n);
  g.loop.assign(n, 0.0);
  g.degree.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& nb : graph.neighbors(i)) g.adjacency[i].emplace_back(nb.node, nb.weight);
    g.degree[i] = graph.degree(i);
  }
  g.two_m = 2.0 * graph.total_weight();
  return g;
}

std::vector<std::size_t> visit_order(std::size_t n, bool shuffle, std::mt19937_64& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (shuffle) {
    // Explicit Fisher-Yates so the permutation is the same on every standard library.
    for (std::size_t i = n; i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(order[i - 1], order[j]);
    }
  }
  return order;
}

struct LocalMoveResult {
  std::vector<std::size_t> community;  // level node -> community (not dense)
  std::size_t moves = 0;
};

// Phase 1: move single nodes to the neighboring community with the largest
// modularity gain until no move improves Q by more than min_gain. `initial`
// holds community ids in [0, n).
LocalMoveResult local_moves(const LevelGraph& g, const std::vector<std::size_t>& order,
                            std::vector<std::size_t> initial, double min_gain) {
  const std::size_t n = g.size();
  LocalMoveResult result;
  auto& comm = result.community;
  comm = std::move(initial);
  std::vector<double> tot(n, 0.0);
  std::vector<double> inside(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    tot[comm[i]] += g.degree[i];
    inside[comm[i]] += g.loop[i];
    for (const auto& [j, w] : g.adjacency[i]) {
      if (comm[j] == comm[i]) inside[comm[i]] += w;
    }
  }

  std::vector<double> weight_to(n, -1.0);
  std::vector<std::size_t> touched;
  const double m = g.two_m / 2.0;

  bool moved = true;
  while (moved) {
    moved = false;
    for (const std::size_t i : order) {
      const std::size_t old_c = comm[i];
      const double k_i = g.degree[i];

      touched.clear();
      weight_to[old_c] = 0.0;
      touched.push_back(old_c);
      for (const auto& [j, w] : g.adjacency[i]) {
        const std::size_t c = comm[j];
        if (weight_to[c] < 0.0) {
          weight_to[c] = 0.0;
          touched.push_back(c);
        }
        weight_to[c] += w;
      }

      tot[old_c] -= k_i;
      inside[old_c] -= 2.0 * weight_to[old_c] + g.loop[i];

      auto gain = [&](std::size_t c) { return weight_to[c] - tot[c] * k_i / g.two_m; };
      const double stay_gain = gain(old_c);
      std::size_t best_c = old_c;
      double best_gain = -std::numeric_limits<double>::infinity();
      for (const std::size_t c : touched) {
        if (c == old_c) continue;
        const double gc = gain(c);
        if (gc > best_gain || (gc == best_gain && c < best_c)) {
          best_gain = gc;
          best_c = c;
        }
      }
      std::size_t target = old_c;
      if (best_c != old_c && (best_gain - stay_gain) / m > min_gain) target = best_c;

      tot[target] += k_i;
      inside[target] += 2.0 * weight_to[target] + g.loop[i];
      comm[i] = target;
      if (target != old_c) {
        moved = true;
        ++result.moves;
      }
      for (const std::size_t c : touched) weight_to[c] = -1.0;
    }
  }
  return result;
}

// Dense ids in order of first appearance by node index.
std::vector<std::size_t> densify(const std::vector<std::size_t>& comm, std::size_t& count) {
  std::vector<std::size_t> renumber(comm.size(), SIZE_MAX);
  std::vector<std::size_t> out(comm.size());
  count = 0;
  for (std::size_t i = 0; i < comm.size(); ++i) {
    if (renumber[comm[i]] == SIZE_MAX) renumber[comm[i]] = count++;
    out[i] = renumber[comm[i]];
  }
  return out;
}

// Phase 2: collapse each community into a meta-node.
LevelGraph aggregate(const LevelGraph& g, const std::vector<std::size_t>& dense, std::size_t count) {
  LevelGraph next;
  next.adjacency.resize(count);
  next.loop.assign(count, 0.0);
  next.degree.assign(count, 0.0);
  next.two_m = g.two_m;

  std::vector<std::vector<std::size_t>> members(count);
  for (std::size_t i = 0; i < g.size(); ++i) members[dense[i]].push_back(i);

  std::vector<double> weight_to(count, 0.0);
  std::vector<std::size_t> touched;
  for (std::size_t c = 0; c < count; ++c) {
    touched.clear();
    double loop = 0.0;
    for (const std::size_t i : members[c]) {
      loop += g.loop[i];
      for (const auto& [j, w] : g.adjacency[i]) {
        const std::size_t d = dense[j];
        if (d == c) {
          loop += w;
          continue;
        }
        if (weight_to[d] == 0.0) touched.push_back(d);
        weight_to[d] += w;
      }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    next.loop[c] = loop;
    double degree = loop;
    for (const std::size_t d : touched) {
      next.adjacency[c].emplace_back(d, weight_to[d]);
      degree += weight_to[d];
      weight_to[d] = 0.0;
    }
    next.degree[c] = degree;
  }
  return next;
}

// Vertex-mover refinement on the original graph. One pass moves every node at
// most once, always taking the best available move even when it lowers Q, and
// keeps the best prefix of that sequence. Passes repeat while Q rises by more
// than min_gain. Community ids stay within [0, n).
bool refine_moves(const WordGraph& graph, std::vector<std::size_t>& comm, double min_gain) {
  const std::size_t n = graph.node_count();
  const double m = graph.total_weight();
  if (n < 2 || m == 0.0) return false;
  // Give up on a pass after this many steps without a new best prefix.
  constexpr std::size_t kStall = 64;

  auto q_of = [&](const std::vector<std::size_t>& c) {
    return modularity(graph, Partition::from_labels(std::vector<std::int64_t>(c.begin(), c.end())));
  };
  double q = q_of(comm);
  bool changed = false;
  std::vector<double> tot(n);
  std::vector<std::size_t> size(n);
  std::vector<double> weight_to(n, 0.0);
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> touched;

  while (true) {
    std::fill(tot.begin(), tot.end(), 0.0);
    std::fill(size.begin(), size.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      tot[comm[i]] += graph.degree(i);
      ++size[comm[i]];
    }
    std::set<std::size_t> empty;
    for (std::size_t c = 0; c < n; ++c) {
      if (size[c] == 0) empty.insert(c);
    }

    std::vector<char> locked(n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> history;  // node, previous community
    double cum = 0.0;
    double best_cum = 0.0;
    std::size_t best_len = 0;
    for (std::size_t step = 0; step < n && step < best_len + kStall; ++step) {
      double best_delta = -std::numeric_limits<double>::infinity();
      std::size_t best_node = n;
      std::size_t best_target = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (locked[i]) continue;
        const std::size_t a = comm[i];
        const double k = graph.degree(i);
        touched.clear();
        for (const auto& nb : graph.neighbors(i)) {
          const std::size_t c = comm[nb.node];
          if (!seen[c]) {
            seen[c] = 1;
            touched.push_back(c);
          }
          weight_to[c] += nb.weight;
        }
        const double w_a = seen[a] ? weight_to[a] : 0.0;
        const double leave = -w_a / m + k * (tot[a] - k) / (2.0 * m * m);
        auto consider = [&](std::size_t b, double w_b) {
          const double delta = leave + w_b / m - k * tot[b] / (2.0 * m * m);
          if (delta > best_delta ||
              (delta == best_delta && (i < best_node || (i == best_node && b < best_target)))) {
            best_delta = delta;
            best_node = i;
            best_target = b;
          }
        };
        for (const std::size_t b : touched) {
          if (b != a) consider(b, weight_to[b]);
        }
        if (size[a] > 1 && !empty.empty()) consider(*empty.begin(), 0.0);
        for (const std::size_t c : touched) {
          seen[c] = 0;
          weight_to[c] = 0.0;
        }
      }
      if (best_node == n) break;

      const std::size_t from = comm[best_node];
      history.emplace_back(best_node, from);
      tot[from] -= graph.degree(best_node);
      tot[best_target] += graph.degree(best_node);
      if (--size[from] == 0) empty.insert(from);
      if (size[best_target]++ == 0) empty.erase(best_target);
      comm[best_node] = best_target;
      locked[best_node] = 1;
      cum += best_delta;
      if (cum > best_cum) {
        best_cum = cum;
        best_len = history.size();
      }
    }

    for (std::size_t h = history.size(); h > best_len; --h) comm[history[h - 1].first] = history[h - 1].second;
    const double next_q = best_len > 0 ? q_of(comm) : q;
    if (next_q - q <= min_gain) {
      // undo the kept prefix as well
      for (std::size_t h = best_len; h > 0; --h) comm[history[h - 1].first] = history[h - 1].second;
      return changed;
    }
    q = next_q;
    changed = true;
  }
}

LouvainResult louvain_once(const WordGraph& graph, bool shuffle, std::uint64_t seed,
                           double min_gain, bool refine) {
  LouvainResult result;
  const std::size_t n = graph.node_count();
  if (graph.total_weight() == 0.0) {
    result.partition = Partition::singletons(n);
    result.modularity = 0.0;
    return result;
  }

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> membership(n);
  std::iota(membership.begin(), membership.end(), 0);
  double q = modularity(graph, Partition::singletons(n));
  // Finer partitions met on the way; refinement from them can beat the final one.
  std::vector<std::vector<std::size_t>> snapshots{membership};

  // Each round is a full multi-level pass. Later rounds restart the node-level
  // moves from the previous round's partition and stop once Q stalls, so the
  // result is always a fixed point of both phases.
  auto converge = [&] {
    while (true) {
      LevelGraph level = level_from(graph);
      // graph node -> current level node
      std::vector<std::size_t> candidate(n);
      std::iota(candidate.begin(), candidate.end(), 0);
      std::vector<std::size_t> initial = membership;
      std::size_t round_moves = 0;
      std::vector<LouvainLevel> round_levels;
      while (true) {
        const auto order = visit_order(level.size(), shuffle, rng);
        const auto moved = local_moves(level, order, std::move(initial), min_gain);
        std::size_t count = 0;
        const auto dense = densify(moved.community, count);
        for (auto& c : candidate) c = dense[c];
        round_moves += moved.moves;

        std::vector<std::int64_t> labels(candidate.begin(), candidate.end());
        round_levels.push_back({level.size(), count, moved.moves,
                                modularity(graph, Partition::from_labels(labels))});
        if (moved.moves == 0 || count == level.size()) break;
        snapshots.push_back(candidate);
        level = aggregate(level, dense, count);
        initial.resize(count);
        std::iota(initial.begin(), initial.end(), 0);
      }
      const double candidate_q = round_levels.back().modularity;
      const bool improved = round_moves > 0 && candidate_q - q > min_gain;
      // Rounds that change nothing leave no trace in the level history.
      if (result.levels.empty() || improved) {
        result.levels.insert(result.levels.end(), round_levels.begin(), round_levels.end());
      }
      if (improved) {
        membership = std::move(candidate);
        q = candidate_q;
        continue;
      }
      if (!refine) return;
      auto refined = membership;
      if (!refine_moves(graph, refined, min_gain)) return;
      std::size_t moves = 0;
      for (std::size_t i = 0; i < n; ++i) moves += refined[i] != membership[i];
      std::size_t count = 0;
      membership = densify(refined, count);
      q = modularity(graph, Partition::from_labels(
                                std::vector<std::int64_t>(membership.begin(), membership.end())));
      result.levels.push_back({n, count, moves, q});
    }
  };
  converge();

  if (refine) {
    // Vertex moves from coarser or finer starting points can reach optima the
    // final partition cannot.
    auto starts = std::move(snapshots);
    snapshots.clear();
    starts.emplace_back(n, 0);
    for (auto& snap : starts) {
      if (!refine_moves(graph, snap, min_gain)) continue;
      std::size_t count = 0;
      auto dense = densify(snap, count);
      const double snap_q = modularity(
          graph, Partition::from_labels(std::vector<std::int64_t>(dense.begin(), dense.end())));
      if (snap_q - q <= min_gain) continue;
      std::size_t moves = 0;
      for (std::size_t i = 0; i < n; ++i) moves += dense[i] != membership[i];
      membership = std::move(dense);
      q = snap_q;
      result.levels.push_back({n, count, moves, q});
      converge();
    }
  }

  std::vector<std::int64_t> labels(membership.begin(), membership.end());
  result.partition = Partition::from_labels(labels);
  result.modularity = modularity(graph, result.partition);
  return result;
}

}  // namespace

LouvainResult louvain(const WordGraph& graph, const LouvainOptions& options) {
  if (!(options.min_gain >= 0.0)) throw Error(ErrorCode::ConfigError, "min_gain must be >= 0");
  auto best = louvain_once(graph, options.shuffle, options.seed, options.min_gain, options.refine);
  for (std::size_t r = 1; r <= options.restarts; ++r) {
    auto candidate = louvain_once(graph, true, options.seed + r, options.min_gain, options.refine);
    if (candidate.modularity > best.modularity) best = std::move(candidate);
  }
  return best;
}

Partition prune_clusters(const Partition& partition, std::size_t min_size,
                         const std::set<CommunityId>& drop_ids) {
  if (min_size < 1) throw Error(ErrorCode::ConfigError, "min_size must be >= 1");
  const auto count = static_cast<CommunityId>(partition.community_count());
  for (const auto id : drop_ids) {
    if (id < 0 || id >= count) {
      throw Error(ErrorCode::UnknownCommunityId, "no community with id " + std::to_string(id));
    }
  }
  std::vector<std::int64_t> labels(partition.node_count(), -1);
  for (std::size_t i = 0; i < partition.node_count(); ++i) {
    const auto c = partition.community_of(i);
    if (c == kUnassigned || drop_ids.contains(c)) continue;
    if (partition.communities()[static_cast<std::size_t>(c)].size() < min_size) continue;
    labels[i] = c;
  }
  return Partition::from_labels(labels);
}

}  // namespace msq
