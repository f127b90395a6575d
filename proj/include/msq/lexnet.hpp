#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "msq/embeddings.hpp"

namespace msq {

inline constexpr double kDefaultSimilarityThreshold = 0.5;

struct WeightedEdge {
  std::size_t u;  // u < v
  std::size_t v;
  double weight;

  bool operator==(const WeightedEdge&) const = default;
};

/// Undirected weighted graph over entity tokens. Nodes are sorted
/// lexicographically, so node index order is the token order.
class WordGraph {
 public:
  struct Neighbor {
    std::size_t node;
    double weight;
  };

  WordGraph() = default;
  /// Validates: u < v < node count, no duplicates, finite positive weights.
  WordGraph(std::vector<std::string> nodes, std::vector<WeightedEdge> edges);
  /// Graph with plain node indices ("0", "1", ...); handy for synthetic graphs.
  static WordGraph from_edges(std::size_t node_count, std::vector<WeightedEdge> edges);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<WeightedEdge>& edges() const { return edges_; }
  std::span<const Neighbor> neighbors(std::size_t node) const { return adjacency_[node]; }
  /// Sum of incident edge weights.
  double degree(std::size_t node) const { return degree_[node]; }
  bool is_isolated(std::size_t node) const { return adjacency_[node].empty(); }
  /// m: the sum of all edge weights.
  double total_weight() const { return total_weight_; }
  std::size_t index_of(const std::string& token) const;

 private:
  std::vector<std::string> nodes_;
  std::vector<WeightedEdge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<double> degree_;
  double total_weight_ = 0.0;
};

/// Keeps pairs with similarity >= threshold. Every token seen in `pairs` (and
/// every token in `extra_nodes`) becomes a node, isolated or not.
WordGraph build_graph(std::span<const SimilarityPair> pairs,
                      double threshold = kDefaultSimilarityThreshold,
                      std::span<const std::string> extra_nodes = {});

void write_edge_list(std::ostream& out, const WordGraph& graph);

using CommunityId = std::int32_t;
inline constexpr CommunityId kUnassigned = -1;

/// Node -> community assignment with dense ids 0..C-1. Nodes may be
/// unassigned (kUnassigned) after pruning.
class Partition {
 public:
  Partition() = default;
  /// Arbitrary labels (negative = unassigned) are re-densified in order of
  /// first appearance by node index.
  static Partition from_labels(std::span<const std::int64_t> labels);
  static Partition singletons(std::size_t node_count);

  std::size_t node_count() const { return community_of_.size(); }
  std::size_t community_count() const { return communities_.size(); }
  CommunityId community_of(std::size_t node) const { return community_of_[node]; }
  const std::vector<CommunityId>& assignment() const { return community_of_; }
  /// Members of each community, ascending node order.
  const std::vector<std::vector<std::size_t>>& communities() const { return communities_; }
  std::size_t unassigned_count() const;
  bool covers_all() const { return unassigned_count() == 0; }

  bool operator==(const Partition& other) const { return community_of_ == other.community_of_; }

 private:
  std::vector<CommunityId> community_of_;
  std::vector<std::vector<std::size_t>> communities_;
};

/// Newman-Girvan weighted modularity; 0 for a graph without edges.
/// Throws PartitionMismatch if the partition does not cover the graph.
double modularity(const WordGraph& graph, const Partition& partition);

struct LouvainOptions {
  std::uint64_t seed = 0;
  /// Permute the node visit order with the seed instead of token order.
  bool shuffle = false;
  double min_gain = 1e-7;
  /// Extra shuffled runs; the best modularity wins (ties keep the earliest).
  std::size_t restarts = 0;
  /// Vertex-mover passes after the level phases; they escape partitions that
  /// no single improving move can leave (e.g. two nodes on the wrong sides).
  bool refine = true;
};

struct LouvainLevel {
  std::size_t node_count;
  std::size_t community_count;
  std::size_t moves;
  double modularity;
};

struct LouvainResult {
  Partition partition;
  double modularity = 0.0;
  std::vector<LouvainLevel> levels;
};

LouvainResult louvain(const WordGraph& graph, const LouvainOptions& options = {});

/// Removes communities smaller than `min_size` and those listed in
/// `drop_ids`; their nodes become unassigned and surviving ids are re-densified.
Partition prune_clusters(const Partition& partition, std::size_t min_size,
                         const std::set<CommunityId>& drop_ids = {});

}  // namespace msq
