#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "uacim/rng.hpp"
#include "uacim/users.hpp"

namespace uacim {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u = 0;  // u < v
  NodeId v = 0;
  bool operator==(const Edge&) const = default;
  auto operator<=>(const Edge&) const = default;
};

// Compressed sparse row adjacency with sorted neighbor lists.
class Adjacency {
 public:
  Adjacency() = default;
  Adjacency(std::size_t num_nodes, std::span<const Edge> edges);

  std::size_t num_nodes() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const { return max_degree_; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::size_t max_degree_ = 0;
};

// Undirected simple graph. Immutable after construction.
class SocialGraph {
 public:
  // Edges may arrive in any orientation with duplicates and self-loops; they are
  // canonicalized. `labels[i]` is the dataset id of node i (defaults to i).
  SocialGraph(std::size_t num_nodes, std::vector<Edge> edges,
              std::vector<std::int64_t> labels = {});

  std::size_t num_nodes() const { return labels_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Adjacency& adjacency() const { return adjacency_; }
  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_.neighbors(v); }
  std::size_t degree(NodeId v) const { return adjacency_.degree(v); }
  std::size_t max_degree() const { return adjacency_.max_degree(); }
  std::int64_t label(NodeId v) const { return labels_[v]; }
  // Position of each node when sorted by dataset id; the tie-break order.
  const std::vector<std::uint32_t>& label_rank() const { return label_rank_; }

 private:
  std::vector<Edge> edges_;
  std::vector<std::int64_t> labels_;
  std::vector<std::uint32_t> label_rank_;
  Adjacency adjacency_;
};

// Reads an edge list: one edge per line, two integer ids separated by
// whitespace or commas. Lines starting with '#' or '%' are comments, a single
// non-numeric header line before the first edge is skipped, extra columns are
// ignored. Ids are compacted to 0..|V|-1 in first-seen order.
SocialGraph load_edge_list(const std::filesystem::path& path);

void write_edge_list(const SocialGraph& g, const std::filesystem::path& path,
                     std::string_view header = {});

// Scale-free graph with tunable clustering (preferential attachment with triad
// formation) and exactly `num_edges` edges. Deterministic for a given rng state.
SocialGraph synthetic_social_graph(std::size_t num_nodes, std::size_t num_edges,
                                   double triad_probability, Rng& rng);

// The agent-visible part of a graph: the first round(rho * |E|) edges of a
// seeded permutation, so smaller observabilities are prefixes of larger ones.
class ObservedGraph {
 public:
  ObservedGraph(std::shared_ptr<const SocialGraph> parent, double observability,
                std::span<const std::size_t> edge_order);

  const SocialGraph& parent() const { return *parent_; }
  double observability() const { return observability_; }
  std::size_t num_nodes() const { return adjacency_.num_nodes(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Adjacency& adjacency() const { return adjacency_; }
  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_.neighbors(v); }
  std::size_t degree(NodeId v) const { return adjacency_.degree(v); }
  std::size_t max_degree() const { return adjacency_.max_degree(); }

 private:
  std::shared_ptr<const SocialGraph> parent_;
  double observability_;
  std::vector<Edge> edges_;
  Adjacency adjacency_;
};

std::vector<std::size_t> edge_permutation(std::size_t num_edges, Rng& rng);

ObservedGraph observe_subgraph(std::shared_ptr<const SocialGraph> g, double observability,
                               Rng& rng);

struct StateFeatures {
  std::size_t free_edge_count = 0;
  std::size_t max_free_degree = 0;
  bool operator==(const StateFeatures&) const = default;
};

// Free nodes are users with u >= 0.5.
inline bool is_free(const UserState& user) { return user.opinion.u >= 0.5; }
std::vector<NodeId> free_nodes(std::span<const UserState> users);
std::vector<std::uint8_t> free_mask(std::span<const UserState> users);

// Counts over the observed edges restricted to free-node pairs.
StateFeatures state_features(const ObservedGraph& og, std::span<const UserState> users);

// Distinct nodes at BFS distance 1..k from v.
std::size_t k_hop_count(const Adjacency& adj, NodeId v, unsigned k);
inline std::size_t k_hop_count(const ObservedGraph& og, NodeId v, unsigned k) {
  return k_hop_count(og.adjacency(), v, k);
}

}  // namespace uacim
