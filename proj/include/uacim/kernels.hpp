#pragma once

// Whole-graph scoring kernels used by the seed selectors and the agent state.
//
// The top-level functions are OpenMP-parallel over nodes. `reference::` holds
// the straightforward serial versions; tests require both to agree exactly and
// bench/ compares their throughput.

#include <cstdint>
#include <span>
#include <vector>

#include "uacim/graph.hpp"

namespace uacim::kernels {

// Number of distinct nodes within 1..k hops, for every node.
std::vector<std::uint32_t> hop_counts(const Adjacency& adj, unsigned k);

// Number of free neighbors, for every node.
std::vector<std::uint32_t> free_degrees(const Adjacency& adj, std::span<const std::uint8_t> free);

// Edge count and maximum degree of the free-node induced subgraph.
StateFeatures free_subgraph_features(const Adjacency& adj, std::span<const std::uint8_t> free);

// Index of the maximum score among nodes with eligible[i] != 0. Ties go to the
// lowest tie_rank[i]. Returns npos when no node is eligible.
inline constexpr std::size_t npos = static_cast<std::size_t>(-1);
std::size_t masked_argmax(std::span<const double> score, std::span<const std::uint8_t> eligible,
                          std::span<const std::uint32_t> tie_rank);

namespace reference {

std::vector<std::uint32_t> hop_counts(const Adjacency& adj, unsigned k);
std::vector<std::uint32_t> free_degrees(const Adjacency& adj, std::span<const std::uint8_t> free);
StateFeatures free_subgraph_features(const Adjacency& adj, std::span<const std::uint8_t> free);
std::size_t masked_argmax(std::span<const double> score, std::span<const std::uint8_t> eligible,
                          std::span<const std::uint32_t> tie_rank);

}  // namespace reference

}  // namespace uacim::kernels
