#include "uacim/kernels.hpp"

#include <algorithm>

#include <omp.h>

#include "uacim/errors.hpp"

namespace uacim::kernels {

namespace {

bool better(std::span<const double> score, std::span<const std::uint32_t> tie_rank, std::size_t i,
            std::size_t best) {
  return score[i] > score[best] || (score[i] == score[best] && tie_rank[i] < tie_rank[best]);
}

// BFS limited to k hops using a generation-stamped visited array, so the
// array is reused across sources without clearing.
std::uint32_t bounded_bfs(const Adjacency& adj, NodeId source, unsigned k,
                          std::vector<std::uint32_t>& stamp, std::uint32_t generation,
                          std::vector<NodeId>& frontier, std::vector<NodeId>& next) {
  stamp[source] = generation;
  frontier.assign(1, source);
  std::uint32_t reached = 0;
  for (unsigned hop = 0; hop < k && !frontier.empty(); ++hop) {
    next.clear();
    for (NodeId x : frontier) {
      for (NodeId y : adj.neighbors(x)) {
        if (stamp[y] != generation) {
          stamp[y] = generation;
          next.push_back(y);
          ++reached;
        }
      }
    }
    frontier.swap(next);
  }
  return reached;
}

}  // namespace

std::vector<std::uint32_t> hop_counts(const Adjacency& adj, unsigned k) {
  if (k == 0) throw DomainError("hop radius must be >= 1");
  const auto n = static_cast<std::int64_t>(adj.num_nodes());
  std::vector<std::uint32_t> out(adj.num_nodes(), 0);
  if (k == 1) {
#pragma omp parallel for schedule(static)
    for (std::int64_t v = 0; v < n; ++v) out[v] = static_cast<std::uint32_t>(adj.degree(v));
    return out;
  }
#pragma omp parallel
  {
    std::vector<std::uint32_t> stamp(adj.num_nodes(), 0);
    std::vector<NodeId> frontier, next;
    std::uint32_t generation = 0;
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t v = 0; v < n; ++v) {
      out[v] = bounded_bfs(adj, static_cast<NodeId>(v), k, stamp, ++generation, frontier, next);
    }
  }
  return out;
}

std::vector<std::uint32_t> free_degrees(const Adjacency& adj, std::span<const std::uint8_t> free) {
  const auto n = static_cast<std::int64_t>(adj.num_nodes());
  std::vector<std::uint32_t> out(adj.num_nodes(), 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t v = 0; v < n; ++v) {
    std::uint32_t count = 0;
    for (NodeId y : adj.neighbors(static_cast<NodeId>(v))) count += free[y];
    out[v] = count;
  }
  return out;
}

StateFeatures free_subgraph_features(const Adjacency& adj, std::span<const std::uint8_t> free) {
  const auto n = static_cast<std::int64_t>(adj.num_nodes());
  std::size_t endpoint_sum = 0;
  std::size_t max_degree = 0;
#pragma omp parallel for schedule(static) reduction(+ : endpoint_sum) reduction(max : max_degree)
  for (std::int64_t v = 0; v < n; ++v) {
    if (!free[v]) continue;
    std::size_t count = 0;
    for (NodeId y : adj.neighbors(static_cast<NodeId>(v))) count += free[y];
    endpoint_sum += count;
    max_degree = std::max(max_degree, count);
  }
  return {endpoint_sum / 2, max_degree};
}

std::size_t masked_argmax(std::span<const double> score, std::span<const std::uint8_t> eligible,
                          std::span<const std::uint32_t> tie_rank) {
  const auto n = static_cast<std::int64_t>(score.size());
  std::size_t best = npos;
#pragma omp parallel
  {
    std::size_t local = npos;
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < n; ++i) {
      if (!eligible[i]) continue;
      if (local == npos || better(score, tie_rank, static_cast<std::size_t>(i), local)) {
        local = static_cast<std::size_t>(i);
      }
    }
#pragma omp critical(uacim_masked_argmax)
    {
      if (local != npos && (best == npos || better(score, tie_rank, local, best))) {
        best = local;
      }
    }
  }
  return best;
}

namespace reference {

std::vector<std::uint32_t> hop_counts(const Adjacency& adj, unsigned k) {
  std::vector<std::uint32_t> out(adj.num_nodes());
  for (std::size_t v = 0; v < adj.num_nodes(); ++v) {
    out[v] = static_cast<std::uint32_t>(k_hop_count(adj, static_cast<NodeId>(v), k));
  }
  return out;
}

std::vector<std::uint32_t> free_degrees(const Adjacency& adj, std::span<const std::uint8_t> free) {
  std::vector<std::uint32_t> out(adj.num_nodes(), 0);
  for (std::size_t v = 0; v < adj.num_nodes(); ++v) {
    for (NodeId y : adj.neighbors(static_cast<NodeId>(v))) {
      if (free[y]) ++out[v];
    }
  }
  return out;
}

StateFeatures free_subgraph_features(const Adjacency& adj, std::span<const std::uint8_t> free) {
  StateFeatures f;
  for (std::size_t v = 0; v < adj.num_nodes(); ++v) {
    if (!free[v]) continue;
    std::size_t degree = 0;
    for (NodeId y : adj.neighbors(static_cast<NodeId>(v))) {
      if (!free[y]) continue;
      ++degree;
      if (v < y) ++f.free_edge_count;
    }
    f.max_free_degree = std::max(f.max_free_degree, degree);
  }
  return f;
}

std::size_t masked_argmax(std::span<const double> score, std::span<const std::uint8_t> eligible,
                          std::span<const std::uint32_t> tie_rank) {
  std::size_t best = npos;
  for (std::size_t i = 0; i < score.size(); ++i) {
    if (eligible[i] && (best == npos || better(score, tie_rank, i, best))) best = i;
  }
  return best;
}

}  // namespace reference

}  // namespace uacim::kernels
