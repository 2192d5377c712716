#include "uacim/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "uacim/errors.hpp"
#include "uacim/kernels.hpp"

namespace uacim {

Adjacency::Adjacency(std::size_t num_nodes, std::span<const Edge> edges)
    : offsets_(num_nodes + 1, 0), targets_(2 * edges.size()) {
  for (const Edge& e : edges) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < num_nodes; ++i) {
    max_degree_ = std::max(max_degree_, offsets_[i + 1]);
    offsets_[i + 1] += offsets_[i];
  }
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges) {
    targets_[cursor[e.u]++] = e.v;
    targets_[cursor[e.v]++] = e.u;
  }
  for (std::size_t i = 0; i < num_nodes; ++i) {
    std::sort(targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
  }
}

SocialGraph::SocialGraph(std::size_t num_nodes, std::vector<Edge> edges,
                         std::vector<std::int64_t> labels)
    : labels_(std::move(labels)) {
  if (labels_.empty()) {
    labels_.resize(num_nodes);
    for (std::size_t i = 0; i < num_nodes; ++i) labels_[i] = static_cast<std::int64_t>(i);
  }
  if (labels_.size() != num_nodes) throw DomainError("label count differs from node count");
  edges_.reserve(edges.size());
  for (Edge e : edges) {
    if (e.u >= num_nodes || e.v >= num_nodes) throw DomainError("edge endpoint out of range");
    if (e.u == e.v) continue;
    if (e.u > e.v) std::swap(e.u, e.v);
    edges_.push_back(e);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  adjacency_ = Adjacency(num_nodes, edges_);

  std::vector<NodeId> order(num_nodes);
  for (std::size_t i = 0; i < num_nodes; ++i) order[i] = static_cast<NodeId>(i);
  std::sort(order.begin(), order.end(),
            [&](NodeId x, NodeId y) { return labels_[x] < labels_[y]; });
  label_rank_.resize(num_nodes);
  for (std::size_t r = 0; r < num_nodes; ++r) label_rank_[order[r]] = static_cast<std::uint32_t>(r);
}

namespace {

bool is_separator(char c) { return c == ',' || c == ' ' || c == '\t' || c == '\r' || c == ';'; }

// Splits a line into its first two tokens. Returns false when fewer than two.
bool first_two_tokens(std::string_view line, std::string_view& first, std::string_view& second) {
  std::string_view tokens[2];
  std::size_t found = 0;
  std::size_t i = 0;
  while (i < line.size() && found < 2) {
    while (i < line.size() && is_separator(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_separator(line[i])) ++i;
    if (i > start) tokens[found++] = line.substr(start, i - start);
  }
  if (found < 2) return false;
  first = tokens[0];
  second = tokens[1];
  return true;
}

bool parse_int(std::string_view token, std::int64_t& out) {
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

SocialGraph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list '" + path.string() + "'");

  std::unordered_map<std::int64_t, NodeId> index;
  std::vector<std::int64_t> labels;
  std::vector<Edge> edges;
  auto intern = [&](std::int64_t label) {
    auto [it, inserted] = index.try_emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    const auto first_char = view.find_first_not_of(" \t\r");
    if (first_char == std::string_view::npos) continue;
    if (view[first_char] == '#' || view[first_char] == '%') continue;

    std::string_view a, b;
    std::int64_t ia = 0, ib = 0;
    if (!first_two_tokens(view, a, b) || !parse_int(a, ia) || !parse_int(b, ib)) {
      if (!seen_data) {
        seen_data = true;  // header row such as "id_1,id_2"
        continue;
      }
      throw ParseError("malformed edge '" + line + "' in " + path.string(), line_no);
    }
    seen_data = true;
    const NodeId u = intern(ia);
    const NodeId v = intern(ib);
    edges.push_back({u, v});
  }
  const std::size_t n = labels.size();
  SocialGraph g(n, std::move(edges), std::move(labels));
  if (g.num_edges() == 0) throw DomainError("edge list '" + path.string() + "' has no edges");
  return g;
}

void write_edge_list(const SocialGraph& g, const std::filesystem::path& path,
                     std::string_view header) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  if (!header.empty()) out << "# " << header << '\n';
  out << "# nodes " << g.num_nodes() << " edges " << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << g.label(e.u) << ' ' << g.label(e.v) << '\n';
}

SocialGraph synthetic_social_graph(std::size_t num_nodes, std::size_t num_edges,
                                   double triad_probability, Rng& rng) {
  if (num_nodes < 3) throw DomainError("synthetic graph needs at least 3 nodes");
  // Smallest seed clique such that every later node can attach its quota.
  std::size_t clique = 2;
  std::size_t base = 0, extra = 0;
  for (;; ++clique) {
    if (clique >= num_nodes) throw DomainError("edge target too large for node count");
    const std::size_t clique_edges = clique * (clique - 1) / 2;
    if (clique_edges > num_edges) throw DomainError("edge target too small for node count");
    const std::size_t rest = num_edges - clique_edges;
    base = rest / (num_nodes - clique);
    extra = rest % (num_nodes - clique);
    if (base + (extra ? 1 : 0) <= clique) break;
  }
  std::vector<std::size_t> quota(num_nodes - clique, base);
  for (std::size_t i = 0; i < extra; ++i) quota[i] += 1;
  shuffle(quota, rng);

  std::vector<Edge> edges;
  edges.reserve(num_edges);
  std::vector<std::vector<NodeId>> adj(num_nodes);
  std::vector<NodeId> endpoints;  // each node repeated deg times
  auto link = [&](NodeId a, NodeId b) {
    edges.push_back({std::min(a, b), std::max(a, b)});
    adj[a].push_back(b);
    adj[b].push_back(a);
    endpoints.push_back(a);
    endpoints.push_back(b);
  };
  for (NodeId i = 0; i < clique; ++i) {
    for (NodeId j = i + 1; j < clique; ++j) link(i, j);
  }

  std::vector<std::uint8_t> taken(num_nodes, 0);
  for (std::size_t step = 0; step < quota.size(); ++step) {
    const auto v = static_cast<NodeId>(clique + step);
    std::vector<NodeId> chosen;
    NodeId anchor = 0;
    while (chosen.size() < quota[step]) {
      NodeId target = 0;
      bool ok = false;
      if (!chosen.empty() && rng.bernoulli(triad_probability) && !adj[anchor].empty()) {
        target = adj[anchor][rng.below(adj[anchor].size())];
        ok = !taken[target] && target != v;
      }
      for (int attempt = 0; !ok && attempt < 64; ++attempt) {
        target = endpoints[rng.below(endpoints.size())];
        ok = !taken[target] && target != v;
      }
      for (NodeId t = 0; !ok && t < v; ++t) {
        if (!taken[t]) {
          target = t;
          ok = true;
        }
      }
      taken[target] = 1;
      chosen.push_back(target);
      anchor = target;
    }
    for (NodeId t : chosen) {
      taken[t] = 0;
      link(v, t);
    }
  }
  return SocialGraph(num_nodes, std::move(edges));
}

ObservedGraph::ObservedGraph(std::shared_ptr<const SocialGraph> parent, double observability,
                             std::span<const std::size_t> edge_order)
    : parent_(std::move(parent)), observability_(observability) {
  if (!(observability >= 0.0 && observability <= 1.0)) {
    throw DomainError("observability must lie in [0, 1]");
  }
  const auto& all = parent_->edges();
  if (edge_order.size() != all.size()) throw DomainError("edge order must be a permutation of E");
  const auto keep = static_cast<std::size_t>(
      std::llround(observability * static_cast<double>(all.size())));
  edges_.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) edges_.push_back(all[edge_order[i]]);
  std::sort(edges_.begin(), edges_.end());
  adjacency_ = Adjacency(parent_->num_nodes(), edges_);
}

std::vector<std::size_t> edge_permutation(std::size_t num_edges, Rng& rng) {
  std::vector<std::size_t> order(num_edges);
  for (std::size_t i = 0; i < num_edges; ++i) order[i] = i;
  shuffle(order, rng);
  return order;
}

ObservedGraph observe_subgraph(std::shared_ptr<const SocialGraph> g, double observability,
                               Rng& rng) {
  if (!(observability >= 0.0 && observability <= 1.0)) {
    throw DomainError("observability must lie in [0, 1]");
  }
  const auto order = edge_permutation(g->num_edges(), rng);
  return ObservedGraph(std::move(g), observability, order);
}

std::vector<NodeId> free_nodes(std::span<const UserState> users) {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < users.size(); ++i) {
    if (is_free(users[i])) out.push_back(static_cast<NodeId>(i));
  }
  return out;
}

std::vector<std::uint8_t> free_mask(std::span<const UserState> users) {
  std::vector<std::uint8_t> mask(users.size());
  for (std::size_t i = 0; i < users.size(); ++i) mask[i] = is_free(users[i]) ? 1 : 0;
  return mask;
}

StateFeatures state_features(const ObservedGraph& og, std::span<const UserState> users) {
  const auto mask = free_mask(users);
  return kernels::free_subgraph_features(og.adjacency(), mask);
}

std::size_t k_hop_count(const Adjacency& adj, NodeId v, unsigned k) {
  if (k == 0) throw DomainError("hop radius must be >= 1");
  std::unordered_set<NodeId> seen{v};
  std::vector<NodeId> frontier{v};
  std::vector<NodeId> next;
  for (unsigned hop = 0; hop < k && !frontier.empty(); ++hop) {
    next.clear();
    for (NodeId x : frontier) {
      for (NodeId y : adj.neighbors(x)) {
        if (seen.insert(y).second) next.push_back(y);
      }
    }
    frontier.swap(next);
  }
  return seen.size() - 1;
}

}  // namespace uacim
