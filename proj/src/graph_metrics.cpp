#include "wikiindex/graph_metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <unordered_map>

#include "wikiindex/errors.hpp"

namespace wikiindex {

std::size_t UndirectedGraph::edge_count() const {
  std::size_t sum = 0;
  for (const auto& adj : adjacency) sum += adj.size();
  return sum / 2;
}

UndirectedGraph make_undirected(std::vector<std::string> titles,
                                const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  UndirectedGraph g;
  g.adjacency.resize(titles.size());
  g.titles = std::move(titles);
  for (const auto& [a, b] : edges) {
    if (a == b) continue;
    g.adjacency.at(a).push_back(b);
    g.adjacency.at(b).push_back(a);
  }
  for (auto& adj : g.adjacency) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  return g;
}

UndirectedGraph to_undirected(const DomainGraph& g) {
  std::vector<std::string> titles;
  std::unordered_map<std::string, std::size_t> position;
  titles.reserve(g.node_count());
  for (const auto& n : g.nodes()) {
    position.emplace(n.title, titles.size());
    titles.push_back(n.title);
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  edges.reserve(g.edge_count());
  for (const auto& e : g.edges()) edges.emplace_back(position.at(e.from), position.at(e.to));
  return make_undirected(std::move(titles), edges);
}

std::vector<std::size_t> bfs_distances(const UndirectedGraph& g, std::size_t source) {
  constexpr auto kUnreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.node_count(), kUnreached);
  std::queue<std::size_t> queue;
  dist[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop();
    for (const auto w : g.adjacency[v]) {
      if (dist[w] != kUnreached) continue;
      dist[w] = dist[v] + 1;
      queue.push(w);
    }
  }
  return dist;
}

std::vector<std::size_t> connected_components(const UndirectedGraph& g, std::size_t* count) {
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> comp(g.node_count(), kNone);
  std::size_t next = 0;
  for (std::size_t s = 0; s < g.node_count(); ++s) {
    if (comp[s] != kNone) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (const auto w : g.adjacency[v]) {
        if (comp[w] == kNone) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

double local_clustering(const UndirectedGraph& g, std::size_t v) {
  const auto& nbrs = g.adjacency[v];
  const auto k = nbrs.size();
  if (k < 2) return 0.0;
  std::size_t links = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& adj_i = g.adjacency[nbrs[i]];
    // Count neighbours of v that are also adjacent to nbrs[i], each pair once.
    for (std::size_t j = i + 1; j < k; ++j) {
      if (std::binary_search(adj_i.begin(), adj_i.end(), nbrs[j])) ++links;
    }
  }
  return 2.0 * static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1));
}

GraphMetrics compute_metrics(const UndirectedGraph& g, std::size_t top_k) {
  if (g.node_count() == 0) throw EmptyGraph("graph has no nodes");
  GraphMetrics m;
  m.node_count = g.node_count();
  m.edge_count = g.edge_count();
  m.average_degree = 2.0 * static_cast<double>(m.edge_count) / static_cast<double>(m.node_count);

  const auto comp = connected_components(g, &m.component_count);
  std::vector<std::size_t> sizes(m.component_count, 0);
  for (const auto c : comp) ++sizes[c];
  // Ties go to the component holding the earliest-discovered node.
  const auto largest = static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  m.largest_component_size = sizes[largest];
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (comp[v] != largest) continue;
    const auto dist = bfs_distances(g, v);
    for (std::size_t w = 0; w < g.node_count(); ++w) {
      if (comp[w] == largest) m.diameter = std::max(m.diameter, dist[w]);
    }
  }

  double sum = 0.0;
  for (std::size_t v = 0; v < g.node_count(); ++v) sum += local_clustering(g, v);
  m.average_clustering = sum / static_cast<double>(m.node_count);

  std::vector<std::size_t> order(g.node_count());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
    return g.titles[a] < g.titles[b];
  });
  order.resize(std::min(top_k, order.size()));
  for (const auto v : order) m.top_nodes.push_back({g.titles[v], g.degree(v)});
  return m;
}

GraphMetrics compute_metrics(const DomainGraph& g, std::size_t top_k) { return compute_metrics(to_undirected(g), top_k); }

}  // namespace wikiindex
