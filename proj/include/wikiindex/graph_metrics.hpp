#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "wikiindex/sounding_crawler.hpp"

namespace wikiindex {

// Simple undirected graph over node positions; titles kept for reporting.
struct UndirectedGraph {
  std::vector<std::string> titles;
  std::vector<std::vector<std::size_t>> adjacency;  // sorted, no self-loops, no duplicates

  std::size_t node_count() const { return titles.size(); }
  std::size_t edge_count() const;
  std::size_t degree(std::size_t v) const { return adjacency[v].size(); }
};

// Merges forward/back edges and both directions into one undirected edge.
UndirectedGraph to_undirected(const DomainGraph& g);

// Builds from an explicit edge list over `n` nodes named by `titles`.
UndirectedGraph make_undirected(std::vector<std::string> titles,
                                const std::vector<std::pair<std::size_t, std::size_t>>& edges);

struct DegreeEntry {
  std::string title;
  std::size_t degree = 0;

  friend bool operator==(const DegreeEntry&, const DegreeEntry&) = default;
};

struct GraphMetrics {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;  // undirected simple edges
  double average_degree = 0.0;
  std::size_t diameter = 0;  // of the largest connected component
  std::size_t largest_component_size = 0;
  std::size_t component_count = 0;
  double average_clustering = 0.0;
  std::vector<DegreeEntry> top_nodes;  // degree desc, title asc
};

// Throws EmptyGraph for a graph without nodes.
GraphMetrics compute_metrics(const UndirectedGraph& g, std::size_t top_k);
GraphMetrics compute_metrics(const DomainGraph& g, std::size_t top_k);

// Local clustering coefficient; 0 for degree < 2.
double local_clustering(const UndirectedGraph& g, std::size_t v);

// Component id per node; ids numbered in order of their smallest node.
std::vector<std::size_t> connected_components(const UndirectedGraph& g, std::size_t* count = nullptr);

// BFS distances from `source`; unreachable nodes get SIZE_MAX.
std::vector<std::size_t> bfs_distances(const UndirectedGraph& g, std::size_t source);

}  // namespace wikiindex
