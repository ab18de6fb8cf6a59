#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wikiindex/content_source.hpp"
#include "wikiindex/page_analysis.hpp"
#include "wikiindex/wiki_index.hpp"

namespace wikiindex {

struct ProbeLimits {
  std::size_t max_pages = 0;           // traversal fetches after the seed; 0 = unbounded
  std::size_t max_links_per_page = 0;  // 0 = unbounded
};

struct ProbeConfig {
  PageRef seed;
  AuthorPatterns patterns;
  ProbeLimits limits;
  bool expand_endnotes = false;
  std::vector<std::string> recognized_sections = default_recognized_sections();

  // Throws ConfigError.
  void validate() const;
};

enum class NodeStatus { seed, expanded, endnote, leaf, undiscovered };

std::string_view to_string(NodeStatus s);
NodeStatus parse_node_status(std::string_view s);  // throws InputError

struct ConceptNode {
  std::string title;
  std::size_t discovery_index = 0;
  NodeStatus status = NodeStatus::undiscovered;
  std::optional<std::size_t> mentions;  // present iff seed, expanded or endnote

  friend bool operator==(const ConceptNode&, const ConceptNode&) = default;
};

enum class EdgeKind { forward, back };

std::string_view to_string(EdgeKind k);
EdgeKind parse_edge_kind(std::string_view s);  // throws InputError

struct Edge {
  std::string from;
  std::string to;
  EdgeKind kind = EdgeKind::forward;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Directed concept graph. Nodes are kept in discovery order, edges in
// insertion order; (from, to) pairs are unique and self-loops are rejected.
class DomainGraph {
 public:
  // Returns false if the title already exists. The discovery index is the
  // next free one unless given explicitly (import path).
  bool add_node(std::string title, NodeStatus status = NodeStatus::undiscovered,
                std::optional<std::size_t> mentions = std::nullopt,
                std::optional<std::size_t> discovery_index = std::nullopt);
  // Returns false for duplicates and self-loops; throws InputError if an
  // endpoint is unknown.
  bool add_edge(std::string_view from, std::string_view to, EdgeKind kind);

  bool contains(std::string_view title) const;
  const ConceptNode* find(std::string_view title) const;
  ConceptNode& at(std::string_view title);
  const ConceptNode& at(std::string_view title) const;
  bool has_edge(std::string_view from, std::string_view to) const;

  // Renames `alias` to `canonical`. If `canonical` already exists the alias
  // node is merged into it and removed.
  void merge_alias(std::string_view alias, std::string_view canonical);

  const std::vector<ConceptNode>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return nodes_.empty(); }
  std::size_t next_discovery_index() const { return next_discovery_; }
  void set_next_discovery_index(std::size_t next) { next_discovery_ = next; }

  // Forward out-degree of each node.
  std::size_t forward_out_degree(std::string_view title) const;

  friend bool operator==(const DomainGraph& a, const DomainGraph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  void reindex();

  std::vector<ConceptNode> nodes_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> index_;
  std::set<std::pair<std::string, std::string>> edge_pairs_;
  std::size_t next_discovery_ = 0;
};

struct TraceEvent {
  std::size_t step = 0;
  std::string title;
  char sign = '-';
  std::optional<std::string> note;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct Trace {
  std::string seed;
  std::size_t seed_mentions = 0;
  std::vector<TraceEvent> events;

  friend bool operator==(const Trace&, const Trace&) = default;
};

// Line 1 "1: <seed>", line 2 "SCI Links (1): <count>", then "<k> Rd <sign>: <title>".
std::string format_trace(const Trace& trace);

struct ProbeResult {
  DomainGraph graph;
  std::vector<MentionEntry> mentions;  // pages with mentions >= 1, in fetch order
  Trace trace;
  bool truncated = false;        // stopped at max_pages with work left
  bool links_truncated = false;  // some page exceeded max_links_per_page
  std::vector<std::string> warnings;
  std::size_t fetches = 0;       // traversal fetches, excluding the seed
  Timestamp started_at{};
};

// Serializable crawler state. The JSON form round-trips byte for byte.
struct Checkpoint {
  static constexpr int kVersion = 1;

  std::string config_fingerprint;
  ProbeResult state;
  std::deque<std::string> pending;
  std::set<std::string> fetched;
  std::map<std::string, std::string> aliases;

  std::string to_json() const;
  static Checkpoint from_json(std::string_view text);  // throws CheckpointCorrupt
};

// Stable text identifying everything in ProbeConfig that affects the crawl.
std::string config_fingerprint(const ProbeConfig& cfg);

// The traversal state machine. Construction fetches the seed (throws
// SeedNotFound); each step() fetches one page in discovery order.
class Prober {
 public:
  Prober(ProbeConfig cfg, ContentSource& source, Timestamp started_at = {}, WarningSink warn = {});
  // Throws CheckpointCorrupt if the checkpoint belongs to another config.
  Prober(const Checkpoint& checkpoint, ProbeConfig cfg, ContentSource& source, WarningSink warn = {});

  // Fetches the next pending page. Returns false once the crawl is complete
  // or max_pages is reached.
  bool step();
  // Steps until done, or until `stop_after` more fetches have happened.
  void run(std::optional<std::size_t> stop_after = std::nullopt);

  bool finished() const;
  std::size_t fetches() const { return state_.fetches; }
  Checkpoint checkpoint() const;
  const ProbeResult& result() const { return state_; }

 private:
  std::string resolve(const std::string& title) const;
  void expand(const std::string& from, const std::vector<PageRef>& links);
  void warn(std::string message);

  ProbeConfig cfg_;
  ContentSource& source_;
  WarningSink warn_;
  AnalysisOptions analysis_;
  ProbeResult state_;
  std::deque<std::string> pending_;
  std::set<std::string> fetched_;
  std::map<std::string, std::string> aliases_;
};

ProbeResult probe(const ProbeConfig& cfg, ContentSource& source, Timestamp started_at = {}, WarningSink warn = {});
ProbeResult resume(const Checkpoint& checkpoint, const ProbeConfig& cfg, ContentSource& source, WarningSink warn = {});

}  // namespace wikiindex
