#include "wikiindex/sounding_crawler.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "json.hpp"
#include "wikiindex/errors.hpp"

namespace wikiindex {

using nlohmann::json;

std::string_view to_string(NodeStatus s) {
  switch (s) {
    case NodeStatus::seed: return "seed";
    case NodeStatus::expanded: return "expanded";
    case NodeStatus::endnote: return "endnote";
    case NodeStatus::leaf: return "leaf";
    case NodeStatus::undiscovered: return "undiscovered-page";
  }
  return "undiscovered-page";
}

NodeStatus parse_node_status(std::string_view s) {
  for (auto status : {NodeStatus::seed, NodeStatus::expanded, NodeStatus::endnote, NodeStatus::leaf,
                      NodeStatus::undiscovered}) {
    if (to_string(status) == s) return status;
  }
  throw InputError(fmt::format("unknown node status '{}'", s));
}

std::string_view to_string(EdgeKind k) { return k == EdgeKind::forward ? "forward" : "back"; }

EdgeKind parse_edge_kind(std::string_view s) {
  if (s == "forward") return EdgeKind::forward;
  if (s == "back") return EdgeKind::back;
  throw InputError(fmt::format("unknown edge kind '{}'", s));
}

// ---------------------------------------------------------------------------
// DomainGraph

bool DomainGraph::add_node(std::string title, NodeStatus status, std::optional<std::size_t> mentions,
                           std::optional<std::size_t> discovery_index) {
  if (index_.contains(title)) return false;
  const std::size_t idx = discovery_index.value_or(next_discovery_);
  next_discovery_ = std::max(next_discovery_, idx + 1);
  index_.emplace(title, nodes_.size());
  nodes_.push_back(ConceptNode{std::move(title), idx, status, mentions});
  return true;
}

bool DomainGraph::add_edge(std::string_view from, std::string_view to, EdgeKind kind) {
  if (!contains(from) || !contains(to)) {
    throw InputError(fmt::format("edge {} -> {} references an unknown node", from, to));
  }
  if (from == to) return false;
  if (!edge_pairs_.emplace(std::string(from), std::string(to)).second) return false;
  edges_.push_back(Edge{std::string(from), std::string(to), kind});
  return true;
}

bool DomainGraph::contains(std::string_view title) const { return index_.contains(std::string(title)); }

const ConceptNode* DomainGraph::find(std::string_view title) const {
  const auto it = index_.find(std::string(title));
  return it == index_.end() ? nullptr : &nodes_[it->second];
}

ConceptNode& DomainGraph::at(std::string_view title) {
  const auto it = index_.find(std::string(title));
  if (it == index_.end()) throw InputError(fmt::format("no node '{}'", title));
  return nodes_[it->second];
}

const ConceptNode& DomainGraph::at(std::string_view title) const {
  const auto* node = find(title);
  if (!node) throw InputError(fmt::format("no node '{}'", title));
  return *node;
}

bool DomainGraph::has_edge(std::string_view from, std::string_view to) const {
  return edge_pairs_.contains({std::string(from), std::string(to)});
}

std::size_t DomainGraph::forward_out_degree(std::string_view title) const {
  return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [&](const Edge& e) {
    return e.kind == EdgeKind::forward && e.from == title;
  }));
}

void DomainGraph::reindex() {
  index_.clear();
  for (std::size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i].title, i);
}

void DomainGraph::merge_alias(std::string_view alias, std::string_view canonical) {
  if (alias == canonical || !contains(alias)) return;
  const bool merge = contains(canonical);
  if (merge) {
    std::erase_if(nodes_, [&](const ConceptNode& n) { return n.title == alias; });
  } else {
    at(alias).title = std::string(canonical);
  }
  reindex();

  std::vector<Edge> rewritten;
  rewritten.reserve(edges_.size());
  edge_pairs_.clear();
  for (auto& e : edges_) {
    if (e.from == alias) e.from = std::string(canonical);
    if (e.to == alias) e.to = std::string(canonical);
    if (e.from == e.to) continue;
    if (!edge_pairs_.emplace(e.from, e.to).second) continue;
    rewritten.push_back(std::move(e));
  }
  edges_ = std::move(rewritten);
}

// ---------------------------------------------------------------------------
// Trace

std::string format_trace(const Trace& trace) {
  std::string out = fmt::format("1: {}\nSCI Links (1): {}\n", trace.seed, trace.seed_mentions);
  for (const auto& e : trace.events) out += fmt::format("{} Rd {}: {}\n", e.step, e.sign, e.title);
  return out;
}

// ---------------------------------------------------------------------------
// Config

void ProbeConfig::validate() const {
  if (seed.title.empty()) throw ConfigError("probe seed is empty");
  if (normalize_title(seed.title) != seed.title) {
    throw ConfigError(fmt::format("probe seed '{}' is not normalized", seed.title));
  }
  patterns.validate();
}

std::string config_fingerprint(const ProbeConfig& cfg) {
  // max_pages is deliberately absent: a truncated crawl may be resumed with a
  // larger page budget.
  const json doc = {
      {"seed", cfg.seed.title},
      {"full_name", cfg.patterns.full_name},
      {"short_name", cfg.patterns.short_name},
      {"initials_forms", cfg.patterns.initials_forms},
      {"anchor_terms", cfg.patterns.anchor_terms},
      {"bare_surname", cfg.patterns.match_bare_surname_in_bib},
      {"max_links_per_page", cfg.limits.max_links_per_page},
      {"expand_endnotes", cfg.expand_endnotes},
      {"recognized_sections", cfg.recognized_sections},
  };
  return doc.dump();
}

// ---------------------------------------------------------------------------
// Prober

Prober::Prober(ProbeConfig cfg, ContentSource& source, Timestamp started_at, WarningSink warn)
    : cfg_(std::move(cfg)), source_(source), warn_(std::move(warn)) {
  cfg_.validate();
  analysis_.recognized_sections = cfg_.recognized_sections;
  state_.started_at = started_at;

  RawPage raw;
  try {
    raw = source_.fetch(cfg_.seed);
  } catch (const PageNotFound& e) {
    throw SeedNotFound(fmt::format("seed '{}' not found: {}", cfg_.seed.title, e.what()));
  } catch (const RedirectLoop& e) {
    throw SeedNotFound(fmt::format("seed '{}' does not resolve: {}", cfg_.seed.title, e.what()));
  }
  const auto content = parse_page(raw, analysis_);
  const std::string seed_title = raw.ref.title;
  if (seed_title != cfg_.seed.title) aliases_[cfg_.seed.title] = seed_title;

  const auto mentions = count_mentions(content.bibliography, cfg_.patterns);
  state_.graph.add_node(seed_title, NodeStatus::seed, mentions);
  if (mentions >= 1) state_.mentions.push_back({seed_title, mentions});
  state_.trace.seed = seed_title;
  state_.trace.seed_mentions = mentions;
  fetched_.insert(seed_title);
  expand(seed_title, content.links);
}

Prober::Prober(const Checkpoint& checkpoint, ProbeConfig cfg, ContentSource& source, WarningSink warn)
    : cfg_(std::move(cfg)), source_(source), warn_(std::move(warn)) {
  cfg_.validate();
  if (checkpoint.config_fingerprint != config_fingerprint(cfg_)) {
    throw CheckpointCorrupt(fmt::format("checkpoint belongs to a different probe configuration (expected seed '{}')",
                                        cfg_.seed.title));
  }
  analysis_.recognized_sections = cfg_.recognized_sections;
  state_ = checkpoint.state;
  pending_ = checkpoint.pending;
  fetched_ = checkpoint.fetched;
  aliases_ = checkpoint.aliases;
}

void Prober::warn(std::string message) {
  if (warn_) warn_(message);
  state_.warnings.push_back(std::move(message));
}

std::string Prober::resolve(const std::string& title) const {
  std::string t = title;
  // Alias chains are short (bounded by the redirect depth); guard anyway.
  for (int i = 0; i <= kMaxRedirectDepth + 1; ++i) {
    const auto it = aliases_.find(t);
    if (it == aliases_.end()) break;
    t = it->second;
  }
  return t;
}

void Prober::expand(const std::string& from, const std::vector<PageRef>& links) {
  std::size_t count = links.size();
  if (cfg_.limits.max_links_per_page != 0 && count > cfg_.limits.max_links_per_page) {
    count = cfg_.limits.max_links_per_page;
    state_.links_truncated = true;
    warn(fmt::format("page '{}' has {} links; keeping the first {}", from, links.size(), count));
  }
  for (std::size_t i = 0; i < count; ++i) {
    const auto target = resolve(links[i].title);
    if (target == from) continue;
    if (state_.graph.add_node(target)) {
      pending_.push_back(target);
      state_.graph.add_edge(from, target, EdgeKind::forward);
    } else {
      state_.graph.add_edge(from, target, EdgeKind::back);
    }
  }
}

bool Prober::finished() const {
  const bool work_left = std::any_of(pending_.begin(), pending_.end(), [&](const std::string& t) {
    return !fetched_.contains(t) && state_.graph.contains(t);
  });
  if (!work_left) return true;
  return cfg_.limits.max_pages != 0 && state_.fetches >= cfg_.limits.max_pages;
}

bool Prober::step() {
  while (!pending_.empty() && (fetched_.contains(pending_.front()) || !state_.graph.contains(pending_.front()))) {
    pending_.pop_front();
  }
  if (pending_.empty()) return false;
  if (cfg_.limits.max_pages != 0 && state_.fetches >= cfg_.limits.max_pages) {
    state_.truncated = true;
    return false;
  }

  std::string title = pending_.front();
  pending_.pop_front();

  std::optional<RawPage> raw;
  try {
    raw = source_.fetch(PageRef(title));
  } catch (const Error& e) {
    warn(fmt::format("fetch of '{}' failed: {}", title, e.what()));
  }

  if (raw && raw->ref.title != title) {
    const std::string canonical = raw->ref.title;
    aliases_[title] = canonical;
    const bool known = state_.graph.contains(canonical);
    state_.graph.merge_alias(title, canonical);
    if (known && fetched_.contains(canonical)) {
      // Revisit through a redirect: the links already point at the fetched node.
      fetched_.insert(title);
      return true;
    }
    fetched_.insert(title);
    title = canonical;
  }
  fetched_.insert(title);
  ++state_.fetches;

  std::optional<PageContent> content;
  if (raw) {
    try {
      content = parse_page(*raw, analysis_);
    } catch (const ParseError& e) {
      warn(fmt::format("page '{}' could not be parsed: {}", title, e.what()));
    }
  }

  TraceEvent event;
  event.step = state_.trace.events.size();
  event.title = title;
  auto& node = state_.graph.at(title);
  if (!raw) event.note = "unavailable";

  if (!content || !contains_anchor(*content, cfg_.patterns)) {
    node.status = NodeStatus::leaf;
    node.mentions.reset();
    event.sign = '-';
  } else {
    const auto mentions = count_mentions(content->bibliography, cfg_.patterns);
    node.mentions = mentions;
    if (mentions >= 1) {
      node.status = NodeStatus::expanded;
      event.sign = '+';
      state_.mentions.push_back({title, mentions});
      expand(title, content->links);
    } else {
      node.status = NodeStatus::endnote;
      event.sign = '-';
      if (cfg_.expand_endnotes) expand(title, content->links);
    }
  }
  state_.trace.events.push_back(std::move(event));
  return true;
}

void Prober::run(std::optional<std::size_t> stop_after) {
  const std::size_t start = state_.fetches;
  while (!stop_after || state_.fetches - start < *stop_after) {
    if (!step()) break;
  }
}

Checkpoint Prober::checkpoint() const {
  Checkpoint cp;
  cp.config_fingerprint = config_fingerprint(cfg_);
  cp.state = state_;
  cp.pending = pending_;
  cp.fetched = fetched_;
  cp.aliases = aliases_;
  return cp;
}

ProbeResult probe(const ProbeConfig& cfg, ContentSource& source, Timestamp started_at, WarningSink warn) {
  Prober prober(cfg, source, started_at, std::move(warn));
  prober.run();
  return prober.result();
}

ProbeResult resume(const Checkpoint& checkpoint, const ProbeConfig& cfg, ContentSource& source, WarningSink warn) {
  Prober prober(checkpoint, cfg, source, std::move(warn));
  prober.run();
  return prober.result();
}

// ---------------------------------------------------------------------------
// Checkpoint serialization

namespace {

json optional_count(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string Checkpoint::to_json() const {
  json nodes = json::array();
  for (const auto& n : state.graph.nodes()) {
    nodes.push_back({{"title", n.title},
                     {"discovery_index", n.discovery_index},
                     {"status", to_string(n.status)},
                     {"mentions", optional_count(n.mentions)}});
  }
  json edges = json::array();
  for (const auto& e : state.graph.edges()) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"kind", to_string(e.kind)}});
  }
  json mentions = json::array();
  for (const auto& m : state.mentions) mentions.push_back({{"title", m.title}, {"mentions", m.mentions}});
  json events = json::array();
  for (const auto& e : state.trace.events) {
    events.push_back({{"step", e.step},
                      {"title", e.title},
                      {"sign", std::string(1, e.sign)},
                      {"note", e.note ? json(*e.note) : json(nullptr)}});
  }
  const json doc = {
      {"kind", "wikiindex.checkpoint"},
      {"version", kVersion},
      {"config", config_fingerprint},
      {"graph", {{"nodes", nodes}, {"edges", edges}, {"next_discovery_index", state.graph.next_discovery_index()}}},
      {"mentions", mentions},
      {"trace", {{"seed", state.trace.seed}, {"seed_mentions", state.trace.seed_mentions}, {"events", events}}},
      {"truncated", state.truncated},
      {"links_truncated", state.links_truncated},
      {"warnings", state.warnings},
      {"fetches", state.fetches},
      {"started_at", to_unix_seconds(state.started_at)},
      {"pending", pending},
      {"fetched", fetched},
      {"aliases", aliases},
  };
  return doc.dump(2) + "\n";
}

Checkpoint Checkpoint::from_json(std::string_view text) {
  const auto doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw CheckpointCorrupt("checkpoint is not valid JSON");
  try {
    if (doc.at("kind").get<std::string>() != "wikiindex.checkpoint") {
      throw CheckpointCorrupt("not a wikiindex checkpoint");
    }
    if (doc.at("version").get<int>() != kVersion) {
      throw CheckpointCorrupt(fmt::format("unsupported checkpoint version {}", doc.at("version").dump()));
    }
    Checkpoint cp;
    cp.config_fingerprint = doc.at("config").get<std::string>();
    const auto& graph = doc.at("graph");
    for (const auto& n : graph.at("nodes")) {
      std::optional<std::size_t> mentions;
      if (!n.at("mentions").is_null()) mentions = n.at("mentions").get<std::size_t>();
      if (!cp.state.graph.add_node(n.at("title").get<std::string>(),
                                   parse_node_status(n.at("status").get<std::string>()), mentions,
                                   n.at("discovery_index").get<std::size_t>())) {
        throw CheckpointCorrupt("duplicate node in checkpoint");
      }
    }
    cp.state.graph.set_next_discovery_index(graph.at("next_discovery_index").get<std::size_t>());
    for (const auto& e : graph.at("edges")) {
      cp.state.graph.add_edge(e.at("from").get<std::string>(), e.at("to").get<std::string>(),
                              parse_edge_kind(e.at("kind").get<std::string>()));
    }
    for (const auto& m : doc.at("mentions")) {
      cp.state.mentions.push_back({m.at("title").get<std::string>(), m.at("mentions").get<std::size_t>()});
    }
    const auto& trace = doc.at("trace");
    cp.state.trace.seed = trace.at("seed").get<std::string>();
    cp.state.trace.seed_mentions = trace.at("seed_mentions").get<std::size_t>();
    for (const auto& e : trace.at("events")) {
      TraceEvent ev;
      ev.step = e.at("step").get<std::size_t>();
      ev.title = e.at("title").get<std::string>();
      const auto sign = e.at("sign").get<std::string>();
      if (sign != "+" && sign != "-") throw CheckpointCorrupt("bad trace sign");
      ev.sign = sign[0];
      if (!e.at("note").is_null()) ev.note = e.at("note").get<std::string>();
      cp.state.trace.events.push_back(std::move(ev));
    }
    cp.state.truncated = doc.at("truncated").get<bool>();
    cp.state.links_truncated = doc.at("links_truncated").get<bool>();
    cp.state.warnings = doc.at("warnings").get<std::vector<std::string>>();
    cp.state.fetches = doc.at("fetches").get<std::size_t>();
    cp.state.started_at = from_unix_seconds(doc.at("started_at").get<std::int64_t>());
    for (const auto& p : doc.at("pending")) cp.pending.push_back(p.get<std::string>());
    cp.fetched = doc.at("fetched").get<std::set<std::string>>();
    cp.aliases = doc.at("aliases").get<std::map<std::string, std::string>>();
    return cp;
  } catch (const json::exception& e) {
    throw CheckpointCorrupt(fmt::format("checkpoint is malformed: {}", e.what()));
  } catch (const InputError& e) {
    throw CheckpointCorrupt(fmt::format("checkpoint is inconsistent: {}", e.what()));
  }
}

}  // namespace wikiindex
