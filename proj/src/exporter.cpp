#include "wikiindex/exporter.hpp"

#include <ctime>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <map>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <fmt/format.h>

#include "json.hpp"
#include "wikiindex/csv.hpp"
#include "wikiindex/errors.hpp"

namespace wikiindex {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;
using nlohmann::json;

// ---------------------------------------------------------------------------
// Files

void write_file(const fs::path& path, std::string_view bytes) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// ---------------------------------------------------------------------------
// Graph formats

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "gexf") return GraphFormat::gexf;
  if (name == "graphml") return GraphFormat::graphml;
  if (name == "csv" || name == "edge-csv") return GraphFormat::edge_csv;
  throw UnsupportedFormat(fmt::format("unsupported graph format '{}' (expected gexf, graphml or edge-csv)", name));
}

GraphFormat graph_format_for(const fs::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".gexf") return GraphFormat::gexf;
  if (ext == ".graphml") return GraphFormat::graphml;
  if (ext == ".csv") return GraphFormat::edge_csv;
  throw UnsupportedFormat(fmt::format("cannot infer graph format from '{}'", path.string()));
}

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::unordered_map<std::string, std::size_t> node_positions(const DomainGraph& g) {
  std::unordered_map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < g.nodes().size(); ++i) pos.emplace(g.nodes()[i].title, i);
  return pos;
}

pt::ptree parse_xml(std::string_view text) {
  std::istringstream in{std::string(text)};
  pt::ptree tree;
  try {
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw InputError(fmt::format("malformed XML: {}", e.what()));
  }
  return tree;
}

std::string attr(const pt::ptree& node, const std::string& name) {
  const auto v = node.get_optional<std::string>("<xmlattr>." + name);
  if (!v) throw InputError(fmt::format("XML element lacks attribute '{}'", name));
  return *v;
}

std::size_t to_count(const std::string& s) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != s.size()) throw InputError(fmt::format("'{}' is not a count", s));
    return static_cast<std::size_t>(v);
  } catch (const std::logic_error&) {
    throw InputError(fmt::format("'{}' is not a count", s));
  }
}

struct NodeAttrs {
  std::string title;
  std::map<std::string, std::string> values;
};

// Shared tail of the XML readers: rebuild nodes (discovery order as listed)
// and edges from id-keyed records.
DomainGraph assemble(const std::vector<std::pair<std::string, NodeAttrs>>& nodes,
                     const std::vector<std::tuple<std::string, std::string, std::string>>& edges) {
  DomainGraph g;
  std::map<std::string, std::string> title_of;
  for (const auto& [id, n] : nodes) {
    const auto status_it = n.values.find("status");
    const auto status = status_it == n.values.end() ? NodeStatus::undiscovered : parse_node_status(status_it->second);
    std::optional<std::size_t> mentions;
    if (const auto it = n.values.find("mentions"); it != n.values.end()) mentions = to_count(it->second);
    std::optional<std::size_t> discovery;
    if (const auto it = n.values.find("discovery_index"); it != n.values.end()) discovery = to_count(it->second);
    if (!title_of.emplace(id, n.title).second) throw InputError(fmt::format("duplicate node id '{}'", id));
    if (!g.add_node(n.title, status, mentions, discovery)) {
      throw InputError(fmt::format("duplicate node '{}'", n.title));
    }
  }
  for (const auto& [source, target, kind] : edges) {
    const auto s = title_of.find(source);
    const auto t = title_of.find(target);
    if (s == title_of.end() || t == title_of.end()) {
      throw InputError(fmt::format("edge {} -> {} references an unknown node id", source, target));
    }
    g.add_edge(s->second, t->second, kind.empty() ? EdgeKind::forward : parse_edge_kind(kind));
  }
  return g;
}

}  // namespace

std::string graph_to_gexf(const DomainGraph& g) {
  const auto pos = node_positions(g);
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<gexf xmlns=\"http://gexf.net/1.2\" version=\"1.2\">\n";
  out += "  <meta>\n    <creator>wikiindex</creator>\n    <description>subject-domain concept graph</description>\n  </meta>\n";
  out += "  <graph mode=\"static\" defaultedgetype=\"directed\">\n";
  out += "    <attributes class=\"node\">\n";
  out += "      <attribute id=\"0\" title=\"status\" type=\"string\"/>\n";
  out += "      <attribute id=\"1\" title=\"mentions\" type=\"integer\"/>\n";
  out += "      <attribute id=\"2\" title=\"discovery_index\" type=\"integer\"/>\n";
  out += "    </attributes>\n";
  out += "    <attributes class=\"edge\">\n";
  out += "      <attribute id=\"0\" title=\"kind\" type=\"string\"/>\n";
  out += "    </attributes>\n";
  out += "    <nodes>\n";
  for (std::size_t i = 0; i < g.nodes().size(); ++i) {
    const auto& n = g.nodes()[i];
    out += fmt::format("      <node id=\"n{}\" label=\"{}\">\n        <attvalues>\n", i, xml_escape(n.title));
    out += fmt::format("          <attvalue for=\"0\" value=\"{}\"/>\n", to_string(n.status));
    if (n.mentions) out += fmt::format("          <attvalue for=\"1\" value=\"{}\"/>\n", *n.mentions);
    out += fmt::format("          <attvalue for=\"2\" value=\"{}\"/>\n", n.discovery_index);
    out += "        </attvalues>\n      </node>\n";
  }
  out += "    </nodes>\n    <edges>\n";
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto& e = g.edges()[i];
    out += fmt::format(
        "      <edge id=\"e{}\" source=\"n{}\" target=\"n{}\">\n        <attvalues>\n"
        "          <attvalue for=\"0\" value=\"{}\"/>\n        </attvalues>\n      </edge>\n",
        i, pos.at(e.from), pos.at(e.to), to_string(e.kind));
  }
  out += "    </edges>\n  </graph>\n</gexf>\n";
  return out;
}

DomainGraph graph_from_gexf(std::string_view text) {
  const auto tree = parse_xml(text);
  const auto root = tree.get_child_optional("gexf");
  if (!root) throw InputError("not a GEXF document");
  const auto graph = root->get_child_optional("graph");
  if (!graph) throw InputError("GEXF document has no graph");

  std::map<std::string, std::string> node_attr_names;
  std::map<std::string, std::string> edge_attr_names;
  for (const auto& [tag, child] : *graph) {
    if (tag != "attributes") continue;
    const auto cls = child.get<std::string>("<xmlattr>.class", "node");
    for (const auto& [atag, a] : child) {
      if (atag != "attribute") continue;
      (cls == "edge" ? edge_attr_names : node_attr_names)[attr(a, "id")] = attr(a, "title");
    }
  }
  auto read_values = [](const pt::ptree& element, const std::map<std::string, std::string>& names) {
    std::map<std::string, std::string> values;
    if (const auto attvalues = element.get_child_optional("attvalues")) {
      for (const auto& [tag, v] : *attvalues) {
        if (tag != "attvalue") continue;
        const auto it = names.find(attr(v, "for"));
        if (it != names.end()) values[it->second] = attr(v, "value");
      }
    }
    return values;
  };

  std::vector<std::pair<std::string, NodeAttrs>> nodes;
  if (const auto ns = graph->get_child_optional("nodes")) {
    for (const auto& [tag, n] : *ns) {
      if (tag != "node") continue;
      const auto id = attr(n, "id");
      nodes.push_back({id, NodeAttrs{n.get<std::string>("<xmlattr>.label", id), read_values(n, node_attr_names)}});
    }
  }
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  if (const auto es = graph->get_child_optional("edges")) {
    for (const auto& [tag, e] : *es) {
      if (tag != "edge") continue;
      auto values = read_values(e, edge_attr_names);
      edges.emplace_back(attr(e, "source"), attr(e, "target"), values["kind"]);
    }
  }
  return assemble(nodes, edges);
}

std::string graph_to_graphml(const DomainGraph& g) {
  const auto pos = node_positions(g);
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
  out += "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n";
  out += "  <key id=\"status\" for=\"node\" attr.name=\"status\" attr.type=\"string\"/>\n";
  out += "  <key id=\"mentions\" for=\"node\" attr.name=\"mentions\" attr.type=\"int\"/>\n";
  out += "  <key id=\"discovery_index\" for=\"node\" attr.name=\"discovery_index\" attr.type=\"int\"/>\n";
  out += "  <key id=\"kind\" for=\"edge\" attr.name=\"kind\" attr.type=\"string\"/>\n";
  out += "  <graph id=\"G\" edgedefault=\"directed\">\n";
  for (std::size_t i = 0; i < g.nodes().size(); ++i) {
    const auto& n = g.nodes()[i];
    out += fmt::format("    <node id=\"n{}\">\n", i);
    out += fmt::format("      <data key=\"label\">{}</data>\n", xml_escape(n.title));
    out += fmt::format("      <data key=\"status\">{}</data>\n", to_string(n.status));
    if (n.mentions) out += fmt::format("      <data key=\"mentions\">{}</data>\n", *n.mentions);
    out += fmt::format("      <data key=\"discovery_index\">{}</data>\n", n.discovery_index);
    out += "    </node>\n";
  }
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto& e = g.edges()[i];
    out += fmt::format("    <edge id=\"e{}\" source=\"n{}\" target=\"n{}\">\n", i, pos.at(e.from), pos.at(e.to));
    out += fmt::format("      <data key=\"kind\">{}</data>\n    </edge>\n", to_string(e.kind));
  }
  out += "  </graph>\n</graphml>\n";
  return out;
}

DomainGraph graph_from_graphml(std::string_view text) {
  const auto tree = parse_xml(text);
  const auto root = tree.get_child_optional("graphml");
  if (!root) throw InputError("not a GraphML document");
  std::map<std::string, std::string> key_names;
  for (const auto& [tag, k] : *root) {
    if (tag == "key") key_names[attr(k, "id")] = k.get<std::string>("<xmlattr>.attr.name", attr(k, "id"));
  }
  const auto graph = root->get_child_optional("graph");
  if (!graph) throw InputError("GraphML document has no graph");

  auto read_data = [&](const pt::ptree& element) {
    std::map<std::string, std::string> values;
    for (const auto& [tag, d] : element) {
      if (tag != "data") continue;
      const auto key = attr(d, "key");
      const auto it = key_names.find(key);
      values[it == key_names.end() ? key : it->second] = d.get_value<std::string>();
    }
    return values;
  };

  std::vector<std::pair<std::string, NodeAttrs>> nodes;
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  for (const auto& [tag, element] : *graph) {
    if (tag == "node") {
      const auto id = attr(element, "id");
      auto values = read_data(element);
      auto title = values.contains("label") ? values["label"] : id;
      values.erase("label");
      nodes.push_back({id, NodeAttrs{std::move(title), std::move(values)}});
    } else if (tag == "edge") {
      auto values = read_data(element);
      edges.emplace_back(attr(element, "source"), attr(element, "target"), values["kind"]);
    }
  }
  return assemble(nodes, edges);
}

std::string graph_to_edge_csv(const DomainGraph& g) {
  std::string out = "from,to,kind\n";
  for (const auto& e : g.edges()) {
    out += csv::format_row({e.from, e.to, std::string(to_string(e.kind))});
    out.push_back('\n');
  }
  return out;
}

DomainGraph graph_from_edge_csv(std::string_view text) {
  const auto rows = csv::parse(text);
  if (rows.empty() || rows.front() != csv::Row{"from", "to", "kind"}) {
    throw InputError("edge CSV must start with the header 'from,to,kind'");
  }
  DomainGraph g;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != 3) throw InputError(fmt::format("edge CSV row {} has {} fields, expected 3", i + 1, row.size()));
    g.add_node(row[0]);
    g.add_node(row[1]);
    g.add_edge(row[0], row[1], parse_edge_kind(row[2]));
  }
  return g;
}

void export_graph(const DomainGraph& g, GraphFormat format, const fs::path& path) {
  switch (format) {
    case GraphFormat::gexf: write_file(path, graph_to_gexf(g)); return;
    case GraphFormat::graphml: write_file(path, graph_to_graphml(g)); return;
    case GraphFormat::edge_csv: write_file(path, graph_to_edge_csv(g)); return;
  }
  throw UnsupportedFormat("unknown graph format");
}

DomainGraph import_graph(const fs::path& path, std::optional<GraphFormat> format) {
  const auto fmt_ = format.value_or(graph_format_for(path));
  const auto text = read_file(path);
  switch (fmt_) {
    case GraphFormat::gexf: return graph_from_gexf(text);
    case GraphFormat::graphml: return graph_from_graphml(text);
    case GraphFormat::edge_csv: return graph_from_edge_csv(text);
  }
  throw UnsupportedFormat("unknown graph format");
}

// ---------------------------------------------------------------------------
// Reports

ReportConfig echo_config(const ProbeConfig& cfg, std::string source_description) {
  ReportConfig c;
  c.seed = cfg.seed.title;
  c.full_name = cfg.patterns.full_name;
  c.short_name = cfg.patterns.short_name;
  c.initials_forms = cfg.patterns.initials_forms;
  c.anchor_terms = cfg.patterns.anchor_terms;
  c.bare_surname = cfg.patterns.match_bare_surname_in_bib;
  c.max_pages = cfg.limits.max_pages;
  c.max_links_per_page = cfg.limits.max_links_per_page;
  c.expand_endnotes = cfg.expand_endnotes;
  c.recognized_sections = cfg.recognized_sections;
  c.source = std::move(source_description);
  return c;
}

void ProbeReport::validate() const {
  if (index.n != ref_sequence.size()) {
    throw InputError(fmt::format("report N ({}) disagrees with its ref sequence length ({})", index.n,
                                 ref_sequence.size()));
  }
  if (index.wh > index.n) throw InputError("report WH exceeds N");
  if (ref_sequence.counts.size() != ref_sequence.source_titles.size()) {
    throw InputError("report ref sequence titles and counts differ in length");
  }
}

ProbeReport make_report(const ProbeConfig& cfg, const ProbeResult& result, const GrowthFunction& growth,
                        std::string source_description, Timestamp finished_at, std::size_t top_k) {
  ProbeReport r;
  r.config = echo_config(cfg, std::move(source_description));
  r.ref_sequence = build_ref_sequence(result.mentions);
  r.index = compute_wi(compute_wh(r.ref_sequence), r.ref_sequence.size(), growth);
  if (!result.graph.empty()) r.metrics = compute_metrics(result.graph, top_k);
  r.graph = result.graph;
  r.trace = result.trace;
  r.started_at = result.started_at;
  r.finished_at = finished_at;
  r.truncated = result.truncated;
  r.links_truncated = result.links_truncated;
  r.warnings = result.warnings;
  return r;
}

namespace {

Timestamp parse_iso8601(const std::string& s) {
  std::tm tm{};
  std::istringstream in(s);
  in >> std::get_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  if (in.fail()) throw InputError(fmt::format("bad timestamp '{}'", s));
  return from_unix_seconds(static_cast<std::int64_t>(timegm(&tm)));
}

json metrics_to_json(const GraphMetrics& m) {
  json top = json::array();
  for (const auto& t : m.top_nodes) top.push_back({{"title", t.title}, {"degree", t.degree}});
  return {{"node_count", m.node_count},
          {"edge_count", m.edge_count},
          {"average_degree", m.average_degree},
          {"diameter", m.diameter},
          {"largest_component_size", m.largest_component_size},
          {"component_count", m.component_count},
          {"average_clustering", m.average_clustering},
          {"top_nodes", top}};
}

GraphMetrics metrics_from_json(const json& j) {
  GraphMetrics m;
  m.node_count = j.at("node_count").get<std::size_t>();
  m.edge_count = j.at("edge_count").get<std::size_t>();
  m.average_degree = j.at("average_degree").get<double>();
  m.diameter = j.at("diameter").get<std::size_t>();
  m.largest_component_size = j.at("largest_component_size").get<std::size_t>();
  m.component_count = j.at("component_count").get<std::size_t>();
  m.average_clustering = j.at("average_clustering").get<double>();
  for (const auto& t : j.at("top_nodes")) m.top_nodes.push_back({t.at("title"), t.at("degree")});
  return m;
}

}  // namespace

std::string report_to_json(const ProbeReport& r) {
  json nodes = json::array();
  for (const auto& n : r.graph.nodes()) {
    nodes.push_back({{"title", n.title},
                     {"discovery_index", n.discovery_index},
                     {"status", to_string(n.status)},
                     {"mentions", n.mentions ? json(*n.mentions) : json(nullptr)}});
  }
  json edges = json::array();
  for (const auto& e : r.graph.edges()) edges.push_back({{"from", e.from}, {"to", e.to}, {"kind", to_string(e.kind)}});
  json refs = json::array();
  for (std::size_t i = 0; i < r.ref_sequence.size(); ++i) {
    refs.push_back({{"title", r.ref_sequence.source_titles[i]}, {"mentions", r.ref_sequence.counts[i]}});
  }
  json events = json::array();
  for (const auto& e : r.trace.events) {
    events.push_back({{"step", e.step},
                      {"title", e.title},
                      {"sign", std::string(1, e.sign)},
                      {"note", e.note ? json(*e.note) : json(nullptr)}});
  }
  const auto& c = r.config;
  const json doc = {
      {"schema", "wikiindex.report"},
      {"schema_version", ProbeReport::kSchemaVersion},
      {"config",
       {{"seed", c.seed},
        {"full_name", c.full_name},
        {"short_name", c.short_name},
        {"initials_forms", c.initials_forms},
        {"anchor_terms", c.anchor_terms},
        {"bare_surname", c.bare_surname},
        {"max_pages", c.max_pages},
        {"max_links_per_page", c.max_links_per_page},
        {"expand_endnotes", c.expand_endnotes},
        {"recognized_sections", c.recognized_sections},
        {"source", c.source}}},
      {"index",
       {{"N", r.index.n},
        {"WH", r.index.wh},
        {"f_of_N", r.index.f_of_n},
        {"wi_raw", r.index.wi_raw},
        {"wi_rounded", r.index.wi_rounded},
        {"growth", r.index.growth}}},
      {"ref_sequence", refs},
      {"metrics", r.metrics ? metrics_to_json(*r.metrics) : json(nullptr)},
      {"graph", {{"nodes", nodes}, {"edges", edges}}},
      {"trace", {{"seed", r.trace.seed}, {"seed_mentions", r.trace.seed_mentions}, {"events", events}}},
      {"timestamps", {{"started_at", format_iso8601(r.started_at)}, {"finished_at", format_iso8601(r.finished_at)}}},
      {"truncated", r.truncated},
      {"links_truncated", r.links_truncated},
      {"warnings", r.warnings},
  };
  return doc.dump(2) + "\n";
}

ProbeReport report_from_json(std::string_view text) {
  const auto doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw InputError("report is not valid JSON");
  try {
    if (doc.at("schema").get<std::string>() != "wikiindex.report") throw InputError("not a wikiindex report");
    if (doc.at("schema_version").get<int>() != ProbeReport::kSchemaVersion) {
      throw InputError(fmt::format("unsupported report schema version {}", doc.at("schema_version").dump()));
    }
    ProbeReport r;
    const auto& c = doc.at("config");
    r.config.seed = c.at("seed");
    r.config.full_name = c.at("full_name");
    r.config.short_name = c.at("short_name");
    r.config.initials_forms = c.at("initials_forms").get<std::vector<std::string>>();
    r.config.anchor_terms = c.at("anchor_terms").get<std::vector<std::string>>();
    r.config.bare_surname = c.at("bare_surname");
    r.config.max_pages = c.at("max_pages");
    r.config.max_links_per_page = c.at("max_links_per_page");
    r.config.expand_endnotes = c.at("expand_endnotes");
    r.config.recognized_sections = c.at("recognized_sections").get<std::vector<std::string>>();
    r.config.source = c.at("source");

    const auto& idx = doc.at("index");
    r.index.n = idx.at("N");
    r.index.wh = idx.at("WH");
    r.index.f_of_n = idx.at("f_of_N");
    r.index.wi_raw = idx.at("wi_raw");
    r.index.wi_rounded = idx.at("wi_rounded");
    r.index.growth = idx.at("growth");

    for (const auto& e : doc.at("ref_sequence")) {
      r.ref_sequence.source_titles.push_back(e.at("title"));
      r.ref_sequence.counts.push_back(e.at("mentions"));
    }
    if (!doc.at("metrics").is_null()) r.metrics = metrics_from_json(doc.at("metrics"));

    const auto& graph = doc.at("graph");
    for (const auto& n : graph.at("nodes")) {
      std::optional<std::size_t> mentions;
      if (!n.at("mentions").is_null()) mentions = n.at("mentions").get<std::size_t>();
      if (!r.graph.add_node(n.at("title"), parse_node_status(n.at("status").get<std::string>()), mentions,
                            n.at("discovery_index").get<std::size_t>())) {
        throw InputError("duplicate node in report graph");
      }
    }
    for (const auto& e : graph.at("edges")) {
      r.graph.add_edge(e.at("from").get<std::string>(), e.at("to").get<std::string>(),
                       parse_edge_kind(e.at("kind").get<std::string>()));
    }

    const auto& trace = doc.at("trace");
    r.trace.seed = trace.at("seed");
    r.trace.seed_mentions = trace.at("seed_mentions");
    for (const auto& e : trace.at("events")) {
      const auto sign = e.at("sign").get<std::string>();
      if (sign != "+" && sign != "-") throw InputError("bad trace sign in report");
      std::optional<std::string> note;
      if (e.contains("note") && !e.at("note").is_null()) note = e.at("note").get<std::string>();
      r.trace.events.push_back(TraceEvent{e.at("step"), e.at("title"), sign[0], std::move(note)});
    }
    r.started_at = parse_iso8601(doc.at("timestamps").at("started_at"));
    r.finished_at = parse_iso8601(doc.at("timestamps").at("finished_at"));
    r.truncated = doc.at("truncated");
    r.links_truncated = doc.at("links_truncated");
    r.warnings = doc.at("warnings").get<std::vector<std::string>>();
    r.validate();
    return r;
  } catch (const json::exception& e) {
    throw InputError(fmt::format("report is malformed: {}", e.what()));
  }
}

std::string format_metrics(const GraphMetrics& m, std::string_view heading) {
  std::string out;
  if (!heading.empty()) out += fmt::format("{}:\n", heading);
  out += fmt::format("- nodes: {}\n", m.node_count);
  out += fmt::format("- edges: {}\n", m.edge_count);
  out += fmt::format("- average degree of a node: {:.2f}\n", m.average_degree);
  if (m.component_count > 1) {
    out += fmt::format("- graph diameter: {} (largest component: {} of {} nodes, {} components)\n", m.diameter,
                       m.largest_component_size, m.node_count, m.component_count);
  } else {
    out += fmt::format("- graph diameter: {}\n", m.diameter);
  }
  out += fmt::format("- average clustering: {:.2f}\n", m.average_clustering);
  if (!m.top_nodes.empty()) {
    out += "- the largest nodes:\n";
    std::size_t width = std::string_view("Concept").size();
    for (const auto& t : m.top_nodes) width = std::max(width, t.title.size());
    out += fmt::format("  {:<{}}  {}\n", "Concept", width, "Node degree");
    for (const auto& t : m.top_nodes) out += fmt::format("  {:<{}}  {}\n", t.title, width, t.degree);
  }
  return out;
}

std::string report_to_text(const ProbeReport& r) {
  std::string out = fmt::format("Seed: {} (source {})\n", r.config.seed, r.config.source);
  out += fmt::format("Seed bibliography mentions: {}\n", r.trace.seed_mentions);
  out += fmt::format("Pages fetched: {}{}\n", r.trace.events.size(), r.truncated ? " (truncated by page limit)" : "");
  if (r.metrics) {
    out += format_metrics(*r.metrics, "Subject-domain network");
  } else {
    out += "Subject-domain network: empty\n";
  }
  out += fmt::format("{}, ({} articles with the references, WH = {}, f = {}, raw {:.4f})\n", format_wi_line(r.index),
                     r.index.n, r.index.wh, r.index.growth, r.index.wi_raw);
  for (const auto& w : r.warnings) out += fmt::format("warning: {}\n", w);
  return out;
}

void export_report(const ProbeReport& report, ReportFormat format, const fs::path& path) {
  report.validate();
  write_file(path, format == ReportFormat::json ? report_to_json(report) : report_to_text(report));
}

void write_trace(const Trace& trace, const fs::path& path) { write_file(path, format_trace(trace)); }

}  // namespace wikiindex
