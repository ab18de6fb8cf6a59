#include "doctest.h"
#include "temp_dir.hpp"
#include "wikiindex/csv.hpp"
#include "wikiindex/errors.hpp"
#include "wikiindex/exporter.hpp"

using namespace wikiindex;
using testing::TempDir;

namespace {

DomainGraph sample_graph() {
  DomainGraph g;
  g.add_node("Albert_Einstein", NodeStatus::seed, 174);
  g.add_node("Ulm", NodeStatus::expanded, 3);
  g.add_node("Physics", NodeStatus::endnote, 0);
  g.add_node("Caf\xC3\xA9_<&>\"'", NodeStatus::leaf);
  g.add_edge("Albert_Einstein", "Ulm", EdgeKind::forward);
  g.add_edge("Albert_Einstein", "Physics", EdgeKind::forward);
  g.add_edge("Ulm", "Albert_Einstein", EdgeKind::back);
  g.add_edge("Ulm", "Caf\xC3\xA9_<&>\"'", EdgeKind::forward);
  return g;
}

ProbeReport sample_report() {
  ProbeConfig cfg;
  cfg.seed = PageRef("Albert_Einstein");
  cfg.patterns = AuthorPatterns::from_names("Albert Einstein", "Einstein", {"physics"});
  ProbeResult result;
  result.graph = sample_graph();
  result.mentions = {{"Albert_Einstein", 174}, {"Ulm", 3}};
  result.trace = {"Albert_Einstein", 174, {{0, "Ulm", '+', {}}, {1, "Physics", '-', {}}, {2, "Bern", '-', "unavailable"}}};
  result.warnings = {"fetch of 'Bern' failed"};
  result.started_at = from_unix_seconds(1700000000);
  return make_report(cfg, result, GrowthFunction::sqrt(), "fixture:corpus", from_unix_seconds(1700000100));
}

}  // namespace

TEST_CASE("CSV parsing and quoting") {
  const auto rows = csv::parse("a,b\r\n\"x, y\",\"he said \"\"hi\"\"\"\n\"multi\nline\",\n");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == csv::Row{"a", "b"});
  CHECK(rows[1] == csv::Row{"x, y", "he said \"hi\""});
  CHECK(rows[2] == csv::Row{"multi\nline", ""});
  CHECK(csv::parse("").empty());
  CHECK_THROWS_AS(csv::parse("\"open"), InputError);
  CHECK(csv::escape("plain") == "plain");
  CHECK(csv::escape("a,b") == "\"a,b\"");
  CHECK(csv::escape("q\"") == "\"q\"\"\"");
  const csv::Row row{"x", "y,z", "\"", ""};
  CHECK(csv::parse(csv::format_row(row)).front() == row);
}

TEST_CASE("graph formats from names and extensions") {
  CHECK(parse_graph_format("gexf") == GraphFormat::gexf);
  CHECK(parse_graph_format("edge-csv") == GraphFormat::edge_csv);
  CHECK_THROWS_AS(parse_graph_format("dot"), UnsupportedFormat);
  CHECK(graph_format_for("g.graphml") == GraphFormat::graphml);
  CHECK_THROWS_AS(graph_format_for("g.txt"), UnsupportedFormat);
}

TEST_CASE("GEXF and GraphML round-trip every attribute") {
  const auto g = sample_graph();
  const auto gexf = graph_to_gexf(g);
  CHECK(gexf.find("&lt;&amp;&gt;&quot;&apos;") != std::string::npos);
  CHECK(graph_from_gexf(gexf) == g);
  CHECK(graph_to_gexf(graph_from_gexf(gexf)) == gexf);
  const auto graphml = graph_to_graphml(g);
  CHECK(graph_from_graphml(graphml) == g);
  CHECK(graph_to_graphml(graph_from_graphml(graphml)) == graphml);
  // Mentions are omitted for leaves rather than written as zero.
  CHECK_FALSE(graph_from_gexf(gexf).at("Caf\xC3\xA9_<&>\"'").mentions);

  TempDir dir;
  export_graph(g, GraphFormat::gexf, dir / "sub/g.gexf");
  CHECK(import_graph(dir / "sub/g.gexf") == g);
}

TEST_CASE("edge CSV keeps structure") {
  const auto g = sample_graph();
  const auto text = graph_to_edge_csv(g);
  CHECK(text.rfind("from,to,kind\n", 0) == 0);
  const auto back = graph_from_edge_csv(text);
  CHECK(back.edges() == g.edges());
  CHECK_THROWS_AS(graph_from_edge_csv("a,b\n"), InputError);
  CHECK_THROWS_AS(graph_from_edge_csv("from,to,kind\nA,B\n"), InputError);
  CHECK_THROWS_AS(graph_from_edge_csv("from,to,kind\nA,B,sideways\n"), InputError);
}

TEST_CASE("malformed XML is rejected") {
  CHECK_THROWS_AS(graph_from_gexf("<gexf><graph><nodes>"), InputError);
  CHECK_THROWS_AS(graph_from_gexf("<graphml/>"), InputError);
  CHECK_THROWS_AS(graph_from_graphml(R"(<graphml><graph><edge source="n0" target="n9"/></graph></graphml>)"),
                  InputError);
}

TEST_CASE("report JSON round-trips byte for byte") {
  const auto r = sample_report();
  CHECK(r.index.n == 2);
  CHECK(r.index.wh == 2);
  REQUIRE(r.metrics);
  CHECK(r.metrics->node_count == 4);
  const auto text = report_to_json(r);
  CHECK(text.find("\"schema\": \"wikiindex.report\"") != std::string::npos);
  CHECK(text.find("\"started_at\": \"2023-11-14T22:13:20Z\"") != std::string::npos);
  const auto back = report_from_json(text);
  CHECK(report_to_json(back) == text);
  CHECK(back.graph == r.graph);
  CHECK(back.trace == r.trace);
  CHECK(back.config == r.config);
}

TEST_CASE("report validation and errors") {
  auto r = sample_report();
  r.index.n = 5;
  CHECK_THROWS_AS(r.validate(), InputError);
  CHECK_THROWS_AS(report_from_json("[]"), InputError);
  CHECK_THROWS_AS(report_from_json(R"({"schema":"other"})"), InputError);
  auto text = report_to_json(sample_report());
  text.replace(text.find("\"schema_version\": 1"), 19, "\"schema_version\": 2");
  CHECK_THROWS_AS(report_from_json(text), InputError);
}

TEST_CASE("empty probes still make valid reports") {
  ProbeConfig cfg;
  cfg.seed = PageRef("X");
  cfg.patterns = AuthorPatterns::from_names("Xavier Y", "Y");
  ProbeResult empty;
  const auto r = make_report(cfg, empty, GrowthFunction::sqrt(), "fixture:x", {});
  CHECK(r.index.n == 0);
  CHECK(r.index.wi_rounded == 0);
  CHECK_FALSE(r.metrics);
  CHECK(report_to_json(report_from_json(report_to_json(r))) == report_to_json(r));
}

TEST_CASE("text report and metric listing") {
  const auto text = report_to_text(sample_report());
  CHECK(text.find("WI = 2 × 1.41 = 3, (2 articles with the references, WH = 2") != std::string::npos);
  CHECK(text.find("warning: fetch of 'Bern' failed") != std::string::npos);
  GraphMetrics m;
  m.node_count = 10;
  m.edge_count = 8;
  m.average_degree = 1.6;
  m.diameter = 4;
  m.largest_component_size = 7;
  m.component_count = 2;
  m.top_nodes = {{"A", 3}};
  const auto listing = format_metrics(m, "Net");
  CHECK(listing.find("Net:\n") == 0);
  CHECK(listing.find("- average degree of a node: 1.60") != std::string::npos);
  CHECK(listing.find("largest component: 7 of 10 nodes, 2 components") != std::string::npos);
}

TEST_CASE("file helpers report IO errors") {
  CHECK_THROWS_AS(read_file("/nonexistent/dir/file"), IoError);
  CHECK_THROWS_AS(write_file("/proc/nonexistent/file", "x"), IoError);
}
