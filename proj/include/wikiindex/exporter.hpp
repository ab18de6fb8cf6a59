#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wikiindex/graph_metrics.hpp"
#include "wikiindex/sounding_crawler.hpp"
#include "wikiindex/wiki_index.hpp"

namespace wikiindex {

enum class GraphFormat { gexf, graphml, edge_csv };

// "gexf" | "graphml" | "csv" / "edge-csv"; throws UnsupportedFormat.
GraphFormat parse_graph_format(std::string_view name);
// From the file extension (.gexf, .graphml, .csv); throws UnsupportedFormat.
GraphFormat graph_format_for(const std::filesystem::path& path);

std::string graph_to_gexf(const DomainGraph& g);
std::string graph_to_graphml(const DomainGraph& g);
std::string graph_to_edge_csv(const DomainGraph& g);

// Readers accept what the writers produce (and reasonably similar documents).
// Throw InputError on malformed input.
DomainGraph graph_from_gexf(std::string_view text);
DomainGraph graph_from_graphml(std::string_view text);
DomainGraph graph_from_edge_csv(std::string_view text);

void export_graph(const DomainGraph& g, GraphFormat format, const std::filesystem::path& path);
DomainGraph import_graph(const std::filesystem::path& path, std::optional<GraphFormat> format = std::nullopt);

// Echo of the settings a report was produced with.
struct ReportConfig {
  std::string seed;
  std::string full_name;
  std::string short_name;
  std::vector<std::string> initials_forms;
  std::vector<std::string> anchor_terms;
  bool bare_surname = false;
  std::size_t max_pages = 0;
  std::size_t max_links_per_page = 0;
  bool expand_endnotes = false;
  std::vector<std::string> recognized_sections;
  std::string source;

  friend bool operator==(const ReportConfig&, const ReportConfig&) = default;
};

ReportConfig echo_config(const ProbeConfig& cfg, std::string source_description);

struct ProbeReport {
  static constexpr int kSchemaVersion = 1;

  ReportConfig config;
  WikiIndexResult index;
  std::optional<GraphMetrics> metrics;
  RefSequence ref_sequence;
  DomainGraph graph;
  Trace trace;
  Timestamp started_at{};
  Timestamp finished_at{};
  bool truncated = false;
  bool links_truncated = false;
  std::vector<std::string> warnings;

  // Throws InputError if N disagrees with the ref sequence or WH is out of range.
  void validate() const;
};

ProbeReport make_report(const ProbeConfig& cfg, const ProbeResult& result, const GrowthFunction& growth,
                        std::string source_description, Timestamp finished_at, std::size_t top_k = 10);

std::string report_to_json(const ProbeReport& report);
ProbeReport report_from_json(std::string_view text);  // throws InputError
std::string report_to_text(const ProbeReport& report);

// Metric list plus the top-degree table.
std::string format_metrics(const GraphMetrics& m, std::string_view heading = {});

enum class ReportFormat { json, text };

void export_report(const ProbeReport& report, ReportFormat format, const std::filesystem::path& path);
void write_trace(const Trace& trace, const std::filesystem::path& path);

// Writes bytes or throws IoError.
void write_file(const std::filesystem::path& path, std::string_view bytes);
std::string read_file(const std::filesystem::path& path);  // throws IoError

}  // namespace wikiindex
