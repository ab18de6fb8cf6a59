#include "cli.hpp"

#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>
#include <set>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "wikiindex/content_source.hpp"
#include "wikiindex/csv.hpp"
#include "wikiindex/errors.hpp"
#include "wikiindex/exporter.hpp"
#include "wikiindex/graph_metrics.hpp"
#include "wikiindex/sounding_crawler.hpp"
#include "wikiindex/wiki_index.hpp"

namespace wikiindex::cli {

namespace fs = std::filesystem;

namespace {

class ReportMissing : public Error {
  using Error::Error;
};

struct ProbeArgs {
  std::string seed;
  std::string full_name;
  std::string short_name;
  std::vector<std::string> anchors;
  std::vector<std::string> initials;
  bool bare_surname = false;
  std::vector<std::string> sections;
  std::string source;
  std::string cache_dir;
  std::string user_agent;
  double rate_limit = 1.0;
  int timeout_ms = 10000;
  std::size_t max_pages = 0;
  std::size_t max_links = 0;
  bool expand_endnotes = false;
  std::string growth = "sqrt";
  std::vector<std::string> exports;
  std::string out;
  std::string text;
  std::string trace;
  std::string checkpoint;
  std::string resume;
  std::optional<std::size_t> stop_after;
  std::size_t top_k = 10;
};

struct IndexArgs {
  std::string input;
  std::string growth = "sqrt";
};

struct CompareArgs {
  std::string rows;
  std::string csv_out;
  std::string placeholder = "n/a";
};

struct MetricsArgs {
  std::string input;
  std::string format;
  std::size_t top_k = 10;
};

std::string default_cache_dir() {
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return (fs::path(xdg) / "wikiindex").string();
  if (const char* home = std::getenv("HOME"); home && *home) return (fs::path(home) / ".cache" / "wikiindex").string();
  return {};
}

// Fixture runs are reproducible by construction, so their report timestamps
// come from SOURCE_DATE_EPOCH (or the epoch) instead of the wall clock.
Timestamp report_time(SourceMode mode) {
  if (mode == SourceMode::live) return std::chrono::time_point_cast<Timestamp::duration>(SystemClock{}.now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
    try {
      return from_unix_seconds(std::stoll(epoch));
    } catch (const std::exception&) {
      throw ConfigError(fmt::format("SOURCE_DATE_EPOCH '{}' is not an integer", epoch));
    }
  }
  return from_unix_seconds(0);
}

SourceConfig source_config(const ProbeArgs& a) {
  SourceConfig cfg;
  const auto colon = a.source.find(':');
  const auto scheme = a.source.substr(0, colon);
  const auto rest = colon == std::string::npos ? std::string{} : a.source.substr(colon + 1);
  if (scheme == "fixture") {
    if (rest.empty()) throw ConfigError("--source fixture:<path> needs a corpus path");
    cfg.mode = SourceMode::fixture;
    cfg.corpus_path = rest;
  } else if (scheme == "live") {
    cfg.mode = SourceMode::live;
    cfg.base_url = rest.empty() ? std::string(kDefaultLiveEndpoint) : rest;
    cfg.cache_dir = a.cache_dir.empty() ? default_cache_dir() : a.cache_dir;
    cfg.rate_limit = a.rate_limit;
    cfg.request_timeout = std::chrono::milliseconds(a.timeout_ms);
    if (!a.user_agent.empty()) cfg.user_agent = a.user_agent;
  } else {
    throw ConfigError(fmt::format("--source must be live:<url> or fixture:<path>, got '{}'", a.source));
  }
  cfg.validate();
  return cfg;
}

ProbeConfig probe_config(const ProbeArgs& a) {
  ProbeConfig cfg;
  cfg.seed = PageRef(a.seed);
  const auto full = a.full_name.empty() ? cfg.seed.title : a.full_name;
  cfg.patterns = AuthorPatterns::from_names(full, a.short_name, a.anchors);
  if (!a.initials.empty()) cfg.patterns.initials_forms = a.initials;
  cfg.patterns.match_bare_surname_in_bib = a.bare_surname;
  if (!a.sections.empty()) cfg.recognized_sections = a.sections;
  cfg.limits.max_pages = a.max_pages;
  cfg.limits.max_links_per_page = a.max_links;
  cfg.expand_endnotes = a.expand_endnotes;
  cfg.validate();
  return cfg;
}

std::pair<GraphFormat, fs::path> parse_export(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos || colon + 1 == spec.size()) {
    throw ConfigError(fmt::format("--export expects <format>:<path>, got '{}'", spec));
  }
  return {parse_graph_format(spec.substr(0, colon)), fs::path(spec.substr(colon + 1))};
}

std::string summary_line(const WikiIndexResult& r) {
  return fmt::format("{}, ({} articles with the references, WH = {})", format_wi_line(r), r.n, r.wh);
}

int cmd_probe(const ProbeArgs& a, std::ostream& out, std::ostream& err) {
  const auto source_cfg = source_config(a);
  const auto cfg = probe_config(a);
  const auto growth = GrowthFunction::parse(a.growth);
  std::vector<std::pair<GraphFormat, fs::path>> exports;
  for (const auto& e : a.exports) exports.push_back(parse_export(e));

  auto warn = [&err](const std::string& msg) { fmt::print(err, "warning: {}\n", msg); };
  auto source = open_source(source_cfg, warn);
  const auto started = report_time(source_cfg.mode);

  std::optional<Prober> prober;
  if (!a.resume.empty()) {
    prober.emplace(Checkpoint::from_json(read_file(a.resume)), cfg, *source, warn);
  } else {
    prober.emplace(cfg, *source, started, warn);
  }
  prober->run(a.stop_after);

  if (!prober->finished() && a.stop_after) {
    if (a.checkpoint.empty()) throw ConfigError("--stop-after needs --checkpoint to save the crawl state");
    write_file(a.checkpoint, prober->checkpoint().to_json());
    fmt::print(out, "checkpoint written after {} fetches: {}\n", prober->fetches(), a.checkpoint);
    return kOk;
  }

  const auto& result = prober->result();
  const auto report = make_report(cfg, result, growth, a.source, report_time(source_cfg.mode), a.top_k);
  const fs::path out_path = a.out.empty() ? fs::path(cfg.seed.title + ".report.json") : fs::path(a.out);
  const fs::path trace_path = a.trace.empty() ? fs::path(cfg.seed.title + ".trace") : fs::path(a.trace);
  export_report(report, ReportFormat::json, out_path);
  write_trace(result.trace, trace_path);
  if (!a.text.empty()) export_report(report, ReportFormat::text, a.text);
  for (const auto& [format, path] : exports) export_graph(result.graph, format, path);
  if (!a.checkpoint.empty()) write_file(a.checkpoint, prober->checkpoint().to_json());

  fmt::print(out, "seed {}: {} pages fetched, {} nodes, {} edges{}\n", cfg.seed.title, result.fetches,
             result.graph.node_count(), result.graph.edge_count(), result.truncated ? " (truncated)" : "");
  fmt::print(out, "{}\n", summary_line(report.index));
  return kOk;
}

std::size_t parse_count(const std::string& s, std::size_t line) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!s.empty() && s.front() == '-') throw std::invalid_argument("negative");
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) {
    throw InputError(fmt::format("line {}: '{}' is not a non-negative integer", line, s));
  }
  return static_cast<std::size_t>(v);
}

std::vector<MentionEntry> read_mention_table(const fs::path& path) {
  const auto text = read_file(path);
  if (path.extension() == ".json") {
    const auto report = report_from_json(text);
    std::vector<MentionEntry> pairs;
    for (std::size_t i = 0; i < report.ref_sequence.size(); ++i) {
      pairs.push_back({report.ref_sequence.source_titles[i], report.ref_sequence.counts[i]});
    }
    return pairs;
  }
  const auto rows = csv::parse(text);
  std::vector<MentionEntry> pairs;
  if (rows.empty()) return pairs;
  if (rows.front() != csv::Row{"title", "mentions"}) {
    throw InputError(fmt::format("{}: expected the header 'title,mentions'", path.string()));
  }
  std::set<std::string> seen;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != 2) throw InputError(fmt::format("line {}: expected 2 fields, got {}", i + 1, row.size()));
    if (!seen.insert(row[0]).second) throw InputError(fmt::format("line {}: duplicate title '{}'", i + 1, row[0]));
    pairs.push_back({row[0], parse_count(row[1], i + 1)});
  }
  return pairs;
}

int cmd_index(const IndexArgs& a, std::ostream& out) {
  const auto growth = GrowthFunction::parse(a.growth);
  const auto result = wiki_index(read_mention_table(a.input), growth);
  fmt::print(out, "N={} WH={} WI={}\n", result.n, result.wh, result.wi_rounded);
  fmt::print(out, "wi_raw={:.6f} f(N)={:.6f} growth={}\n", result.wi_raw, result.f_of_n, result.growth);
  fmt::print(out, "{}\n", summary_line(result));
  return kOk;
}

// Display width in code points, which is what terminals show for the names
// and digits this table holds.
std::size_t display_width(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return n;
}

std::string pad(const std::string& s, std::size_t width, bool right) {
  const auto w = display_width(s);
  const std::string fill(width > w ? width - w : 0, ' ');
  return right ? fill + s : s + fill;
}

int cmd_compare(const CompareArgs& a, std::ostream& out) {
  const fs::path rows_path(a.rows);
  const auto rows = csv::parse(read_file(rows_path));

  std::vector<std::string> columns;  // external sources, in file order
  std::size_t name_col = 0;
  std::optional<std::size_t> report_col, wi_col, footnote_col;
  std::vector<std::size_t> source_cols;
  if (!rows.empty()) {
    const auto& header = rows.front();
    bool has_name = false;
    for (std::size_t i = 0; i < header.size(); ++i) {
      const auto& h = header[i];
      if (h == "scientist") {
        name_col = i;
        has_name = true;
      } else if (h == "report") {
        report_col = i;
      } else if (h == "wiki_index") {
        wi_col = i;
      } else if (h == "footnote") {
        footnote_col = i;
      } else {
        columns.push_back(h);
        source_cols.push_back(i);
      }
    }
    if (!has_name) throw InputError(fmt::format("{}: header lacks a 'scientist' column", a.rows));
    if (!report_col && !wi_col) {
      throw InputError(fmt::format("{}: header needs a 'report' or 'wiki_index' column", a.rows));
    }
  }

  std::vector<std::vector<std::string>> table;
  std::vector<std::string> footnotes;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != rows.front().size()) {
      throw InputError(fmt::format("{}: row {} has {} fields, expected {}", a.rows, r + 1, row.size(),
                                   rows.front().size()));
    }
    std::string wi;
    if (report_col && !row[*report_col].empty()) {
      fs::path report_path(row[*report_col]);
      if (report_path.is_relative()) report_path = rows_path.parent_path() / report_path;
      if (!fs::exists(report_path)) throw ReportMissing(fmt::format("report '{}' not found", report_path.string()));
      wi = std::to_string(report_from_json(read_file(report_path)).index.wi_rounded);
    } else if (wi_col && !row[*wi_col].empty()) {
      wi = std::to_string(parse_count(row[*wi_col], r + 1));
    } else {
      throw ReportMissing(fmt::format("row {} ({}) has neither a report nor a wiki_index value", r + 1, row[name_col]));
    }

    const std::string note = footnote_col ? row[*footnote_col] : std::string{};
    const std::string marker = note.empty() ? std::string{} : std::string(footnotes.size() + 1, '*');
    if (!note.empty()) footnotes.push_back(marker + note);

    std::vector<std::string> cells{row[name_col], wi};
    for (auto c : source_cols) {
      const auto& v = row[c];
      if (v.empty()) {
        cells.push_back(a.placeholder + marker);
      } else {
        const bool flagged = v.back() == '*';
        const auto digits = flagged ? v.substr(0, v.size() - 1) : v;
        cells.push_back(std::to_string(parse_count(digits, r + 1)) + (flagged ? (marker.empty() ? "*" : marker) : ""));
      }
    }
    table.push_back(std::move(cells));
  }

  std::vector<std::string> header{"Scientist", "Wiki-index"};
  header.insert(header.end(), columns.begin(), columns.end());
  std::vector<std::size_t> widths(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) widths[i] = display_width(header[i]);
  for (const auto& row : table) {
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], display_width(row[i]));
  }
  auto render = [&](const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) line += " | ";
      line += pad(cells[i], widths[i], i > 0);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    return line + "\n";
  };
  std::string text = render(header);
  std::string rule;
  for (std::size_t i = 0; i < widths.size(); ++i) rule += (i ? "-+-" : "") + std::string(widths[i], '-');
  text += rule + "\n";
  for (const auto& row : table) text += render(row);
  for (const auto& f : footnotes) text += f + "\n";
  out << text;

  if (!a.csv_out.empty()) {
    std::string csv_text = csv::format_row(header) + "\n";
    for (const auto& row : table) csv_text += csv::format_row(row) + "\n";
    for (const auto& f : footnotes) csv_text += csv::format_row({f}) + "\n";
    write_file(a.csv_out, csv_text);
  }
  return kOk;
}

int cmd_metrics(const MetricsArgs& a, std::ostream& out) {
  const fs::path path(a.input);
  DomainGraph graph;
  if (path.extension() == ".json" && a.format.empty()) {
    graph = report_from_json(read_file(path)).graph;
  } else {
    graph = import_graph(path, a.format.empty() ? std::nullopt : std::optional(parse_graph_format(a.format)));
  }
  out << format_metrics(compute_metrics(graph, a.top_k), "Subject-domain network");
  return kOk;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const SeedNotFound*>(&e)) return kSeedNotFound;
  if (dynamic_cast<const CheckpointCorrupt*>(&e)) return kCheckpoint;
  if (dynamic_cast<const ReportMissing*>(&e)) return kReportMissing;
  if (dynamic_cast<const CorpusError*>(&e)) return kCorpus;
  if (dynamic_cast<const NetworkError*>(&e)) return kNetwork;
  if (dynamic_cast<const IoError*>(&e)) return kIo;
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InvalidFunction*>(&e) ||
      dynamic_cast<const UnsupportedFormat*>(&e)) {
    return kConfig;
  }
  if (dynamic_cast<const InputError*>(&e) || dynamic_cast<const ParseError*>(&e) ||
      dynamic_cast<const EmptyGraph*>(&e)) {
    return kInput;
  }
  return kUnexpected;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wiki-index of author popularity: sounding crawler, index math and graph metrics", "wikiindex"};
  app.set_config("--config", "", "TOML/INI file mirroring the command-line flags (flags win)");
  app.require_subcommand(1);

  ProbeArgs probe;
  auto* p = app.add_subcommand("probe", "Crawl from a seed article and compute the Wiki-index");
  p->add_option("--seed", probe.seed, "Seed article title")->required();
  p->add_option("--full-name", probe.full_name, "Author full name (default: the seed title)");
  p->add_option("--short-name", probe.short_name, "Author surname (default: last token of the full name)");
  p->add_option("--anchor", probe.anchors, "Subject-domain anchor term (repeatable)");
  p->add_option("--initials", probe.initials, "Initials form counted in bibliographies (repeatable)");
  p->add_flag("--bare-surname", probe.bare_surname, "Also count the bare surname in bibliographies");
  p->add_option("--section", probe.sections, "Recognized bibliography section heading (repeatable)");
  p->add_option("--source", probe.source, "live:<api-url> or fixture:<corpus-dir>")->required();
  p->add_option("--cache-dir", probe.cache_dir, "Live-mode page cache directory")->envname("WIKIINDEX_CACHE_DIR");
  p->add_option("--user-agent", probe.user_agent, "HTTP User-Agent")->envname("WIKIINDEX_USER_AGENT");
  p->add_option("--rate-limit", probe.rate_limit, "Live requests per second")->check(CLI::PositiveNumber);
  p->add_option("--timeout-ms", probe.timeout_ms, "Live request timeout")->check(CLI::PositiveNumber);
  p->add_option("--max-pages", probe.max_pages, "Stop after this many fetches past the seed (0 = no limit)");
  p->add_option("--max-links", probe.max_links, "Follow at most this many links per page (0 = no limit)");
  p->add_flag("--expand-endnotes", probe.expand_endnotes, "Expand pages with zero bibliography mentions");
  p->add_option("--growth", probe.growth, "f(N): sqrt, identity or log1p");
  p->add_option("--export", probe.exports, "Graph export <gexf|graphml|edge-csv>:<path> (repeatable)");
  p->add_option("--out", probe.out, "Report JSON path (default: <seed>.report.json)");
  p->add_option("--text", probe.text, "Also write a plain-text report here");
  p->add_option("--trace", probe.trace, "Trace path (default: <seed>.trace)");
  p->add_option("--checkpoint", probe.checkpoint, "Write the crawl state here");
  p->add_option("--resume", probe.resume, "Continue from a checkpoint file");
  p->add_option("--stop-after", probe.stop_after, "Pause after this many fetches and write --checkpoint");
  p->add_option("--top-k", probe.top_k, "Rows in the top-degree table");

  IndexArgs index;
  auto* i = app.add_subcommand("index", "Compute N, WH and WI from a mention table or report");
  i->add_option("input", index.input, "CSV with header title,mentions, or a report .json")->required();
  i->add_option("--growth", index.growth, "f(N): sqrt, identity or log1p");

  CompareArgs compare;
  auto* c = app.add_subcommand("compare", "Tabulate Wiki-index values against externally sourced indices");
  c->add_option("rows", compare.rows, "CSV: scientist, report and/or wiki_index, source columns, footnote")
      ->required();
  c->add_option("--csv", compare.csv_out, "Also write the table as CSV");
  c->add_option("--placeholder", compare.placeholder, "Cell text for an absent external value");

  MetricsArgs metrics;
  auto* m = app.add_subcommand("metrics", "Graph statistics of a stored graph export or report");
  m->add_option("input", metrics.input, "Graph file (.gexf, .graphml, .csv) or report .json")->required();
  m->add_option("--format", metrics.format, "Force the graph format");
  m->add_option("--top-k", metrics.top_k, "Rows in the top-degree table");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfig;
  }

  try {
    if (*p) return cmd_probe(probe, out, err);
    if (*i) return cmd_index(index, out);
    if (*c) return cmd_compare(compare, out);
    if (*m) return cmd_metrics(metrics, out);
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return exit_code_for(e);
  }
  return kUnexpected;
}

}  // namespace wikiindex::cli
