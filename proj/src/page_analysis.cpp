#include "wikiindex/page_analysis.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <unordered_set>

#include <fmt/format.h>

#include "json.hpp"
#include "text_util.hpp"
#include "wikiindex/errors.hpp"

namespace wikiindex {

using nlohmann::json;

std::vector<std::string> default_recognized_sections() {
  return {"Publications", "References", "Further reading", "Bibliography", "Works"};
}

// ---------------------------------------------------------------------------
// Patterns

namespace {

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (detail::is_space(c)) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string display_name(std::string_view s) {
  std::string out(s);
  std::replace(out.begin(), out.end(), '_', ' ');
  return detail::collapse_whitespace(out);
}

}  // namespace

AuthorPatterns AuthorPatterns::from_names(std::string_view full_name, std::string_view short_name,
                                          std::vector<std::string> anchors) {
  AuthorPatterns p;
  p.full_name = display_name(full_name);
  const auto parts = tokens(p.full_name);
  p.short_name = short_name.empty() ? (parts.empty() ? std::string{} : parts.back()) : display_name(short_name);
  if (parts.size() >= 2 && !p.short_name.empty()) {
    const char initial = parts.front().front();
    if (detail::is_word_byte(initial) && static_cast<unsigned char>(initial) < 0x80) {
      p.initials_forms.push_back(fmt::format("{}. {}", initial, p.short_name));
      p.initials_forms.push_back(fmt::format("{}, {}.", p.short_name, initial));
    }
  }
  p.anchor_terms = std::move(anchors);
  return p;
}

void AuthorPatterns::validate() const {
  if (full_name.empty()) throw ConfigError("author full name is empty");
  if (short_name.empty()) throw ConfigError("author short name is empty");
  const auto parts = tokens(full_name);
  const bool found = std::any_of(parts.begin(), parts.end(),
                                 [&](const std::string& t) { return detail::iequals(t, short_name); });
  if (!found) {
    throw ConfigError(fmt::format("short name '{}' is not a token of full name '{}'", short_name, full_name));
  }
}

std::vector<std::string> AuthorPatterns::bibliography_patterns() const {
  std::vector<std::string> out{full_name};
  out.insert(out.end(), initials_forms.begin(), initials_forms.end());
  if (match_bare_surname_in_bib) out.push_back(short_name);
  return out;
}

// ---------------------------------------------------------------------------
// Matching

namespace {

struct PreparedPattern {
  std::string folded;
  bool word_start;
  bool word_end;
};

std::vector<PreparedPattern> prepare(const std::vector<std::string>& patterns) {
  std::set<std::string> seen;
  std::vector<PreparedPattern> out;
  for (const auto& p : patterns) {
    auto folded = detail::ascii_lowercase(detail::collapse_whitespace(p));
    if (folded.empty() || !seen.insert(folded).second) continue;
    const bool start = detail::is_word_byte(folded.front()) && static_cast<unsigned char>(folded.front()) < 0x80;
    const bool end = detail::is_word_byte(folded.back()) && static_cast<unsigned char>(folded.back()) < 0x80;
    out.push_back({std::move(folded), start, end});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const PreparedPattern& a, const PreparedPattern& b) { return a.folded.size() > b.folded.size(); });
  return out;
}

bool matches_at(std::string_view text, std::size_t pos, const PreparedPattern& p) {
  const auto len = p.folded.size();
  if (pos + len > text.size()) return false;
  for (std::size_t k = 0; k < len; ++k) {
    if (detail::ascii_lower(text[pos + k]) != p.folded[k]) return false;
  }
  if (p.word_start && pos > 0 && detail::is_word_byte(text[pos - 1])) return false;
  if (p.word_end && pos + len < text.size() && detail::is_word_byte(text[pos + len])) return false;
  return true;
}

// Calls `on_match(length)` for each leftmost-longest non-overlapping hit;
// stops early when it returns false.
template <typename F>
void scan(std::string_view raw_text, const std::vector<PreparedPattern>& patterns, F&& on_match) {
  if (patterns.empty()) return;
  const auto text = detail::collapse_whitespace(raw_text);
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t hit = 0;
    for (const auto& p : patterns) {
      if (matches_at(text, i, p)) {
        hit = p.folded.size();
        break;
      }
    }
    if (hit == 0) {
      ++i;
      continue;
    }
    if (!on_match(hit)) return;
    i += hit;
  }
}

}  // namespace

bool contains_word(std::string_view text, std::string_view pattern) {
  bool found = false;
  scan(text, prepare({std::string(pattern)}), [&](std::size_t) {
    found = true;
    return false;
  });
  return found;
}

std::size_t count_occurrences(std::string_view text, const std::vector<std::string>& patterns) {
  std::size_t count = 0;
  scan(text, prepare(patterns), [&](std::size_t) {
    ++count;
    return true;
  });
  return count;
}

bool contains_anchor(const PageContent& content, const AuthorPatterns& patterns) {
  std::vector<std::string> terms{patterns.short_name};
  terms.insert(terms.end(), patterns.anchor_terms.begin(), patterns.anchor_terms.end());
  bool found = false;
  scan(content.body_text, prepare(terms), [&](std::size_t) {
    found = true;
    return false;
  });
  return found;
}

std::size_t count_mentions(const std::vector<BibliographySection>& bibliography, const AuthorPatterns& patterns) {
  if (bibliography.empty()) return 0;
  const auto prepared = prepare(patterns.bibliography_patterns());
  std::size_t total = 0;
  for (const auto& section : bibliography) {
    scan(section.text, prepared, [&](std::size_t) {
      ++total;
      return true;
    });
  }
  return total;
}

// ---------------------------------------------------------------------------
// Markup

namespace {

std::optional<std::string> recognized_name(std::string_view heading, const std::vector<std::string>& recognized) {
  auto name = detail::collapse_whitespace(heading);
  constexpr std::string_view kEdit = "[edit]";
  if (name.size() >= kEdit.size() && detail::iequals(std::string_view(name).substr(name.size() - kEdit.size()), kEdit)) {
    name = detail::collapse_whitespace(name.substr(0, name.size() - kEdit.size()));
  }
  for (const auto& r : recognized) {
    if (detail::iequals(detail::collapse_whitespace(r), name)) return r;
  }
  return std::nullopt;
}

bool is_external(std::string_view link) {
  return link.starts_with("http://") || link.starts_with("https://") || link.starts_with("//") ||
         link.starts_with("#") || link.starts_with("mailto:");
}

// Normalizes, drops namespaced titles, self-links and duplicates.
class LinkCollector {
 public:
  explicit LinkCollector(std::string self) : self_(std::move(self)) {}

  void add(std::string_view raw) {
    if (is_external(raw)) return;
    auto title = normalize_title(raw);
    if (title.empty() || title == self_) return;
    const auto head = std::string_view(title).substr(0, title.find('/'));
    if (head.find(':') != std::string_view::npos) return;
    if (!seen_.insert(title).second) return;
    links_.emplace_back();
    links_.back().title = std::move(title);
  }

  std::vector<PageRef> take() { return std::move(links_); }

 private:
  std::string self_;
  std::unordered_set<std::string> seen_;
  std::vector<PageRef> links_;
};

struct ScanResult {
  std::string body_text;
  std::vector<PageRef> links;
  std::vector<BibliographySection> bibliography;
};

ScanResult scan_record(const RawPage& raw, const std::vector<std::string>& recognized) {
  const auto doc = json::parse(raw.markup, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw ParseError(fmt::format("page '{}': malformed page record", raw.ref.title));
  }
  if (doc.contains("redirect")) {
    throw ParseError(fmt::format("page '{}' is an unresolved redirect stub", raw.ref.title));
  }
  try {
    ScanResult out;
    out.body_text = detail::collapse_whitespace(doc.at("body_text").get<std::string>());
    LinkCollector links(raw.ref.title);
    for (const auto& link : doc.at("links")) links.add(link.get<std::string>());
    out.links = links.take();
    for (const auto& section : doc.at("bibliography")) {
      if (auto name = recognized_name(section.at("section").get<std::string>(), recognized)) {
        out.bibliography.push_back({*name, detail::collapse_whitespace(section.at("text").get<std::string>())});
      }
    }
    return out;
  } catch (const json::exception& e) {
    throw ParseError(fmt::format("page '{}': invalid page record ({})", raw.ref.title, e.what()));
  }
}

bool is_block_tag(std::string_view name) {
  static const std::unordered_set<std::string_view> kBlock = {
      "p",  "div", "li", "br", "ul", "ol", "tr", "td", "th", "table", "h1", "h2", "h3",
      "h4", "h5",  "h6", "dd", "dt", "dl", "section", "blockquote", "tbody", "thead", "hr"};
  return kBlock.contains(name);
}

int heading_level(std::string_view name) {
  if (name.size() == 2 && name[0] == 'h' && name[1] >= '1' && name[1] <= '6') return name[1] - '0';
  return 0;
}

// Tolerant single-pass HTML walker. Collects article links, body text and the
// text under recognized bibliography headings.
class HtmlScanner {
 public:
  HtmlScanner(const RawPage& raw, const AnalysisOptions& options)
      : markup_(raw.markup), options_(options), links_(raw.ref.title) {}

  ScanResult run() {
    std::size_t pos = 0;
    bool saw_tag = false;
    while (pos < markup_.size()) {
      const auto lt = markup_.find('<', pos);
      if (lt == std::string_view::npos) {
        text(markup_.substr(pos));
        break;
      }
      text(markup_.substr(pos, lt - pos));
      pos = lt;
      if (markup_.substr(pos, 4) == "<!--") {
        const auto end = markup_.find("-->", pos + 4);
        pos = end == std::string_view::npos ? markup_.size() : end + 3;
      } else if (pos + 1 < markup_.size() && (markup_[pos + 1] == '!' || markup_[pos + 1] == '?')) {
        const auto end = markup_.find('>', pos);
        pos = end == std::string_view::npos ? markup_.size() : end + 1;
      } else if (pos + 1 < markup_.size() && markup_[pos + 1] == '/') {
        pos = end_tag(pos + 2);
        saw_tag = true;
      } else if (pos + 1 < markup_.size() && std::isalpha(static_cast<unsigned char>(markup_[pos + 1]))) {
        pos = start_tag(pos + 1);
        saw_tag = true;
      } else {
        text("<");
        ++pos;
      }
    }
    if (!saw_tag) throw ParseError("markup is neither a page record nor HTML");
    close_section();
    ScanResult out;
    out.body_text = detail::collapse_whitespace(body_);
    out.links = links_.take();
    out.bibliography = std::move(sections_);
    return out;
  }

 private:
  std::size_t read_name(std::size_t pos, std::string& name) const {
    name.clear();
    while (pos < markup_.size()) {
      const char c = markup_[pos];
      if (detail::is_space(c) || c == '>' || c == '/') break;
      name.push_back(detail::ascii_lower(c));
      ++pos;
    }
    return pos;
  }

  std::size_t start_tag(std::size_t pos) {
    std::string name;
    pos = read_name(pos, name);
    std::string href;
    // Attributes.
    while (pos < markup_.size() && markup_[pos] != '>') {
      if (detail::is_space(markup_[pos]) || markup_[pos] == '/') {
        ++pos;
        continue;
      }
      std::string attr;
      while (pos < markup_.size() && !detail::is_space(markup_[pos]) && markup_[pos] != '=' && markup_[pos] != '>' &&
             markup_[pos] != '/') {
        attr.push_back(detail::ascii_lower(markup_[pos++]));
      }
      std::string value;
      while (pos < markup_.size() && detail::is_space(markup_[pos])) ++pos;
      if (pos < markup_.size() && markup_[pos] == '=') {
        ++pos;
        while (pos < markup_.size() && detail::is_space(markup_[pos])) ++pos;
        if (pos < markup_.size() && (markup_[pos] == '"' || markup_[pos] == '\'')) {
          const char quote = markup_[pos++];
          const auto end = markup_.find(quote, pos);
          const auto stop = end == std::string_view::npos ? markup_.size() : end;
          value = markup_.substr(pos, stop - pos);
          pos = stop == markup_.size() ? stop : stop + 1;
        } else {
          while (pos < markup_.size() && !detail::is_space(markup_[pos]) && markup_[pos] != '>') {
            value.push_back(markup_[pos++]);
          }
        }
      }
      if (attr == "href") href = detail::decode_entities(value);
      if (attr.empty()) ++pos;
    }
    if (pos < markup_.size()) ++pos;  // '>'

    if (name == "script" || name == "style") {
      const auto close = markup_.find("</" + name, pos);
      if (close == std::string_view::npos) return markup_.size();
      const auto end = markup_.find('>', close);
      return end == std::string_view::npos ? markup_.size() : end + 1;
    }
    if (is_block_tag(name)) text(" ");
    if (const int level = heading_level(name)) {
      heading_level_ = level;
      heading_text_.clear();
    }
    if (name == "a" && href.starts_with(options_.article_path)) {
      auto target = std::string_view(href).substr(options_.article_path.size());
      target = target.substr(0, target.find('?'));
      links_.add(detail::percent_decode(target));
    }
    return pos;
  }

  std::size_t end_tag(std::size_t pos) {
    std::string name;
    pos = read_name(pos, name);
    const auto end = markup_.find('>', pos);
    pos = end == std::string_view::npos ? markup_.size() : end + 1;
    const int level = heading_level(name);
    if (level != 0 && heading_level_ != 0) {
      finish_heading();
      return pos;
    }
    if (is_block_tag(name)) text(" ");
    return pos;
  }

  void finish_heading() {
    const int level = heading_level_;
    heading_level_ = 0;
    const auto heading = std::move(heading_text_);
    heading_text_.clear();
    if (section_ && level <= section_level_) close_section();
    if (section_) {
      section_->text += " " + heading + " ";
      return;
    }
    if (auto name = recognized_name(heading, options_.recognized_sections)) {
      section_ = BibliographySection{*name, {}};
      section_level_ = level;
    } else {
      body_ += " " + heading + " ";
    }
  }

  void close_section() {
    if (!section_) return;
    section_->text = detail::collapse_whitespace(section_->text);
    sections_.push_back(std::move(*section_));
    section_.reset();
  }

  void text(std::string_view raw) {
    if (raw.empty()) return;
    const auto decoded = detail::decode_entities(raw);
    if (heading_level_ != 0) {
      heading_text_ += decoded;
    } else if (section_) {
      section_->text += decoded;
    } else {
      body_ += decoded;
    }
  }

  std::string_view markup_;
  const AnalysisOptions& options_;
  LinkCollector links_;
  std::string body_;
  int heading_level_ = 0;
  std::string heading_text_;
  std::optional<BibliographySection> section_;
  int section_level_ = 0;
  std::vector<BibliographySection> sections_;
};

bool is_record(std::string_view markup) {
  const auto first = markup.find_first_not_of(" \t\r\n");
  return first != std::string_view::npos && markup[first] == '{';
}

ScanResult scan_markup(const RawPage& raw, const AnalysisOptions& options) {
  if (raw.markup.empty()) throw ParseError(fmt::format("page '{}' has empty markup", raw.ref.title));
  if (is_record(raw.markup)) return scan_record(raw, options.recognized_sections);
  try {
    return HtmlScanner(raw, options).run();
  } catch (const ParseError& e) {
    throw ParseError(fmt::format("page '{}': {}", raw.ref.title, e.what()));
  }
}

}  // namespace

PageContent parse_page(const RawPage& raw, const AnalysisOptions& options) {
  auto scanned = scan_markup(raw, options);
  PageContent content;
  content.ref = raw.ref;
  content.body_text = std::move(scanned.body_text);
  content.links = std::move(scanned.links);
  content.bibliography = std::move(scanned.bibliography);
  return content;
}

std::vector<BibliographySection> extract_bibliography(const RawPage& raw, const std::vector<std::string>& recognized) {
  AnalysisOptions options;
  options.recognized_sections = recognized;
  return scan_markup(raw, options).bibliography;
}

}  // namespace wikiindex
