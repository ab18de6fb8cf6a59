#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "wikiindex/content_source.hpp"

namespace wikiindex {

struct BibliographySection {
  std::string name;  // the recognized name as configured, not the heading text
  std::string text;  // whitespace-collapsed plain text

  friend bool operator==(const BibliographySection&, const BibliographySection&) = default;
};

struct PageContent {
  PageRef ref;
  std::string body_text;
  std::vector<PageRef> links;  // first-occurrence order, no duplicates, no self-link
  std::vector<BibliographySection> bibliography;
};

std::vector<std::string> default_recognized_sections();

struct AnalysisOptions {
  std::vector<std::string> recognized_sections = default_recognized_sections();
  std::string article_path = "/wiki/";
};

// Full name, short name, default initials forms and anchor terms used by the
// anchor test and the bibliography mention counter.
struct AuthorPatterns {
  std::string full_name;
  std::string short_name;
  std::vector<std::string> initials_forms;
  std::vector<std::string> anchor_terms;
  bool match_bare_surname_in_bib = false;

  // Defaults: initials forms "<I>. <Surname>" and "<Surname>, <I>." built from
  // the first letter of the full name. An empty short name becomes the last
  // token of the full name.
  static AuthorPatterns from_names(std::string_view full_name, std::string_view short_name = {},
                                   std::vector<std::string> anchors = {});

  // Throws ConfigError unless short_name is a non-empty token of full_name.
  void validate() const;

  // Patterns counted inside bibliographies.
  std::vector<std::string> bibliography_patterns() const;
};

// True iff `pattern` (whitespace-collapsed) occurs in `text` case-insensitively
// with word boundaries at its alphanumeric edges.
bool contains_word(std::string_view text, std::string_view pattern);

// Leftmost, longest-first, non-overlapping occurrence count of any pattern.
std::size_t count_occurrences(std::string_view text, const std::vector<std::string>& patterns);

// Throws ParseError if the markup is neither a fixture page record nor HTML.
PageContent parse_page(const RawPage& raw, const AnalysisOptions& options = {});

std::vector<BibliographySection> extract_bibliography(const RawPage& raw,
                                                      const std::vector<std::string>& recognized);

bool contains_anchor(const PageContent& content, const AuthorPatterns& patterns);

std::size_t count_mentions(const std::vector<BibliographySection>& bibliography, const AuthorPatterns& patterns);

}  // namespace wikiindex
