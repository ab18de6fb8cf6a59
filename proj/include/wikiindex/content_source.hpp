#pragma once

#include <chrono>
#include <cstddef>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wikiindex/clock.hpp"

namespace wikiindex {

// Canonical article title: fragment stripped, spaces as underscores, runs of
// underscores collapsed, outer underscores trimmed, first ASCII letter
// upper-cased. Idempotent.
std::string normalize_title(std::string_view title);

struct PageRef {
  std::string title;
  std::optional<std::string> source_hint;  // revision id in live mode

  PageRef() = default;
  // Normalizes; throws ConfigError if the result is empty.
  explicit PageRef(std::string_view raw_title, std::optional<std::string> hint = std::nullopt);

  friend bool operator==(const PageRef& a, const PageRef& b) { return a.title == b.title; }
};

struct RawPage {
  PageRef ref;
  std::string markup;
  Timestamp fetched_at{};
  bool from_cache = false;
};

enum class SourceMode { live, fixture };

struct SourceConfig {
  SourceMode mode = SourceMode::fixture;
  std::string base_url;                  // live: full Action API endpoint
  std::filesystem::path corpus_path;     // fixture
  std::filesystem::path cache_dir;       // live; empty disables caching
  double rate_limit = 1.0;               // live: requests per second
  std::chrono::milliseconds request_timeout{10000};
  std::string user_agent = "wikiindex/1.0 (sounding crawler)";
  int max_retries = 3;

  // Throws ConfigError when the per-mode requirements are not met.
  void validate() const;
};

inline constexpr std::string_view kDefaultLiveEndpoint = "https://en.wikipedia.org/w/api.php";
inline constexpr int kMaxRedirectDepth = 3;

using WarningSink = std::function<void(const std::string&)>;

// If `markup` is a redirect stub (fixture record with "redirect" or MediaWiki
// HTML with a redirectMsg block), returns the normalized target title.
std::optional<std::string> redirect_target(std::string_view markup);

// ---------------------------------------------------------------------------
// Fixture corpus

class FixtureCorpus {
 public:
  // Reads <dir>/index.json and validates every entry. Throws CorpusError
  // naming the offending entry.
  static FixtureCorpus load(const std::filesystem::path& dir);

  std::size_t size() const { return files_.size(); }
  bool contains(std::string_view title) const;
  std::vector<std::string> titles() const;  // manifest order

  // Page file bytes; nullopt if the title is not in the manifest. Throws
  // CorpusError when the file has become unreadable since load().
  std::optional<std::string> read(std::string_view title) const;

  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
  std::vector<std::string> order_;
  std::map<std::string, std::filesystem::path, std::less<>> files_;
};

FixtureCorpus load_fixture_corpus(const std::filesystem::path& corpus_path);

// ---------------------------------------------------------------------------
// Page cache: one file per title at <dir>/<sha256(title)[0:32]>.page holding a
// single-line JSON header {title, fetched_at, checksum, length, ...} followed
// by the markup bytes.

struct CacheEntry {
  RawPage page;
  bool missing = false;  // negative entry: the source reported PageNotFound
};

class PageCache {
 public:
  explicit PageCache(std::filesystem::path dir, WarningSink warn = {});

  // Corrupt entries are reported through the warning sink and treated as absent.
  std::optional<CacheEntry> lookup(std::string_view title) const;
  void store(const RawPage& page);
  void store_missing(std::string_view title, Timestamp when);

  std::filesystem::path entry_path(std::string_view title) const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  void write_entry(std::string_view title, std::string_view markup, Timestamp when, bool missing,
                   const std::optional<std::string>& hint);

  std::filesystem::path dir_;
  WarningSink warn_;
};

std::optional<RawPage> cache_lookup(const PageRef& ref, const std::filesystem::path& cache_dir,
                                    const WarningSink& warn = {});

// ---------------------------------------------------------------------------
// Live transport

struct HttpResponse {
  int status = 0;
  std::string body;
};

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  // Throws NetworkError on transport-level failure (no response at all).
  virtual HttpResponse get(const std::string& url, const std::string& user_agent,
                           std::chrono::milliseconds timeout) = 0;
};

// cpp-httplib backed transport; supports http and https.
class HttplibTransport final : public HttpTransport {
 public:
  HttpResponse get(const std::string& url, const std::string& user_agent,
                   std::chrono::milliseconds timeout) override;
};

// Sliding-window limiter: at most floor(rate) requests in any half-open one
// second window (rate >= 1), or one request per 1/rate seconds (rate < 1).
class RateLimiter {
 public:
  RateLimiter(double rate_per_second, Clock& clock);
  // Blocks (via the clock) until a request may be issued, then records it.
  void acquire();

 private:
  std::size_t capacity_;
  std::chrono::nanoseconds window_;
  Clock& clock_;
  std::deque<Timestamp> issued_;
};

// ---------------------------------------------------------------------------
// Sources

class ContentSource {
 public:
  virtual ~ContentSource() = default;
  // Follows redirects (at most kMaxRedirectDepth); the returned ref is the
  // final target. Throws PageNotFound, NetworkError, RedirectLoop, CorpusError.
  virtual RawPage fetch(const PageRef& ref) = 0;
};

class FixtureSource final : public ContentSource {
 public:
  explicit FixtureSource(FixtureCorpus corpus) : corpus_(std::move(corpus)) {}
  RawPage fetch(const PageRef& ref) override;
  const FixtureCorpus& corpus() const { return corpus_; }

 private:
  FixtureCorpus corpus_;
};

// MediaWiki Action API client: GET <base_url>?action=parse&prop=text&...
class LiveSource final : public ContentSource {
 public:
  LiveSource(SourceConfig cfg, HttpTransport& transport, Clock& clock, WarningSink warn = {});
  RawPage fetch(const PageRef& ref) override;

  std::size_t network_requests() const { return requests_; }
  std::string request_url(std::string_view title) const;

 private:
  // One hop: cache first, then network. Returns nullopt for a missing page.
  std::optional<RawPage> fetch_one(const std::string& title);
  std::optional<RawPage> fetch_network(const std::string& title);

  SourceConfig cfg_;
  HttpTransport& transport_;
  Clock& clock_;
  WarningSink warn_;
  RateLimiter limiter_;
  std::optional<PageCache> cache_;
  std::size_t requests_ = 0;
};

// Owns whatever a SourceConfig needs (transport, clock) behind one handle.
std::unique_ptr<ContentSource> open_source(const SourceConfig& cfg, WarningSink warn = {});

// Convenience one-shot form. Opens a source for every call, so the live cache
// is the only state carried between calls.
RawPage fetch_page(const PageRef& ref, const SourceConfig& cfg);

}  // namespace wikiindex
