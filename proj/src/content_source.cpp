#include "wikiindex/content_source.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "httplib.h"
#include "json.hpp"
#include "text_util.hpp"
#include "wikiindex/errors.hpp"

namespace wikiindex {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// Clock

Timestamp SystemClock::now() { return std::chrono::system_clock::now(); }

void SystemClock::sleep_for(std::chrono::nanoseconds d) { std::this_thread::sleep_for(d); }

std::int64_t to_unix_seconds(Timestamp t) {
  return std::chrono::duration_cast<std::chrono::seconds>(t.time_since_epoch()).count();
}

Timestamp from_unix_seconds(std::int64_t s) { return Timestamp{std::chrono::seconds{s}}; }

std::string format_iso8601(Timestamp t) {
  const std::time_t secs = static_cast<std::time_t>(to_unix_seconds(t));
  std::tm tm{};
  gmtime_r(&secs, &tm);
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z", tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday,
                     tm.tm_hour, tm.tm_min, tm.tm_sec);
}

// ---------------------------------------------------------------------------
// Titles

std::string normalize_title(std::string_view title) {
  if (const auto hash = title.find('#'); hash != std::string_view::npos) title = title.substr(0, hash);
  std::string out;
  out.reserve(title.size());
  for (char c : title) {
    const char mapped = (c == ' ' || detail::is_space(c)) ? '_' : c;
    if (mapped == '_' && (out.empty() || out.back() == '_')) continue;
    out.push_back(mapped);
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') out[0] = static_cast<char>(out[0] - 'a' + 'A');
  return out;
}

PageRef::PageRef(std::string_view raw_title, std::optional<std::string> hint)
    : title(normalize_title(raw_title)), source_hint(std::move(hint)) {
  if (title.empty()) throw ConfigError(fmt::format("empty page title '{}'", raw_title));
}

void SourceConfig::validate() const {
  if (mode == SourceMode::live) {
    if (base_url.empty()) throw ConfigError("live source requires a base URL");
    if (base_url.rfind("http://", 0) != 0 && base_url.rfind("https://", 0) != 0) {
      throw ConfigError(fmt::format("live base URL '{}' must be http or https", base_url));
    }
    if (!(rate_limit > 0.0)) throw ConfigError("live source requires rate_limit > 0");
    if (max_retries < 0) throw ConfigError("max_retries must be non-negative");
  } else if (corpus_path.empty()) {
    throw ConfigError("fixture source requires a corpus path");
  }
}

// ---------------------------------------------------------------------------
// Redirect detection

namespace {

bool looks_like_record(std::string_view markup) {
  const auto first = markup.find_first_not_of(" \t\r\n");
  return first != std::string_view::npos && markup[first] == '{';
}

}  // namespace

std::optional<std::string> redirect_target(std::string_view markup) {
  if (looks_like_record(markup)) {
    const auto doc = json::parse(markup, nullptr, /*allow_exceptions=*/false);
    if (doc.is_object()) {
      const auto it = doc.find("redirect");
      if (it != doc.end() && it->is_string()) {
        auto target = normalize_title(it->get<std::string>());
        if (!target.empty()) return target;
      }
    }
    return std::nullopt;
  }
  const auto marker = markup.find("redirectMsg");
  if (marker == std::string_view::npos) return std::nullopt;
  constexpr std::string_view kHref = "href=\"/wiki/";
  const auto href = markup.find(kHref, marker);
  if (href == std::string_view::npos) return std::nullopt;
  const auto start = href + kHref.size();
  const auto end = markup.find('"', start);
  if (end == std::string_view::npos) return std::nullopt;
  auto target = normalize_title(detail::percent_decode(detail::decode_entities(markup.substr(start, end - start))));
  if (target.empty()) return std::nullopt;
  return target;
}

// ---------------------------------------------------------------------------
// Fixture corpus

namespace {

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

FixtureCorpus FixtureCorpus::load(const fs::path& dir) {
  const auto manifest_path = dir / "index.json";
  if (!fs::is_regular_file(manifest_path)) {
    throw CorpusError(fmt::format("no index.json manifest in '{}'", dir.string()));
  }
  const auto text = read_file(manifest_path);
  if (!text) throw CorpusError(fmt::format("cannot read '{}'", manifest_path.string()));
  const auto doc = json::parse(*text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("pages") || !doc["pages"].is_array()) {
    throw CorpusError(fmt::format("'{}' is not a valid manifest (expected an object with a 'pages' array)",
                                  manifest_path.string()));
  }

  FixtureCorpus corpus;
  corpus.root_ = dir;
  std::size_t position = 0;
  for (const auto& entry : doc["pages"]) {
    if (!entry.is_object() || !entry.contains("title") || !entry.contains("file") || !entry["title"].is_string() ||
        !entry["file"].is_string()) {
      throw CorpusError(fmt::format("manifest entry #{} needs string fields 'title' and 'file'", position));
    }
    const auto title = entry["title"].get<std::string>();
    const auto file = entry["file"].get<std::string>();
    if (title.empty() || normalize_title(title) != title) {
      throw CorpusError(fmt::format("manifest entry '{}' is not a normalized title", title));
    }
    if (corpus.files_.contains(title)) {
      throw CorpusError(fmt::format("manifest lists title '{}' more than once", title));
    }
    const fs::path rel(file);
    if (rel.empty() || rel.is_absolute() ||
        std::any_of(rel.begin(), rel.end(), [](const fs::path& part) { return part == ".."; })) {
      throw CorpusError(fmt::format("manifest entry '{}' has an invalid file path '{}'", title, file));
    }
    const auto path = dir / rel;
    if (!fs::is_regular_file(path)) {
      throw CorpusError(fmt::format("manifest entry '{}' points at missing file '{}'", title, file));
    }
    corpus.files_.emplace(title, path);
    corpus.order_.push_back(title);
    ++position;
  }
  return corpus;
}

bool FixtureCorpus::contains(std::string_view title) const { return files_.find(title) != files_.end(); }

std::vector<std::string> FixtureCorpus::titles() const { return order_; }

std::optional<std::string> FixtureCorpus::read(std::string_view title) const {
  const auto it = files_.find(title);
  if (it == files_.end()) return std::nullopt;
  auto bytes = read_file(it->second);
  if (!bytes) throw CorpusError(fmt::format("page file for '{}' is unreadable", title));
  if (bytes->empty()) throw CorpusError(fmt::format("page file for '{}' is empty", title));
  return bytes;
}

FixtureCorpus load_fixture_corpus(const fs::path& corpus_path) { return FixtureCorpus::load(corpus_path); }

// ---------------------------------------------------------------------------
// Cache

namespace {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw IoError("SHA-256 computation failed");
  }
  std::string hex;
  hex.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::atomic<unsigned> g_temp_counter{0};

}  // namespace

PageCache::PageCache(fs::path dir, WarningSink warn) : dir_(std::move(dir)), warn_(std::move(warn)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw IoError(fmt::format("cannot create cache directory '{}': {}", dir_.string(), ec.message()));
}

fs::path PageCache::entry_path(std::string_view title) const {
  return dir_ / (sha256_hex(title).substr(0, 32) + ".page");
}

std::optional<CacheEntry> PageCache::lookup(std::string_view title) const {
  const auto path = entry_path(title);
  if (!fs::exists(path)) return std::nullopt;
  auto reject = [&](std::string_view why) -> std::optional<CacheEntry> {
    if (warn_) warn_(fmt::format("cache entry for '{}' ignored: {}", title, why));
    return std::nullopt;
  };
  const auto bytes = read_file(path);
  if (!bytes) return reject("unreadable");
  const auto newline = bytes->find('\n');
  if (newline == std::string::npos) return reject("missing header");
  const auto header = json::parse(bytes->substr(0, newline), nullptr, false);
  if (header.is_discarded() || !header.is_object()) return reject("malformed header");
  const std::string_view markup = std::string_view(*bytes).substr(newline + 1);
  try {
    if (header.at("title").get<std::string>() != title) return reject("title mismatch");
    if (header.at("length").get<std::size_t>() != markup.size()) return reject("length mismatch");
    if (header.at("checksum").get<std::string>() != "sha256:" + sha256_hex(markup)) return reject("checksum mismatch");
    CacheEntry entry;
    entry.missing = header.value("missing", false);
    entry.page.ref.title = std::string(title);
    if (header.contains("source_hint") && header["source_hint"].is_string()) {
      entry.page.ref.source_hint = header["source_hint"].get<std::string>();
    }
    entry.page.markup = std::string(markup);
    entry.page.fetched_at = from_unix_seconds(header.at("fetched_at").get<std::int64_t>());
    entry.page.from_cache = true;
    return entry;
  } catch (const json::exception&) {
    return reject("malformed header");
  }
}

void PageCache::write_entry(std::string_view title, std::string_view markup, Timestamp when, bool missing,
                            const std::optional<std::string>& hint) {
  json header = {
      {"title", title},
      {"fetched_at", to_unix_seconds(when)},
      {"checksum", "sha256:" + sha256_hex(markup)},
      {"length", markup.size()},
      {"missing", missing},
  };
  if (hint) header["source_hint"] = *hint;
  const auto path = entry_path(title);
  // Write-then-rename keeps readers from ever seeing a half-written entry.
  std::ostringstream tmp_name;
  tmp_name << path.filename().string() << ".tmp." << std::this_thread::get_id() << '.' << g_temp_counter++;
  const auto tmp = dir_ / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot write cache entry '{}'", tmp.string()));
    out << header.dump() << '\n';
    out.write(markup.data(), static_cast<std::streamsize>(markup.size()));
    if (!out) throw IoError(fmt::format("cannot write cache entry '{}'", tmp.string()));
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError(fmt::format("cannot move cache entry into place: {}", ec.message()));
}

void PageCache::store(const RawPage& page) {
  write_entry(page.ref.title, page.markup, page.fetched_at, false, page.ref.source_hint);
}

void PageCache::store_missing(std::string_view title, Timestamp when) {
  write_entry(title, "", when, true, std::nullopt);
}

std::optional<RawPage> cache_lookup(const PageRef& ref, const fs::path& cache_dir, const WarningSink& warn) {
  if (!fs::is_directory(cache_dir)) return std::nullopt;
  PageCache cache(cache_dir, warn);
  auto entry = cache.lookup(ref.title);
  if (!entry || entry->missing) return std::nullopt;
  return std::move(entry->page);
}

// ---------------------------------------------------------------------------
// HTTP

HttpResponse HttplibTransport::get(const std::string& url, const std::string& user_agent,
                                   std::chrono::milliseconds timeout) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw NetworkError(fmt::format("not an absolute URL: '{}'", url));
  const auto path_start = url.find('/', scheme_end + 3);
  const std::string origin = path_start == std::string::npos ? url : url.substr(0, path_start);
  const std::string target = path_start == std::string::npos ? "/" : url.substr(path_start);

  httplib::Client client(origin);
  if (!client.is_valid()) throw NetworkError(fmt::format("unsupported URL '{}'", url));
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_follow_location(true);
  auto res = client.Get(target, httplib::Headers{{"User-Agent", user_agent}});
  if (!res) throw NetworkError(fmt::format("GET {} failed: {}", url, httplib::to_string(res.error())));
  return HttpResponse{res->status, res->body};
}

RateLimiter::RateLimiter(double rate_per_second, Clock& clock) : clock_(clock) {
  if (!(rate_per_second > 0.0)) throw ConfigError("rate limit must be positive");
  if (rate_per_second >= 1.0) {
    capacity_ = static_cast<std::size_t>(std::floor(rate_per_second));
    window_ = std::chrono::seconds{1};
  } else {
    capacity_ = 1;
    window_ = std::chrono::nanoseconds{static_cast<std::int64_t>(std::ceil(1e9 / rate_per_second))};
  }
}

void RateLimiter::acquire() {
  auto now = clock_.now();
  while (!issued_.empty() && issued_.front() + window_ <= now) issued_.pop_front();
  if (issued_.size() >= capacity_) {
    clock_.sleep_for(issued_.front() + window_ - now);
    now = clock_.now();
    while (!issued_.empty() && issued_.front() + window_ <= now) issued_.pop_front();
  }
  issued_.push_back(now);
}

// ---------------------------------------------------------------------------
// Sources

RawPage FixtureSource::fetch(const PageRef& ref) {
  std::string title = ref.title;
  for (int hops = 0;; ++hops) {
    auto markup = corpus_.read(title);
    if (!markup) throw PageNotFound(fmt::format("page '{}' not in corpus", title));
    if (auto target = redirect_target(*markup)) {
      if (hops == kMaxRedirectDepth) {
        throw RedirectLoop(fmt::format("'{}' exceeds {} redirects", ref.title, kMaxRedirectDepth));
      }
      title = std::move(*target);
      continue;
    }
    RawPage page;
    page.ref = PageRef(title);
    page.markup = std::move(*markup);
    return page;
  }
}

LiveSource::LiveSource(SourceConfig cfg, HttpTransport& transport, Clock& clock, WarningSink warn)
    : cfg_(std::move(cfg)),
      transport_(transport),
      clock_(clock),
      warn_(std::move(warn)),
      limiter_((cfg_.validate(), cfg_.rate_limit), clock) {
  if (!cfg_.cache_dir.empty()) cache_.emplace(cfg_.cache_dir, warn_);
}

std::string LiveSource::request_url(std::string_view title) const {
  const char sep = cfg_.base_url.find('?') == std::string::npos ? '?' : '&';
  return fmt::format("{}{}action=parse&format=json&formatversion=2&prop=text&page={}", cfg_.base_url, sep,
                     httplib::detail::encode_query_param(normalize_title(title)));
}

std::optional<RawPage> LiveSource::fetch_network(const std::string& title) {
  const auto url = request_url(title);
  std::string last_error;
  for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
    if (attempt > 0) clock_.sleep_for(std::chrono::milliseconds{500} * (1 << (attempt - 1)));
    limiter_.acquire();
    ++requests_;
    HttpResponse res;
    try {
      res = transport_.get(url, cfg_.user_agent, cfg_.request_timeout);
    } catch (const NetworkError& e) {
      last_error = e.what();
      continue;
    }
    if (res.status == 429 || res.status >= 500) {
      last_error = fmt::format("HTTP {}", res.status);
      continue;
    }
    if (res.status == 404) return std::nullopt;
    if (res.status != 200) throw NetworkError(fmt::format("GET {} returned HTTP {}", url, res.status));

    const auto doc = json::parse(res.body, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
      last_error = "response is not JSON";
      continue;
    }
    if (doc.contains("error")) {
      const auto code = doc["error"].value("code", std::string{});
      if (code == "missingtitle" || code == "invalidtitle" || code == "nosuchpageid") return std::nullopt;
      last_error = fmt::format("API error '{}'", code);
      if (code == "ratelimited" || code == "maxlag") continue;
      throw NetworkError(fmt::format("GET {} failed: {}", url, last_error));
    }
    const auto parse = doc.value("parse", json::object());
    std::string markup;
    if (parse.contains("text")) {
      const auto& text = parse["text"];
      if (text.is_string()) {
        markup = text.get<std::string>();
      } else if (text.is_object() && text.contains("*")) {
        markup = text["*"].get<std::string>();
      }
    }
    if (markup.empty()) return std::nullopt;
    RawPage page;
    page.ref.title = title;
    if (parse.contains("revid") && parse["revid"].is_number_integer()) {
      page.ref.source_hint = std::to_string(parse["revid"].get<std::int64_t>());
    }
    page.markup = std::move(markup);
    page.fetched_at = clock_.now();
    return page;
  }
  throw NetworkError(fmt::format("GET {} failed after {} attempts: {}", url, cfg_.max_retries + 1, last_error));
}

std::optional<RawPage> LiveSource::fetch_one(const std::string& title) {
  if (cache_) {
    if (auto hit = cache_->lookup(title)) {
      if (hit->missing) return std::nullopt;
      return std::move(hit->page);
    }
  }
  auto page = fetch_network(title);
  if (cache_) {
    if (page) {
      cache_->store(*page);
    } else {
      cache_->store_missing(title, clock_.now());
    }
  }
  return page;
}

RawPage LiveSource::fetch(const PageRef& ref) {
  std::string title = ref.title;
  for (int hops = 0;; ++hops) {
    auto page = fetch_one(title);
    if (!page) throw PageNotFound(fmt::format("page '{}' does not exist", title));
    if (auto target = redirect_target(page->markup)) {
      if (hops == kMaxRedirectDepth) {
        throw RedirectLoop(fmt::format("'{}' exceeds {} redirects", ref.title, kMaxRedirectDepth));
      }
      title = std::move(*target);
      continue;
    }
    return std::move(*page);
  }
}

namespace {

class OwningLiveSource final : public ContentSource {
 public:
  OwningLiveSource(const SourceConfig& cfg, WarningSink warn) : live_(cfg, transport_, clock_, std::move(warn)) {}
  RawPage fetch(const PageRef& ref) override { return live_.fetch(ref); }

 private:
  HttplibTransport transport_;
  SystemClock clock_;
  LiveSource live_;
};

}  // namespace

std::unique_ptr<ContentSource> open_source(const SourceConfig& cfg, WarningSink warn) {
  cfg.validate();
  if (cfg.mode == SourceMode::fixture) return std::make_unique<FixtureSource>(FixtureCorpus::load(cfg.corpus_path));
  return std::make_unique<OwningLiveSource>(cfg, std::move(warn));
}

RawPage fetch_page(const PageRef& ref, const SourceConfig& cfg) { return open_source(cfg)->fetch(ref); }

}  // namespace wikiindex
