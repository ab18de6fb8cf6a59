#include "wikiindex/wiki_index.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "wikiindex/errors.hpp"

namespace wikiindex {

RefSequence build_ref_sequence(std::vector<MentionEntry> pairs) {
  std::erase_if(pairs, [](const MentionEntry& e) { return e.mentions == 0; });
  std::sort(pairs.begin(), pairs.end(), [](const MentionEntry& a, const MentionEntry& b) {
    if (a.mentions != b.mentions) return a.mentions > b.mentions;
    return a.title < b.title;
  });
  RefSequence seq;
  seq.counts.reserve(pairs.size());
  seq.source_titles.reserve(pairs.size());
  for (auto& e : pairs) {
    seq.counts.push_back(e.mentions);
    seq.source_titles.push_back(std::move(e.title));
  }
  return seq;
}

std::size_t compute_wh(const std::vector<std::size_t>& counts) {
  // counts is non-increasing, so the predicate counts[i-1] >= i holds on a
  // prefix; binary search for its end.
  std::size_t lo = 0;
  std::size_t hi = counts.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (counts[mid] >= mid + 1) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo;
}

std::size_t compute_wh(const RefSequence& seq) { return compute_wh(seq.counts); }

GrowthFunction GrowthFunction::sqrt() {
  return {GrowthKind::sqrt, "sqrt", [](std::size_t n) { return std::sqrt(static_cast<double>(n)); }};
}

GrowthFunction GrowthFunction::identity() {
  return {GrowthKind::identity, "identity", [](std::size_t n) { return static_cast<double>(n); }};
}

GrowthFunction GrowthFunction::log1p() {
  return {GrowthKind::log1p, "log1p", [](std::size_t n) { return std::log1p(static_cast<double>(n)); }};
}

GrowthFunction GrowthFunction::custom(std::string descriptor, std::function<double(std::size_t)> f) {
  if (!f) throw InvalidFunction("custom growth function is empty");
  return {GrowthKind::custom, std::move(descriptor), std::move(f)};
}

GrowthFunction GrowthFunction::parse(std::string_view name) {
  if (name == "sqrt") return sqrt();
  if (name == "identity") return identity();
  if (name == "log1p") return log1p();
  throw ConfigError(fmt::format("unknown growth function '{}' (expected sqrt, identity or log1p)", name));
}

double GrowthFunction::operator()(std::size_t n) const {
  if (!f_) return std::sqrt(static_cast<double>(n));
  return f_(n);
}

WikiIndexResult compute_wi(std::size_t wh, std::size_t n, const GrowthFunction& f) {
  if (wh > n) throw ConfigError(fmt::format("WH ({}) cannot exceed N ({})", wh, n));
  if (f.kind() == GrowthKind::custom) {
    double prev = f(0);
    for (std::size_t i = 1; i <= n; ++i) {
      const double cur = f(i);
      if (!(cur >= prev)) {
        throw InvalidFunction(fmt::format("growth function '{}' decreases between {} and {}", f.descriptor(), i - 1, i));
      }
      prev = cur;
    }
  }
  WikiIndexResult r;
  r.n = n;
  r.wh = wh;
  r.f_of_n = f(n);
  r.wi_raw = static_cast<double>(wh) * r.f_of_n;
  r.wi_rounded = std::llround(r.wi_raw);
  r.growth = f.descriptor();
  return r;
}

WikiIndexResult wiki_index(const std::vector<MentionEntry>& pairs, const GrowthFunction& f) {
  const auto seq = build_ref_sequence(pairs);
  return compute_wi(compute_wh(seq), seq.size(), f);
}

std::string format_wi_line(const WikiIndexResult& r) {
  auto factor = fmt::format("{:.2f}", r.f_of_n);
  while (factor.back() == '0') factor.pop_back();
  if (factor.back() == '.') factor.pop_back();
  return fmt::format("WI = {} × {} = {}", r.wh, factor, r.wi_rounded);
}

}  // namespace wikiindex
