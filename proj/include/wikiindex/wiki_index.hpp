#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wikiindex {

struct MentionEntry {
  std::string title;
  std::size_t mentions = 0;

  friend bool operator==(const MentionEntry&, const MentionEntry&) = default;
};

// R_1 >= R_2 >= ... >= R_N, every count >= 1. Ties ordered by title.
struct RefSequence {
  std::vector<std::size_t> counts;
  std::vector<std::string> source_titles;

  std::size_t size() const { return counts.size(); }
  bool empty() const { return counts.empty(); }
};

RefSequence build_ref_sequence(std::vector<MentionEntry> pairs);

// Largest i (1-based) with counts[i] >= i; 0 for an empty sequence.
std::size_t compute_wh(const RefSequence& seq);
std::size_t compute_wh(const std::vector<std::size_t>& descending_counts);

enum class GrowthKind { sqrt, identity, log1p, custom };

// Non-decreasing f(N) multiplied onto WH.
class GrowthFunction {
 public:
  GrowthFunction() = default;  // sqrt

  static GrowthFunction sqrt();
  static GrowthFunction identity();
  static GrowthFunction log1p();
  static GrowthFunction custom(std::string descriptor, std::function<double(std::size_t)> f);
  // "sqrt" | "identity" | "log1p"; throws ConfigError otherwise.
  static GrowthFunction parse(std::string_view name);

  GrowthKind kind() const { return kind_; }
  const std::string& descriptor() const { return descriptor_; }
  double operator()(std::size_t n) const;

 private:
  GrowthFunction(GrowthKind kind, std::string descriptor, std::function<double(std::size_t)> f)
      : kind_(kind), descriptor_(std::move(descriptor)), f_(std::move(f)) {}

  GrowthKind kind_ = GrowthKind::sqrt;
  std::string descriptor_ = "sqrt";
  std::function<double(std::size_t)> f_;
};

struct WikiIndexResult {
  std::size_t n = 0;
  std::size_t wh = 0;
  double f_of_n = 0.0;
  double wi_raw = 0.0;
  long long wi_rounded = 0;  // half away from zero
  std::string growth = "sqrt";
};

// Throws ConfigError if wh > n; InvalidFunction if a custom f decreases on 0..n.
WikiIndexResult compute_wi(std::size_t wh, std::size_t n, const GrowthFunction& f = {});

// build_ref_sequence + compute_wh + compute_wi.
WikiIndexResult wiki_index(const std::vector<MentionEntry>& pairs, const GrowthFunction& f = {});

// "WI = <WH> × <f(N)> = <WI>", f(N) printed with at most two decimals.
std::string format_wi_line(const WikiIndexResult& r);

}  // namespace wikiindex
