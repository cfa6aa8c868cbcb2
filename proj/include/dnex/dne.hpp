#pragma once

// Discoverable Network Extraction: per-seed scores, threshold sweeps and
// group/facet aggregation.

#include <cmath>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core_model.hpp"
#include "name_match.hpp"

namespace dnex {

struct BaselineCounts {
  std::size_t gs_count = 0;
  std::optional<std::size_t> oa_count;

  /// Google Scholar: the profile's co-author count. OpenAlex: the smaller of
  /// the two platform counts.
  std::size_t denominator(BaselineSource baseline) const {
    if (gs_count == 0) throw Error(ErrorCode::ZeroDenominator, "Google Scholar co-author count is 0");
    if (baseline == BaselineSource::GoogleScholar) return gs_count;
    if (!oa_count) throw Error(ErrorCode::MissingCount, "OpenAlex baseline needs an OpenAlex co-author count");
    if (*oa_count == 0) throw Error(ErrorCode::ZeroDenominator, "OpenAlex co-author count is 0");
    return std::min(gs_count, *oa_count);
  }
};

/// Scores one match. seed_id and model_id are left for the caller to fill.
inline DNEScore compute_dne(const MatchResult& match, BaselineSource baseline, const BaselineCounts& counts,
                            double epsilon) {
  DNEScore s;
  s.baseline = baseline;
  s.epsilon = epsilon;
  s.discovered = match.discovered_count;
  s.denominator = counts.denominator(baseline);
  s.value = clamped_ratio(s.discovered, s.denominator);
  return s;
}

/// One score per threshold. Thresholds must be strictly ascending and each
/// above 0.5; scores come back in the same order.
inline std::vector<DNEScore> threshold_sweep(const std::vector<std::string>& baseline_names,
                                             const std::vector<std::string>& generated_names,
                                             const BaselineCounts& counts, BaselineSource baseline,
                                             const std::vector<double>& epsilons) {
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    (void)MatchConfig{epsilons[i]};
    if (i > 0 && !(epsilons[i - 1] < epsilons[i]))
      throw Error(ErrorCode::InvalidThreshold, "epsilon list must be strictly ascending");
  }
  const FamilyList base(baseline_names);
  const FamilyList gen(generated_names);
  std::vector<DNEScore> out;
  out.reserve(epsilons.size());
  for (double eps : epsilons) out.push_back(compute_dne(match_coauthors(base, gen, MatchConfig{eps}), baseline, counts, eps));
  return out;
}

enum class Facet { Overall, ByField, ByRegion };

constexpr std::string_view to_string(Facet f) noexcept {
  switch (f) {
    case Facet::Overall: return "overall";
    case Facet::ByField: return "field";
    case Facet::ByRegion: return "region";
  }
  return "";
}

struct CellKey {
  std::string model_id;
  BaselineSource baseline{};
  double epsilon = 0.0;
  Facet facet = Facet::Overall;
  int facet_index = 0;  // enum position of the field or region; 0 for overall
  std::optional<CitationGroup> group;

  std::string facet_label() const {
    switch (facet) {
      case Facet::Overall: return "Overall";
      case Facet::ByField: return std::string(to_string(kAllFields.at(static_cast<std::size_t>(facet_index))));
      case Facet::ByRegion: return std::string(to_string(kAllRegions.at(static_cast<std::size_t>(facet_index))));
    }
    return "";
  }

  auto operator<=>(const CellKey&) const = default;
  bool operator==(const CellKey&) const = default;
};

struct AggregateCell {
  CellKey key;
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;  // sample SD (n - 1); 0 when n == 1
};

using SeedIndex = std::map<std::string, SeedAuthor>;

inline SeedIndex index_seeds(const std::vector<SeedAuthor>& seeds) {
  SeedIndex idx;
  for (const auto& s : seeds) idx.emplace(s.id, s);
  return idx;
}

namespace detail {
inline int facet_index_of(const SeedAuthor& s, Facet facet) {
  switch (facet) {
    case Facet::Overall: return 0;
    case Facet::ByField: return static_cast<int>(s.field);
    case Facet::ByRegion: return static_cast<int>(s.region);
  }
  return 0;
}

inline AggregateCell summarize(const CellKey& key, const std::vector<double>& xs) {
  AggregateCell c{key, xs.size(), 0.0, 0.0};
  double sum = 0.0;
  for (double x : xs) sum += x;
  c.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - c.mean) * (x - c.mean);
    c.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return c;
}
}  // namespace detail

/// Mean and sample SD of DNE values per (model, baseline, epsilon, facet
/// value[, group]) cell, in key order. Empty cells are not emitted.
inline std::vector<AggregateCell> aggregate(const std::vector<DNEScore>& scores, const SeedIndex& seeds, Facet facet,
                                            bool split_by_group) {
  std::map<CellKey, std::vector<double>> cells;
  for (const auto& s : scores) {
    const auto it = seeds.find(s.seed_id);
    if (it == seeds.end()) throw Error(ErrorCode::UnknownSeed, "score refers to unknown seed " + s.seed_id);
    CellKey key{s.model_id, s.baseline, s.epsilon, facet, detail::facet_index_of(it->second, facet), std::nullopt};
    if (split_by_group) {
      if (!it->second.group) throw Error(ErrorCode::BadInput, "seed " + s.seed_id + " has no citation group");
      key.group = it->second.group;
    }
    cells[key].push_back(s.value);
  }
  std::vector<AggregateCell> out;
  out.reserve(cells.size());
  for (const auto& [key, xs] : cells) out.push_back(detail::summarize(key, xs));
  return out;
}

/// Merges two summaries of disjoint samples (pairwise mean/variance update).
inline AggregateCell combine(const AggregateCell& a, const AggregateCell& b) {
  if (a.n == 0) return b;
  if (b.n == 0) return a;
  AggregateCell c{a.key, a.n + b.n, 0.0, 0.0};
  const double na = static_cast<double>(a.n), nb = static_cast<double>(b.n), n = na + nb;
  const double delta = b.mean - a.mean;
  c.mean = a.mean + delta * nb / n;
  const double m2 = a.sd * a.sd * (na - 1) + b.sd * b.sd * (nb - 1) + delta * delta * na * nb / n;
  c.sd = c.n > 1 ? std::sqrt(m2 / (n - 1)) : 0.0;
  return c;
}

}  // namespace dnex
