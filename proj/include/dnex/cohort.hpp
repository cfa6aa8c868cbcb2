#pragma once

// Stratified cohort sampling: per field x region cell, the bottom citation
// quartile feeds the Low group and the top quartile the High group.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "core_model.hpp"

namespace dnex {

struct CohortConfig {
  int per_cell_per_group = 10;
  std::int64_t citation_floor = kDefaultCitationFloor;
  std::uint64_t rng_seed = 0;

  void validate() const {
    if (per_cell_per_group < 1) throw Error(ErrorCode::BadConfig, "per_cell_per_group must be >= 1");
    if (citation_floor < 0) throw Error(ErrorCode::BadConfig, "citation_floor must be >= 0");
  }
};

/// Quantile by linear interpolation between order statistics
/// (h = (n - 1) p). `sorted` must be ascending and nonempty.
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

struct CellReport {
  FieldOfScience field{};
  Region region{};
  std::size_t size = 0;
  double q1 = 0.0;
  double q3 = 0.0;
  std::size_t low_eligible = 0;
  std::size_t high_eligible = 0;
  std::size_t low_selected = 0;
  std::size_t high_selected = 0;
  std::size_t deficit = 0;  // 2 * per_cell_per_group - selected

  bool empty() const noexcept { return size == 0; }
  bool short_cell() const noexcept { return deficit > 0; }
};

struct CohortResult {
  std::vector<SeedAuthor> seeds;  // group set on every entry
  std::vector<CellReport> cells;  // all 80 cells, field-major
  std::size_t pool_size = 0;
  std::size_t below_floor = 0;
  std::size_t duplicates = 0;

  std::size_t requested() const noexcept { return cells.size(); }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Unbiased draw in [0, n) from the raw engine output (portable, unlike
// std::uniform_int_distribution).
inline std::size_t draw_below(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r < limit) return static_cast<std::size_t>(r % bound);
  }
}

// Uniform sample of k items without replacement (partial Fisher-Yates).
inline std::vector<const SeedAuthor*> sample(std::vector<const SeedAuthor*> items, std::size_t k, std::mt19937_64& rng) {
  k = std::min(k, items.size());
  for (std::size_t i = 0; i < k; ++i) std::swap(items[i], items[i + draw_below(rng, items.size() - i)]);
  items.resize(k);
  return items;
}

}  // namespace detail

/// Samples up to per_cell_per_group Low and High authors in each of the 80
/// field x region cells. Boundary ties are eligible. Short cells are
/// reported, never padded. Output is independent of pool order.
inline CohortResult build_cohort(const std::vector<SeedAuthor>& pool, const CohortConfig& config) {
  config.validate();
  CohortResult result;
  result.pool_size = pool.size();

  std::map<std::pair<int, int>, std::vector<const SeedAuthor*>> cells;
  std::set<std::string> seen;
  for (const auto& a : pool) {
    if (a.citation_count <= config.citation_floor) {
      ++result.below_floor;
      continue;
    }
    if (!seen.insert(a.id).second) {
      ++result.duplicates;
      continue;
    }
    cells[{static_cast<int>(a.field), static_cast<int>(a.region)}].push_back(&a);
  }

  const auto per = static_cast<std::size_t>(config.per_cell_per_group);
  for (auto field : kAllFields) {
    for (auto region : kAllRegions) {
      const int fi = static_cast<int>(field), ri = static_cast<int>(region);
      CellReport rep;
      rep.field = field;
      rep.region = region;
      auto members = cells[{fi, ri}];
      rep.size = members.size();
      if (members.empty()) {
        rep.deficit = 2 * per;
        result.cells.push_back(rep);
        continue;
      }
      std::sort(members.begin(), members.end(), [](const SeedAuthor* a, const SeedAuthor* b) { return a->id < b->id; });
      std::vector<double> counts;
      for (const auto* m : members) counts.push_back(static_cast<double>(m->citation_count));
      std::sort(counts.begin(), counts.end());
      rep.q1 = quantile_sorted(counts, 0.25);
      rep.q3 = quantile_sorted(counts, 0.75);

      std::vector<const SeedAuthor*> low_pool, high_pool;
      for (const auto* m : members) {
        if (static_cast<double>(m->citation_count) <= rep.q1) low_pool.push_back(m);
        if (static_cast<double>(m->citation_count) >= rep.q3) high_pool.push_back(m);
      }
      rep.low_eligible = low_pool.size();
      rep.high_eligible = high_pool.size();

      std::mt19937_64 rng(detail::splitmix64(config.rng_seed ^ detail::splitmix64(static_cast<std::uint64_t>(fi * 8 + ri))));
      const auto low = detail::sample(low_pool, per, rng);
      std::set<std::string> taken;
      for (const auto* m : low) taken.insert(m->id);
      std::erase_if(high_pool, [&](const SeedAuthor* m) { return taken.contains(m->id); });
      const auto high = detail::sample(high_pool, per, rng);

      rep.low_selected = low.size();
      rep.high_selected = high.size();
      rep.deficit = 2 * per - low.size() - high.size();
      result.cells.push_back(rep);

      std::vector<SeedAuthor> picked;
      for (const auto* m : high) {
        picked.push_back(*m);
        picked.back().group = CitationGroup::High;
      }
      for (const auto* m : low) {
        picked.push_back(*m);
        picked.back().group = CitationGroup::Low;
      }
      std::sort(picked.begin(), picked.end(), [](const SeedAuthor& a, const SeedAuthor& b) {
        return std::pair(*a.group, a.id) < std::pair(*b.group, b.id);
      });
      for (auto& p : picked) result.seeds.push_back(std::move(p));
    }
  }
  return result;
}

/// Human-readable audit: totals, then every empty or short cell.
inline std::string cohort_audit_text(const CohortResult& r, const CohortConfig& config) {
  std::ostringstream os;
  os << "pool authors: " << r.pool_size << "\n";
  os << "excluded at citation floor (<= " << config.citation_floor << "): " << r.below_floor << "\n";
  os << "duplicate ids dropped: " << r.duplicates << "\n";
  os << "cohort seeds: " << r.seeds.size() << " of " << r.cells.size() * 2 * static_cast<std::size_t>(config.per_cell_per_group)
     << " requested\n";
  std::size_t empty = 0, shorts = 0;
  for (const auto& c : r.cells) {
    if (c.empty()) ++empty;
    else if (c.short_cell()) ++shorts;
  }
  os << "empty cells: " << empty << "\n";
  os << "short cells: " << shorts << "\n";
  for (const auto& c : r.cells) {
    if (!c.short_cell()) continue;
    os << (c.empty() ? "EmptyCell" : "ShortCell") << "\t" << to_string(c.field) << "\t" << to_string(c.region)
       << "\tsize=" << c.size << "\tlow=" << c.low_selected << "/" << config.per_cell_per_group
       << "\thigh=" << c.high_selected << "/" << config.per_cell_per_group << "\tdeficit=" << c.deficit << "\n";
  }
  return os.str();
}

struct FiveNumberSummary {
  std::string facet_kind;  // "field" or "region"
  std::string facet;
  std::string group;  // "All", "High" or "Low"
  std::size_t n = 0;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;

  friend bool operator==(const FiveNumberSummary&, const FiveNumberSummary&) = default;
};

inline FiveNumberSummary five_numbers(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  FiveNumberSummary s;
  s.n = xs.size();
  s.min = xs.front();
  s.q1 = quantile_sorted(xs, 0.25);
  s.median = quantile_sorted(xs, 0.5);
  s.q3 = quantile_sorted(xs, 0.75);
  s.max = xs.back();
  return s;
}

/// Natural-log citation five-number summaries per field and per region,
/// for all seeds and split by group. Facets without seeds are skipped.
inline std::vector<FiveNumberSummary> log_citation_distribution(const std::vector<SeedAuthor>& cohort) {
  std::vector<FiveNumberSummary> out;
  const auto emit = [&](std::string_view kind, std::string_view facet, auto&& pred) {
    for (std::string_view group : {"All", "High", "Low"}) {
      std::vector<double> xs;
      for (const auto& s : cohort) {
        if (!pred(s)) continue;
        if (group != "All" && (!s.group || to_string(*s.group) != group)) continue;
        xs.push_back(std::log(static_cast<double>(s.citation_count)));
      }
      if (xs.empty()) continue;
      auto sum = five_numbers(std::move(xs));
      sum.facet_kind = kind;
      sum.facet = facet;
      sum.group = group;
      out.push_back(std::move(sum));
    }
  };
  for (auto f : kAllFields) emit("field", to_string(f), [f](const SeedAuthor& s) { return s.field == f; });
  for (auto r : kAllRegions) emit("region", to_string(r), [r](const SeedAuthor& s) { return s.region == r; });
  return out;
}

}  // namespace dnex
