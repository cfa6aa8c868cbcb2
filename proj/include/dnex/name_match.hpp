#pragma once

// Surname-level fuzzy matching between a baseline co-author list and a
// generated one.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "text.hpp"

namespace dnex {

/// Default relaxation threshold on last-name similarity.
inline constexpr double kDefaultEpsilon = 0.6;

/// Surname particles absorbed into the family name when they immediately
/// precede it. Anything else stays with the given names.
inline constexpr std::array<std::string_view, 6> kSurnameParticles = {"van", "de", "del", "von", "bin", "al"};

struct NormalizedName {
  std::string original;
  std::string family;
  std::vector<std::string> given_tokens;

  std::string reassembled() const {
    auto parts = given_tokens;
    parts.push_back(family);
    return text::join(parts, " ");
  }

  /// Key used for duplicate detection.
  std::string key() const { return reassembled(); }

  friend bool operator==(const NormalizedName&, const NormalizedName&) = default;
};

namespace detail {

inline bool is_particle(std::string_view tok) {
  return std::find(kSurnameParticles.begin(), kSurnameParticles.end(), tok) != kSurnameParticles.end();
}

// Tokens of the folded name: letters and digits are kept, whitespace,
// hyphens and underscores separate, every other symbol is dropped.
inline std::vector<std::string> name_tokens(std::string_view raw) {
  const std::u32string cps = text::to_u32(text::fold(raw));
  std::vector<std::string> tokens;
  icu::UnicodeString cur;
  bool cur_alpha = false;
  const auto flush = [&] {
    if (!cur.isEmpty() && cur_alpha) {
      std::string s;
      cur.toUTF8String(s);
      tokens.push_back(std::move(s));
    }
    cur.remove();
    cur_alpha = false;
  };
  for (char32_t cp32 : cps) {
    const auto cp = static_cast<UChar32>(cp32);
    if (u_isUWhiteSpace(cp) || cp == '-' || cp == '_' || cp == 0x2010 || cp == 0x2011 || cp == 0x2013) {
      flush();
    } else if (u_isalpha(cp)) {
      cur.append(cp);
      cur_alpha = true;
    } else if (u_isdigit(cp)) {
      cur.append(cp);
    }
  }
  flush();
  return tokens;
}

}  // namespace detail

/// Unicode-folds, lowercases and tokenises a personal name. The last token
/// is the family name, together with any listed particles right before it.
/// Throws EmptyName when no alphabetic token is left.
inline NormalizedName normalize_name(std::string_view raw) {
  auto tokens = detail::name_tokens(raw);
  if (tokens.empty()) throw Error(ErrorCode::EmptyName, "no alphabetic token in '" + std::string(raw) + "'");

  std::size_t family_start = tokens.size() - 1;
  while (family_start > 0 && detail::is_particle(tokens[family_start - 1])) --family_start;

  NormalizedName n;
  n.original = std::string(raw);
  std::vector<std::string> family(tokens.begin() + static_cast<std::ptrdiff_t>(family_start), tokens.end());
  n.family = text::join(family, " ");
  n.given_tokens.assign(tokens.begin(), tokens.begin() + static_cast<std::ptrdiff_t>(family_start));
  return n;
}

inline std::optional<NormalizedName> try_normalize_name(std::string_view raw) {
  try {
    return normalize_name(raw);
  } catch (const Error&) {
    return std::nullopt;
  }
}

/// Unit-cost edit distance over Unicode code points.
inline std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0u : 1u)});
      diag = up;
    }
  }
  return row[b.size()];
}

inline std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(std::u32string_view(text::to_u32(a)), std::u32string_view(text::to_u32(b)));
}

/// 1 - levenshtein / max length, in code points; 1.0 for two empty strings.
inline double similarity(std::string_view a, std::string_view b) {
  const auto ua = text::to_u32(a);
  const auto ub = text::to_u32(b);
  const std::size_t longest = std::max(ua.size(), ub.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(ua, ub)) / static_cast<double>(longest);
}

/// Absorbs floating-point noise in 1 - d/n when comparing against epsilon.
inline constexpr double kSimilarityTolerance = 1e-12;

inline bool meets_threshold(double sim, double epsilon) noexcept { return sim + kSimilarityTolerance >= epsilon; }

class MatchConfig {
 public:
  explicit MatchConfig(double epsilon = kDefaultEpsilon) : epsilon_(epsilon) {
    if (!(epsilon > 0.5 && epsilon <= 1.0))
      throw Error(ErrorCode::InvalidThreshold, "epsilon must lie in (0.5, 1.0], got " + std::to_string(epsilon));
  }

  double epsilon() const noexcept { return epsilon_; }

 private:
  double epsilon_;
};

struct MatchPair {
  std::size_t baseline_index;
  std::size_t generated_index;
  double similarity;

  friend bool operator==(const MatchPair&, const MatchPair&) = default;
};

struct MatchResult {
  std::vector<bool> discovered_flags;
  std::size_t discovered_count = 0;
  std::vector<MatchPair> pairs;
};

/// Precomputed family-name code points for one side of a match.
struct FamilyList {
  std::vector<std::optional<std::u32string>> families;

  explicit FamilyList(const std::vector<std::string>& names) {
    families.reserve(names.size());
    for (const auto& n : names) {
      if (auto norm = try_normalize_name(n))
        families.emplace_back(text::to_u32(norm->family));
      else
        families.emplace_back(std::nullopt);
    }
  }
};

/// A baseline co-author is discovered when some generated name's family
/// similarity reaches epsilon. Matching is existence-based: one generated
/// name may discover several baseline entries. For each discovered entry the
/// best generated index is recorded, ties going to the lowest index.
/// Names that normalise to nothing never match.
inline MatchResult match_coauthors(const FamilyList& baseline, const FamilyList& generated, const MatchConfig& config) {
  MatchResult r;
  r.discovered_flags.assign(baseline.families.size(), false);
  for (std::size_t i = 0; i < baseline.families.size(); ++i) {
    const auto& bf = baseline.families[i];
    if (!bf) continue;
    std::optional<MatchPair> best;
    for (std::size_t j = 0; j < generated.families.size(); ++j) {
      const auto& gf = generated.families[j];
      if (!gf) continue;
      const std::size_t longest = std::max(bf->size(), gf->size());
      const double sim =
          longest == 0 ? 1.0 : 1.0 - static_cast<double>(levenshtein(*bf, *gf)) / static_cast<double>(longest);
      if (!best || sim > best->similarity) best = MatchPair{i, j, sim};
    }
    if (best && meets_threshold(best->similarity, config.epsilon())) {
      r.discovered_flags[i] = true;
      ++r.discovered_count;
      r.pairs.push_back(*best);
    }
  }
  return r;
}

inline MatchResult match_coauthors(const std::vector<std::string>& baseline, const std::vector<std::string>& generated,
                                   const MatchConfig& config) {
  return match_coauthors(FamilyList(baseline), FamilyList(generated), config);
}

/// Drops entries whose normalised full name was already seen; names that
/// fail to normalise are compared on their trimmed lowercase text. Order of
/// first occurrence is preserved.
inline std::vector<std::string> dedupe_names(const std::vector<std::string>& names) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& raw : names) {
    const auto trimmed = std::string(text::trim(raw));
    if (trimmed.empty()) continue;
    const auto norm = try_normalize_name(trimmed);
    std::string key = norm ? norm->key() : text::lower_ascii(trimmed);
    if (!seen.insert(std::move(key)).second) continue;
    out.push_back(trimmed);
  }
  return out;
}

}  // namespace dnex
