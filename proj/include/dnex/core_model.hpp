#pragma once

// Shared domain records. Everything here is an immutable value type.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "hash.hpp"
#include "regions.hpp"
#include "taxonomy.hpp"
#include "text.hpp"

namespace dnex {

enum class CitationGroup { High, Low };

constexpr std::string_view to_string(CitationGroup g) noexcept { return g == CitationGroup::High ? "High" : "Low"; }

inline std::optional<CitationGroup> parse_group(std::string_view s) {
  s = text::trim(s);
  if (s == "High") return CitationGroup::High;
  if (s == "Low") return CitationGroup::Low;
  return std::nullopt;
}

enum class BaselineSource { OpenAlex, GoogleScholar };

constexpr std::string_view to_string(BaselineSource b) noexcept {
  return b == BaselineSource::OpenAlex ? "openalex" : "google-scholar";
}

constexpr std::string_view display_name(BaselineSource b) noexcept {
  return b == BaselineSource::OpenAlex ? "OpenAlex" : "Google Scholar";
}

inline std::optional<BaselineSource> parse_baseline(std::string_view s) {
  s = text::trim(s);
  if (s == "openalex") return BaselineSource::OpenAlex;
  if (s == "google-scholar") return BaselineSource::GoogleScholar;
  return std::nullopt;
}

/// Minimum citation count (exclusive) for admission to the author pool.
inline constexpr std::int64_t kDefaultCitationFloor = 100;

struct SeedAuthor {
  std::string id;
  std::string full_name;
  FieldOfScience field{};
  std::string subfield;
  std::string affiliation;
  std::string country;
  Region region{};
  std::int64_t citation_count = 0;
  std::optional<CitationGroup> group;  // assigned by cohort sampling

  friend bool operator==(const SeedAuthor&, const SeedAuthor&) = default;
};

/// Untyped author record as it arrives from a pool export.
struct SeedCandidate {
  std::string full_name;
  std::string affiliation;
  std::string email_domain;
  std::string country;  // ISO-3166 alpha-2, possibly empty before resolution
  std::string subfield;
  std::int64_t citation_count = 0;
};

/// Stable seed identifier: first 16 hex digits of sha256(name \x1f affiliation).
inline std::string make_seed_id(std::string_view full_name, std::string_view affiliation) {
  std::string key(text::trim(full_name));
  key += '\x1f';
  key += text::trim(affiliation);
  return sha256_hex(key).substr(0, 16);
}

/// Checks run in this order and the first failure is reported: subfield,
/// country, citation count.
inline SeedAuthor validate_seed(const SeedCandidate& c, std::int64_t citation_floor = kDefaultCitationFloor) {
  if (!text::has_alpha(c.full_name)) throw Error(ErrorCode::BadInput, "seed has no usable name");
  const auto field = field_of_subfield(c.subfield);
  if (!field) throw Error(ErrorCode::UnknownSubfield, "'" + c.subfield + "' is not in the taxonomy");
  const CountryEntry* country = find_country(c.country);
  if (!country) throw Error(ErrorCode::UnknownCountry, "no region mapping for country '" + c.country + "'");
  if (c.citation_count <= citation_floor)
    throw Error(ErrorCode::CitationTooLow,
                std::to_string(c.citation_count) + " citations, need more than " + std::to_string(citation_floor));

  SeedAuthor s;
  s.full_name = std::string(text::trim(c.full_name));
  s.affiliation = std::string(text::trim(c.affiliation));
  s.id = make_seed_id(s.full_name, s.affiliation);
  s.field = *field;
  s.subfield = std::string(*canonical_subfield(c.subfield));
  s.country = std::string(country->code);
  s.region = country->region;
  s.citation_count = c.citation_count;
  return s;
}

struct CoAuthorNetwork {
  std::string seed_id;
  BaselineSource source{};
  std::string profile_id;
  std::vector<std::string> coauthors;
  std::string retrieved_at;  // ISO-8601 UTC

  /// Number of co-authors on the profile; for Google Scholar this is the k
  /// used in the prompt and in the denominator.
  std::size_t count() const noexcept { return coauthors.size(); }

  friend bool operator==(const CoAuthorNetwork&, const CoAuthorNetwork&) = default;
};

enum class ResponseClass { Valid, Fictional, Null };

constexpr std::string_view to_string(ResponseClass c) noexcept {
  switch (c) {
    case ResponseClass::Valid: return "Valid";
    case ResponseClass::Fictional: return "Fictional";
    case ResponseClass::Null: return "Null";
  }
  return "";
}

inline std::optional<ResponseClass> parse_response_class(std::string_view s) {
  s = text::trim(s);
  if (s == "Valid") return ResponseClass::Valid;
  if (s == "Fictional") return ResponseClass::Fictional;
  if (s == "Null") return ResponseClass::Null;
  return std::nullopt;
}

struct ProbeRecord {
  std::string seed_id;
  std::string model_id;
  std::string prompt;
  std::string raw_response;
  ResponseClass classification = ResponseClass::Null;
  std::vector<std::string> generated_names;
  std::string timestamp;
  std::size_t requested_k = 0;
  std::string error;  // transport failure, if any

  /// Names generated beyond the requested k.
  std::size_t overshoot() const noexcept {
    return generated_names.size() > requested_k ? generated_names.size() - requested_k : 0;
  }

  friend bool operator==(const ProbeRecord&, const ProbeRecord&) = default;
};

struct DNEScore {
  std::string seed_id;
  std::string model_id;
  BaselineSource baseline{};
  double epsilon = 0.6;
  std::size_t discovered = 0;
  std::size_t denominator = 1;
  double value = 0.0;

  /// Unclamped discovered/denominator, for audit.
  double raw_ratio() const noexcept {
    return static_cast<double>(discovered) / static_cast<double>(denominator);
  }

  friend bool operator==(const DNEScore&, const DNEScore&) = default;
};

/// min(1, discovered / denominator); a zero denominator yields 0.
constexpr double clamped_ratio(std::size_t discovered, std::size_t denominator) noexcept {
  if (denominator == 0) return 0.0;
  const double r = static_cast<double>(discovered) / static_cast<double>(denominator);
  return r > 1.0 ? 1.0 : r;
}

struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;

  friend bool operator==(const SampleSummary&, const SampleSummary&) = default;
};

enum class Stars { NotSignificant, One, Two, Three };

constexpr std::string_view to_string(Stars s) noexcept {
  switch (s) {
    case Stars::NotSignificant: return "ns";
    case Stars::One: return "*";
    case Stars::Two: return "**";
    case Stars::Three: return "***";
  }
  return "";
}

constexpr Stars stars_for(double p) noexcept {
  if (p < 0.001) return Stars::Three;
  if (p < 0.01) return Stars::Two;
  if (p < 0.05) return Stars::One;
  return Stars::NotSignificant;
}

struct TestResult {
  SampleSummary group_high;
  SampleSummary group_low;
  double t_stat = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  Stars stars = Stars::NotSignificant;

  friend bool operator==(const TestResult&, const TestResult&) = default;
};

}  // namespace dnex
