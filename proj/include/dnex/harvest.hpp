#pragma once

// Baseline co-author harvesting: profile search and verification,
// first-degree co-author collection, an on-disk cache, and offline
// country/region resolution.

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "core_model.hpp"
#include "http.hpp"
#include "json.hpp"
#include "name_match.hpp"
#include "regions.hpp"

namespace dnex {

// ---------------------------------------------------------------------------
// Region resolution

struct ResolvedCountry {
  std::string country;
  Region region{};
};

/// override > email ccTLD > affiliation keywords.
inline ResolvedCountry resolve_region(std::string_view affiliation, std::string_view email_domain,
                                      const std::optional<std::string>& country_override = std::nullopt) {
  const auto finish = [](std::string_view code, std::string_view how) {
    const auto* e = find_country(code);
    if (!e) throw Error(ErrorCode::Unresolvable, std::string(how) + " gave unmapped country '" + std::string(code) + "'");
    return ResolvedCountry{std::string(e->code), e->region};
  };
  if (country_override && !text::trim(*country_override).empty()) return finish(*country_override, "override");
  if (text::trim(affiliation).empty() && text::trim(email_domain).empty())
    throw Error(ErrorCode::Unresolvable, "no affiliation, email domain or override");
  if (auto c = country_from_email_domain(email_domain)) return finish(*c, "email domain");
  if (auto c = country_from_affiliation(affiliation)) return finish(*c, "affiliation");
  throw Error(ErrorCode::Unresolvable, "cannot place '" + std::string(affiliation) + "' / '" +
                                           std::string(email_domain) + "'");
}

// ---------------------------------------------------------------------------
// Profile verification

struct CandidateProfile {
  std::string id;
  std::string name;
  std::vector<std::string> affiliations;
  std::vector<std::string> interests;
};

enum class Verdict { Accepted, Rejected };

struct ProfileMatch {
  CandidateProfile candidate;
  Verdict verdict = Verdict::Rejected;
  double name_similarity = 0.0;
  std::vector<std::string> affiliation_overlap;
  std::vector<std::string> interest_overlap;
  std::vector<std::string> reasons;
};

inline constexpr double kProfileNameSimilarity = 0.9;

namespace detail {
inline const std::set<std::string, std::less<>>& evidence_stopwords() {
  static const std::set<std::string, std::less<>> words = {
      "a",       "an",       "and",     "at",      "center",  "centre",     "college",  "de",       "del",
      "department", "dept", "der",     "des",     "di",      "du",         "engineering", "faculty", "for",
      "in",      "institut", "institute", "la",    "lab",     "laboratory", "of",       "research", "school",
      "science", "sciences", "the",     "technology", "universidad", "universidade", "universita", "universite",
      "universitat", "university", "und", "y",
  };
  return words;
}

inline std::set<std::string> evidence_tokens(std::string_view s) {
  std::set<std::string> out;
  std::string cur;
  const std::string folded = text::fold(s);
  for (char c : folded) {
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || static_cast<unsigned char>(c) >= 0x80) {
      cur.push_back(c);
    } else if (!cur.empty()) {
      out.insert(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.insert(std::move(cur));
  std::erase_if(out, [](const std::string& t) { return t.size() < 2 || evidence_stopwords().contains(t); });
  return out;
}

inline std::vector<std::string> overlap(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::vector<std::string> out;
  for (const auto& t : a)
    if (b.contains(t)) out.push_back(t);
  return out;
}

inline std::string full_name_key(std::string_view name) {
  const auto n = try_normalize_name(name);
  return n ? n->key() : text::lower_ascii(text::trim(name));
}
}  // namespace detail

/// Accepted iff normalised full-name similarity >= 0.9 and the candidate
/// shares at least one informative token with the seed's affiliation or
/// with its field/subfield. Failed checks are listed in `reasons`; a single
/// shared affiliation token is noted as weak evidence.
inline ProfileMatch verify_profile(const SeedAuthor& seed, const CandidateProfile& candidate) {
  ProfileMatch m;
  m.candidate = candidate;
  m.name_similarity = similarity(detail::full_name_key(seed.full_name), detail::full_name_key(candidate.name));

  std::set<std::string> cand_aff, cand_int;
  for (const auto& a : candidate.affiliations) cand_aff.merge(detail::evidence_tokens(a));
  for (const auto& i : candidate.interests) cand_int.merge(detail::evidence_tokens(i));
  auto seed_int = detail::evidence_tokens(seed.subfield);
  seed_int.merge(detail::evidence_tokens(to_string(seed.field)));
  m.affiliation_overlap = detail::overlap(detail::evidence_tokens(seed.affiliation), cand_aff);
  m.interest_overlap = detail::overlap(seed_int, cand_int);

  const bool name_ok = meets_threshold(m.name_similarity, kProfileNameSimilarity);
  const bool evidence_ok = !m.affiliation_overlap.empty() || !m.interest_overlap.empty();
  if (!name_ok) {
    std::ostringstream os;
    os << "name similarity " << m.name_similarity << " below " << kProfileNameSimilarity;
    m.reasons.push_back(os.str());
  }
  if (m.affiliation_overlap.empty()) m.reasons.push_back("no shared affiliation token");
  if (m.interest_overlap.empty()) m.reasons.push_back("no shared field-of-interest token");
  if (!evidence_ok) m.reasons.push_back("neither affiliation nor fields of interest overlap");
  if (m.affiliation_overlap.size() == 1)
    m.reasons.push_back("weak affiliation evidence: single shared token '" + m.affiliation_overlap.front() + "'");
  m.verdict = name_ok && evidence_ok ? Verdict::Accepted : Verdict::Rejected;
  return m;
}

// ---------------------------------------------------------------------------
// Sources

/// A bibliographic source able to list candidate profiles for a seed and
/// the first-degree co-authors of one profile.
class BiblioSource {
 public:
  virtual ~BiblioSource() = default;
  virtual BaselineSource source() const = 0;
  virtual std::vector<CandidateProfile> search(const SeedAuthor& seed) = 0;
  virtual std::vector<std::string> coauthors(const SeedAuthor& seed, const CandidateProfile& profile) = 0;
};

/// Reads operator-exported profile documents, one per seed:
///   <dir>/<seed_id>.json = {"profiles": [{"id", "name", "affiliations": [..],
///     "interests": [..], "coauthors": [..]} | {..., "works": [{"authors": [..]}]}]}
/// A missing file means the source has no profile for the seed. For works,
/// the profile owner is dropped from every author list under either the
/// profile name or the seed name.
class ExportDirSource final : public BiblioSource {
 public:
  ExportDirSource(BaselineSource source, std::filesystem::path dir) : source_(source), dir_(std::move(dir)) {}

  BaselineSource source() const override { return source_; }

  std::vector<CandidateProfile> search(const SeedAuthor& seed) override {
    std::vector<CandidateProfile> out;
    for (const auto& p : load(seed)) {
      CandidateProfile c;
      c.id = p.value("id", std::string());
      c.name = p.value("name", std::string());
      c.affiliations = p.value("affiliations", std::vector<std::string>{});
      c.interests = p.value("interests", std::vector<std::string>{});
      out.push_back(std::move(c));
    }
    return out;
  }

  std::vector<std::string> coauthors(const SeedAuthor& seed, const CandidateProfile& profile) override {
    for (const auto& p : load(seed)) {
      if (p.value("id", std::string()) != profile.id) continue;
      if (p.contains("coauthors")) return dedupe_names(p.at("coauthors").get<std::vector<std::string>>());
      std::vector<std::string> names;
      const std::set<std::string> self = {detail::full_name_key(profile.name), detail::full_name_key(seed.full_name)};
      for (const auto& w : p.value("works", nlohmann::json::array()))
        for (const auto& a : w.value("authors", std::vector<std::string>{}))
          if (!self.count(detail::full_name_key(a))) names.push_back(a);
      return dedupe_names(names);
    }
    return {};
  }

 private:
  std::vector<nlohmann::json> load(const SeedAuthor& seed) const {
    const auto path = dir_ / (seed.id + ".json");
    std::ifstream in(path);
    if (!in) return {};
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::BadInput, path.string() + ": " + e.what());
    }
    return j.value("profiles", std::vector<nlohmann::json>{});
  }

  BaselineSource source_;
  std::filesystem::path dir_;
};

/// OpenAlex REST client: /authors?search= for candidates and
/// /works?filter=author.id: (cursor-paged) for co-authors.
class OpenAlexHttpSource final : public BiblioSource {
 public:
  OpenAlexHttpSource(std::shared_ptr<RateLimitedGetter> getter, std::string mailto = {})
      : getter_(std::move(getter)), mailto_(std::move(mailto)) {}

  BaselineSource source() const override { return BaselineSource::OpenAlex; }

  std::vector<CandidateProfile> search(const SeedAuthor& seed) override {
    const auto j = get_json("/authors?search=" + url_encode(seed.full_name) + "&per-page=25" + polite());
    std::vector<CandidateProfile> out;
    for (const auto& r : j.value("results", nlohmann::json::array())) {
      CandidateProfile c;
      c.id = short_id(r.value("id", std::string()));
      c.name = r.value("display_name", std::string());
      for (const auto& inst : r.value("last_known_institutions", nlohmann::json::array()))
        c.affiliations.push_back(inst.value("display_name", std::string()));
      for (const auto& aff : r.value("affiliations", nlohmann::json::array()))
        if (aff.contains("institution")) c.affiliations.push_back(aff["institution"].value("display_name", std::string()));
      for (const auto& t : r.value("topics", nlohmann::json::array()))
        c.interests.push_back(t.value("display_name", std::string()));
      for (const auto& t : r.value("x_concepts", nlohmann::json::array()))
        c.interests.push_back(t.value("display_name", std::string()));
      out.push_back(std::move(c));
    }
    return out;
  }

  std::vector<std::string> coauthors(const SeedAuthor&, const CandidateProfile& profile) override {
    std::vector<std::string> names;
    std::string cursor = "*";
    while (!cursor.empty()) {
      const auto j = get_json("/works?filter=author.id:" + url_encode(profile.id) +
                              "&per-page=200&select=authorships&cursor=" + url_encode(cursor) + polite());
      const auto results = j.value("results", nlohmann::json::array());
      for (const auto& w : results)
        for (const auto& a : w.value("authorships", nlohmann::json::array())) {
          const auto& au = a.contains("author") ? a["author"] : nlohmann::json::object();
          if (short_id(au.value("id", std::string())) == profile.id) continue;
          names.push_back(au.value("display_name", std::string()));
        }
      cursor.clear();
      if (!results.empty() && j.contains("meta") && j["meta"].contains("next_cursor") &&
          j["meta"]["next_cursor"].is_string())
        cursor = j["meta"]["next_cursor"].get<std::string>();
    }
    return dedupe_names(names);
  }

  static std::string url_encode(std::string_view s) {
    std::string out;
    char buf[4];
    for (unsigned char c : s) {
      if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
        out.push_back(static_cast<char>(c));
      } else {
        std::snprintf(buf, sizeof buf, "%%%02X", c);
        out += buf;
      }
    }
    return out;
  }

 private:
  static std::string short_id(std::string_view id) {
    const auto slash = id.rfind('/');
    return std::string(slash == std::string_view::npos ? id : id.substr(slash + 1));
  }

  std::string polite() const { return mailto_.empty() ? std::string() : "&mailto=" + url_encode(mailto_); }

  nlohmann::json get_json(const std::string& path) {
    const auto reply = getter_->get(path);
    if (reply.status == 404) return nlohmann::json::object();
    if (reply.status != 200)
      throw Error(ErrorCode::TransportError, "OpenAlex HTTP " + std::to_string(reply.status) + " for " + path);
    try {
      return nlohmann::json::parse(reply.body);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::TransportError, std::string("malformed OpenAlex reply: ") + e.what());
    }
  }

  std::shared_ptr<RateLimitedGetter> getter_;
  std::string mailto_;
};

// ---------------------------------------------------------------------------
// Manual overrides

/// {"<seed_id>": {"country": "IR", "openalex": "<profile id>",
///                "google-scholar": "<profile id>"}}
struct ManualOverrides {
  std::map<std::string, nlohmann::json> entries;

  static ManualOverrides load(const std::filesystem::path& path) {
    ManualOverrides o;
    if (path.empty()) return o;
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open override file " + path.string());
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::BadConfig, path.string() + ": " + e.what());
    }
    for (auto it = j.begin(); it != j.end(); ++it) o.entries.emplace(it.key(), it.value());
    return o;
  }

  std::optional<std::string> get(const std::string& seed_id, std::string_view key) const {
    const auto it = entries.find(seed_id);
    if (it == entries.end() || !it->second.contains(key)) return std::nullopt;
    return it->second.at(std::string(key)).get<std::string>();
  }
};

// ---------------------------------------------------------------------------
// Fetch + cache

/// Picks the verified profile and collects its co-authors. A manual
/// override naming a profile id bypasses verification.
inline CoAuthorNetwork fetch_coauthors(const SeedAuthor& seed, BiblioSource& client,
                                       const ManualOverrides& overrides = {},
                                       const std::function<std::string()>& now = utc_now_iso) {
  const auto candidates = client.search(seed);
  if (candidates.empty())
    throw Error(ErrorCode::NoProfileFound, std::string(display_name(client.source())) + " returned no profile for " +
                                               seed.full_name);
  const CandidateProfile* chosen = nullptr;
  if (const auto forced = overrides.get(seed.id, to_string(client.source()))) {
    for (const auto& c : candidates)
      if (c.id == *forced) chosen = &c;
    if (!chosen) throw Error(ErrorCode::NoProfileFound, "override profile " + *forced + " not among candidates");
  } else {
    std::vector<const CandidateProfile*> accepted;
    for (const auto& c : candidates)
      if (verify_profile(seed, c).verdict == Verdict::Accepted) accepted.push_back(&c);
    if (accepted.empty())
      throw Error(ErrorCode::NoProfileFound, "no candidate profile verified for " + seed.full_name);
    if (accepted.size() > 1) {
      std::string ids;
      for (const auto* c : accepted) ids += (ids.empty() ? "" : ", ") + c->id;
      throw Error(ErrorCode::AmbiguousProfile, seed.id + " matches several profiles (" + ids +
                                                   "); add an override entry");
    }
    chosen = accepted.front();
  }
  CoAuthorNetwork net;
  net.seed_id = seed.id;
  net.source = client.source();
  net.profile_id = chosen->id;
  net.coauthors = dedupe_names(client.coauthors(seed, *chosen));
  net.retrieved_at = now();
  return net;
}

/// Outcome of a harvest for one (seed, source): a network or an error code.
struct HarvestOutcome {
  std::string seed_id;
  BaselineSource source{};
  std::optional<CoAuthorNetwork> network;
  std::optional<ErrorCode> error;
  std::string message;
};

inline nlohmann::json to_json(const CoAuthorNetwork& n) {
  return {{"seed_id", n.seed_id},       {"source", std::string(to_string(n.source))},
          {"profile_id", n.profile_id}, {"coauthors", n.coauthors},
          {"k", n.count()},             {"retrieved_at", n.retrieved_at}};
}

inline CoAuthorNetwork network_from_json(const nlohmann::json& j) {
  CoAuthorNetwork n;
  n.seed_id = j.at("seed_id").get<std::string>();
  const auto src = parse_baseline(j.at("source").get<std::string>());
  if (!src) throw Error(ErrorCode::BadInput, "unknown source in network record");
  n.source = *src;
  n.profile_id = j.value("profile_id", std::string());
  n.coauthors = j.at("coauthors").get<std::vector<std::string>>();
  n.retrieved_at = j.value("retrieved_at", std::string());
  return n;
}

/// Writes `content` to `path` through a temporary file and a rename.
inline void atomic_write(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::IoError, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

/// One JSON document per (source, seed): <dir>/<source>/<seed_id>.json.
/// Successful fetches and NoProfileFound/AmbiguousProfile outcomes are
/// cached; transport failures are not.
class HarvestCache {
 public:
  explicit HarvestCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path path_for(const std::string& seed_id, BaselineSource src) const {
    return dir_ / std::string(to_string(src)) / (seed_id + ".json");
  }

  std::optional<HarvestOutcome> load(const std::string& seed_id, BaselineSource src) const {
    std::ifstream in(path_for(seed_id, src));
    if (!in) return std::nullopt;
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception&) {
      return std::nullopt;
    }
    HarvestOutcome o{seed_id, src, std::nullopt, std::nullopt, j.value("message", std::string())};
    const auto status = j.value("status", std::string());
    if (status == "ok")
      o.network = network_from_json(j.at("network"));
    else if (status == "NoProfileFound")
      o.error = ErrorCode::NoProfileFound;
    else if (status == "AmbiguousProfile")
      o.error = ErrorCode::AmbiguousProfile;
    else
      return std::nullopt;
    return o;
  }

  void store(const HarvestOutcome& o) const {
    nlohmann::json j = {{"seed_id", o.seed_id}, {"source", std::string(to_string(o.source))}};
    if (o.network) {
      j["status"] = "ok";
      j["network"] = to_json(*o.network);
    } else {
      j["status"] = std::string(to_string(*o.error));
      j["message"] = o.message;
    }
    atomic_write(path_for(o.seed_id, o.source), j.dump(2) + "\n");
  }

 private:
  std::filesystem::path dir_;
};

/// Cache-first harvest for one (seed, source). Live results are written to
/// the cache before they are returned. A cached AmbiguousProfile is retried
/// once an override for that seed and source exists.
inline HarvestOutcome harvest_one(const SeedAuthor& seed, BiblioSource& client, const HarvestCache& cache,
                                  const ManualOverrides& overrides = {},
                                  const std::function<std::string()>& now = utc_now_iso) {
  if (auto cached = cache.load(seed.id, client.source())) {
    const bool retry_ambiguous = cached->error == ErrorCode::AmbiguousProfile &&
                                 overrides.get(seed.id, to_string(client.source())).has_value();
    if (!retry_ambiguous) return *cached;
  }
  HarvestOutcome o{seed.id, client.source(), std::nullopt, std::nullopt, {}};
  try {
    o.network = fetch_coauthors(seed, client, overrides, now);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoProfileFound && e.code() != ErrorCode::AmbiguousProfile) throw;
    o.error = e.code();
    o.message = e.what();
  }
  cache.store(o);
  return o;
}

}  // namespace dnex
