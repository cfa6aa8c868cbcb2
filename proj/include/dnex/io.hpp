#pragma once

// Persisted record formats: tab-separated files with fixed headers for
// cohort and scores, one-JSON-object-per-line files for networks and probes.

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "core_model.hpp"
#include "harvest.hpp"
#include "json.hpp"
#include "report.hpp"

namespace dnex::io {

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::filesystem::path& p, std::string_view content) { atomic_write(p, content); }

/// Tabs and line breaks inside a field become spaces.
inline std::string tsv_field(std::string_view s) {
  std::string out(s);
  for (auto& c : out)
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  return out;
}

struct TsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw Error(ErrorCode::BadInput, "missing column '" + std::string(name) + "'");
  }
};

inline TsvTable parse_tsv(std::string_view content) {
  TsvTable t;
  bool first = true;
  for (auto& line : text::split_lines(content)) {
    if (line.empty()) continue;
    auto cells = text::split(line, '\t');
    if (first) {
      t.header = std::move(cells);
      first = false;
      continue;
    }
    if (cells.size() != t.header.size())
      throw Error(ErrorCode::BadInput, "row has " + std::to_string(cells.size()) + " fields, header has " +
                                           std::to_string(t.header.size()));
    t.rows.push_back(std::move(cells));
  }
  return t;
}

inline std::int64_t parse_int(const std::string& s, std::string_view what) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::BadInput, "bad " + std::string(what) + " '" + s + "'");
  }
}

inline double parse_double(const std::string& s, std::string_view what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw Error(ErrorCode::BadInput, "bad " + std::string(what) + " '" + s + "'");
  return v;
}

// ---------------------------------------------------------------------------
// Pool (input): full_name, affiliation, email_domain, country, subfield, citation_count

inline std::vector<SeedCandidate> parse_pool(std::string_view content) {
  const auto t = parse_tsv(content);
  const auto c_name = t.column("full_name"), c_aff = t.column("affiliation"), c_mail = t.column("email_domain"),
             c_country = t.column("country"), c_sub = t.column("subfield"), c_cit = t.column("citation_count");
  std::vector<SeedCandidate> out;
  for (const auto& r : t.rows)
    out.push_back({r[c_name], r[c_aff], r[c_mail], r[c_country], r[c_sub], parse_int(r[c_cit], "citation_count")});
  return out;
}

inline constexpr const char* kPoolHeader = "full_name\taffiliation\temail_domain\tcountry\tsubfield\tcitation_count\n";

// ---------------------------------------------------------------------------
// Cohort

inline constexpr const char* kCohortHeader =
    "seed_id\tfull_name\tfield\tsubfield\taffiliation\tcountry\tregion\tcitation_count\tgroup\n";

inline std::string write_cohort(const std::vector<SeedAuthor>& seeds) {
  std::string out = kCohortHeader;
  for (const auto& s : seeds) {
    out += s.id + '\t' + tsv_field(s.full_name) + '\t' + std::string(to_string(s.field)) + '\t' + s.subfield + '\t' +
           tsv_field(s.affiliation) + '\t' + s.country + '\t' + std::string(to_string(s.region)) + '\t' +
           std::to_string(s.citation_count) + '\t' + (s.group ? std::string(to_string(*s.group)) : std::string()) + '\n';
  }
  return out;
}

inline std::vector<SeedAuthor> parse_cohort(std::string_view content) {
  const auto t = parse_tsv(content);
  std::vector<SeedAuthor> out;
  for (const auto& r : t.rows) {
    SeedAuthor s;
    s.id = r[t.column("seed_id")];
    s.full_name = r[t.column("full_name")];
    const auto field = parse_field(r[t.column("field")]);
    const auto region = parse_region(r[t.column("region")]);
    if (!field) throw Error(ErrorCode::UnknownField, r[t.column("field")]);
    if (!region) throw Error(ErrorCode::UnknownRegion, r[t.column("region")]);
    s.field = *field;
    s.region = *region;
    s.subfield = r[t.column("subfield")];
    s.affiliation = r[t.column("affiliation")];
    s.country = r[t.column("country")];
    s.citation_count = parse_int(r[t.column("citation_count")], "citation_count");
    s.group = parse_group(r[t.column("group")]);
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Networks (JSONL)

inline std::string write_networks(const std::vector<CoAuthorNetwork>& nets) {
  std::string out;
  for (const auto& n : nets) out += to_json(n).dump() + '\n';
  return out;
}

inline std::vector<CoAuthorNetwork> parse_networks(std::string_view content) {
  std::vector<CoAuthorNetwork> out;
  for (const auto& line : text::split_lines(content))
    if (!text::trim(line).empty()) out.push_back(network_from_json(nlohmann::json::parse(line)));
  return out;
}

// ---------------------------------------------------------------------------
// Probes (JSONL)

inline nlohmann::json to_json(const ProbeRecord& p) {
  return {{"seed_id", p.seed_id},
          {"model_id", p.model_id},
          {"prompt", p.prompt},
          {"raw_response", p.raw_response},
          {"classification", std::string(to_string(p.classification))},
          {"generated_names", p.generated_names},
          {"requested_k", p.requested_k},
          {"overshoot", p.overshoot()},
          {"timestamp", p.timestamp}};
}

inline ProbeRecord probe_from_json(const nlohmann::json& j) {
  ProbeRecord p;
  p.seed_id = j.at("seed_id").get<std::string>();
  p.model_id = j.at("model_id").get<std::string>();
  p.prompt = j.at("prompt").get<std::string>();
  p.raw_response = j.at("raw_response").get<std::string>();
  const auto cls = parse_response_class(j.at("classification").get<std::string>());
  if (!cls) throw Error(ErrorCode::BadInput, "bad classification in probe record");
  p.classification = *cls;
  p.generated_names = j.at("generated_names").get<std::vector<std::string>>();
  p.requested_k = j.value("requested_k", std::size_t{0});
  p.timestamp = j.value("timestamp", std::string());
  return p;
}

inline std::string write_probes(const std::vector<ProbeRecord>& probes) {
  std::string out;
  for (const auto& p : probes) out += to_json(p).dump() + '\n';
  return out;
}

inline std::vector<ProbeRecord> parse_probes(std::string_view content) {
  std::vector<ProbeRecord> out;
  for (const auto& line : text::split_lines(content))
    if (!text::trim(line).empty()) out.push_back(probe_from_json(nlohmann::json::parse(line)));
  return out;
}

// ---------------------------------------------------------------------------
// Scores

inline constexpr const char* kScoresHeader = "seed_id\tmodel\tbaseline\tepsilon\tdiscovered\tdenominator\tdne\n";

inline std::string write_scores(const std::vector<DNEScore>& scores) {
  std::string out = kScoresHeader;
  for (const auto& s : scores)
    out += s.seed_id + '\t' + s.model_id + '\t' + std::string(to_string(s.baseline)) + '\t' + fmt::exact(s.epsilon) +
           '\t' + std::to_string(s.discovered) + '\t' + std::to_string(s.denominator) + '\t' + fmt::exact(s.value) + '\n';
  return out;
}

inline std::vector<DNEScore> parse_scores(std::string_view content) {
  const auto t = parse_tsv(content);
  if (t.header != text::split(std::string_view(kScoresHeader).substr(0, std::string_view(kScoresHeader).size() - 1), '\t'))
    throw Error(ErrorCode::BadInput, "unexpected scores header");
  std::vector<DNEScore> out;
  for (const auto& r : t.rows) {
    DNEScore s;
    s.seed_id = r[0];
    s.model_id = r[1];
    const auto b = parse_baseline(r[2]);
    if (!b) throw Error(ErrorCode::BadInput, "bad baseline '" + r[2] + "'");
    s.baseline = *b;
    s.epsilon = parse_double(r[3], "epsilon");
    s.discovered = static_cast<std::size_t>(parse_int(r[4], "discovered"));
    s.denominator = static_cast<std::size_t>(parse_int(r[5], "denominator"));
    s.value = parse_double(r[6], "dne");
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace dnex::io
