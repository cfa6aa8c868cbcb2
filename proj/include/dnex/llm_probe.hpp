#pragma once

// Zero-shot co-author probing: the fixed prompt, response classification,
// slash-list parsing, and a single-request probe over any completion client.

#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "core_model.hpp"
#include "name_match.hpp"
#include "rate_limit.hpp"
#include "text.hpp"

namespace dnex {

struct PromptSpec {
  std::string author_name;
  std::string field_label;
  std::size_t k = 1;
};

/// Instantiates the prompt template. The result is byte-exact; k = 1 still
/// reads "up to 1 co-authors".
inline std::string build_prompt(const PromptSpec& spec) {
  if (text::trim(spec.author_name).empty()) throw Error(ErrorCode::InvalidSpec, "empty author name");
  if (text::trim(spec.field_label).empty()) throw Error(ErrorCode::InvalidSpec, "empty field");
  if (spec.k < 1) throw Error(ErrorCode::InvalidSpec, "k must be at least 1");
  std::string p;
  p.reserve(256 + spec.author_name.size() + spec.field_label.size());
  p += "Can you list the top co-authors of ";
  p += spec.author_name;
  p += ", who works in the field of ";
  p += spec.field_label;
  p += "? Please provide the full names (first and last) of up to ";
  p += std::to_string(spec.k);
  p += " co-authors. Separate each co-author's full name from the next using a forward slash ('/'), without adding "
       "extra whitespace.";
  return p;
}

/// Substring patterns (lowercase, ASCII apostrophes) for refusals and for
/// declared-fictional answers. Users can extend both lists from a file.
struct ResponsePatterns {
  std::vector<std::string> null_patterns;
  std::vector<std::string> fictional_patterns;

  static ResponsePatterns defaults() {
    return {
        {
            "don't have access", "do not have access", "don't have specific information",
            "don't have information", "do not have information", "don't have any information",
            "unable to verify", "was not able to verify", "not able to verify", "unable to provide",
            "unable to find", "unable to access", "unable to locate", "couldn't find", "could not find",
            "couldn't locate", "could not locate", "cannot provide", "can't provide", "cannot be reliably listed",
            "not widely documented", "does not specify", "lack of accessible", "no information available",
            "i'm not aware of", "i am not aware of", "i'm not able to find", "no notable publications",
        },
        {"fictional", "fictitious", "hypothetical", "made up", "made-up", "imaginary"},
    };
  }

  /// Reads {"null": [...], "fictional": [...]} and appends to the defaults.
  static ResponsePatterns from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open pattern file " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::BadConfig, "pattern file " + path + ": " + e.what());
    }
    auto p = defaults();
    for (const auto& s : j.value("null", std::vector<std::string>{})) p.null_patterns.push_back(text::fold(s));
    for (const auto& s : j.value("fictional", std::vector<std::string>{})) p.fictional_patterns.push_back(text::fold(s));
    return p;
  }
};

namespace detail {

inline bool contains_any(std::string_view hay, const std::vector<std::string>& needles) {
  for (const auto& n : needles)
    if (!n.empty() && hay.find(n) != std::string_view::npos) return true;
  return false;
}

// A segment that could plausibly be a person's name rather than prose.
inline bool name_like(std::string_view seg) {
  seg = text::trim(seg);
  if (seg.empty() || seg.size() > 80) return false;
  if (seg.find_first_of("?!;:()[]{}<>=@") != std::string_view::npos) return false;
  if (!text::has_alpha(seg)) return false;
  return text::split_ws(seg).size() <= 6;
}

// "Here they are: A/B/C" keeps only the part after the last colon.
inline std::string_view list_part(std::string_view line) {
  const auto colon = line.rfind(':');
  if (colon == std::string_view::npos || line.find('/', colon) == std::string_view::npos) return line;
  return line.substr(colon + 1);
}

inline bool is_list_line(std::string_view line) {
  line = list_part(line);
  if (line.find('/') == std::string_view::npos) return false;
  bool any = false;
  for (const auto& seg : text::split(line, '/')) {
    if (text::trim(seg).empty()) continue;
    if (!name_like(seg)) return false;
    any = true;
  }
  return any;
}

}  // namespace detail

inline bool has_slash_list(std::string_view raw) {
  for (const auto& line : text::split_lines(raw))
    if (detail::is_list_line(line)) return true;
  return false;
}

/// Splits a slash-separated answer into names. Lines before the list, and
/// text up to a colon on a list line, are treated as preamble: the list starts at the first line that reads as a
/// slash list (else the first line containing '/') and continues over the
/// following lines that contain '/'. A single line without '/' is taken as
/// one name. Segments are trimmed, empty ones dropped, duplicates (by
/// normalised name) removed. Output is not truncated to k.
inline std::vector<std::string> parse_coauthor_list(std::string_view raw) {
  auto lines = text::split_lines(raw);
  std::erase_if(lines, [](const std::string& l) { return text::trim(l).empty(); });

  std::optional<std::size_t> start;
  for (std::size_t i = 0; i < lines.size() && !start; ++i)
    if (detail::is_list_line(lines[i])) start = i;
  for (std::size_t i = 0; i < lines.size() && !start; ++i)
    if (lines[i].find('/') != std::string::npos) start = i;

  std::vector<std::string> segments;
  if (start) {
    for (std::size_t i = *start; i < lines.size() && lines[i].find('/') != std::string::npos; ++i)
      for (auto& seg : text::split(detail::list_part(lines[i]), '/')) segments.push_back(std::move(seg));
  } else if (lines.size() == 1) {
    segments.push_back(lines.front());
  }

  std::vector<std::string> names;
  for (const auto& seg : segments) {
    const auto t = text::trim(seg);
    if (!t.empty() && text::has_alpha(t)) names.emplace_back(t);
  }
  names = dedupe_names(names);
  if (names.empty()) throw Error(ErrorCode::NoNamesFound, "no co-author names in response");
  return names;
}

/// Refusal patterns only decide when no slash list is present; with a list,
/// the response is Fictional if it carries a fictional marker and Valid
/// otherwise. Anything without a list, refusal or marker is Valid when it
/// parses to at least one name and Null when it does not.
inline ResponseClass classify_response(std::string_view raw,
                                       const ResponsePatterns& patterns = ResponsePatterns::defaults()) {
  if (text::trim(raw).empty()) return ResponseClass::Null;
  const std::string folded = text::fold(raw);
  const bool fictional = detail::contains_any(folded, patterns.fictional_patterns);
  if (has_slash_list(raw)) return fictional ? ResponseClass::Fictional : ResponseClass::Valid;
  if (detail::contains_any(folded, patterns.null_patterns)) return ResponseClass::Null;
  if (fictional) return ResponseClass::Fictional;
  try {
    parse_coauthor_list(raw);
    return ResponseClass::Valid;
  } catch (const Error&) {
    return ResponseClass::Null;
  }
}

/// Raised by completion clients for failures worth retrying (connection
/// problems, timeouts, 429 and 5xx replies).
class TransportFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Single-turn text-in/text-out completion.
class CompletionClient {
 public:
  virtual ~CompletionClient() = default;
  virtual std::string model_id() const = 0;
  virtual std::string complete(const std::string& prompt) = 0;
};

struct ModelEndpoint {
  std::string model_id;
  std::string base_url;           // scheme://host[:port]
  std::string path = "/v1/chat/completions";
  std::string api_key_env;        // name of the environment variable holding the key
  std::chrono::seconds timeout{60};
  int max_retries = 3;
  int parallelism = 4;
  double rate_per_sec = 0.0;      // 0 = unlimited
  std::chrono::milliseconds initial_backoff{500};
};

inline std::string utc_now_iso() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct ProbeOptions {
  RetryPolicy retry;
  SleepFn sleep = real_sleep;
  const ResponsePatterns* patterns = nullptr;
  std::function<std::string()> now = utc_now_iso;
};

/// Turns a raw response into a record; used by probe() and when replaying
/// cached responses.
inline ProbeRecord make_probe_record(const SeedAuthor& seed, std::size_t k, std::string model_id, std::string prompt,
                                     std::string raw, std::string timestamp, const ResponsePatterns& patterns) {
  ProbeRecord rec;
  rec.seed_id = seed.id;
  rec.model_id = std::move(model_id);
  rec.prompt = std::move(prompt);
  rec.raw_response = std::move(raw);
  rec.requested_k = k;
  rec.timestamp = std::move(timestamp);
  rec.classification = classify_response(rec.raw_response, patterns);
  if (rec.classification == ResponseClass::Valid) rec.generated_names = parse_coauthor_list(rec.raw_response);
  return rec;
}

inline std::string prompt_for(const SeedAuthor& seed, std::size_t k) {
  return build_prompt(PromptSpec{seed.full_name, seed.subfield, k});
}

/// Exactly one successful request per call. Transport failures are retried
/// with backoff up to opts.retry.max_retries; a refusal is a valid answer and
/// is never re-asked. Every failed attempt is appended to `attempt_errors`
/// when given.
inline ProbeRecord probe(const SeedAuthor& seed, std::size_t k, CompletionClient& client,
                         const ProbeOptions& opts = {}, std::vector<std::string>* attempt_errors = nullptr) {
  const std::string prompt = prompt_for(seed, k);
  const ResponsePatterns defaults = ResponsePatterns::defaults();
  const ResponsePatterns& patterns = opts.patterns ? *opts.patterns : defaults;
  std::string last_error;
  for (int attempt = 0; attempt <= opts.retry.max_retries; ++attempt) {
    if (attempt > 0) opts.sleep(opts.retry.delay_for(attempt));
    try {
      std::string raw = client.complete(prompt);
      return make_probe_record(seed, k, client.model_id(), prompt, std::move(raw), opts.now(), patterns);
    } catch (const TransportFailure& e) {
      last_error = e.what();
      if (attempt_errors) attempt_errors->push_back(last_error);
    }
  }
  throw Error(ErrorCode::TransportError, client.model_id() + " / seed " + seed.id + " failed after " +
                                             std::to_string(opts.retry.max_retries + 1) + " attempts: " + last_error);
}

}  // namespace dnex
