#pragma once

// End-to-end audit as six resumable stages (cohort, harvest, probe, score,
// analyze, report) sharing one output directory and a manifest that guards
// against stale inputs.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cohort.hpp"
#include "core_model.hpp"
#include "dne.hpp"
#include "harvest.hpp"
#include "hash.hpp"
#include "http.hpp"
#include "io.hpp"
#include "json.hpp"
#include "llm_probe.hpp"
#include "report.hpp"

namespace dnex::pipeline {

namespace fs = std::filesystem;

inline const std::vector<double> kDefaultEpsilons = {0.6, 0.7, 0.8, 0.9};

struct SourceConfig {
  fs::path export_dir;       // file adapter when set
  std::string base_url;      // HTTP adapter (OpenAlex only)
  std::string mailto;
  double rate_per_sec = 5.0;
  int max_retries = 3;
  int initial_backoff_ms = 500;
};

struct PipelineConfig {
  std::uint64_t rng_seed = 0;
  int per_cell_per_group = 10;
  std::int64_t citation_floor = kDefaultCitationFloor;
  fs::path pool;
  fs::path overrides;
  fs::path patterns;
  std::vector<double> epsilons = kDefaultEpsilons;
  std::vector<BaselineSource> baselines = {BaselineSource::OpenAlex, BaselineSource::GoogleScholar};
  bool score_filtered_as_zero = false;
  std::map<BaselineSource, SourceConfig> sources;
  std::vector<ModelEndpoint> models;
  fs::path mock_endpoint;
  fs::path cache_dir = "cache";
  fs::path out_dir = "out";
  std::string fixed_timestamp;  // reproducible fixtures only
  std::string user_agent = "dnex/1.0";

  bool uses(BaselineSource b) const { return std::find(baselines.begin(), baselines.end(), b) != baselines.end(); }

  std::function<std::string()> clock() const {
    if (fixed_timestamp.empty()) return utc_now_iso;
    return [ts = fixed_timestamp] { return ts; };
  }
};

struct CliOverrides {
  std::optional<std::vector<double>> epsilons;
  std::optional<std::vector<BaselineSource>> baselines;
  std::optional<fs::path> mock_endpoint;
  std::optional<fs::path> cache_dir;
  std::optional<fs::path> out_dir;
};

inline std::vector<double> parse_epsilon_list(std::string_view s) {
  std::vector<double> out;
  for (const auto& part : text::split(s, ',')) {
    const std::string t(text::trim(part));
    if (t.empty()) continue;
    out.push_back(io::parse_double(t, "epsilon"));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (double e : out) (void)MatchConfig{e};
  if (out.empty()) throw Error(ErrorCode::BadConfig, "empty epsilon list");
  return out;
}

inline std::vector<BaselineSource> parse_baseline_choice(std::string_view s) {
  if (s == "both") return {BaselineSource::OpenAlex, BaselineSource::GoogleScholar};
  if (auto b = parse_baseline(s)) return {*b};
  throw Error(ErrorCode::BadConfig, "baseline must be openalex, google-scholar or both");
}

/// Relative paths in the config resolve against the config file's directory.
inline PipelineConfig load_config(const fs::path& path, const CliOverrides& cli = {}) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(io::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadConfig, path.string() + ": " + e.what());
  }
  const fs::path base = path.parent_path();
  const auto rel = [&](const std::string& p) -> fs::path {
    if (p.empty()) return {};
    const fs::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };
  PipelineConfig c;
  try {
    c.rng_seed = j.value("rng_seed", std::uint64_t{0});
    c.per_cell_per_group = j.value("per_cell_per_group", 10);
    c.citation_floor = j.value("citation_floor", kDefaultCitationFloor);
    c.pool = rel(j.value("pool", std::string()));
    c.overrides = rel(j.value("overrides", std::string()));
    c.patterns = rel(j.value("patterns", std::string()));
    if (j.contains("epsilons")) {
      std::string joined;
      for (const auto& e : j["epsilons"]) joined += fmt::exact(e.get<double>()) + ",";
      c.epsilons = parse_epsilon_list(joined);
    }
    if (j.contains("baselines")) {
      c.baselines.clear();
      for (const auto& b : j["baselines"]) {
        const auto parsed = parse_baseline(b.get<std::string>());
        if (!parsed) throw Error(ErrorCode::BadConfig, "unknown baseline " + b.dump());
        c.baselines.push_back(*parsed);
      }
    }
    c.score_filtered_as_zero = j.value("score_filtered_as_zero", false);
    if (j.contains("sources"))
      for (auto it = j["sources"].begin(); it != j["sources"].end(); ++it) {
        const auto src = parse_baseline(it.key());
        if (!src) throw Error(ErrorCode::BadConfig, "unknown source " + it.key());
        SourceConfig sc;
        sc.export_dir = rel(it->value("export_dir", std::string()));
        sc.base_url = it->value("base_url", std::string());
        sc.mailto = it->value("mailto", std::string());
        sc.rate_per_sec = it->value("rate_per_sec", 5.0);
        sc.max_retries = it->value("max_retries", 3);
        sc.initial_backoff_ms = it->value("initial_backoff_ms", 500);
        c.sources[*src] = sc;
      }
    for (const auto& m : j.value("models", nlohmann::json::array())) {
      ModelEndpoint e;
      e.model_id = m.at("model_id").get<std::string>();
      e.base_url = m.value("base_url", std::string());
      e.path = m.value("path", e.path);
      e.api_key_env = m.value("api_key_env", std::string());
      e.timeout = std::chrono::seconds(m.value("timeout_s", 60));
      e.max_retries = m.value("max_retries", 3);
      e.parallelism = m.value("parallelism", 4);
      e.rate_per_sec = m.value("rate_per_sec", 0.0);
      e.initial_backoff = std::chrono::milliseconds(m.value("initial_backoff_ms", 500));
      if (m.contains("api_key")) throw Error(ErrorCode::BadConfig, "credentials belong in environment variables, not config");
      c.models.push_back(e);
    }
    c.mock_endpoint = rel(j.value("mock_endpoint", std::string()));
    c.cache_dir = rel(j.value("cache_dir", std::string("cache")));
    c.out_dir = rel(j.value("out_dir", std::string("out")));
    c.fixed_timestamp = j.value("fixed_timestamp", std::string());
    c.user_agent = j.value("user_agent", c.user_agent);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadConfig, path.string() + ": " + e.what());
  }
  if (cli.epsilons) c.epsilons = *cli.epsilons;
  if (cli.baselines) c.baselines = *cli.baselines;
  if (cli.mock_endpoint) c.mock_endpoint = *cli.mock_endpoint;
  if (cli.cache_dir) c.cache_dir = *cli.cache_dir;
  if (cli.out_dir) c.out_dir = *cli.out_dir;
  return c;
}

// ---------------------------------------------------------------------------
// Mock completion endpoint backed by a file

/// {"models": [{"model_id": "...", "responses": {"<seed full name>": "..."},
///              "default": "..."}]}. The seed is identified by the name in
/// the prompt.
class MockFileClient final : public CompletionClient {
 public:
  MockFileClient(std::string model_id, std::map<std::string, std::string> responses, std::string fallback)
      : model_id_(std::move(model_id)), responses_(std::move(responses)), fallback_(std::move(fallback)) {}

  static std::vector<std::shared_ptr<MockFileClient>> load(const fs::path& path) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(io::read_file(path));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::BadConfig, path.string() + ": " + e.what());
    }
    std::vector<std::shared_ptr<MockFileClient>> out;
    for (const auto& m : j.at("models"))
      out.push_back(std::make_shared<MockFileClient>(m.at("model_id").get<std::string>(),
                                                     m.value("responses", std::map<std::string, std::string>{}),
                                                     m.value("default", std::string())));
    return out;
  }

  /// Seed name embedded in a prompt built by build_prompt.
  static std::string name_in_prompt(std::string_view prompt) {
    constexpr std::string_view open = "co-authors of ", close = ", who works in the field of ";
    const auto a = prompt.find(open);
    const auto b = prompt.find(close);
    if (a == std::string_view::npos || b == std::string_view::npos || b < a) return {};
    return std::string(prompt.substr(a + open.size(), b - a - open.size()));
  }

  std::string model_id() const override { return model_id_; }

  std::string complete(const std::string& prompt) override {
    const auto it = responses_.find(name_in_prompt(prompt));
    return it == responses_.end() ? fallback_ : it->second;
  }

 private:
  std::string model_id_;
  std::map<std::string, std::string> responses_;
  std::string fallback_;
};

// ---------------------------------------------------------------------------
// Manifest

inline constexpr const char* kStages[] = {"cohort", "harvest", "probe", "score", "analyze", "report"};

struct StageRecord {
  std::string params_hash;
  std::string inputs_hash;
  std::map<std::string, std::string> outputs;  // path relative to out_dir -> sha256
  nlohmann::json counts = nlohmann::json::object();
};

class Manifest {
 public:
  explicit Manifest(fs::path out_dir) : out_dir_(std::move(out_dir)) {
    const auto p = path();
    if (fs::exists(p)) {
      try {
        const auto j = nlohmann::json::parse(io::read_file(p));
        run_id_ = j.value("run_id", std::string());
        for (auto it = j["stages"].begin(); it != j["stages"].end(); ++it) {
          StageRecord r;
          r.params_hash = it->value("params_hash", std::string());
          r.inputs_hash = it->value("inputs_hash", std::string());
          r.outputs = it->value("outputs", std::map<std::string, std::string>{});
          r.counts = it->value("counts", nlohmann::json::object());
          stages_[it.key()] = r;
        }
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::BadInput, "corrupt manifest " + p.string() + ": " + e.what());
      }
    }
  }

  fs::path path() const { return out_dir_ / "manifest.json"; }
  const fs::path& out_dir() const { return out_dir_; }

  const StageRecord* stage(const std::string& name) const {
    const auto it = stages_.find(name);
    return it == stages_.end() ? nullptr : &it->second;
  }

  void set_stage(const std::string& name, StageRecord r) { stages_[name] = std::move(r); }
  void set_run_id(std::string id) { run_id_ = std::move(id); }
  const std::string& run_id() const { return run_id_; }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["run_id"] = run_id_;
    j["stages"] = nlohmann::json::object();
    for (const auto& name : kStages) {
      const auto it = stages_.find(name);
      if (it == stages_.end()) continue;
      j["stages"][name] = {{"params_hash", it->second.params_hash},
                           {"inputs_hash", it->second.inputs_hash},
                           {"outputs", it->second.outputs},
                           {"counts", it->second.counts}};
    }
    return j;
  }

  void save() const { io::write_file(path(), to_json().dump(2) + "\n"); }

 private:
  fs::path out_dir_;
  std::string run_id_;
  std::map<std::string, StageRecord> stages_;
};

inline std::string file_hash(const fs::path& p) {
  if (p.empty() || !fs::exists(p)) return "";
  return sha256_hex(io::read_file(p));
}

/// Content hash of a directory tree (relative names and file bytes).
inline std::string dir_hash(const fs::path& dir) {
  if (dir.empty() || !fs::exists(dir)) return "";
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::string acc;
  for (const auto& f : files) acc += fs::relative(f, dir).generic_string() + "=" + file_hash(f) + ";";
  return sha256_hex(acc);
}

/// Hash of everything in the config that a stage's outputs depend on,
/// excluding upstream outputs (tracked separately through inputs_hash).
inline std::string stage_params_hash(const std::string& stage, const PipelineConfig& c) {
  nlohmann::json p;
  if (stage == "cohort") {
    p = {{"pool", file_hash(c.pool)},
         {"rng_seed", c.rng_seed},
         {"per_cell_per_group", c.per_cell_per_group},
         {"citation_floor", c.citation_floor},
         {"overrides", file_hash(c.overrides)}};
  } else if (stage == "harvest") {
    nlohmann::json sources = nlohmann::json::object();
    for (const auto& [src, sc] : c.sources)
      sources[std::string(to_string(src))] = {{"export_dir", dir_hash(sc.export_dir)}, {"base_url", sc.base_url}};
    std::vector<std::string> bl;
    for (auto b : c.baselines) bl.emplace_back(to_string(b));
    p = {{"baselines", bl}, {"sources", sources}, {"overrides", file_hash(c.overrides)}};
  } else if (stage == "probe") {
    nlohmann::json models = nlohmann::json::array();
    for (const auto& m : c.models) models.push_back({{"model_id", m.model_id}, {"base_url", m.base_url}, {"path", m.path}});
    p = {{"models", models}, {"mock_endpoint", file_hash(c.mock_endpoint)}, {"patterns", file_hash(c.patterns)}};
  } else if (stage == "score") {
    std::vector<std::string> bl;
    for (auto b : c.baselines) bl.emplace_back(to_string(b));
    std::vector<std::string> eps;
    for (double e : c.epsilons) eps.push_back(fmt::exact(e));
    p = {{"baselines", bl}, {"epsilons", eps}, {"score_filtered_as_zero", c.score_filtered_as_zero}};
  } else {
    p = nlohmann::json::object();
  }
  return sha256_hex(stage + "|" + p.dump());
}

struct StageContext {
  PipelineConfig config;
  Manifest manifest;
  NetworkCounter* network = nullptr;  // instrumentation hook
  std::function<void(const std::string&)> log = [](const std::string&) {};

  explicit StageContext(PipelineConfig c, NetworkCounter* counter = nullptr)
      : config(std::move(c)), manifest(config.out_dir), network(counter) {}

  fs::path out(const std::string& rel) const { return config.out_dir / rel; }
};

namespace detail {

inline int stage_index(const std::string& s) {
  for (int i = 0; i < 6; ++i)
    if (s == kStages[i]) return i;
  throw Error(ErrorCode::BadInput, "unknown stage " + s);
}

inline std::string outputs_hash(const StageRecord& r) {
  std::string acc;
  for (const auto& [k, v] : r.outputs) acc += k + "=" + v + ";";
  return sha256_hex(acc);
}

// Hash of the immediate upstream stage's outputs as recorded.
inline std::string upstream_inputs_hash(const Manifest& m, const std::string& stage) {
  const int idx = stage_index(stage);
  if (idx == 0) return "";
  const auto* up = m.stage(kStages[idx - 1]);
  return up ? outputs_hash(*up) : "";
}

inline std::string counts_text(const nlohmann::json& counts) { return counts.dump(); }

}  // namespace detail

/// Every upstream stage must be complete, run with the current config, have
/// its outputs intact on disk, and have consumed what its own upstream
/// currently holds. Otherwise MissingUpstream / StaleInput.
inline void check_upstream(const StageContext& ctx, const std::string& stage) {
  const int idx = detail::stage_index(stage);
  for (int i = 0; i < idx; ++i) {
    const std::string up = kStages[i];
    const auto* rec = ctx.manifest.stage(up);
    if (!rec) throw Error(ErrorCode::MissingUpstream, "stage '" + stage + "' needs '" + up + "' to complete first");
    if (rec->params_hash != stage_params_hash(up, ctx.config))
      throw Error(ErrorCode::StaleInput, "configuration for stage '" + up + "' changed since it ran (recorded counts " +
                                             detail::counts_text(rec->counts) + "); rerun from '" + up + "'");
    for (const auto& [rel, sha] : rec->outputs)
      if (file_hash(ctx.out(rel)) != sha)
        throw Error(ErrorCode::StaleInput, "output " + rel + " of stage '" + up + "' changed on disk (recorded counts " +
                                               detail::counts_text(rec->counts) + ")");
    if (rec->inputs_hash != detail::upstream_inputs_hash(ctx.manifest, up)) {
      const auto* prev = ctx.manifest.stage(kStages[i - 1]);
      throw Error(ErrorCode::StaleInput, "stage '" + up + "' consumed older outputs of '" + kStages[i - 1] +
                                             "' (now " + (prev ? detail::counts_text(prev->counts) : "{}") +
                                             ", stage counts " + detail::counts_text(rec->counts) + "); rerun from '" +
                                             up + "'");
    }
  }
}

inline void finish_stage(StageContext& ctx, const std::string& stage, const std::map<std::string, std::string>& files,
                         nlohmann::json counts) {
  StageRecord r;
  r.params_hash = stage_params_hash(stage, ctx.config);
  r.inputs_hash = detail::upstream_inputs_hash(ctx.manifest, stage);
  for (const auto& [rel, content] : files) {
    io::write_file(ctx.out(rel), content);
    r.outputs[rel] = sha256_hex(content);
  }
  r.counts = std::move(counts);
  if (stage == "cohort") {
    std::string all;
    for (const auto& s : kStages) all += stage_params_hash(s, ctx.config);
    ctx.manifest.set_run_id(sha256_hex(all).substr(0, 16));
  }
  ctx.manifest.set_stage(stage, std::move(r));
  ctx.manifest.save();
}

// ---------------------------------------------------------------------------
// Stages

inline void stage_cohort(StageContext& ctx) {
  const auto& c = ctx.config;
  if (c.pool.empty()) throw Error(ErrorCode::BadConfig, "config needs a 'pool' file");
  const auto candidates = io::parse_pool(io::read_file(c.pool));
  const auto overrides = ManualOverrides::load(c.overrides);

  std::vector<SeedAuthor> validated;
  std::string rejections = "row\tfull_name\tcode\tmessage\n";
  std::size_t rejected = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    SeedCandidate cand = candidates[i];
    try {
      const auto id = make_seed_id(cand.full_name, cand.affiliation);
      std::optional<std::string> forced = overrides.get(id, "country");
      if (!forced && !text::trim(cand.country).empty()) forced = cand.country;
      try {
        cand.country = resolve_region(cand.affiliation, cand.email_domain, forced).country;
      } catch (const Error& e) {
        if (e.code() == ErrorCode::Unresolvable && forced) throw Error(ErrorCode::UnknownCountry, e.what());
        throw;
      }
      validated.push_back(validate_seed(cand, c.citation_floor));
    } catch (const Error& e) {
      ++rejected;
      rejections += std::to_string(i + 1) + '\t' + io::tsv_field(cand.full_name) + '\t' +
                    std::string(to_string(e.code())) + '\t' + io::tsv_field(e.what()) + '\n';
    }
  }
  CohortConfig cc{c.per_cell_per_group, c.citation_floor, c.rng_seed};
  const auto cohort = build_cohort(validated, cc);

  AnalysisBundle dist;
  dist.citation_distribution = log_citation_distribution(cohort.seeds);
  std::string audit = cohort_audit_text(cohort, cc);
  audit += "pool rows rejected at validation: " + std::to_string(rejected) + "\n";

  finish_stage(ctx, "cohort",
               {{"cohort.tsv", io::write_cohort(cohort.seeds)},
                {"cohort_audit.txt", audit},
                {"pool_rejections.tsv", rejections},
                {"citation_distribution.tsv", emit_plot_data(dist, PlotKind::Violin).front().tsv}},
               {{"pool", candidates.size()},
                {"validated", validated.size()},
                {"rejected", rejected},
                {"cohort", cohort.seeds.size()}});
}

namespace detail {

inline std::unique_ptr<BiblioSource> make_source(BaselineSource src, const PipelineConfig& c, NetworkCounter* counter) {
  const auto it = c.sources.find(src);
  if (it == c.sources.end())
    throw Error(ErrorCode::BadConfig, "no configuration for source " + std::string(to_string(src)));
  const auto& sc = it->second;
  if (!sc.export_dir.empty()) return std::make_unique<ExportDirSource>(src, sc.export_dir);
  if (src == BaselineSource::OpenAlex && !sc.base_url.empty()) {
    HttpGetOptions opts;
    opts.user_agent = c.user_agent + (sc.mailto.empty() ? "" : " (mailto:" + sc.mailto + ")");
    opts.retry.max_retries = sc.max_retries;
    opts.retry.initial_delay = std::chrono::milliseconds(sc.initial_backoff_ms);
    auto getter = std::make_shared<RateLimitedGetter>(sc.base_url, std::make_shared<TokenBucket>(sc.rate_per_sec),
                                                      opts, counter);
    return std::make_unique<OpenAlexHttpSource>(getter, sc.mailto);
  }
  throw Error(ErrorCode::BadConfig, std::string(to_string(src)) + " needs export_dir" +
                                        (src == BaselineSource::OpenAlex ? " or base_url" : ""));
}

inline std::vector<BaselineSource> harvest_sources(const PipelineConfig& c) {
  std::vector<BaselineSource> out;
  if (c.uses(BaselineSource::OpenAlex)) out.push_back(BaselineSource::OpenAlex);
  out.push_back(BaselineSource::GoogleScholar);  // always needed for k
  return out;
}

}  // namespace detail

inline void stage_harvest(StageContext& ctx) {
  check_upstream(ctx, "harvest");
  const auto& c = ctx.config;
  const auto cohort = io::parse_cohort(io::read_file(ctx.out("cohort.tsv")));
  const auto overrides = ManualOverrides::load(c.overrides);
  const HarvestCache cache(c.cache_dir);
  const auto sources = detail::harvest_sources(c);
  const auto now = c.clock();

  // One serial queue per source; sources run concurrently.
  std::map<BaselineSource, std::vector<HarvestOutcome>> outcomes;
  std::map<BaselineSource, std::string> failures;
  std::mutex mu;
  std::vector<std::thread> workers;
  for (auto src : sources) {
    auto client = detail::make_source(src, c, ctx.network);
    workers.emplace_back([&, src, client = std::shared_ptr<BiblioSource>(std::move(client))] {
      std::vector<HarvestOutcome> local;
      try {
        for (const auto& seed : cohort) local.push_back(harvest_one(seed, *client, cache, overrides, now));
      } catch (const std::exception& e) {
        std::lock_guard lock(mu);
        failures[src] = e.what();
      }
      std::lock_guard lock(mu);
      outcomes[src] = std::move(local);
    });
  }
  for (auto& w : workers) w.join();
  if (!failures.empty()) {
    std::string msg;
    for (const auto& [src, m] : failures) msg += std::string(to_string(src)) + ": " + m + "; ";
    throw Error(ErrorCode::TransportError, "harvest incomplete (cached results kept): " + msg);
  }

  std::map<std::pair<std::string, BaselineSource>, const HarvestOutcome*> by_key;
  for (const auto& [src, list] : outcomes)
    for (const auto& o : list) by_key[{o.seed_id, src}] = &o;

  std::vector<CoAuthorNetwork> nets;
  std::string exclusions = "seed_id\tsource\tcode\tmessage\n";
  std::size_t no_profile = 0, ambiguous = 0, empty = 0, eligible = 0;
  for (const auto& seed : cohort) {
    bool ok = true;
    for (auto src : sources) {
      const auto* o = by_key.at({seed.id, src});
      if (o->network) {
        nets.push_back(*o->network);
        if (src == BaselineSource::GoogleScholar && o->network->count() == 0) {
          ok = false;
          ++empty;
          exclusions += seed.id + '\t' + std::string(to_string(src)) + "\tZeroDenominator\tprofile lists no co-authors\n";
        }
        continue;
      }
      ok = false;
      if (*o->error == ErrorCode::NoProfileFound) ++no_profile;
      if (*o->error == ErrorCode::AmbiguousProfile) ++ambiguous;
      exclusions += seed.id + '\t' + std::string(to_string(src)) + '\t' + std::string(to_string(*o->error)) + '\t' +
                    io::tsv_field(o->message) + '\n';
    }
    if (ok) ++eligible;
  }
  const std::size_t excluded = cohort.size() - eligible;
  finish_stage(ctx, "harvest", {{"networks.jsonl", io::write_networks(nets)}, {"harvest_exclusions.tsv", exclusions}},
               {{"seeds_in", cohort.size()},
                {"no_profile_found", no_profile},
                {"ambiguous_profile", ambiguous},
                {"empty_network", empty},
                {"excluded", excluded},
                {"eligible", eligible}});
}

namespace detail {

struct EligibleSeed {
  SeedAuthor seed;
  const CoAuthorNetwork* gs = nullptr;
  const CoAuthorNetwork* oa = nullptr;
};

inline std::vector<EligibleSeed> eligible_seeds(const std::vector<SeedAuthor>& cohort,
                                                const std::vector<CoAuthorNetwork>& nets, const PipelineConfig& c) {
  std::map<std::pair<std::string, BaselineSource>, const CoAuthorNetwork*> idx;
  for (const auto& n : nets) idx[{n.seed_id, n.source}] = &n;
  std::vector<EligibleSeed> out;
  for (const auto& s : cohort) {
    EligibleSeed e{s};
    const auto gs = idx.find({s.id, BaselineSource::GoogleScholar});
    if (gs == idx.end() || gs->second->count() == 0) continue;
    e.gs = gs->second;
    if (c.uses(BaselineSource::OpenAlex)) {
      const auto oa = idx.find({s.id, BaselineSource::OpenAlex});
      if (oa == idx.end()) continue;
      e.oa = oa->second;
    }
    out.push_back(std::move(e));
  }
  return out;
}

inline std::string model_dir_name(const std::string& model_id) {
  std::string s;
  for (char ch : model_id) s.push_back(std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_');
  return s + "-" + sha256_hex(model_id).substr(0, 8);
}

struct ModelClient {
  std::shared_ptr<CompletionClient> client;
  int parallelism = 1;
  RetryPolicy retry;
};

inline std::vector<ModelClient> make_clients(const PipelineConfig& c, NetworkCounter* counter) {
  std::vector<ModelClient> out;
  if (!c.mock_endpoint.empty()) {
    for (auto& m : MockFileClient::load(c.mock_endpoint)) out.push_back({m, 1, RetryPolicy{}});
    return out;
  }
  if (c.models.empty()) throw Error(ErrorCode::BadConfig, "no models configured and no mock endpoint given");
  for (const auto& m : c.models) {
    if (m.base_url.empty()) throw Error(ErrorCode::BadConfig, "model " + m.model_id + " has no base_url");
    RetryPolicy rp;
    rp.max_retries = m.max_retries;
    rp.initial_delay = m.initial_backoff;
    out.push_back({std::make_shared<HttpCompletionClient>(m, std::make_shared<TokenBucket>(m.rate_per_sec), counter),
                   std::max(1, m.parallelism), rp});
  }
  return out;
}

}  // namespace detail

/// Model ids in probe order: the mock file's order, else the config's.
inline std::vector<std::string> model_order(const PipelineConfig& c) {
  std::vector<std::string> ids;
  if (!c.mock_endpoint.empty()) {
    for (const auto& m : MockFileClient::load(c.mock_endpoint)) ids.push_back(m->model_id());
  } else {
    for (const auto& m : c.models) ids.push_back(m.model_id);
  }
  return ids;
}

inline void stage_probe(StageContext& ctx) {
  check_upstream(ctx, "probe");
  const auto& c = ctx.config;
  const auto cohort = io::parse_cohort(io::read_file(ctx.out("cohort.tsv")));
  const auto nets = io::parse_networks(io::read_file(ctx.out("networks.jsonl")));
  const auto seeds = detail::eligible_seeds(cohort, nets, c);
  const ResponsePatterns patterns = c.patterns.empty() ? ResponsePatterns::defaults() : ResponsePatterns::from_file(c.patterns);
  const auto now = c.clock();

  std::vector<ProbeRecord> records;
  std::string errors;
  std::size_t error_count = 0;
  for (const auto& mc : detail::make_clients(c, ctx.network)) {
    const fs::path cache_dir = c.cache_dir / "probes" / detail::model_dir_name(mc.client->model_id());
    std::vector<std::optional<ProbeRecord>> results(seeds.size());
    std::vector<std::string> failures(seeds.size());
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
      for (std::size_t i = next++; i < seeds.size(); i = next++) {
        const auto& e = seeds[i];
        const std::size_t k = e.gs->count();
        const std::string prompt = prompt_for(e.seed, k);
        const fs::path cpath = cache_dir / (e.seed.id + ".json");
        try {
          if (fs::exists(cpath)) {
            const auto j = nlohmann::json::parse(io::read_file(cpath));
            if (j.value("prompt", std::string()) == prompt) {
              results[i] = make_probe_record(e.seed, k, mc.client->model_id(), prompt, j.at("raw_response"),
                                             j.at("timestamp"), patterns);
              continue;
            }
          }
          ProbeOptions opts;
          opts.retry = mc.retry;
          opts.patterns = &patterns;
          opts.now = now;
          auto rec = probe(e.seed, k, *mc.client, opts);
          io::write_file(cpath, nlohmann::json{{"seed_id", rec.seed_id},
                                               {"model_id", rec.model_id},
                                               {"prompt", rec.prompt},
                                               {"raw_response", rec.raw_response},
                                               {"timestamp", rec.timestamp}}
                                        .dump(2) + "\n");
          results[i] = std::move(rec);
        } catch (const std::exception& ex) {
          failures[i] = ex.what();
        }
      }
    };
    std::vector<std::thread> pool;
    const int n_workers = std::max(1, std::min<int>(mc.parallelism, static_cast<int>(seeds.size())));
    for (int w = 1; w < n_workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    for (std::size_t i = 0; i < seeds.size(); ++i) {
      if (results[i]) {
        records.push_back(std::move(*results[i]));
      } else {
        ++error_count;
        errors += nlohmann::json{{"seed_id", seeds[i].seed.id}, {"model_id", mc.client->model_id()},
                                 {"error", failures[i]}}
                      .dump() +
                  "\n";
      }
    }
  }

  std::size_t valid = 0, fictional = 0, null = 0, overshoot = 0;
  for (const auto& r : records) {
    overshoot += r.overshoot();
    switch (r.classification) {
      case ResponseClass::Valid: ++valid; break;
      case ResponseClass::Fictional: ++fictional; break;
      case ResponseClass::Null: ++null; break;
    }
  }
  finish_stage(ctx, "probe", {{"probes.jsonl", io::write_probes(records)}, {"probe_errors.jsonl", errors}},
               {{"eligible_seeds", seeds.size()},
                {"probes", records.size()},
                {"valid", valid},
                {"fictional", fictional},
                {"null", null},
                {"transport_errors", error_count},
                {"overshoot_names", overshoot}});
  if (error_count) ctx.log(std::to_string(error_count) + " probe(s) failed; see probe_errors.jsonl and rerun to retry");
}

inline void stage_score(StageContext& ctx) {
  check_upstream(ctx, "score");
  const auto& c = ctx.config;
  const auto cohort = io::parse_cohort(io::read_file(ctx.out("cohort.tsv")));
  const auto nets = io::parse_networks(io::read_file(ctx.out("networks.jsonl")));
  const auto probes = io::parse_probes(io::read_file(ctx.out("probes.jsonl")));
  const auto seeds = detail::eligible_seeds(cohort, nets, c);
  std::map<std::string, const detail::EligibleSeed*> by_id;
  for (const auto& e : seeds) by_id[e.seed.id] = &e;

  std::vector<BaselineSource> baselines;
  for (auto b : {BaselineSource::OpenAlex, BaselineSource::GoogleScholar})
    if (c.uses(b)) baselines.push_back(b);

  std::vector<DNEScore> scores;
  std::string clamps = "seed_id\tmodel\tbaseline\tepsilon\tdiscovered\tdenominator\traw_ratio\n";
  std::size_t inputs = 0, clamped = 0;
  for (const auto& p : probes) {
    const bool valid = p.classification == ResponseClass::Valid;
    if (!valid && !c.score_filtered_as_zero) continue;
    const auto it = by_id.find(p.seed_id);
    if (it == by_id.end()) throw Error(ErrorCode::UnknownSeed, "probe for seed " + p.seed_id + " has no eligible network");
    ++inputs;
    const auto& e = *it->second;
    BaselineCounts counts{e.gs->count(), e.oa ? std::optional<std::size_t>(e.oa->count()) : std::nullopt};
    for (auto b : baselines) {
      const auto& base_names = b == BaselineSource::OpenAlex ? e.oa->coauthors : e.gs->coauthors;
      auto sweep = threshold_sweep(base_names, valid ? p.generated_names : std::vector<std::string>{}, counts, b,
                                   c.epsilons);
      for (auto& s : sweep) {
        s.seed_id = p.seed_id;
        s.model_id = p.model_id;
        if (s.raw_ratio() > 1.0) {
          ++clamped;
          clamps += s.seed_id + '\t' + s.model_id + '\t' + std::string(to_string(b)) + '\t' + fmt::exact(s.epsilon) +
                    '\t' + std::to_string(s.discovered) + '\t' + std::to_string(s.denominator) + '\t' +
                    fmt::exact(s.raw_ratio()) + '\n';
        }
        scores.push_back(std::move(s));
      }
    }
  }
  finish_stage(ctx, "score", {{"scores.tsv", io::write_scores(scores)}, {"score_clamps.tsv", clamps}},
               {{"scoring_inputs", inputs}, {"scores", scores.size()}, {"clamped", clamped}});
}

inline void stage_analyze(StageContext& ctx) {
  check_upstream(ctx, "analyze");
  const auto& c = ctx.config;
  const auto cohort = io::parse_cohort(io::read_file(ctx.out("cohort.tsv")));
  const auto scores = io::parse_scores(io::read_file(ctx.out("scores.tsv")));
  std::vector<BaselineSource> baselines;
  for (auto b : {BaselineSource::OpenAlex, BaselineSource::GoogleScholar})
    if (c.uses(b)) baselines.push_back(b);
  const auto bundle = run_analysis(scores, cohort, default_specs(model_order(c), baselines, c.epsilons));
  std::size_t insufficient = 0;
  for (const auto& t : bundle.tests) insufficient += t.error.has_value();
  finish_stage(ctx, "analyze", {{"analysis.json", to_json(bundle).dump(2) + "\n"}},
               {{"tests", bundle.tests.size()}, {"insufficient_sample", insufficient}});
}

inline void stage_report(StageContext& ctx) {
  check_upstream(ctx, "report");
  const auto bundle = bundle_from_json(nlohmann::json::parse(io::read_file(ctx.out("analysis.json"))));
  const auto tables = emit_tables(bundle);
  std::map<std::string, std::string> files = {{"tables/dne_table.tsv", tables.tsv}, {"tables/dne_table.txt", tables.text}};
  for (auto kind : {PlotKind::Radar, PlotKind::GroupedBar, PlotKind::Violin})
    for (auto& d : emit_plot_data(bundle, kind)) files["plots/" + d.name + ".tsv"] = std::move(d.tsv);
  finish_stage(ctx, "report", files, {{"files", files.size()}});
}

inline void run_stage(StageContext& ctx, const std::string& stage) {
  switch (detail::stage_index(stage)) {
    case 0: stage_cohort(ctx); break;
    case 1: stage_harvest(ctx); break;
    case 2: stage_probe(ctx); break;
    case 3: stage_score(ctx); break;
    case 4: stage_analyze(ctx); break;
    case 5: stage_report(ctx); break;
  }
}

inline void run_all(StageContext& ctx) {
  for (const auto* s : kStages) {
    ctx.log(std::string("stage ") + s);
    run_stage(ctx, s);
  }
}

}  // namespace dnex::pipeline
