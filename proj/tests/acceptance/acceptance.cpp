// Acceptance checks, one line per criterion. Exit status is nonzero when any
// criterion fails.

#include <boost/math/distributions/students_t.hpp>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include "../support.hpp"
#include "../table_fixture.hpp"
#include "dnex/cohort.hpp"
#include "dnex/dne.hpp"
#include "dnex/hash.hpp"
#include "dnex/llm_probe.hpp"
#include "dnex/pipeline.hpp"
#include "dnex/report.hpp"
#include "dnex/stats.hpp"
#include "httplib.h"
#include "json.hpp"

using namespace dnex;
namespace fs = std::filesystem;
namespace pl = dnex::pipeline;

namespace {

// Tolerances and limits, fixed here.
constexpr int kMatchInstances = 1000;
constexpr double kMatchSeconds = 10.0;
constexpr int kStatsPairs = 10000;
constexpr double kStatsRelTol = 1e-9;
constexpr double kPlantedHigh = 0.70;
constexpr double kPlantedLow = 0.35;
constexpr double kPlantedTol = 0.05;
constexpr double kPlantedAlpha = 0.001;
constexpr double kPlantedSeconds = 60.0;
constexpr int kPromptCount = 100;
constexpr int kCohortRuns = 5;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_s(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

// ---------------------------------------------------------------------------
// Independent oracle for matching: plain full-matrix edit distance over
// bytes of ASCII family names, threshold compared in integers.

std::size_t oracle_distance(const std::string& a, const std::string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
  return d[a.size()][b.size()];
}

std::string oracle_family(const std::string& full) {
  std::string last = full.substr(full.rfind(' ') + 1);
  for (auto& c : last) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return last;
}

// eps = num / 10
std::size_t oracle_discovered(const std::vector<std::string>& base, const std::vector<std::string>& gen, int num) {
  std::size_t count = 0;
  for (const auto& b : base) {
    bool hit = false;
    for (const auto& g : gen) {
      const auto fb = oracle_family(b), fg = oracle_family(g);
      const std::size_t longest = std::max(fb.size(), fg.size());
      const std::size_t dist = oracle_distance(fb, fg);
      if (10 * (longest - dist) >= static_cast<std::size_t>(num) * longest) hit = true;
    }
    count += hit;
  }
  return count;
}

struct MatchInstance {
  std::vector<std::string> baseline, generated;
};

std::vector<MatchInstance> match_instances() {
  std::mt19937_64 rng(1001);
  const std::string letters = "abcdefghijklmnopqrstuvwxyz";
  const auto rnd = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  const auto word = [&] {
    std::string w(2 + rnd(8), 'a');
    for (auto& c : w) c = letters[rnd(6)];  // small alphabet: many near misses
    return w;
  };
  const auto perturb = [&](std::string w) {
    const std::size_t edits = rnd(4);
    for (std::size_t e = 0; e < edits; ++e) {
      const std::size_t op = rnd(3);
      if (op == 0 || w.size() < 2) w.insert(w.begin() + static_cast<std::ptrdiff_t>(rnd(w.size() + 1)), letters[rnd(6)]);
      else if (op == 1) w.erase(w.begin() + static_cast<std::ptrdiff_t>(rnd(w.size())));
      else w[rnd(w.size())] = letters[rnd(6)];
    }
    return w;
  };
  std::vector<MatchInstance> out;
  for (int i = 0; i < kMatchInstances; ++i) {
    MatchInstance m;
    const std::size_t nb = rnd(11), ng = rnd(11);
    for (std::size_t k = 0; k < nb; ++k) m.baseline.push_back("Given " + word());
    for (std::size_t k = 0; k < ng; ++k) {
      if (!m.baseline.empty() && rnd(2)) {
        m.generated.push_back("Other " + perturb(oracle_family(m.baseline[rnd(m.baseline.size())])));
      } else {
        m.generated.push_back("Other " + word());
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

Outcome criterion_1() {
  const auto instances = match_instances();
  const auto t0 = std::chrono::steady_clock::now();
  int mismatches = 0;
  for (const auto& m : instances)
    for (int num : {6, 7, 8, 9})
      if (match_coauthors(m.baseline, m.generated, MatchConfig{num / 10.0}).discovered_count !=
          oracle_discovered(m.baseline, m.generated, num))
        ++mismatches;
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < kMatchSeconds,
          std::to_string(instances.size()) + " instances x 4 thresholds, " + std::to_string(mismatches) +
              " mismatches, " + fmt_s(secs)};
}

Outcome criterion_2() {
  const std::vector<double> eps = {0.6, 0.7, 0.8, 0.9};
  int violations = 0, checked = 0;
  for (const auto& m : match_instances()) {
    if (m.baseline.empty()) continue;
    for (auto base : {BaselineSource::GoogleScholar, BaselineSource::OpenAlex}) {
      const BaselineCounts counts{m.baseline.size(), m.baseline.size() + 3};
      const auto sweep = threshold_sweep(m.baseline, m.generated, counts, base, eps);
      for (std::size_t i = 1; i < sweep.size(); ++i)
        if (sweep[i].value > sweep[i - 1].value) ++violations;
      ++checked;
    }
  }
  return {violations == 0, std::to_string(checked) + " sweeps, " + std::to_string(violations) + " increases"};
}

Outcome criterion_3() {
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<int> n_dist(2, 50);
  std::uniform_real_distribution<double> shift(-1.0, 1.0), scale(0.05, 2.0);
  double worst = 0.0;
  int failures = 0;
  for (int i = 0; i < kStatsPairs; ++i) {
    const int nx = n_dist(rng), ny = n_dist(rng);
    std::normal_distribution<double> dx(shift(rng), scale(rng)), dy(0.0, scale(rng));
    std::vector<double> x(static_cast<std::size_t>(nx)), y(static_cast<std::size_t>(ny));
    for (auto& v : x) v = dx(rng);
    for (auto& v : y) v = dy(rng);

    double mx = 0, my = 0, vx = 0, vy = 0;
    for (double v : x) mx += v;
    for (double v : y) my += v;
    mx /= nx;
    my /= ny;
    for (double v : x) vx += (v - mx) * (v - mx);
    for (double v : y) vy += (v - my) * (v - my);
    vx /= nx - 1;
    vy /= ny - 1;
    const double a = vx / nx, b = vy / ny;
    const double t = (mx - my) / std::sqrt(a + b);
    const double df = (a + b) * (a + b) / (a * a / (nx - 1) + b * b / (ny - 1));
    const double p = boost::math::cdf(boost::math::complement(boost::math::students_t(df), t));

    const auto r = stats::welch_t_test(x, y);
    const double et = std::abs(r.t_stat - t) / std::max(std::abs(t), 1e-300);
    const double ep = std::abs(r.p_value - p) / std::max(p, 1e-300);
    worst = std::max({worst, et, ep});
    if (et > kStatsRelTol || ep > kStatsRelTol) ++failures;
  }
  const std::vector<double> same = {0.2, 0.4, 0.9, 0.1};
  const auto id = stats::welch_t_test(same, same);
  const bool identical_ok = id.t_stat == 0.0 && id.p_value == 0.5;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d pairs, %d beyond %.0e, worst rel err %.2e; identical samples t=%g p=%g", kStatsPairs,
                failures, kStatsRelTol, worst, id.t_stat, id.p_value);
  return {failures == 0 && identical_ok, buf};
}

// ---------------------------------------------------------------------------
// Planted memorization

std::vector<std::string> dissimilar_surnames(std::size_t n, std::mt19937_64& rng) {
  const std::string letters = "abcdefghijklmnopqrstuvwxyz";
  std::vector<std::string> out;
  while (out.size() < n) {
    std::string w(6 + rng() % 4, 'a');
    for (auto& c : w) c = letters[rng() % letters.size()];
    bool ok = true;
    for (const auto& o : out)
      if (similarity(w, o) >= 0.6) {
        ok = false;
        break;
      }
    if (ok) {
      w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
      out.push_back(w);
    }
  }
  return out;
}

void write_json(const fs::path& p, const nlohmann::json& j) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << j.dump(2) << "\n";
}

Outcome criterion_4() {
  const auto t0 = std::chrono::steady_clock::now();
  testing::TempDir work("planted");
  std::mt19937_64 rng(4004);
  const auto surnames = dissimilar_surnames(160, rng);
  const std::vector<std::string> given = {"Ann", "Ben", "Cleo", "Dev", "Eli", "Fay", "Gus", "Hal", "Ivy", "Jo"};
  constexpr std::size_t kCoauthors = 20, kDecoys = 3;

  std::string pool = io::kPoolHeader;
  nlohmann::json responses = nlohmann::json::object();
  std::size_t seed_no = 0;
  for (auto field : kAllFields) {
    const std::string sub(subfields_of(field).front());
    for (int c = 101; c <= 140; ++c, ++seed_no) {
      const std::string name = "Seed Planted" + std::to_string(seed_no);
      const std::string aff = "Planted Institute " + std::to_string(seed_no);
      pool += name + "\t" + aff + "\t\tUS\t" + sub + "\t" + std::to_string(c) + "\n";

      std::vector<std::size_t> idx(surnames.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::shuffle(idx.begin(), idx.end(), rng);
      std::vector<std::string> coauthors;
      for (std::size_t k = 0; k < kCoauthors; ++k) coauthors.push_back(given[rng() % given.size()] + " " + surnames[idx[k]]);
      write_json(work.path() / "gs" / (make_seed_id(name, aff) + ".json"),
                 {{"profiles", {{{"id", "gs-" + std::to_string(seed_no)}, {"name", name}, {"affiliations", {aff}},
                                 {"coauthors", coauthors}}}}});

      const double rate = c <= 110 ? kPlantedLow : c >= 131 ? kPlantedHigh : 0.5;
      std::bernoulli_distribution keep(rate);
      std::vector<std::string> answer;
      for (const auto& co : coauthors)
        if (keep(rng)) answer.push_back(co);
      for (std::size_t k = 0; k < kDecoys; ++k) answer.push_back("Decoy " + surnames[idx[kCoauthors + k]]);
      std::shuffle(answer.begin(), answer.end(), rng);
      std::string text;
      for (const auto& a : answer) text += (text.empty() ? "" : "/") + a;
      responses[name] = text;
    }
  }
  io::write_file(work.path() / "pool.tsv", pool);
  write_json(work.path() / "mock.json", {{"models", {{{"model_id", "planted"}, {"responses", responses}}}}});
  write_json(work.path() / "config.json", {{"rng_seed", 99},
                                           {"per_cell_per_group", 10},
                                           {"pool", "pool.tsv"},
                                           {"epsilons", {0.6}},
                                           {"baselines", {"google-scholar"}},
                                           {"sources", {{"google-scholar", {{"export_dir", "gs"}}}}},
                                           {"mock_endpoint", "mock.json"},
                                           {"fixed_timestamp", "2025-01-01T00:00:00Z"}});

  pl::StageContext ctx(pl::load_config(work.path() / "config.json"));
  pl::run_all(ctx);
  const auto bundle = bundle_from_json(nlohmann::json::parse(io::read_file(work.path() / "out" / "analysis.json")));
  const auto* t = bundle.find({"planted", BaselineSource::GoogleScholar, 0.6, Facet::Overall, 0});
  const double secs = seconds_since(t0);
  if (!t || !t->result) return {false, "overall test missing"};
  const auto& r = *t->result;
  const bool ok = r.group_high.n == 100 && r.group_low.n == 100 && std::abs(r.group_high.mean - kPlantedHigh) <= kPlantedTol &&
                  std::abs(r.group_low.mean - kPlantedLow) <= kPlantedTol && r.p_value < kPlantedAlpha &&
                  secs < kPlantedSeconds;
  char buf[200];
  std::snprintf(buf, sizeof buf, "n=%zu/%zu, High %.3f (planted %.2f), Low %.3f (planted %.2f), t=%.2f, p=%.2e, %s",
                r.group_high.n, r.group_low.n, r.group_high.mean, kPlantedHigh, r.group_low.mean, kPlantedLow, r.t_stat,
                r.p_value, fmt_s(secs).c_str());
  return {ok, buf};
}

Outcome criterion_5() {
  const auto table = io::parse_tsv(testing::slurp(testing::data_dir() / "prompt_goldens.tsv"));
  int diffs = 0;
  for (const auto& row : table.rows) {
    const auto prompt = build_prompt({row[0], row[1], static_cast<std::size_t>(std::stoul(row[2]))});
    if (sha256_hex(prompt) != row[3]) ++diffs;
  }
  const bool ok = static_cast<int>(table.rows.size()) == kPromptCount && diffs == 0;
  return {ok, std::to_string(table.rows.size()) + " renderings, " + std::to_string(diffs) + " diffs"};
}

Outcome criterion_6() {
  const auto nulls = nlohmann::json::parse(testing::slurp(testing::data_dir() / "null_responses.json"));
  const auto fx = nlohmann::json::parse(testing::slurp(testing::data_dir() / "classifier_fixtures.json"));
  std::size_t total = 0, right = 0;
  const auto check = [&](const std::string& text, ResponseClass want) {
    ++total;
    right += classify_response(text) == want;
  };
  for (const auto& e : nulls) check(e["text"], ResponseClass::Null);
  for (const auto& v : fx["valid"]) check(v, ResponseClass::Valid);
  for (const auto& v : fx["fictional"]) check(v, ResponseClass::Fictional);
  const bool ok = nulls.size() == 15 && fx["valid"].size() == 20 && right == total;
  return {ok, std::to_string(right) + "/" + std::to_string(total) + " correct (" + std::to_string(nulls.size()) +
                  " null, " + std::to_string(fx["valid"].size()) + " valid, " + std::to_string(fx["fictional"].size()) +
                  " fictional)"};
}

Outcome criterion_7() {
  int cases = 0, wrong = 0;
  for (std::size_t gs = 1; gs <= 20; ++gs)
    for (std::size_t oa = 1; oa <= 20; ++oa)
      for (std::size_t found = 0; found <= 25; ++found) {
        MatchResult m;
        m.discovered_count = found;
        const BaselineCounts counts{gs, oa};
        const std::size_t oa_den = gs < oa ? gs : oa;
        const double want_gs = found >= gs ? 1.0 : static_cast<double>(found) / static_cast<double>(gs);
        const double want_oa = found >= oa_den ? 1.0 : static_cast<double>(found) / static_cast<double>(oa_den);
        const auto g = compute_dne(m, BaselineSource::GoogleScholar, counts, 0.6);
        const auto o = compute_dne(m, BaselineSource::OpenAlex, counts, 0.6);
        cases += 2;
        wrong += !(g.denominator == gs && g.value == want_gs);
        wrong += !(o.denominator == oa_den && o.value == want_oa);
      }
  return {wrong == 0, std::to_string(cases) + " cases, " + std::to_string(wrong) + " differ from the hand rule"};
}

Outcome criterion_8() {
  const auto got = emit_tables(testing::published_bundle()).text;
  const auto want = testing::slurp(testing::data_dir() / "table_golden.txt");
  std::size_t line = 0, at = 0;
  if (got != want) {
    while (at < got.size() && at < want.size() && got[at] == want[at]) line += got[at++] == '\n';
  }
  return {got == want, got == want ? "byte-exact (" + std::to_string(want.size()) + " bytes)"
                                   : "first difference on line " + std::to_string(line + 1)};
}

Outcome criterion_9() {
  std::mt19937_64 rng(909);
  std::vector<SeedAuthor> pool;
  for (auto f : kAllFields)
    for (auto r : kAllRegions)
      for (int i = 0; i < 48; ++i)
        pool.push_back(testing::make_seed("A" + std::to_string(pool.size()), f, std::string(subfields_of(f).front()), r,
                                          101 + static_cast<std::int64_t>(rng() % 90000), "I" + std::to_string(pool.size())));
  const CohortConfig cfg{10, 100, 31337};
  const auto first = build_cohort(pool, cfg);
  int identical = 1;
  for (int run = 1; run < kCohortRuns; ++run) {
    auto shuffled = pool;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    identical += build_cohort(shuffled, cfg).seeds == first.seeds;
  }
  std::map<std::pair<int, int>, std::pair<std::int64_t, std::int64_t>> cells;
  for (const auto& s : first.seeds) {
    auto& b = cells.try_emplace({static_cast<int>(s.field), static_cast<int>(s.region)}, INT64_MAX, INT64_MIN).first->second;
    if (s.group == CitationGroup::High) b.first = std::min(b.first, s.citation_count);
    else b.second = std::max(b.second, s.citation_count);
  }
  int overlapping = 0;
  for (const auto& [k, b] : cells) overlapping += b.first < b.second;
  const bool ok = identical == kCohortRuns && overlapping == 0 && first.seeds.size() == 1600 && cells.size() == 80;
  return {ok, std::to_string(identical) + "/" + std::to_string(kCohortRuns) + " identical runs, " +
                  std::to_string(overlapping) + " overlapping cells, " + std::to_string(first.seeds.size()) + " seeds"};
}

// ---------------------------------------------------------------------------
// Instrumented mock server: OpenAlex-style author/works API and an
// OpenAI-style completion endpoint, both backed by the bundled fixture.

class MockServer {
 public:
  MockServer() {
    const auto root = testing::fixtures_dir();
    for (const auto& e : fs::directory_iterator(root / "exports" / "openalex")) {
      const auto j = nlohmann::json::parse(testing::slurp(e.path()));
      for (const auto& p : j["profiles"]) {
        by_name_[p["name"].get<std::string>()].push_back(p);
        by_id_[p["id"].get<std::string>()] = p;
      }
    }
    const auto mock = nlohmann::json::parse(testing::slurp(root / "mock_endpoint.json"));
    for (const auto& m : mock["models"]) models_[m["model_id"].get<std::string>()] = m;

    server_.Get("/authors", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits;
      nlohmann::json results = nlohmann::json::array();
      const auto it = by_name_.find(req.get_param_value("search"));
      if (it != by_name_.end())
        for (const auto& p : it->second) {
          nlohmann::json insts = nlohmann::json::array();
          for (const auto& a : p["affiliations"]) insts.push_back({{"display_name", a}});
          results.push_back({{"id", "https://openalex.org/" + p["id"].get<std::string>()},
                             {"display_name", p["name"]},
                             {"last_known_institutions", insts}});
        }
      res.set_content(nlohmann::json{{"results", results}, {"meta", {{"count", results.size()}}}}.dump(), "application/json");
    });
    server_.Get("/works", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits;
      const auto filter = req.get_param_value("filter");
      const auto id = filter.substr(filter.find(':') + 1);
      const auto cursor = req.get_param_value("cursor");
      const std::size_t page = cursor == "*" ? 0 : std::stoul(cursor);
      nlohmann::json results = nlohmann::json::array();
      std::size_t total = 0;
      if (const auto it = by_id_.find(id); it != by_id_.end()) {
        const auto& works = it->second["works"];
        total = works.size();
        for (std::size_t w = page * 2; w < std::min(total, page * 2 + 2); ++w) {
          nlohmann::json auths = nlohmann::json::array();
          for (const auto& a : works[w]["authors"]) {
            const auto name = a.get<std::string>();
            const auto aid = name == it->second["name"].get<std::string>() ? id : "X" + sha256_hex(name).substr(0, 8);
            auths.push_back({{"author", {{"id", "https://openalex.org/" + aid}, {"display_name", name}}}});
          }
          results.push_back({{"authorships", auths}});
        }
      }
      nlohmann::json meta = {{"count", total}};
      meta["next_cursor"] = (page + 1) * 2 < total ? nlohmann::json(std::to_string(page + 1)) : nlohmann::json(nullptr);
      res.set_content(nlohmann::json{{"results", results}, {"meta", meta}}.dump(), "application/json");
    });
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits;
      const auto body = nlohmann::json::parse(req.body);
      const auto& model = models_.at(body["model"].get<std::string>());
      const auto name = pl::MockFileClient::name_in_prompt(body["messages"][0]["content"].get<std::string>());
      const auto& responses = model["responses"];
      const std::string text = responses.contains(name) ? responses[name].get<std::string>() : model.value("default", std::string());
      res.set_content(nlohmann::json{{"choices", {{{"message", {{"role", "assistant"}, {"content", text}}}}}}}.dump(),
                      "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~MockServer() {
    server_.stop();
    thread_.join();
  }
  int port() const { return port_; }
  std::atomic<std::size_t> hits{0};

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::map<std::string, std::vector<nlohmann::json>> by_name_;
  std::map<std::string, nlohmann::json> by_id_;
  std::map<std::string, nlohmann::json> models_;
};

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) out[fs::relative(e.path(), root).generic_string()] = testing::slurp(e.path());
  return out;
}

Outcome criterion_10() {
  MockServer server;
  testing::TempDir work("idem");
  const auto fx = testing::fixtures_dir();
  const std::string base = "http://127.0.0.1:" + std::to_string(server.port());
  const auto fixture_cfg = nlohmann::json::parse(testing::slurp(fx / "config.json"));
  nlohmann::json cfg = fixture_cfg;
  cfg["pool"] = (fx / "pool.tsv").string();
  cfg["overrides"] = (fx / "overrides.json").string();
  cfg["sources"] = {{"google-scholar", {{"export_dir", (fx / "exports" / "google-scholar").string()}}},
                    {"openalex", {{"base_url", base}, {"mailto", "audit@example.org"}, {"rate_per_sec", 0}}}};
  cfg["models"] = {{{"model_id", "model-a"}, {"base_url", base}, {"parallelism", 3}},
                   {{"model_id", "model-b"}, {"base_url", base}, {"parallelism", 3}}};
  cfg.erase("mock_endpoint");
  write_json(work.path() / "config.json", cfg);

  const auto run = [&](const std::string& out) {
    const std::string cmd = std::string(DNEX_CLI) + " -q -c " + (work.path() / "config.json").string() +
                            " --cache-dir " + (work.path() / "cache").string() + " --out-dir " +
                            (work.path() / out).string() + " run-all";
    return std::system(cmd.c_str());
  };
  if (run("out1") != 0) return {false, "first run failed"};
  const std::size_t cold = server.hits.exchange(0);
  if (run("out2") != 0) return {false, "second run failed"};
  const std::size_t warm = server.hits.load();
  const auto a = tree(work.path() / "out1"), b = tree(work.path() / "out2");
  const bool ok = cold > 0 && warm == 0 && a == b && !a.empty();
  return {ok, "cold run " + std::to_string(cold) + " requests, warm run " + std::to_string(warm) + " requests, " +
                  std::to_string(a.size()) + " files " + (a == b ? "identical" : "DIFFER")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"matching equals brute-force oracle", criterion_1},
      {"DNE non-increasing in epsilon", criterion_2},
      {"Welch t and p match direct-formula oracle", criterion_3},
      {"planted memorization recovered end to end", criterion_4},
      {"prompt renderings hash-match goldens", criterion_5},
      {"classifier fixture set", criterion_6},
      {"denominator rule with clamping", criterion_7},
      {"published table rows render byte-exact", criterion_8},
      {"cohort determinism, separation, 1,600 seeds", criterion_9},
      {"run-all idempotent with zero warm network calls", criterion_10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s criterion %2zu: %s -- %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
