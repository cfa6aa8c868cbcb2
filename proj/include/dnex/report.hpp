#pragma once

// Hypothesis tests over DNE scores and the table / plot-data writers.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cohort.hpp"
#include "core_model.hpp"
#include "dne.hpp"
#include "json.hpp"
#include "stats.hpp"

namespace dnex {

/// One High-vs-Low comparison; the alternative is always mean(High) > mean(Low).
struct TestSpec {
  std::string model_id;
  BaselineSource baseline{};
  double epsilon = kDefaultEpsilon;
  Facet facet = Facet::Overall;
  int facet_index = 0;

  CellKey cell() const { return CellKey{model_id, baseline, epsilon, facet, facet_index, std::nullopt}; }
  std::string facet_label() const { return cell().facet_label(); }

  auto operator<=>(const TestSpec&) const = default;
  bool operator==(const TestSpec&) const = default;
};

struct AnalysisEntry {
  TestSpec spec;
  SampleSummary high;
  SampleSummary low;
  std::optional<TestResult> result;
  std::optional<ErrorCode> error;
};

struct AnalysisBundle {
  std::vector<std::string> models;  // display order
  std::vector<AnalysisEntry> tests;  // sorted by spec
  std::vector<AggregateCell> aggregates;  // unsplit, every facet
  std::vector<FiveNumberSummary> citation_distribution;

  const AnalysisEntry* find(const TestSpec& spec) const {
    for (const auto& t : tests)
      if (t.spec == spec) return &t;
    return nullptr;
  }

  const AggregateCell* find_aggregate(const CellKey& key) const {
    for (const auto& a : aggregates)
      if (a.key == key) return &a;
    return nullptr;
  }

  std::vector<double> epsilons() const {
    std::set<double> e;
    for (const auto& t : tests) e.insert(t.spec.epsilon);
    for (const auto& a : aggregates) e.insert(a.key.epsilon);
    return {e.begin(), e.end()};
  }
};

/// Overall, every field and every region, for each (model, baseline, epsilon).
inline std::vector<TestSpec> default_specs(const std::vector<std::string>& models,
                                           const std::vector<BaselineSource>& baselines,
                                           const std::vector<double>& epsilons) {
  std::vector<TestSpec> specs;
  for (const auto& m : models)
    for (auto b : baselines)
      for (double e : epsilons) {
        specs.push_back({m, b, e, Facet::Overall, 0});
        for (std::size_t f = 0; f < kAllFields.size(); ++f) specs.push_back({m, b, e, Facet::ByField, static_cast<int>(f)});
        for (std::size_t r = 0; r < kAllRegions.size(); ++r) specs.push_back({m, b, e, Facet::ByRegion, static_cast<int>(r)});
      }
  return specs;
}

/// Runs every spec; a spec without enough data records InsufficientSample
/// and the rest of the bundle is still produced.
inline AnalysisBundle run_analysis(const std::vector<DNEScore>& scores, const std::vector<SeedAuthor>& cohort,
                                   std::vector<TestSpec> specs) {
  const SeedIndex seeds = index_seeds(cohort);
  AnalysisBundle bundle;
  for (const auto& s : specs)
    if (std::find(bundle.models.begin(), bundle.models.end(), s.model_id) == bundle.models.end())
      bundle.models.push_back(s.model_id);

  // (cell, group) -> values, in score order
  std::map<std::pair<CellKey, CitationGroup>, std::vector<double>> groups;
  for (const auto& s : scores) {
    const auto it = seeds.find(s.seed_id);
    if (it == seeds.end()) throw Error(ErrorCode::UnknownSeed, "score refers to unknown seed " + s.seed_id);
    if (!it->second.group) throw Error(ErrorCode::BadInput, "seed " + s.seed_id + " has no citation group");
    for (auto facet : {Facet::Overall, Facet::ByField, Facet::ByRegion}) {
      CellKey key{s.model_id, s.baseline, s.epsilon, facet, detail::facet_index_of(it->second, facet), std::nullopt};
      groups[{key, *it->second.group}].push_back(s.value);
    }
  }

  std::sort(specs.begin(), specs.end());
  specs.erase(std::unique(specs.begin(), specs.end()), specs.end());
  // Specs are independent; workers fill fixed slots so order stays by spec.
  bundle.tests.resize(specs.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    const std::vector<double> none;
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      const auto& spec = specs[i];
      AnalysisEntry e{spec, {}, {}, std::nullopt, std::nullopt};
      const auto hi = groups.find({spec.cell(), CitationGroup::High});
      const auto lo = groups.find({spec.cell(), CitationGroup::Low});
      const auto& hv = hi == groups.end() ? none : hi->second;
      const auto& lv = lo == groups.end() ? none : lo->second;
      e.high = stats::summarize(hv);
      e.low = stats::summarize(lv);
      try {
        e.result = stats::welch_t_test(hv, lv);
      } catch (const Error& err) {
        e.error = err.code();
      }
      bundle.tests[i] = std::move(e);
    }
  };
  const std::size_t n_workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < n_workers && w < specs.size(); ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  for (auto facet : {Facet::Overall, Facet::ByField, Facet::ByRegion}) {
    auto cells = aggregate(scores, seeds, facet, false);
    bundle.aggregates.insert(bundle.aggregates.end(), cells.begin(), cells.end());
  }
  std::sort(bundle.aggregates.begin(), bundle.aggregates.end(),
            [](const AggregateCell& a, const AggregateCell& b) { return a.key < b.key; });
  bundle.citation_distribution = log_citation_distribution(cohort);
  return bundle;
}

// ---------------------------------------------------------------------------
// Formatting

namespace fmt {

inline std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

/// Shortest text that parses back to the same double.
inline std::string exact(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline std::string t_text(double t) {
  if (std::isinf(t)) return t > 0 ? "inf" : "-inf";
  return fixed2(t);
}

}  // namespace fmt

struct TableDocuments {
  std::string tsv;
  std::string text;
};

namespace detail {

inline constexpr BaselineSource kTableBaselines[] = {BaselineSource::OpenAlex, BaselineSource::GoogleScholar};

// "High / Low / T / stars / mean (sd)" for one model/baseline/epsilon.
inline std::string table_cell(const AnalysisBundle& b, const std::string& model, BaselineSource base, double eps) {
  const auto* t = b.find(TestSpec{model, base, eps, Facet::Overall, 0});
  const auto* agg = b.find_aggregate(CellKey{model, base, eps, Facet::Overall, 0, std::nullopt});
  if (!t && !agg) return "-";
  std::string s;
  if (t && t->result) {
    s = fmt::fixed2(t->result->group_high.mean) + " / " + fmt::fixed2(t->result->group_low.mean) + " / " +
        fmt::t_text(t->result->t_stat) + " / " + std::string(to_string(t->result->stars));
  } else {
    const auto mean_or_dash = [](const SampleSummary& s) { return s.n ? fmt::fixed2(s.mean) : std::string("-"); };
    s = t ? mean_or_dash(t->high) + " / " + mean_or_dash(t->low) + " / n/a / n/a" : "- / - / n/a / n/a";
  }
  s += " / ";
  s += agg ? fmt::fixed2(agg->mean) + " (" + fmt::fixed2(agg->sd) + ")" : std::string("-");
  return s;
}

inline std::size_t display_width(std::string_view s) { return text::to_u32(s).size(); }

inline std::string pad(std::string s, std::size_t width) {
  const std::size_t w = display_width(s);
  if (w < width) s.append(width - w, ' ');
  return s;
}

}  // namespace detail

inline const char* kTableTsvHeader =
    "epsilon\tmodel\tbaseline\tdne_high\tdne_low\tt_stat\tdf\tp_value\tstars\toverall_mean\toverall_sd\tn_high\tn_"
    "low\tstatus\n";

/// Overall-facet results, one section per epsilon (ascending) and one row
/// per model, OpenAlex block first. Means and t use two decimals; p is shown
/// as its star level. The TSV carries full-precision values.
inline TableDocuments emit_tables(const AnalysisBundle& b) {
  TableDocuments d;
  d.tsv = kTableTsvHeader;

  std::vector<std::vector<std::string>> rows;  // {label, oa cell, gs cell} or section marker
  const std::vector<std::string> header = {"LLM", "OpenAlex: DNE_High / DNE_Low / T-Stat / P-Val / Overall (±SD)",
                                           "Google Scholar: DNE_High / DNE_Low / T-Stat / P-Val / Overall (±SD)"};
  for (double eps : b.epsilons()) {
    rows.push_back({"# epsilon = " + fmt::fixed2(eps)});
    for (const auto& model : b.models) {
      std::vector<std::string> row{model};
      for (auto base : detail::kTableBaselines) {
        row.push_back(detail::table_cell(b, model, base, eps));
        const auto* t = b.find(TestSpec{model, base, eps, Facet::Overall, 0});
        const auto* agg = b.find_aggregate(CellKey{model, base, eps, Facet::Overall, 0, std::nullopt});
        if (!t && !agg) continue;
        std::ostringstream os;
        os << fmt::exact(eps) << '\t' << model << '\t' << to_string(base) << '\t';
        if (t && t->result) {
          const auto& r = *t->result;
          os << fmt::exact(r.group_high.mean) << '\t' << fmt::exact(r.group_low.mean) << '\t' << fmt::exact(r.t_stat)
             << '\t' << fmt::exact(r.df) << '\t' << fmt::exact(r.p_value) << '\t' << to_string(r.stars);
        } else {
          os << (t && t->high.n ? fmt::exact(t->high.mean) : "") << '\t' << (t && t->low.n ? fmt::exact(t->low.mean) : "")
             << "\t\t\t\t";
        }
        os << '\t' << (agg ? fmt::exact(agg->mean) : "") << '\t' << (agg ? fmt::exact(agg->sd) : "") << '\t'
           << (t ? t->high.n : 0) << '\t' << (t ? t->low.n : 0) << '\t'
           << (t && t->error ? std::string(to_string(*t->error)) : std::string("ok")) << '\n';
        d.tsv += os.str();
      }
      rows.push_back(std::move(row));
    }
  }

  std::vector<std::size_t> width(3, 0);
  for (std::size_t c = 0; c < 3; ++c) width[c] = detail::display_width(header[c]);
  for (const auto& r : rows)
    if (r.size() == 3)
      for (std::size_t c = 0; c < 3; ++c) width[c] = std::max(width[c], detail::display_width(r[c]));
  const auto line = [&](const std::vector<std::string>& r) {
    return detail::pad(r[0], width[0]) + " | " + detail::pad(r[1], width[1]) + " | " + r[2] + "\n";
  };
  d.text = line(header);
  for (const auto& r : rows) d.text += r.size() == 3 ? line(r) : r[0] + "\n";
  return d;
}

enum class PlotKind { Radar, GroupedBar, Violin };

struct PlotDocument {
  std::string name;  // file stem
  std::string tsv;
};

/// Radar: High/Low means and stars per field or region for every
/// (model, baseline, epsilon). GroupedBar: overall facet mean per model and
/// baseline. Violin: the log-citation summaries, unchanged.
inline std::vector<PlotDocument> emit_plot_data(const AnalysisBundle& b, PlotKind kind) {
  std::vector<PlotDocument> docs;
  const auto opt_mean = [](const SampleSummary& s) { return s.n ? fmt::exact(s.mean) : std::string(); };
  switch (kind) {
    case PlotKind::Radar:
      for (auto facet : {Facet::ByField, Facet::ByRegion}) {
        PlotDocument d{std::string("radar_") + std::string(to_string(facet)),
                       "model\tbaseline\tepsilon\tfacet\thigh_mean\tlow_mean\tstars\n"};
        for (const auto& t : b.tests) {
          if (t.spec.facet != facet) continue;
          d.tsv += t.spec.model_id + '\t' + std::string(to_string(t.spec.baseline)) + '\t' + fmt::exact(t.spec.epsilon) +
                   '\t' + t.spec.facet_label() + '\t' + opt_mean(t.high) + '\t' + opt_mean(t.low) + '\t' +
                   (t.result ? std::string(to_string(t.result->stars)) : std::string("n/a")) + '\n';
        }
        docs.push_back(std::move(d));
      }
      break;
    case PlotKind::GroupedBar: {
      std::set<BaselineSource> present;
      for (const auto& t : b.tests) present.insert(t.spec.baseline);
      for (const auto& a : b.aggregates) present.insert(a.key.baseline);
      for (auto facet : {Facet::ByField, Facet::ByRegion}) {
        PlotDocument d{std::string("grouped_bar_") + std::string(to_string(facet)),
                       "facet\tmodel\tbaseline\tepsilon\tmean\tsd\tn\n"};
        const int width = facet == Facet::ByField ? static_cast<int>(kAllFields.size()) : static_cast<int>(kAllRegions.size());
        for (const auto& model : b.models)
          for (auto base : detail::kTableBaselines) {
            if (!present.count(base)) continue;
            for (double eps : b.epsilons())
              for (int i = 0; i < width; ++i) {
                const CellKey key{model, base, eps, facet, i, std::nullopt};
                const auto* a = b.find_aggregate(key);
                d.tsv += key.facet_label() + '\t' + model + '\t' + std::string(to_string(base)) + '\t' + fmt::exact(eps) +
                         '\t' + (a ? fmt::exact(a->mean) : std::string()) + '\t' + (a ? fmt::exact(a->sd) : std::string()) +
                         '\t' + std::to_string(a ? a->n : 0) + '\n';
              }
          }
        docs.push_back(std::move(d));
      }
      break;
    }
    case PlotKind::Violin: {
      PlotDocument d{"violin_log_citations", "facet_kind\tfacet\tgroup\tn\tmin\tq1\tmedian\tq3\tmax\n"};
      for (const auto& s : b.citation_distribution)
        d.tsv += s.facet_kind + '\t' + s.facet + '\t' + s.group + '\t' + std::to_string(s.n) + '\t' + fmt::exact(s.min) +
                 '\t' + fmt::exact(s.q1) + '\t' + fmt::exact(s.median) + '\t' + fmt::exact(s.q3) + '\t' +
                 fmt::exact(s.max) + '\n';
      docs.push_back(std::move(d));
      break;
    }
  }
  return docs;
}

// ---------------------------------------------------------------------------
// Bundle serialisation (analysis.json)

inline nlohmann::json summary_json(const SampleSummary& s) { return {{"n", s.n}, {"mean", s.mean}, {"sd", s.sd}}; }

inline SampleSummary summary_from_json(const nlohmann::json& j) {
  return {j.at("n").get<std::size_t>(), j.at("mean").get<double>(), j.at("sd").get<double>()};
}

// JSON has no infinities; t = +/-inf is written as a string.
inline nlohmann::json number_json(double v) {
  if (std::isfinite(v)) return v;
  return fmt::exact(v);
}

inline double number_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  return std::strtod(j.get<std::string>().c_str(), nullptr);
}

inline nlohmann::json to_json(const AnalysisBundle& b) {
  nlohmann::json j;
  j["models"] = b.models;
  j["tests"] = nlohmann::json::array();
  for (const auto& t : b.tests) {
    nlohmann::json e = {{"model", t.spec.model_id},
                        {"baseline", std::string(to_string(t.spec.baseline))},
                        {"epsilon", t.spec.epsilon},
                        {"facet", std::string(to_string(t.spec.facet))},
                        {"facet_index", t.spec.facet_index},
                        {"facet_label", t.spec.facet_label()},
                        {"high", summary_json(t.high)},
                        {"low", summary_json(t.low)}};
    if (t.result) {
      e["t_stat"] = number_json(t.result->t_stat);
      e["df"] = t.result->df;
      e["p_value"] = t.result->p_value;
      e["stars"] = std::string(to_string(t.result->stars));
    }
    if (t.error) e["error"] = std::string(to_string(*t.error));
    j["tests"].push_back(std::move(e));
  }
  j["aggregates"] = nlohmann::json::array();
  for (const auto& a : b.aggregates)
    j["aggregates"].push_back({{"model", a.key.model_id},
                               {"baseline", std::string(to_string(a.key.baseline))},
                               {"epsilon", a.key.epsilon},
                               {"facet", std::string(to_string(a.key.facet))},
                               {"facet_index", a.key.facet_index},
                               {"n", a.n},
                               {"mean", a.mean},
                               {"sd", a.sd}});
  j["citation_distribution"] = nlohmann::json::array();
  for (const auto& s : b.citation_distribution)
    j["citation_distribution"].push_back({{"facet_kind", s.facet_kind}, {"facet", s.facet}, {"group", s.group},
                                          {"n", s.n}, {"min", s.min}, {"q1", s.q1}, {"median", s.median},
                                          {"q3", s.q3}, {"max", s.max}});
  return j;
}

inline Facet facet_from_string(const std::string& s) {
  if (s == "overall") return Facet::Overall;
  if (s == "field") return Facet::ByField;
  if (s == "region") return Facet::ByRegion;
  throw Error(ErrorCode::BadInput, "unknown facet '" + s + "'");
}

inline BaselineSource baseline_from_json(const nlohmann::json& j) {
  const auto b = parse_baseline(j.get<std::string>());
  if (!b) throw Error(ErrorCode::BadInput, "unknown baseline " + j.dump());
  return *b;
}

inline AnalysisBundle bundle_from_json(const nlohmann::json& j) {
  AnalysisBundle b;
  b.models = j.at("models").get<std::vector<std::string>>();
  for (const auto& e : j.at("tests")) {
    AnalysisEntry t;
    t.spec = {e.at("model").get<std::string>(), baseline_from_json(e.at("baseline")), e.at("epsilon").get<double>(),
              facet_from_string(e.at("facet").get<std::string>()), e.at("facet_index").get<int>()};
    t.high = summary_from_json(e.at("high"));
    t.low = summary_from_json(e.at("low"));
    if (e.contains("t_stat")) {
      TestResult r;
      r.group_high = t.high;
      r.group_low = t.low;
      r.t_stat = number_from_json(e.at("t_stat"));
      r.df = e.at("df").get<double>();
      r.p_value = e.at("p_value").get<double>();
      r.stars = stars_for(r.p_value);
      t.result = r;
    }
    if (e.contains("error")) t.error = ErrorCode::InsufficientSample;
    b.tests.push_back(std::move(t));
  }
  for (const auto& a : j.at("aggregates")) {
    AggregateCell c;
    c.key = {a.at("model").get<std::string>(), baseline_from_json(a.at("baseline")), a.at("epsilon").get<double>(),
             facet_from_string(a.at("facet").get<std::string>()), a.at("facet_index").get<int>(), std::nullopt};
    c.n = a.at("n").get<std::size_t>();
    c.mean = a.at("mean").get<double>();
    c.sd = a.at("sd").get<double>();
    b.aggregates.push_back(c);
  }
  for (const auto& s : j.at("citation_distribution"))
    b.citation_distribution.push_back({s.at("facet_kind").get<std::string>(), s.at("facet").get<std::string>(),
                                       s.at("group").get<std::string>(), s.at("n").get<std::size_t>(),
                                       s.at("min").get<double>(), s.at("q1").get<double>(),
                                       s.at("median").get<double>(), s.at("q3").get<double>(),
                                       s.at("max").get<double>()});
  return b;
}

}  // namespace dnex
