#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dnex/cohort.hpp"
#include "dnex/dne.hpp"
#include "dnex/llm_probe.hpp"
#include "dnex/stats.hpp"
#include "support.hpp"

using namespace dnex;

namespace {

constexpr int kRounds = 500;

std::string random_word(std::mt19937_64& rng, std::size_t alphabet = 26) {
  static const std::string letters = "abcdefghijklmnopqrstuvwxyz";
  std::string w(1 + rng() % 9, 'a');
  for (auto& c : w) c = letters[rng() % alphabet];
  w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
  return w;
}

std::vector<std::string> random_names(std::mt19937_64& rng, std::size_t max) {
  std::vector<std::string> out(rng() % (max + 1));
  for (auto& n : out) n = random_word(rng) + " " + random_word(rng, 5);
  return out;
}

}  // namespace

TEST_CASE("similarity is symmetric and bounded") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < kRounds; ++i) {
    const auto a = random_word(rng, 4), b = random_word(rng, 4);
    const double s = similarity(a, b);
    CHECK(s == similarity(b, a));
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
    CHECK(similarity(a, a) == 1.0);
  }
}

TEST_CASE("matching invariants") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < kRounds; ++i) {
    const auto base = random_names(rng, 8);
    auto gen = random_names(rng, 8);
    const auto r = match_coauthors(base, gen, MatchConfig{0.7});
    CHECK(r.discovered_count <= base.size());
    CHECK(r.discovered_flags.size() == base.size());
    CHECK(static_cast<std::size_t>(std::count(r.discovered_flags.begin(), r.discovered_flags.end(), true)) ==
          r.discovered_count);
    CHECK(r.pairs.size() == r.discovered_count);
    for (const auto& p : r.pairs) CHECK(meets_threshold(p.similarity, 0.7));

    // More generated names never lose a discovery.
    gen.push_back(random_word(rng) + " " + random_word(rng, 5));
    CHECK(match_coauthors(base, gen, MatchConfig{0.7}).discovered_count >= r.discovered_count);

    // Generated order does not matter for the count.
    std::shuffle(gen.begin(), gen.end(), rng);
    const auto again = match_coauthors(base, gen, MatchConfig{0.7});
    gen.pop_back();
    CHECK(again.discovered_count >= r.discovered_count);
  }
}

TEST_CASE("every baseline name is found in its own list") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < kRounds; ++i) {
    const auto base = random_names(rng, 8);
    for (double eps : {0.6, 0.9, 1.0}) CHECK(match_coauthors(base, base, MatchConfig{eps}).discovered_count == base.size());
  }
}

TEST_CASE("DNE stays in the unit interval") {
  std::mt19937_64 rng(14);
  for (int i = 0; i < kRounds; ++i) {
    const auto base = random_names(rng, 8);
    if (base.empty()) continue;
    const auto gen = random_names(rng, 12);
    const BaselineCounts counts{base.size(), 1 + rng() % 10};
    for (auto b : {BaselineSource::GoogleScholar, BaselineSource::OpenAlex})
      for (const auto& s : threshold_sweep(base, gen, counts, b, {0.6, 0.7, 0.8, 0.9})) {
        CHECK(s.value >= 0.0);
        CHECK(s.value <= 1.0);
      }
  }
}

TEST_CASE("pure slash lists are always Valid") {
  std::mt19937_64 rng(15);
  for (int i = 0; i < kRounds; ++i) {
    auto names = random_names(rng, 10);
    names.push_back("Lee Park");
    names.push_back("Ana Silva");
    const auto text = text::join(names, "/");
    CHECK(classify_response(text) == ResponseClass::Valid);
    CHECK_FALSE(parse_coauthor_list(text).empty());
  }
}

TEST_CASE("Welch test is antisymmetric") {
  std::mt19937_64 rng(16);
  std::normal_distribution<double> d(0.0, 1.0);
  for (int i = 0; i < kRounds; ++i) {
    std::vector<double> x(2 + rng() % 20), y(2 + rng() % 20);
    for (auto& v : x) v = d(rng);
    for (auto& v : y) v = d(rng) + 0.3;
    const auto a = stats::welch_t_test(x, y), b = stats::welch_t_test(y, x);
    CHECK(a.t_stat == Catch::Approx(-b.t_stat));
    CHECK(a.df == Catch::Approx(b.df));
    CHECK(a.p_value + b.p_value == Catch::Approx(1.0));
  }
}

TEST_CASE("type-7 quantiles are monotone and bracketed") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < kRounds; ++i) {
    std::vector<double> xs(1 + rng() % 30);
    for (auto& v : xs) v = static_cast<double>(rng() % 1000);
    std::sort(xs.begin(), xs.end());
    double prev = xs.front();
    for (double p = 0.0; p <= 1.0; p += 0.05) {
      const double q = quantile_sorted(xs, p);
      CHECK(q >= prev);
      CHECK(q <= xs.back());
      prev = q;
    }
  }
}

TEST_CASE("cohort groups never share a citation band") {
  std::mt19937_64 rng(18);
  for (int round = 0; round < 20; ++round) {
    std::vector<SeedAuthor> pool;
    const std::size_t n = 4 + rng() % 40;
    for (std::size_t i = 0; i < n; ++i)
      pool.push_back(testing::make_seed("S" + std::to_string(i), FieldOfScience::PhysicsAstronomy, "Optics", Region::Europe,
                                        100 + static_cast<std::int64_t>(rng() % 60), "I" + std::to_string(i)));
    const auto r = build_cohort(pool, {1 + static_cast<int>(rng() % 10), 100, rng()});
    std::int64_t max_low = INT64_MIN, min_high = INT64_MAX;
    for (const auto& s : r.seeds) {
      if (s.group == CitationGroup::Low) max_low = std::max(max_low, s.citation_count);
      else min_high = std::min(min_high, s.citation_count);
    }
    if (max_low != INT64_MIN && min_high != INT64_MAX) CHECK(max_low <= min_high);
  }
}
