#include <catch2/catch_amalgamated.hpp>

#include "dnex/llm_probe.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace dnex;

namespace {

class ScriptedClient final : public CompletionClient {
 public:
  explicit ScriptedClient(std::vector<std::function<std::string(const std::string&)>> steps) : steps_(std::move(steps)) {}
  std::string model_id() const override { return "scripted"; }
  std::string complete(const std::string& prompt) override {
    ++calls;
    const auto& step = steps_.at(std::min(calls - 1, steps_.size() - 1));
    return step(prompt);
  }
  std::size_t calls = 0;

 private:
  std::vector<std::function<std::string(const std::string&)>> steps_;
};

ProbeOptions no_sleep() {
  ProbeOptions o;
  o.sleep = [](std::chrono::milliseconds) {};
  o.now = [] { return std::string("2025-01-01T00:00:00Z"); };
  return o;
}

nlohmann::json load(const std::string& name) { return nlohmann::json::parse(testing::slurp(testing::data_dir() / name)); }

}  // namespace

TEST_CASE("build_prompt substitutes exactly three slots") {
  CHECK(build_prompt({"A B", "Optics", 3}) ==
        "Can you list the top co-authors of A B, who works in the field of Optics? Please provide the full names "
        "(first and last) of up to 3 co-authors. Separate each co-author's full name from the next using a forward "
        "slash ('/'), without adding extra whitespace.");
  CHECK(build_prompt({"A B", "Optics", 1}).find("up to 1 co-authors.") != std::string::npos);
  CHECK_THROWS_AS(build_prompt({"A B", "", 3}), Error);
  CHECK_THROWS_AS(build_prompt({"", "Optics", 3}), Error);
  CHECK_THROWS_AS(build_prompt({"A B", "Optics", 0}), Error);
}

TEST_CASE("classify_response examples") {
  CHECK(classify_response("I don't have access to real-time or specific individual publication databases...") ==
        ResponseClass::Null);
  CHECK(classify_response("Jane Doe/John Smith/Alice Wu") == ResponseClass::Valid);
  CHECK(classify_response("Here is a list of fictional co-authors: Al Bo/Cy Dee") == ResponseClass::Fictional);
  CHECK(classify_response("") == ResponseClass::Null);
  CHECK(classify_response("   \n ") == ResponseClass::Null);
  CHECK(classify_response("1. 2. 3.") == ResponseClass::Null);
}

TEST_CASE("every transcribed refusal classifies as Null") {
  const auto j = load("null_responses.json");
  REQUIRE(j.size() == 15);
  for (const auto& e : j) {
    INFO(e["text"].get<std::string>());
    CHECK(classify_response(e["text"].get<std::string>()) == ResponseClass::Null);
  }
}

TEST_CASE("valid and fictional fixtures") {
  const auto j = load("classifier_fixtures.json");
  REQUIRE(j["valid"].size() == 20);
  for (const auto& v : j["valid"]) {
    INFO(v.get<std::string>());
    CHECK(classify_response(v.get<std::string>()) == ResponseClass::Valid);
  }
  for (const auto& v : j["fictional"]) {
    INFO(v.get<std::string>());
    CHECK(classify_response(v.get<std::string>()) == ResponseClass::Fictional);
  }
}

TEST_CASE("pattern file extends the defaults") {
  testing::TempDir dir("patterns");
  const auto path = dir.path() / "p.json";
  std::ofstream(path) << R"({"null": ["NO COMMENT"], "fictional": ["invented"]})";
  const auto p = ResponsePatterns::from_file(path.string());
  CHECK(classify_response("No comment on that person.", p) == ResponseClass::Null);
  CHECK(classify_response("Invented names: Al Bo/Cy Dee", p) == ResponseClass::Fictional);
  CHECK(classify_response("I don't have access to that.", p) == ResponseClass::Null);
}

TEST_CASE("parse_coauthor_list examples") {
  CHECK(parse_coauthor_list("Jane Doe/John Smith") == std::vector<std::string>{"Jane Doe", "John Smith"});
  CHECK(parse_coauthor_list("Sure! Here you go:\nJane Doe / John Smith /") ==
        std::vector<std::string>{"Jane Doe", "John Smith"});
  CHECK(parse_coauthor_list("Jane Doe/Jane Doe/J. Doe") == std::vector<std::string>{"Jane Doe", "J. Doe"});
  CHECK(parse_coauthor_list("Ada Lovelace") == std::vector<std::string>{"Ada Lovelace"});
  CHECK(parse_coauthor_list("Intro text\nA B/C D\nE F/G H\nThanks") == std::vector<std::string>{"A B", "C D", "E F", "G H"});
  CHECK_THROWS_AS(parse_coauthor_list("/ / /"), Error);
  CHECK_THROWS_AS(parse_coauthor_list("line one\nline two"), Error);
}

TEST_CASE("a pure slash list is never Null or Fictional") {
  std::mt19937_64 rng(3);
  const std::vector<std::string> pieces = {"Ann", "Bo", "Cruz", "Dahl", "Eze", "Fox", "Gil", "Hu", "Ito", "Jin"};
  for (int i = 0; i < 500; ++i) {
    std::string s;
    const int n = 1 + static_cast<int>(rng() % 8);
    for (int k = 0; k < n; ++k) s += (k ? "/" : "") + pieces[rng() % 10] + " " + pieces[rng() % 10];
    if (n == 1) s += "/";
    CHECK(classify_response(s) == ResponseClass::Valid);
  }
}

TEST_CASE("probe against scripted endpoints") {
  const auto seed = testing::make_seed("Ada Lovelace", FieldOfScience::MathematicsStatistics, "Applied Mathematics",
                                       Region::Europe, 900);
  const std::vector<std::string> baseline = {"Charles Babbage", "Mary Somerville"};

  ScriptedClient echo({[&](const std::string&) { return baseline[0] + "/" + baseline[1]; }});
  auto rec = probe(seed, 2, echo, no_sleep());
  CHECK(rec.classification == ResponseClass::Valid);
  CHECK(rec.generated_names == baseline);
  CHECK(rec.prompt == build_prompt({"Ada Lovelace", "Applied Mathematics", 2}));
  CHECK(rec.timestamp == "2025-01-01T00:00:00Z");
  CHECK(echo.calls == 1);

  const auto refusal = load("null_responses.json")[0]["text"].get<std::string>();
  ScriptedClient refuse({[&](const std::string&) { return refusal; }});
  rec = probe(seed, 2, refuse, no_sleep());
  CHECK(rec.classification == ResponseClass::Null);
  CHECK(rec.generated_names.empty());
  CHECK(refuse.calls == 1);

  ScriptedClient flaky({[](const std::string&) -> std::string { throw TransportFailure("reset"); },
                        [](const std::string&) -> std::string { return "A B/C D/E F"; }});
  std::vector<std::string> attempts;
  rec = probe(seed, 2, flaky, no_sleep(), &attempts);
  CHECK(flaky.calls == 2);
  CHECK(attempts.size() == 1);
  CHECK(rec.overshoot() == 1);

  ScriptedClient down({[](const std::string&) -> std::string { throw TransportFailure("refused"); }});
  auto opts = no_sleep();
  opts.retry.max_retries = 2;
  try {
    probe(seed, 2, down, opts);
    FAIL("expected TransportError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TransportError);
  }
  CHECK(down.calls == 3);
}

TEST_CASE("retry delays grow and cap") {
  RetryPolicy p;
  CHECK(p.delay_for(1) == std::chrono::milliseconds(500));
  CHECK(p.delay_for(2) == std::chrono::milliseconds(1000));
  CHECK(p.delay_for(30) == p.max_delay);
}
