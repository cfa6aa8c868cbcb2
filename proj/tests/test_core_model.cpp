#include <catch2/catch_amalgamated.hpp>

#include "dnex/core_model.hpp"

using namespace dnex;

namespace {
SeedCandidate candidate(std::int64_t citations, std::string subfield = "Software Engineering", std::string country = "US") {
  return {"Grace Hopper", "Yale University", "", std::move(country), std::move(subfield), citations};
}

ErrorCode code_of(const SeedCandidate& c) {
  try {
    validate_seed(c);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected rejection");
  return ErrorCode::BadInput;
}
}  // namespace

TEST_CASE("validate_seed accepts a known subfield above the floor") {
  const auto s = validate_seed(candidate(101));
  CHECK(s.field == FieldOfScience::InformationCommunicationTechnologies);
  CHECK(s.region == Region::NorthAmerica);
  CHECK(s.id == make_seed_id("Grace Hopper", "Yale University"));
  CHECK(s.id.size() == 16);
  CHECK_FALSE(s.group);
}

TEST_CASE("validate_seed rejections") {
  CHECK(code_of(candidate(100)) == ErrorCode::CitationTooLow);
  CHECK(code_of(candidate(5000, "Astrology")) == ErrorCode::UnknownSubfield);
  CHECK(code_of(candidate(5000, "Software Engineering", "ZZ")) == ErrorCode::UnknownCountry);
  CHECK(validate_seed(candidate(50), 10).citation_count == 50);
}

TEST_CASE("seed ids are stable and trim-insensitive") {
  CHECK(make_seed_id("A B", "X") == make_seed_id(" A B ", "X  "));
  CHECK(make_seed_id("A B", "X") != make_seed_id("A B", "Y"));
}

TEST_CASE("stars boundaries") {
  CHECK(stars_for(0.0009) == Stars::Three);
  CHECK(stars_for(0.001) == Stars::Two);
  CHECK(stars_for(0.0099) == Stars::Two);
  CHECK(stars_for(0.01) == Stars::One);
  CHECK(stars_for(0.049) == Stars::One);
  CHECK(stars_for(0.05) == Stars::NotSignificant);
  CHECK(to_string(Stars::Three) == "***");
  CHECK(to_string(Stars::NotSignificant) == "ns");
}

TEST_CASE("clamped ratio and overshoot") {
  CHECK(clamped_ratio(5, 10) == 0.5);
  CHECK(clamped_ratio(12, 10) == 1.0);
  CHECK(clamped_ratio(0, 3) == 0.0);
  ProbeRecord p;
  p.requested_k = 2;
  p.generated_names = {"a b", "c d", "e f"};
  CHECK(p.overshoot() == 1);
  p.requested_k = 5;
  CHECK(p.overshoot() == 0);
}

TEST_CASE("enum text round trips") {
  for (auto b : {BaselineSource::OpenAlex, BaselineSource::GoogleScholar}) CHECK(parse_baseline(to_string(b)) == b);
  for (auto c : {ResponseClass::Valid, ResponseClass::Fictional, ResponseClass::Null})
    CHECK(parse_response_class(to_string(c)) == c);
  CHECK(parse_group("High") == CitationGroup::High);
  CHECK_FALSE(parse_baseline("scopus"));
}
