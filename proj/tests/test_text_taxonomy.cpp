#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "dnex/regions.hpp"
#include "dnex/taxonomy.hpp"
#include "dnex/text.hpp"

using namespace dnex;

TEST_CASE("fold strips diacritics, lowercases and straightens apostrophes") {
  CHECK(text::fold("José García") == "jose garcia");
  CHECK(text::fold("Søren Ødegård") == "søren ødegard");  // stroke letters have no decomposition
  CHECK(text::fold("O’Brien") == "o'brien");
  CHECK(text::fold("ÅNGSTRÖM") == "angstrom");
  CHECK(text::fold("") == "");
}

TEST_CASE("text helpers") {
  CHECK(text::trim("  a b \t") == "a b");
  CHECK(text::split("a/b//c", '/') == std::vector<std::string>{"a", "b", "", "c"});
  CHECK(text::split_lines("x\r\ny\n") == std::vector<std::string>{"x", "y"});
  CHECK(text::split_ws("  a \t b  ") == std::vector<std::string>{"a", "b"});
  CHECK(text::has_alpha("Ł."));
  CHECK_FALSE(text::has_alpha("12 - ."));
  CHECK(text::to_u32("é").size() == 1);
}

TEST_CASE("taxonomy has ten fields and closed subfield lookup") {
  CHECK(kAllFields.size() == 10);
  std::set<FieldOfScience> seen;
  for (const auto& e : all_subfields()) seen.insert(e.field);
  CHECK(seen.size() == 10);
  CHECK(field_of_subfield("Software Engineering") == FieldOfScience::InformationCommunicationTechnologies);
  CHECK(field_of_subfield("  software   engineering ") == FieldOfScience::InformationCommunicationTechnologies);
  CHECK(canonical_subfield("software engineering") == std::optional<std::string_view>("Software Engineering"));
  CHECK_FALSE(field_of_subfield("Astrology"));
  CHECK(field_of_subfield("Astronomy & Astrophysics") == FieldOfScience::PhysicsAstronomy);
  for (auto f : kAllFields) {
    CHECK_FALSE(subfields_of(f).empty());
    CHECK(parse_field(to_string(f)) == f);
  }
}

TEST_CASE("subfield names are unique") {
  std::set<std::string> names;
  for (const auto& e : all_subfields()) CHECK(names.insert(detail::subfield_key(e.subfield)).second);
}

TEST_CASE("country table covers every UN member state once") {
  std::size_t members = 0;
  std::set<std::string_view> codes;
  for (const auto& c : all_countries()) {
    members += c.un_member;
    CHECK(codes.insert(c.code).second);
    CHECK(c.code.size() == 2);
  }
  CHECK(members == 193);
  for (auto r : kAllRegions) CHECK(parse_region(to_string(r)) == r);
}

TEST_CASE("region assignments") {
  CHECK(region_of_country("IR") == Region::MiddleEast);
  CHECK(region_of_country("US") == Region::NorthAmerica);
  CHECK(region_of_country("BR") == Region::SouthCentralAmerica);
  CHECK(region_of_country("EG") == Region::NorthAfrica);
  CHECK(region_of_country("NG") == Region::SubSaharanAfrica);
  CHECK(region_of_country("JP") == Region::EastSoutheastAsia);
  CHECK(region_of_country("AU") == Region::Oceanic);
  CHECK(region_of_country("de") == Region::Europe);
  CHECK_FALSE(region_of_country("XX"));
}

TEST_CASE("email domains and affiliations map to countries") {
  CHECK(country_from_email_domain("ut.ac.ir") == std::optional<std::string>("IR"));
  CHECK(country_from_email_domain("OX.AC.UK") == std::optional<std::string>("GB"));
  CHECK(country_from_email_domain("mit.edu") == std::optional<std::string>("US"));
  CHECK_FALSE(country_from_email_domain("example.com"));
  CHECK_FALSE(country_from_email_domain(""));
  CHECK(country_from_affiliation("University of Washington") == std::optional<std::string>("US"));
  CHECK_FALSE(country_from_affiliation("Institute Nowhere"));
}
