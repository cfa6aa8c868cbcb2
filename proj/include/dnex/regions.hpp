#pragma once

// Offline country -> region tables: ISO-3166 alpha-2 codes for every UN
// member state (plus a few widely used non-member codes), the email ccTLD
// rules, and an institution/place keyword table for affiliation strings.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "text.hpp"

namespace dnex {

enum class Region {
  NorthAmerica,
  SouthCentralAmerica,
  Europe,
  NorthAfrica,
  SubSaharanAfrica,
  MiddleEast,
  EastSoutheastAsia,
  Oceanic,
};

inline constexpr std::array<Region, 8> kAllRegions = {
    Region::NorthAmerica, Region::SouthCentralAmerica, Region::Europe,
    Region::NorthAfrica,  Region::SubSaharanAfrica,   Region::MiddleEast,
    Region::EastSoutheastAsia, Region::Oceanic,
};

constexpr std::string_view to_string(Region r) noexcept {
  switch (r) {
    case Region::NorthAmerica: return "North America";
    case Region::SouthCentralAmerica: return "South/Central America";
    case Region::Europe: return "Europe";
    case Region::NorthAfrica: return "North Africa";
    case Region::SubSaharanAfrica: return "Sub-Saharan Africa";
    case Region::MiddleEast: return "Middle East";
    case Region::EastSoutheastAsia: return "East/Southeast Asia";
    case Region::Oceanic: return "Oceanic";
  }
  return "";
}

inline std::optional<Region> parse_region(std::string_view s) {
  for (auto r : kAllRegions)
    if (to_string(r) == text::trim(s)) return r;
  return std::nullopt;
}

struct CountryEntry {
  std::string_view code;
  std::string_view name;
  Region region;
  bool un_member;
};

namespace detail {
using R = Region;
// South and Central Asia have no region of their own in the 8-way scheme and
// are folded into East/Southeast Asia; the Caucasus and Cyprus go to Europe.
inline constexpr CountryEntry kCountries[] = {
    {"US", "United States", R::NorthAmerica, true},
    {"CA", "Canada", R::NorthAmerica, true},
    {"MX", "Mexico", R::NorthAmerica, true},

    {"BZ", "Belize", R::SouthCentralAmerica, true},
    {"CR", "Costa Rica", R::SouthCentralAmerica, true},
    {"SV", "El Salvador", R::SouthCentralAmerica, true},
    {"GT", "Guatemala", R::SouthCentralAmerica, true},
    {"HN", "Honduras", R::SouthCentralAmerica, true},
    {"NI", "Nicaragua", R::SouthCentralAmerica, true},
    {"PA", "Panama", R::SouthCentralAmerica, true},
    {"AG", "Antigua and Barbuda", R::SouthCentralAmerica, true},
    {"BS", "Bahamas", R::SouthCentralAmerica, true},
    {"BB", "Barbados", R::SouthCentralAmerica, true},
    {"CU", "Cuba", R::SouthCentralAmerica, true},
    {"DM", "Dominica", R::SouthCentralAmerica, true},
    {"DO", "Dominican Republic", R::SouthCentralAmerica, true},
    {"GD", "Grenada", R::SouthCentralAmerica, true},
    {"HT", "Haiti", R::SouthCentralAmerica, true},
    {"JM", "Jamaica", R::SouthCentralAmerica, true},
    {"KN", "Saint Kitts and Nevis", R::SouthCentralAmerica, true},
    {"LC", "Saint Lucia", R::SouthCentralAmerica, true},
    {"VC", "Saint Vincent and the Grenadines", R::SouthCentralAmerica, true},
    {"TT", "Trinidad and Tobago", R::SouthCentralAmerica, true},
    {"PR", "Puerto Rico", R::SouthCentralAmerica, false},
    {"AR", "Argentina", R::SouthCentralAmerica, true},
    {"BO", "Bolivia", R::SouthCentralAmerica, true},
    {"BR", "Brazil", R::SouthCentralAmerica, true},
    {"CL", "Chile", R::SouthCentralAmerica, true},
    {"CO", "Colombia", R::SouthCentralAmerica, true},
    {"EC", "Ecuador", R::SouthCentralAmerica, true},
    {"GY", "Guyana", R::SouthCentralAmerica, true},
    {"PY", "Paraguay", R::SouthCentralAmerica, true},
    {"PE", "Peru", R::SouthCentralAmerica, true},
    {"SR", "Suriname", R::SouthCentralAmerica, true},
    {"UY", "Uruguay", R::SouthCentralAmerica, true},
    {"VE", "Venezuela", R::SouthCentralAmerica, true},

    {"AL", "Albania", R::Europe, true},
    {"AD", "Andorra", R::Europe, true},
    {"AT", "Austria", R::Europe, true},
    {"BY", "Belarus", R::Europe, true},
    {"BE", "Belgium", R::Europe, true},
    {"BA", "Bosnia and Herzegovina", R::Europe, true},
    {"BG", "Bulgaria", R::Europe, true},
    {"HR", "Croatia", R::Europe, true},
    {"CY", "Cyprus", R::Europe, true},
    {"CZ", "Czechia", R::Europe, true},
    {"DK", "Denmark", R::Europe, true},
    {"EE", "Estonia", R::Europe, true},
    {"FI", "Finland", R::Europe, true},
    {"FR", "France", R::Europe, true},
    {"DE", "Germany", R::Europe, true},
    {"GR", "Greece", R::Europe, true},
    {"HU", "Hungary", R::Europe, true},
    {"IS", "Iceland", R::Europe, true},
    {"IE", "Ireland", R::Europe, true},
    {"IT", "Italy", R::Europe, true},
    {"LV", "Latvia", R::Europe, true},
    {"LI", "Liechtenstein", R::Europe, true},
    {"LT", "Lithuania", R::Europe, true},
    {"LU", "Luxembourg", R::Europe, true},
    {"MT", "Malta", R::Europe, true},
    {"MD", "Moldova", R::Europe, true},
    {"MC", "Monaco", R::Europe, true},
    {"ME", "Montenegro", R::Europe, true},
    {"NL", "Netherlands", R::Europe, true},
    {"MK", "North Macedonia", R::Europe, true},
    {"NO", "Norway", R::Europe, true},
    {"PL", "Poland", R::Europe, true},
    {"PT", "Portugal", R::Europe, true},
    {"RO", "Romania", R::Europe, true},
    {"RU", "Russia", R::Europe, true},
    {"SM", "San Marino", R::Europe, true},
    {"RS", "Serbia", R::Europe, true},
    {"SK", "Slovakia", R::Europe, true},
    {"SI", "Slovenia", R::Europe, true},
    {"ES", "Spain", R::Europe, true},
    {"SE", "Sweden", R::Europe, true},
    {"CH", "Switzerland", R::Europe, true},
    {"UA", "Ukraine", R::Europe, true},
    {"GB", "United Kingdom", R::Europe, true},
    {"AM", "Armenia", R::Europe, true},
    {"AZ", "Azerbaijan", R::Europe, true},
    {"GE", "Georgia", R::Europe, true},

    {"DZ", "Algeria", R::NorthAfrica, true},
    {"EG", "Egypt", R::NorthAfrica, true},
    {"LY", "Libya", R::NorthAfrica, true},
    {"MA", "Morocco", R::NorthAfrica, true},
    {"SD", "Sudan", R::NorthAfrica, true},
    {"TN", "Tunisia", R::NorthAfrica, true},

    {"AO", "Angola", R::SubSaharanAfrica, true},
    {"BJ", "Benin", R::SubSaharanAfrica, true},
    {"BW", "Botswana", R::SubSaharanAfrica, true},
    {"BF", "Burkina Faso", R::SubSaharanAfrica, true},
    {"BI", "Burundi", R::SubSaharanAfrica, true},
    {"CV", "Cabo Verde", R::SubSaharanAfrica, true},
    {"CM", "Cameroon", R::SubSaharanAfrica, true},
    {"CF", "Central African Republic", R::SubSaharanAfrica, true},
    {"TD", "Chad", R::SubSaharanAfrica, true},
    {"KM", "Comoros", R::SubSaharanAfrica, true},
    {"CG", "Congo", R::SubSaharanAfrica, true},
    {"CD", "Democratic Republic of the Congo", R::SubSaharanAfrica, true},
    {"CI", "Cote d'Ivoire", R::SubSaharanAfrica, true},
    {"DJ", "Djibouti", R::SubSaharanAfrica, true},
    {"GQ", "Equatorial Guinea", R::SubSaharanAfrica, true},
    {"ER", "Eritrea", R::SubSaharanAfrica, true},
    {"SZ", "Eswatini", R::SubSaharanAfrica, true},
    {"ET", "Ethiopia", R::SubSaharanAfrica, true},
    {"GA", "Gabon", R::SubSaharanAfrica, true},
    {"GM", "Gambia", R::SubSaharanAfrica, true},
    {"GH", "Ghana", R::SubSaharanAfrica, true},
    {"GN", "Guinea", R::SubSaharanAfrica, true},
    {"GW", "Guinea-Bissau", R::SubSaharanAfrica, true},
    {"KE", "Kenya", R::SubSaharanAfrica, true},
    {"LS", "Lesotho", R::SubSaharanAfrica, true},
    {"LR", "Liberia", R::SubSaharanAfrica, true},
    {"MG", "Madagascar", R::SubSaharanAfrica, true},
    {"MW", "Malawi", R::SubSaharanAfrica, true},
    {"ML", "Mali", R::SubSaharanAfrica, true},
    {"MR", "Mauritania", R::SubSaharanAfrica, true},
    {"MU", "Mauritius", R::SubSaharanAfrica, true},
    {"MZ", "Mozambique", R::SubSaharanAfrica, true},
    {"NA", "Namibia", R::SubSaharanAfrica, true},
    {"NE", "Niger", R::SubSaharanAfrica, true},
    {"NG", "Nigeria", R::SubSaharanAfrica, true},
    {"RW", "Rwanda", R::SubSaharanAfrica, true},
    {"ST", "Sao Tome and Principe", R::SubSaharanAfrica, true},
    {"SN", "Senegal", R::SubSaharanAfrica, true},
    {"SC", "Seychelles", R::SubSaharanAfrica, true},
    {"SL", "Sierra Leone", R::SubSaharanAfrica, true},
    {"SO", "Somalia", R::SubSaharanAfrica, true},
    {"ZA", "South Africa", R::SubSaharanAfrica, true},
    {"SS", "South Sudan", R::SubSaharanAfrica, true},
    {"TZ", "Tanzania", R::SubSaharanAfrica, true},
    {"TG", "Togo", R::SubSaharanAfrica, true},
    {"UG", "Uganda", R::SubSaharanAfrica, true},
    {"ZM", "Zambia", R::SubSaharanAfrica, true},
    {"ZW", "Zimbabwe", R::SubSaharanAfrica, true},

    {"BH", "Bahrain", R::MiddleEast, true},
    {"IR", "Iran", R::MiddleEast, true},
    {"IQ", "Iraq", R::MiddleEast, true},
    {"IL", "Israel", R::MiddleEast, true},
    {"JO", "Jordan", R::MiddleEast, true},
    {"KW", "Kuwait", R::MiddleEast, true},
    {"LB", "Lebanon", R::MiddleEast, true},
    {"OM", "Oman", R::MiddleEast, true},
    {"QA", "Qatar", R::MiddleEast, true},
    {"SA", "Saudi Arabia", R::MiddleEast, true},
    {"SY", "Syria", R::MiddleEast, true},
    {"TR", "Turkey", R::MiddleEast, true},
    {"AE", "United Arab Emirates", R::MiddleEast, true},
    {"YE", "Yemen", R::MiddleEast, true},
    {"PS", "Palestine", R::MiddleEast, false},

    {"CN", "China", R::EastSoutheastAsia, true},
    {"JP", "Japan", R::EastSoutheastAsia, true},
    {"KP", "North Korea", R::EastSoutheastAsia, true},
    {"KR", "South Korea", R::EastSoutheastAsia, true},
    {"MN", "Mongolia", R::EastSoutheastAsia, true},
    {"TW", "Taiwan", R::EastSoutheastAsia, false},
    {"HK", "Hong Kong", R::EastSoutheastAsia, false},
    {"MO", "Macao", R::EastSoutheastAsia, false},
    {"BN", "Brunei", R::EastSoutheastAsia, true},
    {"KH", "Cambodia", R::EastSoutheastAsia, true},
    {"ID", "Indonesia", R::EastSoutheastAsia, true},
    {"LA", "Laos", R::EastSoutheastAsia, true},
    {"MY", "Malaysia", R::EastSoutheastAsia, true},
    {"MM", "Myanmar", R::EastSoutheastAsia, true},
    {"PH", "Philippines", R::EastSoutheastAsia, true},
    {"SG", "Singapore", R::EastSoutheastAsia, true},
    {"TH", "Thailand", R::EastSoutheastAsia, true},
    {"TL", "Timor-Leste", R::EastSoutheastAsia, true},
    {"VN", "Vietnam", R::EastSoutheastAsia, true},
    {"AF", "Afghanistan", R::EastSoutheastAsia, true},
    {"BD", "Bangladesh", R::EastSoutheastAsia, true},
    {"BT", "Bhutan", R::EastSoutheastAsia, true},
    {"IN", "India", R::EastSoutheastAsia, true},
    {"MV", "Maldives", R::EastSoutheastAsia, true},
    {"NP", "Nepal", R::EastSoutheastAsia, true},
    {"PK", "Pakistan", R::EastSoutheastAsia, true},
    {"LK", "Sri Lanka", R::EastSoutheastAsia, true},
    {"KZ", "Kazakhstan", R::EastSoutheastAsia, true},
    {"KG", "Kyrgyzstan", R::EastSoutheastAsia, true},
    {"TJ", "Tajikistan", R::EastSoutheastAsia, true},
    {"TM", "Turkmenistan", R::EastSoutheastAsia, true},
    {"UZ", "Uzbekistan", R::EastSoutheastAsia, true},

    {"AU", "Australia", R::Oceanic, true},
    {"NZ", "New Zealand", R::Oceanic, true},
    {"FJ", "Fiji", R::Oceanic, true},
    {"KI", "Kiribati", R::Oceanic, true},
    {"MH", "Marshall Islands", R::Oceanic, true},
    {"FM", "Micronesia", R::Oceanic, true},
    {"NR", "Nauru", R::Oceanic, true},
    {"PW", "Palau", R::Oceanic, true},
    {"PG", "Papua New Guinea", R::Oceanic, true},
    {"WS", "Samoa", R::Oceanic, true},
    {"SB", "Solomon Islands", R::Oceanic, true},
    {"TO", "Tonga", R::Oceanic, true},
    {"TV", "Tuvalu", R::Oceanic, true},
    {"VU", "Vanuatu", R::Oceanic, true},
};

struct Keyword {
  std::string_view keyword;  // lowercase, ASCII-folded
  std::string_view code;
};

// Aliases, sub-national places and institutions. Country names from
// kCountries are matched as well.
inline constexpr Keyword kAffiliationKeywords[] = {
    {"usa", "US"}, {"u.s.a.", "US"}, {"united states of america", "US"},
    {"washington", "US"}, {"california", "US"}, {"texas", "US"},
    {"new york", "US"}, {"massachusetts", "US"}, {"michigan", "US"},
    {"illinois", "US"}, {"pennsylvania", "US"}, {"ohio", "US"},
    {"florida", "US"}, {"new mexico", "US"}, {"georgia institute of technology", "US"},
    {"georgia tech", "US"}, {"university of georgia", "US"}, {"stanford", "US"},
    {"harvard", "US"}, {"mit", "US"}, {"massachusetts institute of technology", "US"},
    {"caltech", "US"}, {"princeton", "US"}, {"yale", "US"}, {"columbia university", "US"},
    {"berkeley", "US"}, {"ucla", "US"}, {"carnegie mellon", "US"},
    {"toronto", "CA"}, {"montreal", "CA"}, {"mcgill", "CA"}, {"vancouver", "CA"},
    {"unam", "MX"},
    {"uk", "GB"}, {"england", "GB"}, {"scotland", "GB"}, {"wales", "GB"},
    {"london", "GB"}, {"oxford", "GB"}, {"edinburgh", "GB"}, {"manchester", "GB"},
    {"paris", "FR"}, {"sorbonne", "FR"}, {"cnrs", "FR"},
    {"berlin", "DE"}, {"munich", "DE"}, {"max planck", "DE"}, {"heidelberg", "DE"},
    {"eth zurich", "CH"}, {"epfl", "CH"}, {"zurich", "CH"}, {"geneva", "CH"},
    {"madrid", "ES"}, {"barcelona", "ES"}, {"rome", "IT"}, {"milan", "IT"},
    {"amsterdam", "NL"}, {"delft", "NL"}, {"moscow", "RU"},
    {"tehran", "IR"}, {"sharif", "IR"}, {"isfahan", "IR"}, {"shiraz", "IR"},
    {"istanbul", "TR"}, {"ankara", "TR"}, {"technion", "IL"}, {"tel aviv", "IL"},
    {"riyadh", "SA"}, {"kaust", "SA"}, {"dubai", "AE"}, {"abu dhabi", "AE"},
    {"cairo", "EG"}, {"tunis", "TN"}, {"rabat", "MA"}, {"algiers", "DZ"},
    {"nairobi", "KE"}, {"lagos", "NG"}, {"ibadan", "NG"}, {"cape town", "ZA"},
    {"johannesburg", "ZA"}, {"witwatersrand", "ZA"}, {"addis ababa", "ET"},
    {"makerere", "UG"}, {"accra", "GH"},
    {"beijing", "CN"}, {"tsinghua", "CN"}, {"peking", "CN"}, {"shanghai", "CN"},
    {"zhejiang", "CN"}, {"tokyo", "JP"}, {"kyoto", "JP"}, {"osaka", "JP"},
    {"seoul", "KR"}, {"kaist", "KR"}, {"korea", "KR"}, {"delhi", "IN"}, {"mumbai", "IN"},
    {"bangalore", "IN"}, {"iit", "IN"}, {"singapore", "SG"}, {"nus", "SG"},
    {"kuala lumpur", "MY"}, {"jakarta", "ID"}, {"bangkok", "TH"}, {"hanoi", "VN"},
    {"manila", "PH"}, {"karachi", "PK"}, {"lahore", "PK"}, {"dhaka", "BD"},
    {"sao paulo", "BR"}, {"rio de janeiro", "BR"}, {"buenos aires", "AR"},
    {"santiago", "CL"}, {"bogota", "CO"}, {"lima", "PE"},
    {"sydney", "AU"}, {"melbourne", "AU"}, {"queensland", "AU"}, {"canberra", "AU"},
    {"auckland", "NZ"}, {"wellington", "NZ"}, {"otago", "NZ"},
};

inline bool word_char(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || static_cast<unsigned char>(c) >= 0x80;
}

// Whole-word occurrence of `needle` in `hay` (both already folded).
inline bool contains_word(std::string_view hay, std::string_view needle) {
  for (std::size_t pos = hay.find(needle); pos != std::string_view::npos; pos = hay.find(needle, pos + 1)) {
    const bool left_ok = pos == 0 || !word_char(hay[pos - 1]);
    const std::size_t end = pos + needle.size();
    const bool right_ok = end >= hay.size() || !word_char(hay[end]);
    if (left_ok && right_ok) return true;
  }
  return false;
}
}  // namespace detail

inline std::span<const CountryEntry> all_countries() noexcept { return detail::kCountries; }

inline const CountryEntry* find_country(std::string_view code) {
  std::string upper(text::trim(code));
  for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (const auto& e : detail::kCountries)
    if (e.code == upper) return &e;
  return nullptr;
}

inline std::optional<Region> region_of_country(std::string_view code) {
  if (const auto* e = find_country(code)) return e->region;
  return std::nullopt;
}

/// Country implied by the last label of an email domain ("ut.ac.ir" -> IR).
/// "uk" maps to GB; "edu", "gov" and "mil" map to US; other generic TLDs
/// resolve to nothing.
inline std::optional<std::string> country_from_email_domain(std::string_view domain) {
  auto d = text::lower_ascii(text::trim(domain));
  if (const auto at = d.rfind('@'); at != std::string::npos) d = d.substr(at + 1);
  while (!d.empty() && d.back() == '.') d.pop_back();
  if (d.empty()) return std::nullopt;
  const auto dot = d.rfind('.');
  const std::string tld = dot == std::string::npos ? d : d.substr(dot + 1);
  if (tld == "uk") return std::string("GB");
  if (tld == "edu" || tld == "gov" || tld == "mil") return std::string("US");
  if (tld.size() != 2) return std::nullopt;
  if (const auto* e = find_country(tld)) return std::string(e->code);
  return std::nullopt;
}

/// Longest whole-word keyword or country-name match in an affiliation string.
inline std::optional<std::string> country_from_affiliation(std::string_view affiliation) {
  const std::string hay = text::fold(affiliation);
  std::string_view best_code;
  std::size_t best_len = 0;
  const auto consider = [&](std::string_view kw, std::string_view code) {
    if (kw.size() > best_len && detail::contains_word(hay, kw)) {
      best_len = kw.size();
      best_code = code;
    }
  };
  for (const auto& e : detail::kCountries) {
    const auto name = text::lower_ascii(e.name);
    if (name.size() > best_len && detail::contains_word(hay, name)) {
      best_len = name.size();
      best_code = e.code;
    }
  }
  for (const auto& k : detail::kAffiliationKeywords) consider(k.keyword, k.code);
  if (best_len == 0) return std::nullopt;
  return std::string(best_code);
}

}  // namespace dnex
