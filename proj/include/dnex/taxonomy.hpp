#pragma once

// Closed field/subfield taxonomy (10 fields of science and their subfields).

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "text.hpp"

namespace dnex {

enum class FieldOfScience {
  AgricultureFisheriesForestry,
  BuiltEnvironmentDesign,
  Engineering,
  InformationCommunicationTechnologies,
  EconomicsBusiness,
  ClinicalMedicine,
  Biology,
  EarthEnvironmentalSciences,
  MathematicsStatistics,
  PhysicsAstronomy,
};

inline constexpr std::array<FieldOfScience, 10> kAllFields = {
    FieldOfScience::AgricultureFisheriesForestry,
    FieldOfScience::BuiltEnvironmentDesign,
    FieldOfScience::Engineering,
    FieldOfScience::InformationCommunicationTechnologies,
    FieldOfScience::EconomicsBusiness,
    FieldOfScience::ClinicalMedicine,
    FieldOfScience::Biology,
    FieldOfScience::EarthEnvironmentalSciences,
    FieldOfScience::MathematicsStatistics,
    FieldOfScience::PhysicsAstronomy,
};

constexpr std::string_view to_string(FieldOfScience f) noexcept {
  switch (f) {
    case FieldOfScience::AgricultureFisheriesForestry: return "Agriculture, Fisheries & Forestry";
    case FieldOfScience::BuiltEnvironmentDesign: return "Built Environment & Design";
    case FieldOfScience::Engineering: return "Engineering";
    case FieldOfScience::InformationCommunicationTechnologies: return "Information & Communication Technologies";
    case FieldOfScience::EconomicsBusiness: return "Economics & Business";
    case FieldOfScience::ClinicalMedicine: return "Clinical Medicine";
    case FieldOfScience::Biology: return "Biology";
    case FieldOfScience::EarthEnvironmentalSciences: return "Earth & Environmental Sciences";
    case FieldOfScience::MathematicsStatistics: return "Mathematics & Statistics";
    case FieldOfScience::PhysicsAstronomy: return "Physics & Astronomy";
  }
  return "";
}

inline std::optional<FieldOfScience> parse_field(std::string_view s) {
  for (auto f : kAllFields)
    if (to_string(f) == text::trim(s)) return f;
  return std::nullopt;
}

struct SubfieldEntry {
  std::string_view subfield;
  FieldOfScience field;
};

namespace detail {
using F = FieldOfScience;
inline constexpr SubfieldEntry kSubfields[] = {
    {"Agronomy & Agriculture", F::AgricultureFisheriesForestry},
    {"Dairy & Animal Science", F::AgricultureFisheriesForestry},
    {"Fisheries", F::AgricultureFisheriesForestry},
    {"Food Science", F::AgricultureFisheriesForestry},
    {"Forestry", F::AgricultureFisheriesForestry},
    {"Horticulture", F::AgricultureFisheriesForestry},
    {"Veterinary Sciences", F::AgricultureFisheriesForestry},

    {"Architecture", F::BuiltEnvironmentDesign},
    {"Building & Construction", F::BuiltEnvironmentDesign},
    {"Design Practice & Management", F::BuiltEnvironmentDesign},
    {"Urban & Regional Planning", F::BuiltEnvironmentDesign},

    {"Aerospace & Aeronautics", F::Engineering},
    {"Automobile Design & Engineering", F::Engineering},
    {"Biomedical Engineering", F::Engineering},
    {"Chemical Engineering", F::Engineering},
    {"Civil Engineering", F::Engineering},
    {"Electrical & Electronic Engineering", F::Engineering},
    {"Environmental Engineering", F::Engineering},
    {"Geological & Geomatics Engineering", F::Engineering},
    {"Industrial Engineering & Automation", F::Engineering},
    {"Mechanical Engineering & Transports", F::Engineering},
    {"Mining & Metallurgy", F::Engineering},
    {"Operations Research", F::Engineering},

    {"Computation Theory & Mathematics", F::InformationCommunicationTechnologies},
    {"Computer Hardware & Architecture", F::InformationCommunicationTechnologies},
    {"Distributed Computing", F::InformationCommunicationTechnologies},
    {"Image Processing", F::InformationCommunicationTechnologies},
    {"Information Systems", F::InformationCommunicationTechnologies},
    {"Medical Informatics", F::InformationCommunicationTechnologies},
    {"Networking & Telecommunications", F::InformationCommunicationTechnologies},
    {"Software Engineering", F::InformationCommunicationTechnologies},

    {"Accounting", F::EconomicsBusiness},
    {"Agricultural Economics & Policy", F::EconomicsBusiness},
    {"Business & Management", F::EconomicsBusiness},
    {"Development Studies", F::EconomicsBusiness},
    {"Econometrics", F::EconomicsBusiness},
    {"Economic Theory", F::EconomicsBusiness},
    {"Economics", F::EconomicsBusiness},
    {"Finance", F::EconomicsBusiness},
    {"Industrial Relations", F::EconomicsBusiness},
    {"Logistics & Transportation", F::EconomicsBusiness},
    {"Sport, Leisure & Tourism", F::EconomicsBusiness},

    {"Allergy", F::ClinicalMedicine},
    {"Anesthesiology", F::ClinicalMedicine},
    {"Arthritis & Rheumatology", F::ClinicalMedicine},
    {"Cardiovascular System & Hematology", F::ClinicalMedicine},
    {"Complementary & Alternative Medicine", F::ClinicalMedicine},
    {"Dentistry", F::ClinicalMedicine},
    {"Dermatology & Venereal Diseases", F::ClinicalMedicine},
    {"Emergency & Critical Care Medicine", F::ClinicalMedicine},
    {"Endocrinology & Metabolism", F::ClinicalMedicine},
    {"Environmental & Occupational Health", F::ClinicalMedicine},
    {"Gastroenterology & Hepatology", F::ClinicalMedicine},
    {"General & Internal Medicine", F::ClinicalMedicine},
    {"General Clinical Medicine", F::ClinicalMedicine},
    {"Geriatrics", F::ClinicalMedicine},
    {"Legal & Forensic Medicine", F::ClinicalMedicine},
    {"Neurology & Neurosurgery", F::ClinicalMedicine},
    {"Obstetrics & Reproductive Medicine", F::ClinicalMedicine},
    {"Ophthalmology & Optometry", F::ClinicalMedicine},
    {"Orthopedics", F::ClinicalMedicine},
    {"Otorhinolaryngology", F::ClinicalMedicine},
    {"Pathology", F::ClinicalMedicine},
    {"Pediatrics", F::ClinicalMedicine},
    {"Pharmacology & Pharmacy", F::ClinicalMedicine},
    {"Respiratory System", F::ClinicalMedicine},
    {"Sport Sciences", F::ClinicalMedicine},
    {"Surgery", F::ClinicalMedicine},
    {"Tropical Medicine", F::ClinicalMedicine},
    {"Urology & Nephrology", F::ClinicalMedicine},

    {"Entomology", F::Biology},
    {"Evolutionary Biology", F::Biology},
    {"Marine Biology & Hydrobiology", F::Biology},
    {"Ornithology", F::Biology},
    {"Plant Biology & Botany", F::Biology},
    {"Zoology", F::Biology},

    {"Environmental Sciences", F::EarthEnvironmentalSciences},
    {"Geochemistry & Geophysics", F::EarthEnvironmentalSciences},
    {"Geology", F::EarthEnvironmentalSciences},
    {"Meteorology & Atmospheric Sciences", F::EarthEnvironmentalSciences},
    {"Oceanography", F::EarthEnvironmentalSciences},
    {"Paleontology", F::EarthEnvironmentalSciences},

    {"Applied Mathematics", F::MathematicsStatistics},
    {"General Mathematics", F::MathematicsStatistics},
    {"Numerical & Computational Mathematics", F::MathematicsStatistics},
    {"Statistics & Probability", F::MathematicsStatistics},

    {"Acoustics", F::PhysicsAstronomy},
    {"Applied Physics", F::PhysicsAstronomy},
    {"Astronomy & Astrophysics", F::PhysicsAstronomy},
    {"Chemical Physics", F::PhysicsAstronomy},
    {"Fluids & Plasmas", F::PhysicsAstronomy},
    {"General Physics", F::PhysicsAstronomy},
    {"Mathematical Physics", F::PhysicsAstronomy},
    {"Optics", F::PhysicsAstronomy},
};

inline std::string subfield_key(std::string_view s) {
  return text::join(text::split_ws(text::lower_ascii(s)), " ");
}
}  // namespace detail

inline constexpr std::span<const SubfieldEntry> all_subfields() noexcept { return detail::kSubfields; }

/// Case- and whitespace-insensitive lookup.
inline std::optional<FieldOfScience> field_of_subfield(std::string_view subfield) {
  const auto key = detail::subfield_key(subfield);
  for (const auto& e : detail::kSubfields)
    if (detail::subfield_key(e.subfield) == key) return e.field;
  return std::nullopt;
}

/// Canonical spelling of a subfield, if known.
inline std::optional<std::string_view> canonical_subfield(std::string_view subfield) {
  const auto key = detail::subfield_key(subfield);
  for (const auto& e : detail::kSubfields)
    if (detail::subfield_key(e.subfield) == key) return e.subfield;
  return std::nullopt;
}

inline std::vector<std::string_view> subfields_of(FieldOfScience field) {
  std::vector<std::string_view> out;
  for (const auto& e : detail::kSubfields)
    if (e.field == field) out.push_back(e.subfield);
  return out;
}

}  // namespace dnex
