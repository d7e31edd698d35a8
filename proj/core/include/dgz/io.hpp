// JSON artifacts and text renderings. All JSON is emitted with a fixed
// key order and a schema_version field, and contains no wall-clock data,
// so identical inputs produce byte-identical documents.

#pragma once

#include <string>

#include "dgz/curve.hpp"
#include "dgz/galois.hpp"

namespace dgz {

inline constexpr int kSchemaVersion = 1;

// Curve artifact: field description, parameters, and the full term list.
std::string curve_json(const Curve& C);
// Rebuilds the curve named by the artifact and verifies the stored terms
// against the reconstruction; throws Error on any mismatch.
Curve curve_from_json(const std::string& text);
std::string curve_text(const Curve& C);

std::string facts_json(const Curve& C, const FactReport& report,
                       const FactOptions& opts);
std::string facts_text(const Curve& C, const FactReport& report);

std::string scan_json(const Curve& C, const ScanReport& report);
std::string scan_text(const Curve& C, const ScanReport& report);

std::string decision_json(const Curve& C, const Decision& decision);
std::string decision_text(const Curve& C, const Decision& decision);

}  // namespace dgz
