#pragma once

#include <string>

#include <json.hpp>

#include "svloja/exponents.hpp"
#include "svloja/verify.hpp"

namespace svloja {

// Non-finite doubles are written as the strings "inf", "-inf" and "nan" so
// that reports survive a JSON round trip unchanged.
nlohmann::json exponent_to_json(const ExponentBound &e);
ExponentBound exponent_from_json(const nlohmann::json &j);

nlohmann::json report_to_json(const VerificationReport &r);
// Throws SchemaError on a malformed document.
VerificationReport report_from_json(const nlohmann::json &j);

// Header plus one row per record; points are ';'-separated.
std::string report_to_csv(const VerificationReport &r);
std::string report_to_text(const VerificationReport &r);

nlohmann::json goodness_to_json(const GoodnessResult &g);
std::string goodness_to_text(const GoodnessResult &g);

// Pretty-printed with a trailing newline.
std::string dump_json(const nlohmann::json &j);

} // namespace svloja
