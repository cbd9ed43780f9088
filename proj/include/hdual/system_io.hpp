#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "hdual/system.hpp"

namespace hdual {

/// Unvalidated (R, B, L) as read from a system description.
struct SystemData {
  RMatrix R;
  DigitSet B;
  DigitSet L;
};

/// Parses `{ "R": [[...]], "B": [[...]], "L": [[...]] }`. Every number is an
/// integer or a "num/den" string. Unknown keys, missing keys, floats and
/// ragged arrays throw std::invalid_argument.
SystemData parse_system(const nlohmann::json& j);
SystemData load_system_file(const std::filesystem::path& path);

nlohmann::json to_json(const Rational& r);
nlohmann::json to_json(const RVector& v);
nlohmann::json system_to_json(const RMatrix& R, const DigitSet& B, const DigitSet& L);

/// Reads one number in the system-file convention.
Rational rational_from_json(const nlohmann::json& j);

}  // namespace hdual
