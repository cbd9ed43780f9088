#include "hdual/system_io.hpp"

#include <fstream>
#include <stdexcept>

namespace hdual {

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_unsigned()) return Rational(j.get<unsigned long>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.find('.') != std::string::npos) throw std::invalid_argument("expected \"num/den\", got '" + s + "'");
    return Rational::parse(s);
  }
  throw std::invalid_argument("expected an integer or a \"num/den\" string, got " + j.dump());
}

namespace {

std::vector<Rational> read_row(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + ": expected an array");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

DigitSet read_digits(const nlohmann::json& j, const char* what, std::size_t d) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument(std::string(what) + ": expected a non-empty array");
  DigitSet D;
  for (const auto& row : j) {
    auto v = read_row(row, what);
    if (v.size() != d) throw std::invalid_argument(std::string(what) + ": digit of wrong dimension");
    D.emplace_back(std::move(v));
  }
  return D;
}

}  // namespace

SystemData parse_system(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("system description must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "R" && key != "B" && key != "L") throw std::invalid_argument("unknown key '" + key + "'");
  for (const char* key : {"R", "B", "L"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("missing key '") + key + "'");

  const auto& jr = j.at("R");
  if (!jr.is_array() || jr.empty()) throw std::invalid_argument("R: expected a non-empty array of rows");
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : jr) rows.push_back(read_row(r, "R"));
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw std::invalid_argument("R: matrix must be square");

  SystemData s;
  s.R = RMatrix(rows);
  s.B = read_digits(j.at("B"), "B", rows.size());
  s.L = read_digits(j.at("L"), "L", rows.size());
  return s;
}

SystemData load_system_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open system file '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in '" + path.string() + "': " + e.what());
  }
  return parse_system(j);
}

nlohmann::json to_json(const Rational& r) {
  if (r.is_integer() && mpz_fits_slong_p(r.num().get_mpz_t())) return r.num().get_si();
  return r.str();
}

nlohmann::json to_json(const RVector& v) {
  auto a = nlohmann::json::array();
  for (const auto& x : v.entries()) a.push_back(to_json(x));
  return a;
}

nlohmann::json system_to_json(const RMatrix& R, const DigitSet& B, const DigitSet& L) {
  nlohmann::json j;
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < R.dim(); ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t k = 0; k < R.dim(); ++k) row.push_back(to_json(R(i, k)));
    rows.push_back(row);
  }
  j["R"] = rows;
  j["B"] = nlohmann::json::array();
  for (const auto& b : B) j["B"].push_back(to_json(b));
  j["L"] = nlohmann::json::array();
  for (const auto& l : L) j["L"].push_back(to_json(l));
  return j;
}

}  // namespace hdual
