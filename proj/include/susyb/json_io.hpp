#pragma once

// JSON interchange for WeightedPoly, HoloVector and TransformResult.
//
//   WeightedPoly:    {"version": 1, "n": 2, "sector": "one", "coeffs": {"0": 0.9, "3": -0.1}}
//   HoloVector:      {"version": 1, "n": 2, "sector": "two", "coeffs": {"1": [0.5, 0.0]}}
//   TransformResult: {"version": 1, "holo": <HoloVector>, "residual_vs_quadrature": 1e-12 | null}
//
// "version" is written on output and optional on input.

#include <charconv>
#include <string>

#include <json.hpp>

#include "susyb/errors.hpp"
#include "susyb/holomorphic.hpp"
#include "susyb/params.hpp"
#include "susyb/realline.hpp"
#include "susyb/transforms.hpp"

namespace susyb {

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline int parse_exponent(const std::string& key) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), value);
  if (ec != std::errc() || ptr != key.data() + key.size() || key.empty())
    throw SchemaError("coefficient key '" + key + "' is not an integer exponent");
  return value;
}

inline double number(const nlohmann::json& j, const std::string& what) {
  if (!j.is_number()) throw SchemaError(what + " must be a number");
  return j.get<double>();
}

/// Checks version, n and sector and returns (params, sector).
inline std::pair<SusyParams, Sector> read_header(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("expected a JSON object");
  if (j.contains("version")) {
    if (!j["version"].is_number_integer() || j["version"].get<int>() != kSchemaVersion)
      throw SchemaError("unsupported schema version");
  }
  if (!j.contains("n") || !j["n"].is_number_integer()) throw SchemaError("field 'n' must be an integer");
  if (!j.contains("sector") || !j["sector"].is_string()) throw SchemaError("field 'sector' must be \"one\" or \"two\"");
  if (!j.contains("coeffs") || !j["coeffs"].is_object()) throw SchemaError("field 'coeffs' must be an object");
  try {
    return {SusyParams(j["n"].get<int>()), parse_sector(j["sector"].get<std::string>())};
  } catch (const DomainError& e) {
    throw SchemaError(e.what());
  }
}

}  // namespace detail

inline nlohmann::json to_json(const WeightedPoly& f) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (const auto& [k, c] : f.coeffs()) coeffs[std::to_string(k)] = c;
  return {{"version", kSchemaVersion}, {"n", f.params().n()}, {"sector", to_string(f.sector())}, {"coeffs", coeffs}};
}

inline nlohmann::json to_json(const HoloVector& f) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (const auto& [k, c] : f.coeffs()) coeffs[std::to_string(k)] = {c.real(), c.imag()};
  return {{"version", kSchemaVersion}, {"n", f.params().n()}, {"sector", to_string(f.sector())}, {"coeffs", coeffs}};
}

inline nlohmann::json to_json(const TransformResult& r) {
  nlohmann::json out = {{"version", kSchemaVersion}, {"holo", to_json(r.holo)}};
  out["residual_vs_quadrature"] =
      r.residual_vs_quadrature ? nlohmann::json(*r.residual_vs_quadrature) : nlohmann::json(nullptr);
  return out;
}

/// Lattice violations propagate as LatticeViolation; everything else malformed is a SchemaError.
inline WeightedPoly weighted_poly_from_json(const nlohmann::json& j) {
  const auto [params, sector] = detail::read_header(j);
  WeightedPoly::Coefficients coeffs;
  for (const auto& [key, value] : j["coeffs"].items())
    coeffs[detail::parse_exponent(key)] = detail::number(value, "coefficient '" + key + "'");
  try {
    return {params, sector, std::move(coeffs)};
  } catch (const DomainError& e) {
    throw SchemaError(e.what());
  }
}

inline HoloVector holo_vector_from_json(const nlohmann::json& j) {
  const auto [params, sector] = detail::read_header(j);
  HoloVector::Coefficients coeffs;
  for (const auto& [key, value] : j["coeffs"].items()) {
    if (!value.is_array() || value.size() != 2)
      throw SchemaError("coefficient '" + key + "' must be a [re, im] pair");
    coeffs[detail::parse_exponent(key)] = {detail::number(value[0], "real part of '" + key + "'"),
                                           detail::number(value[1], "imaginary part of '" + key + "'")};
  }
  try {
    return {params, sector, std::move(coeffs)};
  } catch (const DomainError& e) {
    throw SchemaError(e.what());
  }
}

inline TransformResult transform_result_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("holo")) throw SchemaError("transform result must contain 'holo'");
  TransformResult r{holo_vector_from_json(j["holo"]), std::nullopt};
  if (j.contains("residual_vs_quadrature") && !j["residual_vs_quadrature"].is_null())
    r.residual_vs_quadrature = detail::number(j["residual_vs_quadrature"], "residual_vs_quadrature");
  return r;
}

/// Parses text, mapping parser failures to SchemaError.
inline nlohmann::json parse_json_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace susyb
