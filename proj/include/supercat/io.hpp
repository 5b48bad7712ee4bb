#pragma once

// JSON file formats for state pairs and transformation certificates.  All
// rational quantities travel as strings — either exact fractions ("10/19")
// or exact decimals ("0.36") — never as JSON floats, so parsing is lossless
// and emit-parse round trips preserve every value exactly.  Entropy-gain
// bounds are emitted as directed-rounded decimal strings: the written
// interval always contains the computed one.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "supercat/entropy.hpp"
#include "supercat/errors.hpp"
#include "supercat/rational.hpp"
#include "supercat/spectrum.hpp"
#include "supercat/supercatalysis.hpp"

namespace supercat {

using Json = nlohmann::ordered_json;

// A pair of states to analyse, with optional display labels.
struct StatePairFile {
  Spectrum psi;
  Spectrum phi;
  std::optional<std::string> psi_label;
  std::optional<std::string> phi_label;
};

// A claimed transformation certificate: psi x chi -> phi x omega.  The gain
// bounds are optional on input (verification recomputes them) and always
// written on output.
struct CertificateFile {
  Spectrum psi;
  Spectrum phi;
  Spectrum chi;
  Spectrum omega;
  std::optional<std::pair<Rat, Rat>> delta;  // [lower, upper], exact values
};

namespace detail {

// Decimal rendering with `digits` fractional digits, rounded toward minus
// infinity (up = false) or plus infinity (up = true); exact values of that
// many digits render as themselves.
inline std::string decimal_directed(const Rat& q, unsigned digits, bool up) {
  using boost::multiprecision::pow;
  const Int pow10 = pow(Int(10), digits);
  const Rat scaled = Rat(q * Rat(pow10));
  Int quot = Int(numerator(scaled) / denominator(scaled));  // trunc to zero
  if (Rat(quot) != scaled) {
    if (up && scaled > 0) ++quot;
    if (!up && scaled < 0) --quot;
  }
  return format_scaled_decimal(quot, digits, /*strip=*/false);
}

[[noreturn]] inline void field_error(const std::string& field,
                                     const std::string& what) {
  raise(ErrorCode::ParseError, "field '" + field + "': " + what);
}

inline Spectrum spectrum_from_json(const Json& node, const std::string& field) {
  if (!node.is_array()) field_error(field, "expected an array of strings");
  std::vector<Rat> values;
  values.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    const Json& entry = node[i];
    if (!entry.is_string())
      field_error(field + "[" + std::to_string(i) + "]",
                  "rationals must be strings, never JSON numbers");
    try {
      values.push_back(parse_rational(entry.get<std::string>()));
    } catch (const Error& e) {
      field_error(field + "[" + std::to_string(i) + "]", e.what());
    }
  }
  try {
    return Spectrum::make(std::move(values));
  } catch (const Error& e) {
    field_error(field, e.what());
  }
}

inline Json spectrum_to_json(const Spectrum& s) {
  Json arr = Json::array();
  for (const Rat& v : s) arr.push_back(to_fraction_string(v));
  return arr;
}

inline Json parse_document(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::ParseError, origin + ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::ParseError, "cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace detail

inline StatePairFile parse_state_pair(const Json& doc) {
  if (!doc.is_object())
    raise(ErrorCode::ParseError, "state pair document must be a JSON object");
  if (!doc.contains("psi")) detail::field_error("psi", "missing");
  if (!doc.contains("phi")) detail::field_error("phi", "missing");
  StatePairFile out{detail::spectrum_from_json(doc["psi"], "psi"),
                    detail::spectrum_from_json(doc["phi"], "phi"),
                    std::nullopt, std::nullopt};
  if (doc.contains("labels")) {
    const Json& labels = doc["labels"];
    if (!labels.is_object()) detail::field_error("labels", "expected an object");
    if (labels.contains("psi")) {
      if (!labels["psi"].is_string())
        detail::field_error("labels.psi", "expected a string");
      out.psi_label = labels["psi"].get<std::string>();
    }
    if (labels.contains("phi")) {
      if (!labels["phi"].is_string())
        detail::field_error("labels.phi", "expected a string");
      out.phi_label = labels["phi"].get<std::string>();
    }
  }
  return out;
}

inline Json to_json(const StatePairFile& pair) {
  Json doc = Json::object();
  doc["psi"] = detail::spectrum_to_json(pair.psi);
  doc["phi"] = detail::spectrum_to_json(pair.phi);
  if (pair.psi_label || pair.phi_label) {
    Json labels = Json::object();
    if (pair.psi_label) labels["psi"] = *pair.psi_label;
    if (pair.phi_label) labels["phi"] = *pair.phi_label;
    doc["labels"] = labels;
  }
  return doc;
}

inline CertificateFile parse_certificate(const Json& doc) {
  if (!doc.is_object())
    raise(ErrorCode::ParseError, "certificate document must be a JSON object");
  for (const char* field : {"psi", "phi", "chi", "omega"})
    if (!doc.contains(field)) detail::field_error(field, "missing");
  CertificateFile out{detail::spectrum_from_json(doc["psi"], "psi"),
                      detail::spectrum_from_json(doc["phi"], "phi"),
                      detail::spectrum_from_json(doc["chi"], "chi"),
                      detail::spectrum_from_json(doc["omega"], "omega"),
                      std::nullopt};
  if (doc.contains("delta")) {
    const Json& delta = doc["delta"];
    if (!delta.is_object() || !delta.contains("lower") ||
        !delta.contains("upper"))
      detail::field_error("delta", "expected {\"lower\": str, \"upper\": str}");
    if (!delta["lower"].is_string() || !delta["upper"].is_string())
      detail::field_error("delta", "bounds must be decimal strings");
    try {
      out.delta = {parse_rational(delta["lower"].get<std::string>()),
                   parse_rational(delta["upper"].get<std::string>())};
    } catch (const Error& e) {
      detail::field_error("delta", e.what());
    }
  }
  return out;
}

inline Json to_json(const CertificateFile& cert) {
  Json doc = Json::object();
  doc["psi"] = detail::spectrum_to_json(cert.psi);
  doc["phi"] = detail::spectrum_to_json(cert.phi);
  doc["chi"] = detail::spectrum_to_json(cert.chi);
  doc["omega"] = detail::spectrum_to_json(cert.omega);
  if (cert.delta) {
    Json delta = Json::object();
    delta["lower"] = detail::decimal_directed(cert.delta->first, 40, false);
    delta["upper"] = detail::decimal_directed(cert.delta->second, 40, true);
    doc["delta"] = delta;
  }
  return doc;
}

// File-shaped view of a search result.
inline CertificateFile to_certificate_file(const SupercatalysisCertificate& c) {
  return CertificateFile{c.psi, c.phi, auxiliary_state(c.p_initial),
                         auxiliary_state(c.p_final),
                         std::pair<Rat, Rat>{c.delta.lower, c.delta.upper}};
}

inline StatePairFile load_state_pair(const std::string& path) {
  return parse_state_pair(detail::parse_document(detail::read_file(path), path));
}

inline CertificateFile load_certificate(const std::string& path) {
  return parse_certificate(detail::parse_document(detail::read_file(path), path));
}

}  // namespace supercat
