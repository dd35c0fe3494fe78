#pragma once

// Field descriptor documents:
//   {"preset": "cyclotomic", "m": 5}
//   {"preset": "quadratic", "D": -4}
//   {"preset": "rational"}
//   {"m": 8, "generators": [5]}
// and the shorthand forms cyclotomic:m, quadratic:D, subgroup:m:g1,g2,..., rational.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "abelian/errors.hpp"
#include "abelian/field.hpp"

namespace abelian {

namespace detail {

inline i64 parse_integer(std::string_view text, std::string_view what) {
  i64 value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw descriptor_error("invalid integer for " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

inline u64 positive_modulus(i64 m) {
  if (m <= 0) throw descriptor_error("modulus must be a positive integer");
  return static_cast<u64>(m);
}

inline i64 json_integer(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw descriptor_error(std::string("descriptor is missing \"") + key + "\"");
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) throw descriptor_error(std::string("\"") + key + "\" must be an integer");
  return v.get<i64>();
}

}  // namespace detail

inline FieldDescriptor field_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw descriptor_error("descriptor must be a JSON object");
  if (doc.contains("preset")) {
    if (!doc.at("preset").is_string()) throw descriptor_error("\"preset\" must be a string");
    const auto preset = doc.at("preset").get<std::string>();
    if (preset == "rational") return FieldDescriptor::rational();
    if (preset == "cyclotomic") return FieldDescriptor::cyclotomic(detail::positive_modulus(detail::json_integer(doc, "m")));
    if (preset == "quadratic") return FieldDescriptor::quadratic(detail::json_integer(doc, "D"));
    throw descriptor_error("unknown preset \"" + preset + "\"");
  }
  const u64 m = detail::positive_modulus(detail::json_integer(doc, "m"));
  std::vector<i64> gens;
  if (doc.contains("generators")) {
    const auto& g = doc.at("generators");
    if (!g.is_array()) throw descriptor_error("\"generators\" must be an array of integers");
    for (const auto& v : g) {
      if (!v.is_number_integer()) throw descriptor_error("\"generators\" must be an array of integers");
      gens.push_back(v.get<i64>());
    }
  }
  return FieldDescriptor::subgroup(m, std::move(gens));
}

/// Parses a descriptor document (JSON text).
inline FieldDescriptor parse_field_descriptor(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw descriptor_error(std::string("malformed descriptor document: ") + e.what());
  }
  return field_from_json(doc);
}

inline nlohmann::json field_to_json(const FieldDescriptor& fd) {
  switch (fd.preset()) {
    case FieldPreset::rational:
      return {{"preset", "rational"}};
    case FieldPreset::cyclotomic:
      return {{"preset", "cyclotomic"}, {"m", fd.modulus()}};
    case FieldPreset::quadratic:
      return {{"preset", "quadratic"}, {"D", fd.quadratic_discriminant()}};
    case FieldPreset::subgroup:
      break;
  }
  return {{"m", fd.modulus()}, {"generators", std::vector<u64>(fd.generators().begin(), fd.generators().end())}};
}

/// Shorthand (cyclotomic:5, quadratic:-4, subgroup:8:5, rational), inline JSON, or a path to a JSON file.
inline FieldDescriptor parse_field_argument(std::string_view arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && arg[first] == '{') return parse_field_descriptor(arg);

  if (arg == "rational") return FieldDescriptor::rational();
  const auto colon = arg.find(':');
  if (colon != std::string_view::npos) {
    const auto kind = arg.substr(0, colon);
    const auto rest = arg.substr(colon + 1);
    if (kind == "cyclotomic") return FieldDescriptor::cyclotomic(detail::positive_modulus(detail::parse_integer(rest, "m")));
    if (kind == "quadratic") return FieldDescriptor::quadratic(detail::parse_integer(rest, "D"));
    if (kind == "subgroup") {
      const auto colon2 = rest.find(':');
      const u64 m = detail::positive_modulus(detail::parse_integer(rest.substr(0, colon2), "m"));
      std::vector<i64> gens;
      if (colon2 != std::string_view::npos) {
        std::string_view list = rest.substr(colon2 + 1);
        while (!list.empty()) {
          const auto comma = list.find(',');
          gens.push_back(detail::parse_integer(list.substr(0, comma), "generator"));
          if (comma == std::string_view::npos) break;
          list.remove_prefix(comma + 1);
        }
      }
      return FieldDescriptor::subgroup(m, std::move(gens));
    }
  }

  const std::filesystem::path path{std::string(arg)};
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw descriptor_error("unrecognized field '" + std::string(arg) + "' (not a shorthand, JSON document, or file)");
  }
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_field_descriptor(buf.str());
}

}  // namespace abelian
