#include "fluctlab/io.hpp"

#include <fstream>
#include <sstream>

#include "fluctlab/errors.hpp"
#include "fluctlab/format.hpp"

namespace fluct {

namespace {

Json parse_document(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::BadInput, std::string(what) + " is not valid JSON: " + e.what());
  }
}

const Json& require_array(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key) || !doc[key].is_array()) {
    throw Error(ErrorCode::BadInput, std::string("expected an object with an array \"") + key + "\"");
  }
  return doc[key];
}

std::int64_t require_integer(const Json& entry, const char* key) {
  if (!entry.is_object() || !entry.contains(key) || !entry[key].is_number_integer()) {
    throw Error(ErrorCode::BadInput, std::string("entry needs an integer \"") + key + "\"");
  }
  return entry[key].get<std::int64_t>();
}

Rational require_rational(const Json& entry, const char* key) {
  if (!entry.contains(key) || !entry[key].is_string()) {
    throw Error(ErrorCode::BadInput, std::string("entry needs a string \"") + key + "\" such as \"1/4\"");
  }
  return parse_rational(entry[key].get<std::string>());
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::BadInput, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::BadInput, "cannot write " + path.string());
  out << text;
}

std::vector<RawStep> parse_walk_json(const std::string& text) {
  Json doc = parse_document(text, "walk file");
  std::vector<RawStep> steps;
  for (const auto& entry : require_array(doc, "steps")) {
    steps.push_back({require_integer(entry, "offset"), require_rational(entry, "prob")});
  }
  return steps;
}

WalkSpec load_walk(const std::filesystem::path& path, Requirement req) {
  return WalkSpec::from_raw(parse_walk_json(read_text_file(path)), req);
}

TestFunction parse_test_function_json(const std::string& text) {
  Json doc = parse_document(text, "test function file");
  std::map<std::int64_t, Rational> values;
  for (const auto& entry : require_array(doc, "values")) {
    std::int64_t at = require_integer(entry, "at");
    if (!values.emplace(at, require_rational(entry, "value")).second) {
      throw Error(ErrorCode::BadInput, "test function repeats the point " + std::to_string(at));
    }
  }
  return TestFunction(std::move(values));
}

TestFunction load_test_function(const std::filesystem::path& path) {
  return parse_test_function_json(read_text_file(path));
}

Json number_json(double x) { return format_number(x); }

Json estimate_json(const std::string& object, const std::string& method, const Estimate& e) {
  return Json{{"object", object}, {"value", number_json(e.value)}, {"method", method},
              {"error_estimate", number_json(e.error)}};
}

Json constants_json(const FluctuationConstants& c) {
  Json out = Json::object();
  out["sigma"] = number_json(c.sigma);
  Json list = Json::array();
  for (const auto& n : c.all()) list.push_back(estimate_json(n.object, n.method, n.estimate));
  out["constants"] = std::move(list);
  out["kappa_discrepancy"] = number_json(c.kappa_discrepancy);
  out["kappa_tilde_discrepancy"] = number_json(c.kappa_tilde_discrepancy);
  return out;
}

std::string tool_version() { return "0.1.0"; }

Json RunManifest::to_json() const {
  return Json{{"command", command}, {"walk_hash", walk_hash}, {"params", params},
              {"version", tool_version()}, {"outputs", outputs}};
}

}  // namespace fluct
