#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "fluctlab/fluctuation.hpp"
#include "fluctlab/measure.hpp"
#include "fluctlab/walk.hpp"

namespace fluct {

using Json = nlohmann::ordered_json;

// {"steps":[{"offset":-1,"prob":"1/4"}, ...]}; probabilities must be strings.
// Malformed documents raise BadInput; law violations keep their own codes.
std::vector<RawStep> parse_walk_json(const std::string& text);
WalkSpec load_walk(const std::filesystem::path& path, Requirement req = Requirement::Basic);

// {"values":[{"at":1,"value":"1"}, ...]}
TestFunction parse_test_function_json(const std::string& text);
TestFunction load_test_function(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Reals go out as locale-independent strings so that reruns are byte-identical.
Json number_json(double x);
Json estimate_json(const std::string& object, const std::string& method, const Estimate& e);
Json constants_json(const FluctuationConstants& c);

struct RunManifest {
  std::string command;
  std::string walk_hash;
  Json params = Json::object();
  std::vector<std::string> outputs;

  Json to_json() const;
};

std::string tool_version();

}  // namespace fluct
