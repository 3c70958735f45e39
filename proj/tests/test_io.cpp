#include <gtest/gtest.h>

#include <filesystem>
#include <functional>

#include "fluctlab/errors.hpp"
#include "fluctlab/io.hpp"

using namespace fluct;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(WalkJson, Parses) {
  auto steps = parse_walk_json(R"({"steps":[{"offset":-1,"prob":"1/4"},{"offset":0,"prob":"1/2"},{"offset":1,"prob":"1/4"}]})");
  ASSERT_EQ(steps.size(), 3u);
  EXPECT_EQ(steps[0].offset, -1);
  EXPECT_EQ(steps[1].prob, Rational(1, 2));
}

TEST(WalkJson, Malformed) {
  EXPECT_EQ(code_of([] { parse_walk_json("{"); }), ErrorCode::BadInput);
  EXPECT_EQ(code_of([] { parse_walk_json(R"({"steps":[{"offset":1,"prob":0.5}]})"); }), ErrorCode::BadInput);
  EXPECT_EQ(code_of([] { parse_walk_json(R"({"steps":[{"offset":"a","prob":"1/2"}]})"); }), ErrorCode::BadInput);
  EXPECT_EQ(code_of([] { parse_walk_json(R"({"steps":[{"offset":1,"prob":"x/y"}]})"); }), ErrorCode::BadInput);
  EXPECT_EQ(code_of([] { parse_walk_json(R"({"walk":[]})"); }), ErrorCode::BadInput);
}

TEST(WalkJson, LawViolationsKeepTheirCodes) {
  auto dir = std::filesystem::temp_directory_path() / "fluctlab_io_test";
  std::filesystem::create_directories(dir);
  write_text_file(dir / "bad.json", R"({"steps":[{"offset":-1,"prob":"1/2"},{"offset":1,"prob":"1/4"}]})");
  EXPECT_EQ(code_of([&] { load_walk(dir / "bad.json"); }), ErrorCode::MassNotOne);
  EXPECT_EQ(code_of([&] { load_walk(dir / "missing.json"); }), ErrorCode::BadInput);
  std::filesystem::remove_all(dir);
}

TEST(TestFunctionJson, ParsesAndRejectsDuplicates) {
  auto f = parse_test_function_json(R"({"values":[{"at":1,"value":"1/2"},{"at":3,"value":"2"}]})");
  EXPECT_EQ(f(1), 0.5);
  EXPECT_EQ(f(2), 0.0);
  EXPECT_EQ(f(3), 2.0);
  EXPECT_EQ(code_of([] { parse_test_function_json(R"({"values":[{"at":1,"value":"1"},{"at":1,"value":"2"}]})"); }),
            ErrorCode::BadInput);
}

TEST(Manifest, Fields) {
  RunManifest m;
  m.command = "table";
  m.walk_hash = "abc";
  m.params["r"] = 1;
  m.outputs = {"table.csv"};
  auto j = m.to_json();
  EXPECT_EQ(j["command"], "table");
  EXPECT_EQ(j["walk_hash"], "abc");
  EXPECT_EQ(j["params"]["r"], 1);
  EXPECT_EQ(j["version"], tool_version());
  EXPECT_EQ(j["outputs"][0], "table.csv");
}

TEST(NumberJson, RoundTrips) {
  double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(number_json(x).get<std::string>()), x);
  auto e = estimate_json("kappa", "series", {0.5, 1e-6});
  EXPECT_EQ(e["object"], "kappa");
  EXPECT_EQ(e["method"], "series");
  EXPECT_TRUE(e.contains("error_estimate"));
}
