#include "doctest.h"

#include "hilbert/cli.hpp"

#include "json.hpp"

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

using namespace hilbert;
using nlohmann::json;

namespace {

struct Run {
  int code;
  json out;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "hilbertlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream os;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), os);
  // the last line is the JSON result
  std::string text = os.str(), last;
  std::istringstream lines(text);
  for (std::string l; std::getline(lines, l);)
    if (!l.empty()) last = l;
  return {code, json::parse(last)};
}

std::string scratch() {
  const auto dir = std::filesystem::temp_directory_path() / "hilbertlab_cli_test";
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace

TEST_CASE("distance subcommand") {
  const auto r = run({"distance", "--body", "disk", "--p", "0,0", "--q", "0.5,0"});
  CHECK(r.code == 0);
  CHECK(r.out["distance"].get<double>() == doctest::Approx(std::atanh(0.5)).epsilon(1e-12));
  CHECK(r.out["seed"] == 1);
}

TEST_CASE("errors come back as JSON") {
  auto r = run({"distance", "--body", "disk", "--p", "0,0", "--q", "2,0", "--seed", "42"});
  CHECK(r.code == 1);
  CHECK(r.out["error"] == "validation");
  CHECK(r.out["seed"] == 42);

  r = run({"distance", "--body", "disk", "--p", "0,0", "--q", "0.5,0", "--frobnicate"});
  CHECK(r.code == 1);
  CHECK(r.out["error"] == "usage");
}

TEST_CASE("spectrum subcommand") {
  const auto r = run({"spectrum", "--body", "triangle", "--radius", "4", "--out", scratch()});
  CHECK(r.code == 0);
  for (const char* key : {"rho", "residual", "iterations", "R", "interior", "net_size", "method"})
    CHECK(r.out.contains(key));
  CHECK(r.out["rho"].get<double>() > 0.0);
  CHECK(r.out["rho"].get<double>() < 1.0);
}
