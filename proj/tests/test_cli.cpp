#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "gspline/archive.hpp"

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(GSPLINE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string data(const char* name) { return std::string(GSPLINE_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("cli: build a single quad") {
  const auto dir = std::filesystem::temp_directory_path() / "gspline_cli_test";
  std::filesystem::create_directories(dir);
  const std::string out = (dir / "quad.json").string();
  REQUIRE(run("build " + data("quad.obj") + " --variant g1p -o " + out) == 0);
  const gspline::Json j = gspline::read_json_file(out);
  CHECK(j.at("elements").size() == 1);
  CHECK(run("check " + out) == 0);
  CHECK(run("quality " + out) == 0);
}

TEST_CASE("cli: exit codes") {
  CHECK(run("build " + data("triangle.obj") + " -o /dev/null") == 2);
  CHECK(run("build /nonexistent.obj -o /dev/null") == 2);
  CHECK(run("build " + data("quad.obj") + " --variant g2 -o /dev/null") != 0);
  CHECK(run("generate cube --n 1 -o /dev/null") == 0);
  const auto dir = std::filesystem::temp_directory_path() / "gspline_cli_test";
  std::filesystem::create_directories(dir);
  const std::string cube = (dir / "cube.obj").string();
  REQUIRE(run("generate cube --n 1 -o " + cube) == 0);
  CHECK(run("poisson " + cube + " --levels 1") == 3);
  CHECK(run("refine " + data("grid3.obj") + " --levels 9 -o /dev/null") == 5);
}
