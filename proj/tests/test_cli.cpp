#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bernstein/cli.hpp"
#include "bernstein/errors.hpp"
#include "bernstein/io.hpp"

using namespace bernstein;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "bernstein_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Data rows of a CSV document, split on commas.
std::vector<std::vector<std::string>> csv_rows(const std::string& text,
                                               std::vector<std::string>* header = nullptr) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  bool seen_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!seen_header) {
      seen_header = true;
      if (header) *header = cells;
      continue;
    }
    rows.push_back(cells);
  }
  return rows;
}

int exit_status(const std::string& command) {
  const int raw = std::system(command.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

}  // namespace

TEST_CASE("parse_grid and format_double") {
  const GridSpec g = parse_grid("-10:10:201");
  CHECK(g.lo == -10.0);
  CHECK(g.hi == 10.0);
  CHECK(g.points == 201);
  const std::vector<double> xs = g.values();
  CHECK(xs.size() == 201);
  CHECK(xs.front() == -10.0);
  CHECK(xs.back() == 10.0);
  CHECK(xs[100] == 0.0);
  CHECK_THROWS_AS(parse_grid("1:0:5"), InputError);
  CHECK_THROWS_AS(parse_grid("0:1:1"), InputError);
  CHECK_THROWS_AS(parse_grid("0:1"), InputError);
  CHECK_THROWS_AS(parse_grid("a:1:5"), InputError);
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_double(M_PI)) == M_PI);
}

TEST_CASE("JSON readers reject malformed documents") {
  CHECK_THROWS_AS(weight_from_json(Json::parse(R"({"kind":"builtin","name":"nope"})")), InputError);
  CHECK_THROWS_AS(weight_from_json(Json::parse(R"({"kind":"discrete","points":[[1]]})")), InputError);
  CHECK_THROWS_AS(weight_from_json(Json::parse(R"({"kind":"discrete","points":[[1,0]]})")), InputError);
  CHECK_THROWS_AS(weight_from_json(Json::parse(R"([1,2])")), InputError);
  CHECK(weight_from_json(Json::parse(R"({"kind":"builtin","name":"gauss"})"))(0.0) == 1.0);
  CHECK_THROWS_AS(product_from_json(Json::parse(R"({"zeros":[1,0.5]})")), InputError);
  CHECK_THROWS_AS(product_from_json(Json::parse(R"({"family":"n_squared"})")), InputError);
  CHECK_THROWS_AS(product_from_json(Json::parse(R"({"zeros":[1],"a0":0})")), InputError);
  CHECK(product_from_json(Json::parse(R"({"family":"n_squared","n_max":3,"signs":"plus"})"))
            .zero_set().size() == 3);
  CHECK_THROWS_AS(read_json_file((scratch_dir() / "missing.json").string()), InputError);
  CHECK_THROWS_AS(read_json_file(write_file("broken.json", "{")), InputError);
}

TEST_CASE("kappa command") {
  const Run r = run({"kappa"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("0.44399") != std::string::npos);
  CHECK(r.out.find("in (1.2/e, 1.21/e): PASS") != std::string::npos);
}

TEST_CASE("smooth command: lower bound row-wise and determinism") {
  const std::string zero = write_file("zero.json", R"({"kind":"builtin","name":"zero"})");
  const Run r = run({"smooth", "--weight", zero, "--eps", "0.5", "--grid", "-10:10:201"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("# schema=1\n", 0) == 0);
  std::vector<std::string> header;
  const auto rows = csv_rows(r.out, &header);
  CHECK(header == std::vector<std::string>{"x", "w", "beta", "omega_rho", "w_eps", "W", "dW"});
  REQUIRE(rows.size() == 201);
  for (const auto& row : rows) {
    const double x = std::stod(row[0]);
    CHECK(std::stod(row[5]) >= std::exp(-0.5 * std::abs(x)) - 1e-8);
  }
  const Run again = run({"smooth", "--weight", zero, "--eps", "0.5", "--grid", "-10:10:201"});
  CHECK(again.out == r.out);
}

TEST_CASE("perturb command: seeded output is byte-identical") {
  const std::string zeros = write_file("n2.json", R"({"family":"n_squared","n_max":30})");
  const std::string out1 = (scratch_dir() / "p1.json").string();
  const std::string out2 = (scratch_dir() / "p2.json").string();
  CHECK(run({"perturb", "--zeros", zeros, "--delta", "0.5", "--seed", "7", "--out", out1}).code == kExitOk);
  CHECK(run({"perturb", "--zeros", zeros, "--delta", "0.5", "--seed", "7", "--out", out2}).code == kExitOk);
  CHECK(slurp(out1) == slurp(out2));
  const Json doc = Json::parse(slurp(out1));
  CHECK(doc["pass"] == true);
  CHECK(doc["shift_source"]["rng"] == "mt19937_64/u53");
  CHECK(doc["shift_source"]["seed"] == 7);
  const Run other = run({"perturb", "--zeros", zeros, "--delta", "0.5", "--seed", "8"});
  CHECK(other.code == kExitOk);
  CHECK(other.out != slurp(out1));
}

TEST_CASE("criterion command") {
  const std::string zeros = write_file("pm1.json", R"({"zeros":[-1,1]})");
  const std::string weight = write_file("half.json",
                                        R"({"kind":"discrete","points":[[-1,0.5],[1,0.5]]})");
  const std::string report = (scratch_dir() / "crit.json").string();
  const Run r = run({"criterion", "--weight", weight, "--zeros", zeros, "--k", "0", "--report", report});
  REQUIRE(r.code == kExitOk);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(std::stod(rows.back()[4]) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(slurp(report).find("converged") != std::string::npos);

  const std::string gap = write_file("gap.json", R"({"kind":"discrete","points":[[-1,0.5]]})");
  const Run bad = run({"criterion", "--weight", gap, "--zeros", zeros});
  CHECK(bad.code == kExitPrecondition);
  CHECK(bad.err.find("precondition") != std::string::npos);
}

TEST_CASE("verify command on the Gauss weight") {
  const std::string gauss = write_file("gauss.json", R"({"kind":"builtin","name":"gauss"})");
  const Run r = run({"verify", "--weight", gauss, "--eps", "0.5", "--grid", "-8:8:41"});
  CHECK(r.code == kExitOk);
  CHECK(Json::parse(r.out)["pass"] == true);
  // An impossible tolerance makes the sandwich fail and the exit code says so.
  const Run strict = run({"verify", "--weight", gauss, "--eps", "0.5", "--grid", "-1:1:5", "--tol", "-1"});
  CHECK(strict.code == kExitVerificationFailed);
  CHECK(Json::parse(strict.out)["pass"] == false);
}

TEST_CASE("stepweight command") {
  const std::string gauss = write_file("gauss.json", R"({"kind":"builtin","name":"gauss"})");
  const Run r = run({"stepweight", "--weight", gauss, "--n-range", "3"});
  CHECK(r.code == kExitOk);
  CHECK_FALSE(csv_rows(r.out).empty());
}

TEST_CASE("exit codes for bad input and preconditions") {
  CHECK(run({}).code == kExitBadInput);
  CHECK(run({"nonsense"}).code == kExitBadInput);
  CHECK(run({"smooth", "--grid", "1:0:3"}).code == kExitBadInput);
  CHECK(run({"smooth", "--weight", (scratch_dir() / "none.json").string()}).code == kExitBadInput);
  CHECK(run({"smooth", "--eps", "1.5"}).code == kExitPrecondition);
  CHECK(run({"perturb"}).code == kExitBadInput);
  const std::string zeros = write_file("pm1.json", R"({"zeros":[-1,1]})");
  CHECK(run({"perturb", "--zeros", zeros, "--delta", "-1"}).code == kExitPrecondition);
}

TEST_CASE("installed tool: exit codes through the process boundary") {
  const std::string tool = BERNSTEIN_TOOL_PATH;
  CHECK(exit_status("\"" + tool + "\" kappa > /dev/null") == kExitOk);
  CHECK(exit_status("\"" + tool + "\" smooth --grid 0:0:2 2> /dev/null") == kExitBadInput);
  CHECK(exit_status("BERNSTEIN_BUDGET=20 \"" + tool + "\" kappa > /dev/null 2>&1") == kExitBudget);
}
