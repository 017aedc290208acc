#include "commands.hpp"
#include "csv.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace spinor::cli;
namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "spinor");
  std::vector<char *> argv;
  for (auto &a : args)
    argv.push_back(a.data());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Rows of a CSV written by CsvWriter (no quoted commas in numeric tables).
std::vector<std::vector<std::string>> read_csv(const fs::path &p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ','))
      fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

fs::path scratch(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / ("spinor_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

} // namespace

TEST_CASE("grid parsing") {
  CHECK(parse_grid("0:1:3") == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(parse_grid("0.5, 2,3") == std::vector<double>{0.5, 2.0, 3.0});
  const auto lg = parse_grid("1:100:3:log");
  REQUIRE(lg.size() == 3);
  CHECK(lg[1] == doctest::Approx(10.0));
  CHECK(parse_grid("4") == std::vector<double>{4.0});
  CHECK_THROWS_AS(parse_grid("1:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("a,b"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("0:1:3:log"), std::invalid_argument);
}

TEST_CASE("CSV formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(quote_field("plain") == "plain");
  CHECK(quote_field("a,b") == "\"a,b\"");
  CHECK(quote_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_line({"a", "b"}) == "a,b\r\n");
}

TEST_CASE("partial rows are not counted and a foreign header is rejected") {
  const auto dir = scratch("rows");
  const auto file = dir / "t.csv";
  CHECK(completed_rows(file, {"x"}) == -1);
  {
    std::ofstream out(file, std::ios::binary);
    out << "x,y\r\n1,2\r\n3,4\r\n5,";
  }
  CHECK(completed_rows(file, {"x", "y"}) == 2);
  CHECK_THROWS(completed_rows(file, {"x", "z"}));
  {
    CsvWriter w(file, {"x", "y"}, 1);
    w.row({"7", "8"});
  }
  CHECK(slurp(file) == "x,y\r\n1,2\r\n7,8\r\n");
}

TEST_CASE("groundscan writes the documented columns and a manifest") {
  const auto dir = scratch("ground");
  REQUIRE(run({"groundscan", "--n", "40", "--q-grid", "-2:2:9", "--out", dir.string()}) == kExitOk);
  const auto rows = read_csv(dir / "groundscan.csv");
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] == groundscan_columns());
  const auto m = nlohmann::json::parse(slurp(dir / "groundscan.manifest.json"));
  CHECK(m["schema_version"] == kManifestSchemaVersion);
  CHECK(m["status"] == "complete");
  CHECK(m["command"] == "groundscan");
  CHECK(m["outputs"][0]["columns"].get<std::vector<std::string>>() == groundscan_columns());
  CHECK(m.contains("units"));
  CHECK(m.contains("library_version"));
  CHECK(m["wall_clock_seconds"].get<double>() >= 0.0);
}

TEST_CASE("rerunning from a manifest reproduces identical output") {
  const auto dir = scratch("rerun");
  REQUIRE(run({"noise", "--n", "60", "--kind", "tf", "--sigma-grid", "0,1,3", "--out", dir.string()}) == kExitOk);
  const auto first = slurp(dir / "noise.csv");
  const auto copy = scratch("rerun_copy");
  fs::copy_file(dir / "noise.manifest.json", copy / "noise.manifest.json");
  REQUIRE(run({"--manifest", (copy / "noise.manifest.json").string()}) == kExitOk);
  CHECK(slurp(copy / "noise.csv") == first);
}

TEST_CASE("parallel sweeps equal the serial sweep") {
  const auto serial = scratch("serial");
  const auto parallel = scratch("parallel");
  REQUIRE(run({"groundscan", "--n", "80", "--q-grid", "-2:2:41", "--out", serial.string()}) == kExitOk);
  REQUIRE(run({"--jobs", "4", "groundscan", "--n", "80", "--q-grid", "-2:2:41", "--out", parallel.string()}) ==
          kExitOk);
  CHECK(slurp(parallel / "groundscan.csv") == slurp(serial / "groundscan.csv"));
}

TEST_CASE("an interrupted sweep resumes to the same file") {
  const auto dir = scratch("resume");
  const std::vector<std::string> args{"groundscan", "--n", "50", "--q-grid", "-1:1:21", "--out", dir.string()};
  REQUIRE(run(args) == kExitOk);
  const auto full = slurp(dir / "groundscan.csv");
  // Keep the header, seven rows and half of the eighth.
  std::size_t cut = 0;
  for (int lines = 0; lines < 8; ++lines)
    cut = full.find("\r\n", cut) + 2;
  const std::size_t partial = cut + (full.find("\r\n", cut) - cut) / 2;
  {
    std::ofstream out(dir / "groundscan.csv", std::ios::binary | std::ios::trunc);
    out << full.substr(0, partial);
  }
  auto resumed = args;
  resumed.push_back("--resume");
  REQUIRE(run(resumed) == kExitOk);
  CHECK(slurp(dir / "groundscan.csv") == full);
}

TEST_CASE("exit codes") {
  const auto dir = scratch("exit");
  CHECK(run({"groundscan", "--q-grid", "0:1:3", "--out", dir.string()}) == kExitUsage);
  CHECK(run({"groundscan", "--n", "1", "--q-grid", "0:1:3", "--out", dir.string()}) == kExitUsage);
  CHECK(run({"noise", "--n", "10", "--kind", "noon", "--sigma-grid", "1", "--out", dir.string()}) == kExitUsage);
  CHECK(run({"bogus"}) == kExitUsage);
  CHECK(run({"--manifest", (dir / "missing.json").string()}) == kExitUsage);
  CHECK(run({"ramp", "--n", "200", "--Q", "0.1", "--method", "rk_adaptive", "--tolerance", "1e-1", "--out",
             dir.string()}) == kExitNumerical);
}

TEST_CASE("quench flags where the analytic law stops applying") {
  const auto dir = scratch("quench");
  REQUIRE(run({"quench", "--n", "500", "--t-final", "4", "--samples", "17", "--out", dir.string()}) == kExitOk);
  const auto rows = read_csv(dir / "quench.csv");
  REQUIRE(rows.size() == 18);
  const auto col = static_cast<std::size_t>(
      std::find(rows[0].begin(), rows[0].end(), "analytic_valid") - rows[0].begin());
  CHECK(rows[1][col] == "1");
  CHECK(rows.back()[col] == "0");
}

TEST_CASE("decompose lists sector probabilities and Husimi maps") {
  const auto dir = scratch("decompose");
  REQUIRE(run({"decompose", "--n", "40", "--husimi-theta", "19", "--husimi-phi", "37", "--out", dir.string()}) ==
          kExitOk);
  const auto listed = read_csv(dir / "decompose.csv");
  REQUIRE(listed.size() == 5);
  double listed_total = 0.0;
  for (std::size_t i = 1; i < listed.size(); ++i) {
    listed_total += std::stod(listed[i][1]);
    CHECK(fs::exists(dir / listed[i][4]));
  }
  CHECK(listed_total <= 1.0);
  const auto all = read_csv(dir / "decompose_sectors.csv");
  double total = 0.0;
  for (std::size_t i = 1; i < all.size(); ++i)
    total += std::stod(all[i][1]);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("verify succeeds") {
  const auto dir = scratch("verify");
  CHECK(run({"verify", "--out", dir.string()}) == kExitOk);
}
