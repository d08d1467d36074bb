#include "cli.hpp"

#include "mht/basin.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "mht");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = mht::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot open " << path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> tokens(const std::string& text) {
  std::istringstream in(text);
  return {std::istream_iterator<std::string>(in), std::istream_iterator<std::string>()};
}

// Data rows of a CSV written by the tool: comment lines and the header dropped.
std::vector<std::vector<std::string>> csv_rows(const fs::path& path) {
  std::istringstream in(slurp(path));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

// Fresh scratch directory per test case.
struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name)
      : dir(fs::temp_directory_path() / ("mht_cli_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string str() const { return dir.string(); }
};

}  // namespace

TEST_CASE("classify reports match the golden fixtures") {
  const std::map<std::string, std::vector<std::string>> cases = {
      {"classify_bistable.txt", {"-M", "0.04", "-S", "0.12", "-Q", "0.45", "-C", "0.07"}},
      {"classify_repeller.txt", {"-M", "0.04", "-S", "0.01", "-Q", "0.45", "-C", "0.07"}},
      {"classify_no_interior.txt", {"-M", "0", "-S", "0.1", "-Q", "1.2", "-C", "0.5"}},
      {"classify_cycle.txt", {"-M", "-0.055", "-S", "0.03", "-Q", "0.55", "-C", "0.1"}},
      {"classify_collided.txt", {"-M", "-0.055", "-S", "0.15", "-Q", "0.55", "-C", "0.1"}},
      {"classify_single_root.txt", {"-M", "-0.1", "-S", "0.19", "-Q", "0.55", "-C", "0.1"}},
      {"classify_weak_allee.txt", {"-M", "-0.01", "-S", "0.12", "-Q", "0.45", "-C", "0.07"}},
  };
  for (const auto& [file, args] : cases) {
    CAPTURE(file);
    std::vector<std::string> full{"classify"};
    full.insert(full.end(), args.begin(), args.end());
    const auto r = run(full);
    CHECK(r.code == 0);
    CHECK(tokens(r.out) == tokens(slurp(fs::path(MHT_GOLDEN_DIR) / file)));
  }
}

TEST_CASE("classify content") {
  const auto r = run({"classify", "-M", "0.04", "-S", "0.12", "-Q", "0.45", "-C", "0.07"});
  CHECK(r.out.find("P1 u=0.17040064") != std::string::npos);
  CHECK(r.out.find("region: Bistable") != std::string::npos);
  CHECK(count(r.out, "type=Attractor") == 2);
  CHECK(r.out.find("P1 u=0.17040064 v=0.24040064 type=Saddle") != std::string::npos);

  const auto none = run({"classify", "-M", "0", "-Q", "1.2", "-C", "0.5", "-S", "0.1"});
  CHECK(none.code == 0);
  CHECK(none.out.find("region: NoInterior") != std::string::npos);
  CHECK(none.out.find("(0,C) globally asymptotically stable") != std::string::npos);
}

TEST_CASE("classify as JSON") {
  const auto r = run({"classify", "--format", "json", "-M", "0.04", "-S", "0.12", "-Q", "0.45",
                      "-C", "0.07"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"region\": \"Bistable\"") != std::string::npos);
  CHECK(r.out.find("\"case\": \"S1aii\"") != std::string::npos);
}

TEST_CASE("dimensional input echoes the derived parameters") {
  const auto r = run({"classify", "-r", "2", "-s", "1", "-q", "0.9", "-n", "1", "-K", "1", "-m",
                      "0.04", "-c", "0.07"});
  CHECK(r.code == 0);
  CHECK(r.out.find("derived:") != std::string::npos);
  CHECK(r.out.find("S=0.5") != std::string::npos);
  const auto mixed = run({"classify", "-M", "0.04", "-r", "2", "-s", "1", "-q", "0.9", "-n", "1",
                          "-K", "1", "-c", "0.07"});
  CHECK(mixed.code == 2);
}

TEST_CASE("config file values yield to flags") {
  Scratch tmp("config");
  const auto ini = tmp.dir / "run.ini";
  std::ofstream(ini) << "M = 0.04\nS = 0.01\nQ = 0.45\nC = 0.07\n";
  const auto from_file = run({"classify", "--config", ini.string()});
  CHECK(from_file.code == 0);
  CHECK(from_file.out.find("region: Repeller") != std::string::npos);
  const auto overridden = run({"classify", "--config", ini.string(), "-S", "0.12"});
  CHECK(overridden.out.find("region: Bistable") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({"classify", "-M", "1.5", "-S", "0.1", "-Q", "0.5", "-C", "0.1"}).code == 2);
  CHECK(run({"classify", "-M", "0.04", "-Q", "0.5", "-C", "0.1"}).code == 2);
  CHECK(run({"classify", "--bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"classify", "-M", "0.04", "-S", "0.1", "-Q", "0.5", "-C", "0.1", "--rel-tol", "0"})
            .code == 2);

  Scratch tmp("exit");
  // Every cell undecided with a horizon this short.
  const auto bad = run({"basin", "-M", "0.04", "-S", "0.12", "-Q", "0.45", "-C", "0.07",
                        "--resolution", "8", "--horizon", "1e-3", "-o", tmp.str()});
  CHECK(bad.code == 4);

  // An output path blocked by a regular file.
  const auto blocker = tmp.dir / "blocked";
  std::ofstream(blocker) << "x";
  const auto blocked = run({"basin", "-M", "0", "-S", "0.1", "-Q", "1.2", "-C", "0.5",
                            "--resolution", "4", "-o", (blocker / "sub").string()});
  CHECK(blocked.code == 3);
}

TEST_CASE("portrait in the bistable regime") {
  Scratch tmp("portrait");
  const auto r = run({"portrait", "-M", "0.04", "-S", "0.12", "-Q", "0.45", "-C", "0.07",
                      "--orbits", "3", "-o", tmp.str()});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(tmp.dir / "portrait.csv");
  // Indices restart at 0 for each polyline, so the row count is the sum of
  // the polyline lengths.
  std::map<std::string, std::size_t> lengths;
  std::map<std::string, std::string> kinds;
  for (const auto& row : rows) {
    REQUIRE(row.size() == 5);
    CHECK(std::stoul(row[2]) == lengths[row[0]]);
    ++lengths[row[0]];
    kinds[row[0]] = row[1];
  }
  std::size_t total = 0;
  for (const auto& [id, n] : lengths) total += n;
  CHECK(total == rows.size());
  std::size_t separatrices = 0, orbits = 0;
  for (const auto& [id, kind] : kinds) {
    separatrices += kind == "separatrix" ? 1 : 0;
    orbits += kind == "orbit" ? 1 : 0;
  }
  CHECK(separatrices >= 1);
  CHECK(orbits == 3);

  const std::string svg = slurp(tmp.dir / "portrait.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(count(svg, " Attractor</title>") == 2);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
  CHECK(svg.find("params: M=0.04 S=0.12 Q=0.45 C=0.07") != std::string::npos);
  CHECK(svg.find("mht 1.0.0") != std::string::npos);
}

TEST_CASE("portrait in the cycle region has a closed cycle polyline") {
  Scratch tmp("portrait_cycle");
  REQUIRE(run({"portrait", "-M", "-0.055", "-S", "0.03", "-Q", "0.55", "-C", "0.1", "--orbits",
               "0", "-o", tmp.str()})
              .code == 0);
  std::vector<std::pair<double, double>> cycle;
  for (const auto& row : csv_rows(tmp.dir / "portrait.csv")) {
    if (row[1] == "cycle") cycle.emplace_back(std::stod(row[3]), std::stod(row[4]));
  }
  REQUIRE(cycle.size() > 10);
  CHECK(std::hypot(cycle.front().first - cycle.back().first,
                   cycle.front().second - cycle.back().second) < 1e-5);
}

TEST_CASE("portrait keeps the CSV when the SVG cannot be written") {
  Scratch tmp("portrait_partial");
  fs::create_directories(tmp.dir / "portrait.svg");
  const auto r = run({"portrait", "-M", "0.04", "-S", "0.12", "-Q", "0.45", "-C", "0.07",
                      "--orbits", "1", "-o", tmp.str()});
  CHECK(r.code == 3);
  CHECK(csv_rows(tmp.dir / "portrait.csv").size() > 100);
}

TEST_CASE("bifurcation loci") {
  Scratch tmp("bifurcation");
  const auto r = run({"bifurcation", "-Q", "0.5", "-C", "0.1", "--locus-points", "7", "--grid",
                      "0", "-o", tmp.str()});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(tmp.dir / "bifurcation_loci.csv");
  std::map<std::string, std::vector<double>> by_locus;
  bool bt_found = false;
  for (const auto& row : rows) {
    by_locus[row[0]].push_back(std::stod(row[1]));
    if (row[0] == "BT") {
      bt_found = true;
      CHECK(std::abs(std::stod(row[1]) - 0.01676) < 1e-4);
      CHECK(std::abs(std::stod(row[2]) - 0.12919) < 1e-4);
    }
  }
  CHECK(bt_found);
  CHECK(by_locus["HOM"].size() == 7);
  CHECK(by_locus["H"].size() >= 5);
  for (const auto& [name, ms] : by_locus) {
    CAPTURE(name);
    CHECK(std::is_sorted(ms.begin(), ms.end()));
  }
  const std::string svg = slurp(tmp.dir / "bifurcation.svg");
  CHECK(svg.find("BT") != std::string::npos);
}

TEST_CASE("bifurcation region grid shades (0.04, 0.01) as Repeller") {
  Scratch tmp("regions");
  REQUIRE(run({"bifurcation", "-Q", "0.45", "-C", "0.07", "--m-window", "0.035:0.045",
               "--s-window", "0.005:0.015", "--grid", "1", "--locus-points", "1", "-o",
               tmp.str()})
              .code == 0);
  const auto rows = csv_rows(tmp.dir / "bifurcation_regions.csv");
  REQUIRE(rows.size() == 1);
  CHECK(std::stod(rows[0][0]) == doctest::Approx(0.04));
  CHECK(std::stod(rows[0][1]) == doctest::Approx(0.01));
  CHECK(rows[0][2] == "Repeller");
  CHECK(run({"bifurcation", "-Q", "0.5", "-C", "0.1", "--m-window", "0.1:0.0", "-o", tmp.str()})
            .code == 2);
}

TEST_CASE("basin rasters") {
  Scratch tmp("basin");
  const std::vector<std::string> args{"basin", "-M", "0.04", "-S", "0.12", "-Q", "0.45", "-C",
                                      "0.07", "--resolution", "200", "-o"};
  auto first = args;
  first.push_back((tmp.dir / "a").string());
  auto second = args;
  second.push_back((tmp.dir / "b").string());
  REQUIRE(run(first).code == 0);
  REQUIRE(run(second).code == 0);
  const std::string a = slurp(tmp.dir / "a" / "basin.mhtb");
  CHECK(a == slurp(tmp.dir / "b" / "basin.mhtb"));

  const auto raster = mht::read_raster(tmp.dir / "a" / "basin.mhtb");
  CHECK(raster.resolution == 200);
  const auto fractions = mht::basin_fractions(raster);
  CHECK(fractions.size() == 2);
  CHECK(fractions.count(mht::kUndecided) == 0);
  CHECK(csv_rows(tmp.dir / "a" / "basin_fractions.csv").size() == 2);
  const std::string svg = slurp(tmp.dir / "a" / "basin.svg");
  CHECK(svg.find("<polyline") != std::string::npos);

  REQUIRE(run({"basin", "-M", "0", "-S", "0.1", "-Q", "1.2", "-C", "0.5", "--resolution", "20",
               "-o", (tmp.dir / "c").string()})
              .code == 0);
  const auto rows = csv_rows(tmp.dir / "c" / "basin_fractions.csv");
  REQUIRE(rows.size() == 1);
  CHECK(std::stod(rows[0].back()) == 1.0);
}

TEST_CASE("sweep over M lowers the interior basin share") {
  Scratch tmp("sweep_m");
  REQUIRE(run({"sweep", "-S", "0.12", "-Q", "0.45", "-C", "0.07", "--axis", "M=-0.01:0.04:2",
               "--resolution", "60", "-o", tmp.str()})
              .code == 0);
  const auto rows = csv_rows(tmp.dir / "sweep.csv");
  REQUIRE(rows.size() == 2);
  CHECK(std::stod(rows[0][0]) == -0.01);
  CHECK(std::stod(rows[1][0]) == 0.04);
  CHECK(std::stod(rows[0][5]) > std::stod(rows[1][5]));
}

TEST_CASE("sweep over S crosses Repeller, Cycle and Bistable in order") {
  Scratch tmp("sweep_s");
  REQUIRE(run({"sweep", "-M", "-0.02", "-Q", "0.5", "-C", "0.1", "--axis", "S=0.005:0.1:20",
               "--resolution", "8", "-o", tmp.str()})
              .code == 0);
  const std::map<std::string, int> rank{{"Repeller", 0}, {"Cycle", 1}, {"Bistable", 2}};
  std::vector<int> seen;
  for (const auto& row : csv_rows(tmp.dir / "sweep.csv")) {
    if (row[4] == "NearLocus") continue;
    REQUIRE(rank.count(row[4]) == 1);
    seen.push_back(rank.at(row[4]));
  }
  CHECK(std::is_sorted(seen.begin(), seen.end()));
  CHECK(std::count(seen.begin(), seen.end(), 0) > 0);
  CHECK(std::count(seen.begin(), seen.end(), 1) > 0);
  CHECK(std::count(seen.begin(), seen.end(), 2) > 0);
}

TEST_CASE("sweep edge cases") {
  Scratch tmp("sweep_edge");
  REQUIRE(run({"sweep", "-S", "0.12", "-Q", "0.45", "-C", "0.07", "--axis", "M=0:0.04:0", "-o",
               tmp.str()})
              .code == 0);
  CHECK(csv_rows(tmp.dir / "sweep.csv").empty());
  const std::string text = slurp(tmp.dir / "sweep.csv");
  CHECK(text.find("M,S,Q,C,region") != std::string::npos);
  CHECK(text.find("# seed: 1") != std::string::npos);

  CHECK(run({"sweep", "-S", "0.12", "-Q", "0.45", "-C", "0.07", "--axis", "X=0:1:2", "-o",
             tmp.str()})
            .code == 2);
  CHECK(run({"sweep", "-S", "0.12", "-Q", "0.45", "-C", "0.07", "--axis", "M=0:2:3", "-o",
             tmp.str()})
            .code == 2);
  CHECK(run({"sweep", "-S", "0.12", "-Q", "0.45", "-C", "0.07", "-o", tmp.str()}).code == 2);
}

TEST_CASE("every output file carries the provenance header") {
  Scratch tmp("provenance");
  REQUIRE(run({"basin", "-M", "0", "-S", "0.1", "-Q", "1.2", "-C", "0.5", "--resolution", "4",
               "--seed", "77", "-o", tmp.str()})
              .code == 0);
  for (const char* name : {"basin_fractions.csv", "basin.svg"}) {
    const std::string text = slurp(tmp.dir / name);
    CAPTURE(name);
    CHECK(text.find("mht 1.0.0") != std::string::npos);
    CHECK(text.find("params: M=0 S=0.1 Q=1.2 C=0.5") != std::string::npos);
    CHECK(text.find("config_hash: 0x") != std::string::npos);
    CHECK(text.find("seed: 77") != std::string::npos);
  }
  const auto raster = mht::read_raster(tmp.dir / "basin.mhtb");
  CHECK(raster.params.alt_food == 0.5);
  CHECK(raster.config_hash != 0);
}
