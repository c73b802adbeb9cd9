#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct CommandResult {
  int exitCode = -1;
  std::string out;
  std::string err;
};

std::string readFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

const char* binaryPath() {
  const char* bin = std::getenv("SQWELL_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "SQWELL_BIN must point at the CLI binary");
  return bin;
}

CommandResult runCli(const std::string& args) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path();
  const std::string tag = std::to_string(static_cast<long>(getpid())) + "_" +
                          std::to_string(counter++);
  const fs::path outPath = dir / ("sqwell_cli_out_" + tag);
  const fs::path errPath = dir / ("sqwell_cli_err_" + tag);

  const std::string command = std::string("\"") + binaryPath() + "\" " + args +
                              " >" + outPath.string() + " 2>" +
                              errPath.string();
  const int status = std::system(command.c_str());

  CommandResult result;
  result.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = readFile(outPath);
  result.err = readFile(errPath);
  fs::remove(outPath);
  fs::remove(errPath);
  return result;
}

// Minimal CSV reader for the CLI's own output (no embedded separators in
// numeric tables).
struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  }
  const std::string& at(std::size_t row, const std::string& name) const {
    return rows.at(row).at(static_cast<std::size_t>(column(name)));
  }
};

Csv parseCsv(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream lineIn(line);
    while (std::getline(lineIn, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.emplace_back();
    if (first) {
      csv.header = std::move(fields);
      first = false;
    } else {
      csv.rows.push_back(std::move(fields));
    }
  }
  return csv;
}

double toDouble(const std::string& text) {
  double value = 0.0;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  REQUIRE(result.ec == std::errc());
  return value;
}

}  // namespace

TEST_CASE("levels command") {
  SUBCASE("one l=0 level for n = 3") {
    const auto result = runCli("levels --n 3 --l 0");
    CHECK(result.exitCode == 0);
    const auto csv = parseCsv(result.out);
    REQUIRE(csv.rows.size() == 1);
    CHECK(toDouble(csv.at(0, "xi")) ==
          doctest::Approx(1.7142575749014830).epsilon(1e-9));
    CHECK(csv.at(0, "l") == "0");
    CHECK(csv.at(0, "marginal") == "false");
  }
  SUBCASE("empty table is a valid answer") {
    const auto result = runCli("levels --n 2 --l 0");
    CHECK(result.exitCode == 0);
    CHECK(parseCsv(result.out).rows.empty());
  }
  SUBCASE("both angular momenta for n = 12") {
    const auto result = runCli("levels --n 12 --l 0,1");
    CHECK(result.exitCode == 0);
    const auto csv = parseCsv(result.out);
    REQUIRE(csv.rows.size() == 2);
    CHECK(csv.at(0, "l") == "0");
    CHECK(csv.at(1, "l") == "1");
    CHECK(toDouble(csv.at(1, "xi")) ==
          doctest::Approx(3.2978555491459694).epsilon(1e-9));
  }
  SUBCASE("bad selector is a usage error") {
    CHECK(runCli("levels --n 3 --l 2").exitCode == 2);
  }
}

TEST_CASE("transition command") {
  SUBCASE("3 -> 4 matches the published 0.204") {
    const auto result = runCli("transition --n1 3 --n2 4");
    CHECK(result.exitCode == 0);
    const auto csv = parseCsv(result.out);
    REQUIRE(csv.rows.size() == 1);
    const double pXi = toDouble(csv.at(0, "p_xi"));
    CHECK(pXi == doctest::Approx(0.20392747059007803).epsilon(1e-12));
    CHECK(std::abs(pXi - 0.204) < 1e-3);
    CHECK(csv.at(0, "allowed") == "true");
    CHECK(csv.at(0, "unit") == "mV0/(pi*hbar^2)");
    CHECK(toDouble(csv.at(0, "cross_check_residual")) < 1e-12);
  }
  SUBCASE("4 -> 5 matches the published 0.124") {
    const auto result = runCli("transition --n1 4 --n2 5");
    CHECK(result.exitCode == 0);
    const auto csv = parseCsv(result.out);
    CHECK(std::abs(toDouble(csv.at(0, "p_xi")) - 0.124) < 1e-3);
  }
  SUBCASE("reversed pair exits 3") {
    const auto result = runCli("transition --n1 4 --n2 3");
    CHECK(result.exitCode == 3);
    CHECK(!result.err.empty());
  }
  SUBCASE("missing level exits 4") {
    CHECK(runCli("transition --n1 2 --n2 4").exitCode == 4);
    CHECK(runCli("transition --n1 3 --n2 4 --branch1 1").exitCode == 4);
  }
}

TEST_CASE("ionize command") {
  SUBCASE("n = 3 matches the published 0.653") {
    const auto result = runCli("ionize --n 3");
    CHECK(result.exitCode == 0);
    const auto csv = parseCsv(result.out);
    CHECK(std::abs(toDouble(csv.at(0, "p_ion")) - 0.653) < 1e-3);
  }
  SUBCASE("n = 6 prints the reference deviation note") {
    const auto result = runCli("ionize --n 6");
    CHECK(result.exitCode == 0);
    const auto csv = parseCsv(result.out);
    CHECK(toDouble(csv.at(0, "p_ion")) ==
          doctest::Approx(0.24650235956858177).epsilon(1e-12));
    CHECK(result.err.find("0.4931") != std::string::npos);
  }
  SUBCASE("no bound state exits 4") {
    CHECK(runCli("ionize --n 2").exitCode == 4);
  }
  SUBCASE("physical conversion for the electron") {
    const auto result = runCli(
        "ionize --n 3 --mass 9.1093837015e-31 --depth 1.602176634e-19");
    CHECK(result.exitCode == 0);
    const auto csv = parseCsv(result.out);
    CHECK(csv.at(0, "physical_unit") == "1/m^2");
    CHECK(toDouble(csv.at(0, "p_ion_physical")) ==
          doctest::Approx(0.65303978513491411 * 4.1773147073864358e18)
              .epsilon(1e-9));
  }
  SUBCASE("mass without depth is a usage error") {
    CHECK(runCli("ionize --n 3 --mass 1e-30").exitCode == 2);
  }
}

TEST_CASE("eos command") {
  SUBCASE("perfect-cube pressure") {
    const auto result = runCli("eos pressure --b0 1 --b0p 4 --x 8");
    CHECK(result.exitCode == 0);
    CHECK(toDouble(parseCsv(result.out).at(0, "pressure")) ==
          doctest::Approx(144.0).epsilon(1e-12));
  }
  SUBCASE("perfect-cube inversion") {
    const auto result = runCli("eos invert --b0 1 --b0p 4 --p 144");
    CHECK(result.exitCode == 0);
    CHECK(toDouble(parseCsv(result.out).at(0, "x")) ==
          doctest::Approx(8.0).epsilon(1e-9));
  }
  SUBCASE("zero transition pressure gives zero jump") {
    const auto result =
        runCli("eos jump --b0 37.8 --b0p 4.9 --rho0 2.2 --rho1 2.5 --ptr 0");
    CHECK(result.exitCode == 0);
    const auto csv = parseCsv(result.out);
    CHECK(toDouble(csv.at(0, "delta")) == 0.0);
    CHECK(toDouble(csv.at(0, "rho2")) == 2.5);
  }
  SUBCASE("out-of-range inversion exits 5") {
    CHECK(runCli("eos invert --b0 1 --b0p 4 --p 1e9").exitCode == 5);
  }
  SUBCASE("non-monotone parameters exit 5") {
    CHECK(runCli("eos invert --b0 1 --b0p 3.5 --p 1 --x-max 10").exitCode == 5);
  }
  SUBCASE("missing parameters are a usage error") {
    CHECK(runCli("eos pressure --x 8").exitCode == 2);
  }
  SUBCASE("material file supplies parameters") {
    const fs::path path =
        fs::temp_directory_path() / "sqwell_cli_materials.txt";
    {
      std::ofstream out(path);
      out << "# name B0 B0prime rho0 (GPa / - / g/cm^3)\n";
      out << "demo 1.0 4.0 1.0\n";
    }
    const auto result = runCli("eos pressure --material-file " +
                               path.string() + " --material demo --x 8");
    CHECK(result.exitCode == 0);
    CHECK(toDouble(parseCsv(result.out).at(0, "pressure")) ==
          doctest::Approx(144.0).epsilon(1e-12));
    fs::remove(path);
  }
}

TEST_CASE("sweep command") {
  SUBCASE("adjacent pairs over [3, 5]") {
    const auto result = runCli("sweep --n-min 3 --n-max 5 --pairs adjacent");
    CHECK(result.exitCode == 0);
    const auto csv = parseCsv(result.out);
    REQUIRE(csv.rows.size() == 2);
    CHECK(toDouble(csv.at(0, "p_tr")) ==
          doctest::Approx(0.20392747059007803).epsilon(1e-12));
    CHECK(toDouble(csv.at(1, "p_tr")) ==
          doctest::Approx(0.12362640409824970).epsilon(1e-12));
  }
  SUBCASE("all-allowed row count over [3, 6]") {
    const auto result = runCli("sweep --n-min 3 --n-max 6 --pairs all-allowed");
    CHECK(result.exitCode == 0);
    CHECK(parseCsv(result.out).rows.size() == 6);
  }
  SUBCASE("degenerate sweep reports ionization only") {
    const auto result = runCli("sweep --n-min 5 --n-max 5");
    CHECK(result.exitCode == 0);
    const auto csv = parseCsv(result.out);
    REQUIRE(csv.rows.size() == 1);
    CHECK(csv.at(0, "n2").empty());
    CHECK(csv.at(0, "p_tr").empty());
    CHECK(toDouble(csv.at(0, "p_ion_n1")) ==
          doctest::Approx(0.32548591044658638).epsilon(1e-12));
  }
  SUBCASE("out-of-range bounds are usage errors") {
    CHECK(runCli("sweep --n-min 2 --n-max 5").exitCode == 2);
    CHECK(runCli("sweep --n-min 5 --n-max 3").exitCode == 2);
    CHECK(runCli("sweep --n-min 3 --n-max 5 --pairs bogus").exitCode == 2);
  }
  SUBCASE("repeated runs are byte-identical") {
    const std::string args = "sweep --n-min 3 --n-max 10 --pairs all-allowed";
    const auto first = runCli(args);
    const auto second = runCli(args);
    CHECK(first.exitCode == 0);
    CHECK(first.out == second.out);
    CHECK(!first.out.empty());
  }
  SUBCASE("--out writes the same bytes to a file") {
    const fs::path path = fs::temp_directory_path() / "sqwell_sweep_out.csv";
    const auto direct = runCli("sweep --n-min 3 --n-max 5");
    const auto toFile =
        runCli("sweep --n-min 3 --n-max 5 --out " + path.string());
    CHECK(toFile.exitCode == 0);
    CHECK(toFile.out.empty());
    CHECK(readFile(path) == direct.out);
    fs::remove(path);
  }
}

TEST_CASE("csv and json carry identical numeric values") {
  const std::string args = "sweep --n-min 3 --n-max 6 --pairs all-allowed";
  const auto csvResult = runCli(args);
  const auto jsonResult = runCli(args + " --format json");
  REQUIRE(csvResult.exitCode == 0);
  REQUIRE(jsonResult.exitCode == 0);

  const auto csv = parseCsv(csvResult.out);
  const auto doc = nlohmann::json::parse(jsonResult.out);
  CHECK(doc.at("unit") == "mV0/(pi*hbar^2)");
  REQUIRE(doc.at("rows").size() == csv.rows.size());
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    for (const char* field : {"xi1", "xi2", "p_tr", "p_ion_n1"}) {
      const double fromCsv = toDouble(csv.at(i, field));
      const double fromJson = doc.at("rows")[i].at(field).get<double>();
      CHECK(fromCsv == fromJson);
    }
  }
}

TEST_CASE("verify command") {
  SUBCASE("default run passes") {
    const auto result = runCli("verify");
    CHECK(result.exitCode == 0);
    const auto csv = parseCsv(result.out);
    REQUIRE(!csv.rows.empty());
    bool sawDeviation = false;
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
      if (csv.at(i, "kind") == "deviation") {
        sawDeviation = true;
        CHECK(csv.at(i, "name") == "P_ion(n=6)");
        CHECK(toDouble(csv.at(i, "expected")) == 0.4931);
      } else {
        CHECK(csv.at(i, "pass") == "true");
      }
    }
    CHECK(sawDeviation);
  }
  SUBCASE("json report") {
    const auto result = runCli("verify --format json");
    CHECK(result.exitCode == 0);
    const auto doc = nlohmann::json::parse(result.out);
    bool sawDeviation = false;
    for (const auto& row : doc.at("rows")) {
      if (row.at("kind") == "deviation") sawDeviation = true;
    }
    CHECK(sawDeviation);
  }
}

TEST_CASE("global options and config") {
  SUBCASE("usage errors exit 2") {
    CHECK(runCli("").exitCode == 2);
    CHECK(runCli("levels").exitCode == 2);           // missing --n
    CHECK(runCli("levels --n 3 --bogus").exitCode == 2);
    CHECK(runCli("nosuchcommand").exitCode == 2);
  }
  SUBCASE("help exits 0") {
    CHECK(runCli("--help").exitCode == 0);
    CHECK(runCli("levels --help").exitCode == 0);
  }
  SUBCASE("metadata appears only behind --meta") {
    const auto bare = runCli("levels --n 3");
    const auto withMeta = runCli("levels --n 3 --meta");
    CHECK(bare.out.find('#') == std::string::npos);
    CHECK(withMeta.out.rfind("# tool=sqwell", 0) == 0);
    CHECK(withMeta.out.find("# command=levels") != std::string::npos);
  }
  SUBCASE("config file feeds options, flags take precedence") {
    const fs::path path = fs::temp_directory_path() / "sqwell_cli_config.ini";
    {
      std::ofstream out(path);
      out << "tol=1e-12\n";
      out << "[levels]\n";
      out << "n=3\n";
    }
    const auto fromConfig = runCli("levels --config " + path.string());
    CHECK(fromConfig.exitCode == 0);
    const auto csv = parseCsv(fromConfig.out);
    REQUIRE(csv.rows.size() == 1);
    CHECK(csv.at(0, "n") == "3");

    const auto overridden =
        runCli("levels --config " + path.string() + " --n 4");
    CHECK(overridden.exitCode == 0);
    CHECK(parseCsv(overridden.out).at(0, "n") == "4");
    fs::remove(path);
  }
}
