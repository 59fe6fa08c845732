#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kBin = std::string(THERMOSCOPE_BIN_DIR) + "/thermoscope";

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() / "thermoscope_cli_test";
  fs::create_directories(dir);
  const fs::path out_path = dir / ("stdout_" + std::to_string(counter));
  const fs::path err_path = dir / ("stderr_" + std::to_string(counter));
  ++counter;
  const std::string command = kBin + " " + args + " >" + out_path.string() +
                              " 2>" + err_path.string();
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(status);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  return result;
}

std::string slurp_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "thermoscope_cli_scratch";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("ideal command emits the gas-law point as JSON") {
  const RunResult r = run_cli("ideal --N 2 --T 3 --P 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"U\": 9.0") != std::string::npos);
  CHECK(r.out.find("\"version\"") != std::string::npos);
  CHECK(r.out.find("\"command\": \"ideal\"") != std::string::npos);
}

TEST_CASE("missing required flag exits 2 with usage text") {
  const RunResult r = run_cli("ideal --N 2 --T 3");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("usage") != std::string::npos);
}

TEST_CASE("unknown flag and unknown command exit 2") {
  CHECK(run_cli("ideal --N 2 --T 3 --P 1 --bogus 7").exit_code == 2);
  CHECK(run_cli("frobnicate --x 1").exit_code == 2);
}

TEST_CASE("domain errors exit 1 with a machine-parsable line") {
  const RunResult r = run_cli("vdw-maxwell --a 1 --b 1 --N 1 --T 5.0");
  CHECK(r.exit_code == 1);
  CHECK(r.err.rfind("error: no-coexistence:", 0) == 0);
  CHECK(r.err.find('\n') == r.err.size() - 1);  // single line
}

TEST_CASE("vdw-maxwell emits the contract fields with small residual") {
  const RunResult r = run_cli("vdw-maxwell --a 1 --b 1 --N 1 --T 0.2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"P_mx\"") != std::string::npos);
  CHECK(r.out.find("\"V_liquid\"") != std::string::npos);
  CHECK(r.out.find("\"residual\"") != std::string::npos);
}

TEST_CASE("isotherm CSV has the declared header and a sidecar") {
  const fs::path out = scratch_dir() / "iso.csv";
  const RunResult r = run_cli("vdw-isotherm --a 1 --b 1 --N 1 --T 0.25 --count 64 --out " +
                              out.string());
  CHECK(r.exit_code == 0);
  const std::string text = slurp_file(out);
  CHECK(text.rfind("Veff,P\n", 0) == 0);
  CHECK(fs::exists(out.string() + ".meta.json"));
  CHECK(!fs::exists(out.string() + ".tmp"));
  const std::string meta = slurp_file(out.string() + ".meta.json");
  CHECK(meta.find("\"gas.a\": \"1\"") != std::string::npos);
  CHECK(meta.find("\"version\"") != std::string::npos);
}

TEST_CASE("selector CSV branch column is restricted to the enum") {
  const fs::path out = scratch_dir() / "sel.csv";
  const RunResult r = run_cli(
      "vdw-selector --a 1 --b 1 --N 1 --T 0.25 --count 65 --out " + out.string());
  CHECK(r.exit_code == 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "P,fT,dfTdP,branch");
  bool saw_liquid = false, saw_vapour = false, saw_cliff = false;
  while (std::getline(in, line)) {
    const auto comma = line.rfind(',');
    const std::string branch = line.substr(comma + 1);
    const bool known =
        branch == "liquid" || branch == "vapour" || branch == "cliff";
    CHECK(known);
    saw_liquid |= branch == "liquid";
    saw_vapour |= branch == "vapour";
    saw_cliff |= branch == "cliff";
  }
  CHECK(saw_liquid);
  CHECK(saw_vapour);
  CHECK(saw_cliff);
}

TEST_CASE("config file merges under flags; flags win") {
  const fs::path dir = scratch_dir();
  const fs::path cfg = dir / "run.cfg";
  {
    std::ofstream out(cfg);
    out << "# shared parameters\n";
    out << "gas.N = 2\n";
    out << "T = 3\n";
    out << "P = 1\n";
  }
  const RunResult from_file = run_cli("ideal --config " + cfg.string());
  CHECK(from_file.exit_code == 0);
  CHECK(from_file.out.find("\"U\": 9.0") != std::string::npos);

  // the flag overrides the file value: T = 1 gives U = 3
  const RunResult flag_wins = run_cli("ideal --config " + cfg.string() + " --T 1");
  CHECK(flag_wins.exit_code == 0);
  CHECK(flag_wins.out.find("\"U\": 3.0") != std::string::npos);
  CHECK(flag_wins.out.find("\"T\": \"1\"") != std::string::npos);
}

TEST_CASE("unknown config keys are rejected by name") {
  const fs::path cfg = scratch_dir() / "bad.cfg";
  {
    std::ofstream out(cfg);
    out << "gas.Q = 7\n";
  }
  const RunResult r = run_cli("ideal --T 1 --P 1 --config " + cfg.string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("gas.Q") != std::string::npos);
}

TEST_CASE("reruns with the deterministic flag are byte-identical") {
  const fs::path dir = scratch_dir();
  const fs::path out1 = dir / "det1.csv";
  const fs::path out2 = dir / "det2.csv";
  const std::string common =
      "vdw-selector --a 1 --b 1 --N 1 --T 0.22 --count 33 --out ";
  CHECK(run_cli(common + out1.string()).exit_code == 0);
  CHECK(run_cli(common + out2.string()).exit_code == 0);
  CHECK(slurp_file(out1) == slurp_file(out2));

  const fs::path tr1 = dir / "tr1.csv";
  const fs::path tr2 = dir / "tr2.csv";
  const std::string transport =
      "transport --nq 64 --np 64 --steps 8 --stride 4 --out ";
  CHECK(run_cli(transport + tr1.string()).exit_code == 0);
  CHECK(run_cli(transport + tr2.string()).exit_code == 0);
  CHECK(slurp_file(tr1) == slurp_file(tr2));
}

TEST_CASE("temperature sweep writes one output file per temperature") {
  const fs::path dir = scratch_dir();
  const fs::path out = dir / "sweep.json";
  const RunResult r = run_cli("vdw-maxwell --a 1 --b 1 --N 1 --temps 0.2,0.25 --out " +
                              out.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "sweep_T0.2.json"));
  CHECK(fs::exists(dir / "sweep_T0.25.json"));
  CHECK(slurp_file(dir / "sweep_T0.2.json").find("\"T\": 0.2") != std::string::npos);
}

TEST_CASE("transport emits the trajectory header and a binary dump on request") {
  const fs::path dir = scratch_dir();
  const fs::path out = dir / "traj.csv";
  const fs::path dump = dir / "state.bin";
  const RunResult r =
      run_cli("transport --nq 64 --np 64 --steps 4 --out " + out.string() +
              " --dump-f " + dump.string());
  CHECK(r.exit_code == 0);
  const std::string text = slurp_file(out);
  CHECK(text.rfind("t,mass,entropy,meanP,meanP2\n", 0) == 0);
  REQUIRE(fs::exists(dump));
  std::ifstream in(dump, std::ios::binary);
  std::array<char, 8> magic{};
  in.read(magic.data(), 8);
  CHECK(std::string(magic.begin(), magic.end()) == "KTPS0001");
  CHECK(fs::file_size(dump) == 16 + 64 * 64 * 8);
}

TEST_CASE("maxent command fits a two-state system from a JSON file") {
  const fs::path dir = scratch_dir();
  const fs::path sys = dir / "system.json";
  {
    std::ofstream out(sys);
    out << R"({"dim": 1, "nodes": [[0.0], [1.0]], "weights": [0.5, 0.5],)"
        << R"( "observables": [{"label": "F", "values": [0.0, 1.0]}]})";
  }
  const RunResult r =
      run_cli("maxent --system " + sys.string() + " --target 0.75");
  CHECK(r.exit_code == 0);
  // lambda = log 3 = 1.0986...
  CHECK(r.out.find("\"lambda\"") != std::string::npos);
  CHECK(r.out.find("1.09861228866810") != std::string::npos);

  const RunResult bad =
      run_cli("maxent --system " + sys.string() + " --target 1.5");
  CHECK(bad.exit_code == 1);
  CHECK(bad.err.rfind("error: infeasible-target:", 0) == 0);
}
