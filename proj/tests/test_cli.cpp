#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("frk_cli_tests_" + std::to_string(static_cast<long>(::getpid())));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE_MESSAGE(static_cast<bool>(in), "missing file: " << p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, std::string* output = nullptr) {
  const char* bin = std::getenv("FRK_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "FRK_BIN must point at the CLI binary");
  static int counter = 0;
  const fs::path cap = scratch_dir() / ("capture_" + std::to_string(counter++) + ".txt");
  const std::string cmd =
      "'" + std::string(bin) + "' " + args + " >'" + cap.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  if (output) *output = slurp(cap);
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("cli: exponents prints and writes the exact profile") {
  const fs::path dir = scratch_dir() / "exponents";
  std::string out;
  const int rc = run_cli("exponents --n 2 --a 1 --b 1 --out '" + dir.string() + "'", &out);
  CHECK(rc == 0);
  CHECK(out.find("6/5") != std::string::npos);
  CHECK(out.find("12/11") != std::string::npos);

  const auto j = nlohmann::json::parse(slurp(dir / "exponents_n2_a1_b1.json"));
  CHECK(j["r0"]["exact"] == "6/5");
  CHECK(j["theta"]["exact"] == "2/3");
  CHECK(j["tau"]["exact"] == "4/1");
  CHECK(j["conv_r0"]["exact"] == "3/2");
  CHECK(j["r0"]["value"].get<double>() == doctest::Approx(1.2));
}

TEST_CASE("cli: usage errors exit with 2") {
  std::string out;
  CHECK(run_cli("exponents", &out) == 2);  // missing --n
  CHECK(run_cli("--definitely-not-a-flag", &out) == 2);
  CHECK(run_cli("verify --n 2", &out) == 2);  // no groups selected
  CHECK(out.find("error:") != std::string::npos);
  CHECK(run_cli("verify --N 9 --n 2 --mode sometimes", &out) == 2);
  CHECK(run_cli("", &out) == 2);  // a subcommand is required
}

TEST_CASE("cli: verify writes canonical artifacts and reruns byte-identically") {
  const std::string common =
      " --N 9 --n 2 --seed 5 --samples 50 --lorentz-samples 4 --out ";
  const fs::path d1 = scratch_dir() / "verify1";
  const fs::path d2 = scratch_dir() / "verify2";
  const fs::path d3 = scratch_dir() / "verify3";

  std::string out;
  REQUIRE(run_cli("verify" + common + "'" + d1.string() + "'", &out) == 0);
  CHECK(out.find("[PASS] verify Z9n2 paraboloid") != std::string::npos);

  const std::string base = "verify_Z9n2_paraboloid_a1_b1";
  const std::string json1 = slurp(d1 / (base + ".json"));
  const std::string csv1 = slurp(d1 / (base + ".csv"));
  CHECK(csv1.rfind("system,n,check,scale,params,bound,observed,ratio,pass,witness\n", 0) == 0);
  const auto j1 = nlohmann::json::parse(json1);
  CHECK(j1["passed"].get<bool>());
  CHECK(j1["seed"].get<std::uint64_t>() == 5);

  const auto meta1 = nlohmann::json::parse(slurp(d1 / (base + ".meta.json")));
  CHECK(meta1["cache"] == "miss");
  CHECK(meta1["artifact"] == base);
  // Timing lives only in the sidecar.
  CHECK(json1.find("elapsed") == std::string::npos);

  // Same settings, fresh out dir, shared cache: byte-identical via a hit.
  REQUIRE(run_cli("verify" + common + "'" + d2.string() + "' --cache-dir '" +
                      (d1 / ".frk-cache").string() + "'",
                  &out) == 0);
  CHECK(slurp(d2 / (base + ".json")) == json1);
  CHECK(slurp(d2 / (base + ".csv")) == csv1);
  CHECK(nlohmann::json::parse(slurp(d2 / (base + ".meta.json")))["cache"] == "hit");

  // Same settings without any cache: still byte-identical, by determinism.
  REQUIRE(run_cli("verify" + common + "'" + d3.string() + "' --no-cache", &out) == 0);
  CHECK(slurp(d3 / (base + ".json")) == json1);
  CHECK(nlohmann::json::parse(slurp(d3 / (base + ".meta.json")))["cache"] == "off");

  // A different seed must change the report.
  const fs::path d4 = scratch_dir() / "verify4";
  REQUIRE(run_cli("verify --N 9 --n 2 --seed 6 --samples 50 --lorentz-samples 4 --out '" +
                      d4.string() + "'",
                  &out) == 0);
  CHECK(slurp(d4 / (base + ".json")) != json1);
}

TEST_CASE("cli: config file supplies settings and flags override it") {
  const fs::path dir = scratch_dir() / "config";
  fs::create_directories(dir);
  const fs::path cfg = dir / "run.cfg";
  {
    std::ofstream f(cfg);
    f << "# grid\n";
    f << "N = 9\n";
    f << "n = 2\n";
    f << "seed = 5\n";
    f << "samples = 50\n";
    f << "lorentz-samples = 4\n";
  }
  std::string out;
  const fs::path d1 = dir / "from_config";
  REQUIRE(run_cli("verify --config '" + cfg.string() + "' --out '" + d1.string() + "'", &out) ==
          0);
  const auto j1 = nlohmann::json::parse(slurp(d1 / "verify_Z9n2_paraboloid_a1_b1.json"));
  CHECK(j1["seed"].get<std::uint64_t>() == 5);

  const fs::path d2 = dir / "flag_wins";
  REQUIRE(run_cli("verify --config '" + cfg.string() + "' --seed 7 --out '" + d2.string() + "'",
                  &out) == 0);
  const auto j2 = nlohmann::json::parse(slurp(d2 / "verify_Z9n2_paraboloid_a1_b1.json"));
  CHECK(j2["seed"].get<std::uint64_t>() == 7);

  const fs::path bad = dir / "bad.cfg";
  {
    std::ofstream f(bad);
    f << "this line has no equals sign\n";
  }
  CHECK(run_cli("verify --config '" + bad.string() + "'", &out) == 2);
  CHECK(out.find("bad.cfg:1") != std::string::npos);
}

TEST_CASE("cli: undefined measure on a grid point fails verify but is skipped by scan") {
  std::string out;
  // The paraboloid needs odd characteristic: Z6 is a hard error for verify.
  CHECK(run_cli("verify --N 6 --n 2 --out '" + (scratch_dir() / "v6").string() + "'", &out) ==
        2);
  CHECK(out.find("error:") != std::string::npos);

  const fs::path dir = scratch_dir() / "scan";
  const int rc = run_cli(
      "scan --N 6,9 --n 2 --seed 3 --samples 40 --lorentz-samples 4 --out '" + dir.string() +
          "'",
      &out);
  CHECK(rc == 0);
  CHECK(out.find("[SKIP] scan Z6n2") != std::string::npos);
  CHECK(out.find("[PASS] scan Z9n2") != std::string::npos);
  CHECK(out.find("1 pass, 0 fail, 1 skipped") != std::string::npos);

  const auto summary = nlohmann::json::parse(slurp(dir / "scan_summary.json"));
  CHECK(summary["all_pass"].get<bool>());
  REQUIRE(summary["points"].size() == 2);
  CHECK(summary["points"][0]["name"] == "Z6n2");
  CHECK(summary["points"][0].contains("skipped"));
  CHECK_FALSE(summary["points"][0].contains("verify_pass"));
  CHECK(summary["points"][1]["name"] == "Z9n2");
  CHECK(summary["points"][1]["verify_pass"].get<bool>());

  // The skipped point still leaves its system-check artifact behind.
  CHECK(fs::exists(dir / "scan_Z6n2_system.json"));
  CHECK(fs::exists(dir / "scan_verify_Z9n2_paraboloid_a1_b1.json"));
}

TEST_CASE("cli: system-check and measure-analyze cover grids and print constants") {
  const fs::path dir = scratch_dir() / "grid";
  std::string out;
  const int rc =
      run_cli("system-check --N 6 --q 4,9 --n 2 --out '" + dir.string() + "'", &out);
  CHECK(rc == 2);  // cyclic and field families cannot be mixed
  REQUIRE(run_cli("system-check --q 4,9 --n 1-2 --seed 2 --out '" + dir.string() + "'", &out) ==
          0);
  CHECK(out.find("[PASS] system-check F4n1") != std::string::npos);
  CHECK(out.find("[PASS] system-check F9n2") != std::string::npos);
  CHECK(fs::exists(dir / "system-check_F4n2.csv"));

  REQUIRE(run_cli("measure-analyze --N 9 --n 2 --out '" + dir.string() + "'", &out) == 0);
  CHECK(out.find("[PASS] measure-analyze Z9n2 paraboloid") != std::string::npos);
  CHECK(out.find("A=1") != std::string::npos);
  const auto j =
      nlohmann::json::parse(slurp(dir / "measure-analyze_Z9n2_paraboloid.json"));
  CHECK(j["passed"].get<bool>());
}

TEST_CASE("cli: weights measures come from files and feed the full pipeline") {
  const fs::path dir = scratch_dir() / "weights";
  fs::create_directories(dir);
  const fs::path wfile = dir / "w.json";
  {
    std::ofstream f(wfile);
    f << "{\"0\": 0.5, \"4\": 0.25, \"8\": 0.25}\n";
  }
  std::string out;
  REQUIRE(run_cli("measure-analyze --N 9 --n 1 --a 1 --b 1 --measure 'weights:" +
                      wfile.string() + "' --out '" + dir.string() + "'",
                  &out) == 0);
  CHECK(fs::exists(dir / "measure-analyze_Z9n1_weights.json"));

  CHECK(run_cli("measure-analyze --N 9 --n 1 --measure weights:/no/such/file", &out) == 2);
  CHECK(run_cli("measure-analyze --N 9 --n 1 --measure volume", &out) == 2);
}
