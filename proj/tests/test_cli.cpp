// End-to-end tests of the command-line binary: spawn it, capture stdout and
// the exit code, and parse the JSON back into core types (every JSON output
// must round-trip into the type that emitted it).

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "heatsum/json_io.hpp"
#include "heatsum/snf.hpp"
#include "heatsum/torus_kernel.hpp"

using namespace heatsum;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(HEATSUM_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buffer{};
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.out.append(buffer.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

struct TempSpec {
  std::string path;
  explicit TempSpec(const std::string& name, const std::string& content)
      : path("/tmp/heatsum_cli_" + name) {
    std::ofstream out(path);
    out << content;
  }
  ~TempSpec() { std::remove(path.c_str()); }
};

const char* kRing4 =
    R"({"d":1,"m":[4],"steps":[{"offset":[1],"weight":"1/2"},{"offset":[-1],"weight":"1/2"}],)"
    R"("beta":["0"],"mode":"exact"})";

const char* kTwisted6 =
    R"({"d":1,"m":[6],"steps":[{"offset":[1],"weight":"1/2"},{"offset":[-1],"weight":"1/2"}],)"
    R"("beta":["1/3"],"mode":"exact"})";

}  // namespace

TEST_CASE("plain sums print the documented values") {
  CHECK(run_cli("sum cos-power --m 5 --n 2 --beta 0 --plain").out == "5/2\n");
  const RunResult alt = run_cli("sum alternating-S --n 100 --m 13 --plain");
  CHECK(alt.exit_code == 0);
  CHECK(alt.out ==
        "-27820144416504768614943952313424972252178190684153272739503/"
        "100433627766186892221372630771322662657637687111424552206336\n");
}

TEST_CASE("sum JSON carries a value that parses back, and --check appends a matching oracle") {
  const RunResult r = run_cli("sum twisted-cos --m 6 --b 1 --r 2 --alpha 1/3 --n 4 --check");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  const KernelValue v = parse_kernel_value(doc["value"].dump());
  REQUIRE(is_exact_value(v));
  CHECK(doc["oracle"]["matches"].get<bool>());
  const KernelValue oracle = parse_kernel_value(doc["oracle"]["value"].dump());
  CHECK(exact_value(v) == exact_value(oracle));
}

TEST_CASE("every closed-form subcommand agrees with its term-by-term oracle") {
  const char* cases[] = {
      "sum cos-power --m 6 --n 5 --beta 1/2 --kind sin --check",
      "sum twisted-cos --m 8 --b 3 --r 5 --alpha 1/4 --n 6 --kind sin --check",
      "sum alternating-S --n 7 --m 9 --check",
      "sum mult-char --modulus 8 --index 1 --b 3 --alpha 1/6 --n 5 --check",
      "sum product-cos --m 3,4,5 --n 4 --beta 1/2,0,1/5 --check",
      "sum combo --m1 4 --m2 5 --n 5 --beta1 1/3 --beta2 1/2 --check",
      "sum mixed-2d --m1 2 --m2 3 --a 1 --b 1 --k 2 --check",
  };
  for (const char* args : cases) {
    CAPTURE(args);
    const RunResult r = run_cli(args);
    CHECK(r.exit_code == 0);
    if (r.exit_code == 0) {
      const json doc = json::parse(r.out);
      CHECK(doc["oracle"]["matches"].get<bool>());
    }
  }
}

TEST_CASE("torus kernel routes agree and the value parses back") {
  TempSpec spec("twisted6.json", kTwisted6);
  const RunResult r = run_cli("kernel torus --spec " + spec.path +
                              " --x 2 --y 1 --n 5 --method images,snf,spectral,evolve");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["equal"].get<bool>());
  CHECK(doc["max_abs_diff"].get<double>() == 0.0);
  const KernelValue images = parse_kernel_value(doc["methods"]["images"].dump());
  const TorusSpec parsed = parse_torus_spec(kTwisted6);
  CHECK(exact_value(images) == exact_value(images_kernel(parsed, {2}, {1}, 5)));
}

TEST_CASE("lattice kernel, spectrum, and verify answer on the ring") {
  TempSpec spec("ring4.json", kRing4);

  const RunResult lattice = run_cli("kernel lattice --spec " + spec.path + " --x 2 --n 4");
  REQUIRE(lattice.exit_code == 0);
  CHECK(json::parse(lattice.out)["value"].get<std::string>() == "1/4");

  const RunResult spectrum = run_cli("spectrum --spec " + spec.path);
  REQUIRE(spectrum.exit_code == 0);
  const json sdoc = json::parse(spectrum.out);
  CHECK(sdoc["count"].get<int>() == 4);
  // lambda_0 = 1 for an untwisted walk.
  CHECK(parse_kernel_value(sdoc["eigenvalues"][0]["value"].dump()) ==
        KernelValue(CycloNumber(Rational(1))));

  const RunResult identity =
      run_cli("verify main-identity --spec " + spec.path + " --x 1 --y 0 --n 3");
  REQUIRE(identity.exit_code == 0);
  CHECK(json::parse(identity.out)["equal"].get<bool>());

  const RunResult integrality = run_cli("verify integrality --spec " + spec.path + " --n 4");
  REQUIRE(integrality.exit_code == 0);
  const json idoc = json::parse(integrality.out);
  CHECK(idoc["integral"].get<bool>());
  // Eigenvalues cos(2*pi*j/4) are 1, 0, -1, 0, so 2^4 * sum(lambda^4) = 32.
  CHECK(idoc["value"].get<std::string>() == "32");
}

TEST_CASE("snf output reconstructs the decomposition") {
  const RunResult r = run_cli("snf --matrix [[2,4],[6,8]]");
  REQUIRE(r.exit_code == 0);
  const SnfResult s = parse_snf_result(r.out);
  const IntMatrix a = parse_int_matrix("[[2,4],[6,8]]");
  CHECK(matmul(matmul(s.u, a), s.v) == s.d);
  const json doc = json::parse(r.out);
  CHECK(doc["invariant_factors"] == json::array({"2", "4"}));
}

TEST_CASE("simulation reports parse back and stay within bounds") {
  TempSpec spec("ring4sim.json", kRing4);
  const RunResult r = run_cli("simulate --spec " + spec.path +
                              " --walks 200000 --n 2 --seed 11 --compare");
  REQUIRE(r.exit_code == 0);
  const ComparisonReport report = parse_comparison_report(r.out);
  CHECK(report.pass);
  CHECK(report.rows.size() == 4);

  const RunResult plainRun = run_cli("simulate --spec " + spec.path +
                                     " --walks 1000 --n 0 --seed 3");
  REQUIRE(plainRun.exit_code == 0);
  const EmpiricalDistribution dist = parse_distribution(plainRun.out);
  CHECK(dist.counts[0] == 1000);
}

TEST_CASE("invalid inputs exit with the validation code") {
  CHECK(run_cli("kernel torus --spec /nonexistent.json --x 0 --n 1").exit_code == 2);
  CHECK(run_cli("sum cos-power --m 0 --n 1").exit_code == 2);
  CHECK(run_cli("sum mult-char --modulus 6 --index 1 --b 1 --n 1").exit_code == 2);
  CHECK(run_cli("sum twisted-cos --m 4 --b 1 --r 1 --n 2 --alpha-radians 0.5 --check").exit_code ==
        2);
  CHECK(run_cli("nonsense").exit_code == 2);

  TempSpec spec("ring4err.json", kRing4);
  CHECK(run_cli("simulate --spec " + spec.path + " --walks 0 --n 1").exit_code == 2);
}
