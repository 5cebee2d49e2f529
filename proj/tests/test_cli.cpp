#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gleason/report.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out_file_text;
};

RunResult run_cli(const std::string& args, const std::string& out_name) {
  const fs::path out = fs::temp_directory_path() / out_name;
  std::error_code ec;
  fs::remove(out, ec);
  const std::string cmd =
      std::string(GLEASON_CLI_PATH) + " " + args + " --out " + out.string() + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(out);
  if (in) {
    std::stringstream buf;
    buf << in.rdbuf();
    result.out_file_text = buf.str();
  }
  return result;
}

std::string data_file(const std::string& rel) {
  return (fs::path(GLEASON_DATA_DIR) / rel).string();
}

}  // namespace

TEST_CASE("exit codes: pass, failed checks, usage errors") {
  CHECK(run_cli("check-axioms " + data_file("models/interval_0_3.json"), "cli_ok.json")
            .exit_code == 0);
  CHECK(run_cli("check-axioms " + data_file("models/horizontal_sum.json"), "cli_ok2.json")
            .exit_code == 0);
  // an axiom violation is a failed check, not a usage error
  CHECK(run_cli("check-axioms " + data_file("models/cancellation_failure.json"), "cli_bad.json")
            .exit_code == 1);
  // malformed input
  CHECK(run_cli("check-axioms '{\"elements\":[\"0\"]}'", "cli_malformed.json").exit_code == 2);
  CHECK(run_cli("classify --seq '{\"family\":\"nope\"}'", "cli_unknown.json").exit_code == 2);
  CHECK(run_cli("rearrange --seq '{\"family\":\"power\",\"p\":2}' --target 1",
                "cli_abs.json")
            .exit_code == 2);
}

TEST_CASE("classified output carries both routes and the convention note") {
  const RunResult r =
      run_cli("classify --seq '{\"family\":\"alternating_power\",\"p\":1}'", "cli_classify.json");
  REQUIRE(r.exit_code == 0);
  const auto j = gleason::Json::parse(r.out_file_text);
  CHECK(j.at("details").at("summability_exact") == "conditionally_convergent");
  CHECK(j.at("details").at("summability_heuristic") == "conditionally_convergent");
  CHECK(j.at("details").at("frame_type") == "not_frame_type_conditionally_convergent");
  CHECK(j.at("details").at("note").get<std::string>().find("convention") != std::string::npos);
}

TEST_CASE("the non-closure demonstration reports its witness") {
  const RunResult r = run_cli("demo-nonsub", "cli_nonsub.json");
  REQUIRE(r.exit_code == 0);
  const auto j = gleason::Json::parse(r.out_file_text);
  CHECK(j.at("details").at("demo").at("violation_demonstrated").get<bool>());
  CHECK(j.at("details").at("demo").at("witness")[1] == "m2");
  // controls succeed without a violation
  CHECK(run_cli("demo-nonsub --control zero", "cli_nonsub0.json").exit_code == 0);
  CHECK(run_cli("demo-nonsub --control trace-class", "cli_nonsub_tc.json").exit_code == 0);
}

TEST_CASE("reports are identical across reruns once the timestamp is stripped") {
  const std::string args = "gleason --seed 7 --instances 40";
  const RunResult a = run_cli(args, "cli_det_a.json");
  const RunResult b = run_cli(args, "cli_det_b.json");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  const auto ja = gleason::strip_volatile(gleason::Json::parse(a.out_file_text));
  const auto jb = gleason::strip_volatile(gleason::Json::parse(b.out_file_text));
  CHECK(ja.dump() == jb.dump());
  // a different seed changes the draws
  const RunResult c = run_cli("gleason --seed 8 --instances 40", "cli_det_c.json");
  const auto jc = gleason::strip_volatile(gleason::Json::parse(c.out_file_text));
  CHECK(ja.dump() != jc.dump());
}

TEST_CASE("csv output and the side table") {
  const RunResult r = run_cli("sobolev --grids 11,21 --nmax 5", "cli_sob.json");
  REQUIRE(r.exit_code == 0);
  std::ifstream csv(fs::temp_directory_path() / "cli_sob.json.csv");
  REQUIRE(csv.good());
  std::string header;
  std::getline(csv, header);
  CHECK(header == "h,norm,slope");

  const RunResult rcsv =
      run_cli("check-axioms " + data_file("models/interval_0_3.json") + " --format csv",
              "cli_axioms.csv");
  CHECK(rcsv.exit_code == 0);
  CHECK(rcsv.out_file_text.rfind("claim,ref,lhs,rhs,tolerance,pass", 0) == 0);
}

TEST_CASE("ext subcommand decides and witnesses") {
  const std::string singular =
      "'{\"regular\":{\"family\":\"constant\",\"c\":0},\"singular\":{\"domain\":\"H\"},"
      "\"domain\":\"H\",\"p1_bounded\":false}'";
  const RunResult r = run_cli("ext --measure " + singular, "cli_ext.json");
  REQUIRE(r.exit_code == 0);
  const auto j = gleason::Json::parse(r.out_file_text);
  CHECK(j.at("details").at("sigma_additivity").at("verdict") == "not_sigma_additive");
  CHECK(j.at("details").at("value") == "inf");
  CHECK(j.at("details").at("sigma_violation").at("sum_of_parts") == 0.0);

  // inconsistent p1 flag names the field on stderr and exits 2
  const std::string bad =
      "'{\"regular\":{\"family\":\"constant\",\"c\":1},\"singular\":\"none\","
      "\"domain\":\"H\",\"p1_bounded\":false}'";
  CHECK(run_cli("ext --measure " + bad, "cli_ext_bad.json").exit_code == 2);
}
