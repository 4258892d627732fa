#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

const std::string kCli = DANVAR_CLI_PATH;
const std::string kData = DANVAR_TEST_DATA;
const std::string kScratch = DANVAR_TEST_SCRATCH;

struct Run {
  int code = -1;
  std::string out, err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args, const std::string& tag) {
  const std::string out = kScratch + "/" + tag + ".out", err = kScratch + "/" + tag + ".err";
  const int status = std::system((kCli + " " + args + " > " + out + " 2> " + err).c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string data(const std::string& name) { return kData + "/" + name; }

}  // namespace

TEST_CASE("check-cocycle exit codes") {
  const auto s1 = run("--json check-cocycle " + data("s1.json"), "cc_s1");
  CHECK(s1.code == 0);
  const auto j = nlohmann::json::parse(s1.out);
  CHECK(j["affineness"]["verdict"] == "Affine");
  CHECK(j.contains("conventions"));
  const auto c = run("check-cocycle " + data("cocycle_const.json") + " --json", "cc_const");
  CHECK(c.code == 1);
  CHECK(nlohmann::json::parse(c.out)["affineness"]["verdict"] == "NotSeparated");
  const auto cmp = run("--json check-cocycle " + data("cocycle_s1_s2.json"), "cc_cmp");
  CHECK(cmp.code == 1);
  CHECK(nlohmann::json::parse(cmp.out)["compare"]["cohomologous"] == false);
}

TEST_CASE("input errors map to exit 3 with diagnostics") {
  for (const auto& [args, tag] : std::vector<std::pair<std::string, std::string>>{
           {"check-cocycle " + data("parse_error.json"), "err_parse"},
           {"check-cocycle " + data("truncated.json"), "err_trunc"},
           {"check-cocycle " + data("missing.json"), "err_missing"},
           {"lnd-verify " + data("corrupted_lnd.json"), "err_lnd"},
           {"gr-check " + data("x2.json") + " --weights 3", "err_weights"},
           {"no-such-command", "err_usage"}}) {
    const auto r = run(args, tag);
    CHECK_MESSAGE(r.code == 3, args);
    const auto diag = nlohmann::json::parse(r.err.substr(0, r.err.find('\n')));
    CHECK(diag["error"].contains("kind"));
    CHECK(diag["error"].contains("message"));
  }
}

TEST_CASE("build-variety, lnd-verify, gr-check, ml-bound") {
  const auto bv = run("--json build-variety " + data("s1.json"), "bv");
  CHECK(bv.code == 0);
  CHECK(nlohmann::json::parse(bv.out)["special_fiber"]["components"] == 2);
  const auto lv = run("--json lnd-verify " + data("x2.json"), "lv");
  CHECK(lv.code == 0);
  const auto lv0 = run("lnd-verify " + data("x2.json") + " --nilpotency-cap 1", "lv0");
  CHECK(lv0.code == 2);
  const auto gr = run("--json gr-check " + data("x2.json") + " --weights 3,5", "gr");
  CHECK(gr.code == 0);
  CHECK(nlohmann::json::parse(gr.out)["graded"]["t0"] == 1);
  const auto ml = run("--json ml-bound " + data("x2.json") + " --degree-cap 3 --catalog " + data("catalog_x2.json"), "ml");
  CHECK(ml.code == 0);
  CHECK(nlohmann::json::parse(ml.out)["basis"] == nlohmann::json::array({"1", "x1", "x1^2", "x1^3"}));
  const auto ml1 = run("--json ml-bound " + data("s1.json") + " --degree-cap 2 --second-fibration", "ml1");
  CHECK(ml1.code == 0);
  CHECK(nlohmann::json::parse(ml1.out)["basis"] == nlohmann::json::array({"1"}));
}

TEST_CASE("certificates are deterministic and recheck in a separate process") {
  const std::string cert = kScratch + "/s1_s2.cert.json";
  const auto a = run("cancel-certificate " + data("s1.json") + " " + data("s2.json") + " -o " + cert, "cert_a");
  REQUIRE(a.code == 0);
  const std::string first = slurp(cert);
  const auto b = run("cancel-certificate " + data("s1.json") + " " + data("s2.json") + " -o " + cert, "cert_b");
  CHECK(b.code == 0);
  CHECK(slurp(cert) == first);
  CHECK(a.out == b.out);
  const auto rc = run("--json recheck " + cert, "recheck");
  CHECK(rc.code == 0);
  CHECK(nlohmann::json::parse(rc.out)["status"] == "verified");

  auto j = nlohmann::json::parse(first);
  j["H"][0] = j["H"][0].get<std::string>() + " + 1/7*x1";
  const std::string bad = kScratch + "/tampered.cert.json";
  std::ofstream(bad) << j.dump(2);
  const auto rb = run("--json recheck " + bad, "recheck_bad");
  CHECK(rb.code == 1);
  CHECK(nlohmann::json::parse(rb.out).contains("failing_identity"));

  const auto inc = run("cancel-certificate " + data("s1.json") + " " + data("s2.json") + " --t-cap 1 --x-cap 0", "cert_inc");
  CHECK(inc.code == 2);
}
