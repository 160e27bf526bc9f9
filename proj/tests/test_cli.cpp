// Drives the command-line binary end to end through its JSON and CSV
// interfaces.
#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

struct Run {
  int status = -1;
  std::string out;
};

const fs::path& workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "adestab_cli_test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
  const fs::path p = workdir() / name;
  std::ofstream(p) << content;
  return p.string();
}

Run run(const std::string& args, const std::string& stdin_file = {}) {
  std::string cmd = std::string(ADESTAB_CLI_PATH) + " " + args + " 2>" + (workdir() / "stderr.txt").string();
  if (!stdin_file.empty()) cmd += " <" + stdin_file;
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string last_stderr() {
  std::ifstream in(workdir() / "stderr.txt");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

const std::string& a1() {
  static const std::string p = write_file("a1.json", R"({"ade":"A1","h_square":2,"extra_rank":0,"extra_gram":[[2]]})");
  return p;
}
const std::string& a2() {
  static const std::string p = write_file("a2.json", R"({"ade":"A2","h_square":2})");
  return p;
}
const std::string& a1_params() {
  static const std::string p = write_file("a1_params.json", R"({"beta":["-1/4"],"z":"1","s":"1","epsilon":"1","eta":"0","alpha":"0"})");
  return p;
}

}  // namespace

TEST_CASE("cli: ade info D4") {
  const Run r = run("ade info D4");
  REQUIRE(r.status == 0);
  const auto j = parse(r);
  CHECK(j["fund_cycle"] == nlohmann::json({2, 1, 1, 1}));
  CHECK(j["gram"][0][0] == -2);
  CHECK(j["inverse_all_negative"] == true);
}

TEST_CASE("cli: certify support on the A1 configuration") {
  const Run r = run("certify support " + a1() + " " + a1_params() + " --A 0 --B 8");
  REQUIRE(r.status == 0);
  const auto j = parse(r);
  CHECK(j["resolution"]["negative_definite"] == true);
  CHECK(j["resolution"]["inertia"] == nlohmann::json({0, 2, 0}));
  CHECK(j["singular_surface"]["negative_definite"] == true);
  CHECK(j["support_constants"]["B0"] == "8");
  CHECK(j["simple_classes_nonnegative"] == true);
  // B below B0 leaves a simple class with Q < 0: certification fails.
  CHECK(run("certify support " + a1() + " " + a1_params() + " --A 0 --B 1").status == 1);
  const std::string low = write_file("low_z.json", R"({"beta":["-1/4"],"z":"1/32"})");
  const Run bad = run("certify support " + a1() + " " + low);
  CHECK(bad.status == 1);
  CHECK(parse(bad)["param_violations"][0]["constraint"] == "z_above_minus_half_beta_square");
}

TEST_CASE("cli: filtration with phase check on A2") {
  const Run r = run("filtration " + a2() + " --target 2 --check-phases --eps 1/2 --eta 1/100");
  REQUIRE(r.status == 0);
  const auto j = parse(r);
  CHECK(j["telescoping_ok"] == true);
  CHECK(j["phase_chain"]["holds"] == true);
  CHECK(j["steps"].size() == 1);
  CHECK(run("filtration " + a2() + " --target 2 --check-phases --eta 0").status == 1);
  const Run text = run("--format text filtration " + a2() + " --target 2");
  CHECK(text.status == 0);
  CHECK(text.out.find("quotient: s_1") != std::string::npos);
  CHECK(run("filtration " + a2() + " --target 3").status == 2);
}

TEST_CASE("cli: charge, lift, decompose, beta") {
  const std::string cls = write_file("e1.json", R"({"ch0":0,"ch1":{"h":0,"e":[1],"x":[]},"ch2":0})");
  const Run c = run("charge eval " + a1() + " " + a1_params() + " " + cls);
  REQUIRE(c.status == 0);
  CHECK(parse(c)["charge"]["re"] == "1/2");
  CHECK(parse(c)["charge"]["im"] == "0");
  const Run l = run("lift " + a2() + R"( '{"ch0":2,"ch1":{"H":1},"ch2":3}')");
  REQUIRE(l.status == 0);
  CHECK(parse(l)["lift"]["ch1"]["e"] == nlohmann::json({"0", "0"}));
  const Run d = run("decompose " + a1() + R"( '{"ch0":0,"ch1":{"e":[1]},"ch2":2}')");
  REQUIRE(d.status == 0);
  CHECK(parse(d)["O_Pi"] == "2");
  CHECK(parse(d)["s"] == nlohmann::json({"1"}));
  const Run b = run("beta find " + a2() + " --t 1/3");
  REQUIRE(b.status == 0);
  CHECK(parse(b)["beta"] == nlohmann::json({"-1/3", "-1/3"}));
  CHECK(run("beta find " + a1() + " --t 1").status == 2);
}

TEST_CASE("cli: walls in JSON and CSV") {
  const std::string spec = a1();
  const std::string v = R"('{"ch0":1,"ch1":{"h":1},"ch2":0}')";
  const std::string cands = write_file("cands.json",
                                       R"([{"ch0":3,"ch1":{"h":1},"ch2":8},{"ch0":0,"ch1":{"h":1},"ch2":3}])");
  const Run j = run("walls " + spec + " " + a1_params() + " --class " + v + " --param s --candidates " + cands);
  REQUIRE(j.status == 0);
  const auto report = parse(j);
  REQUIRE(report["walls"].size() == 1);
  CHECK(report["walls"][0]["value"] == "4");
  const Run csv = run("--format csv walls " + spec + " " + a1_params() + " --class " + v + " --param s --candidates " + cands);
  REQUIRE(csv.status == 0);
  CHECK(csv.out == "parameter_value,witness_class,phase_num,phase_den\n4,(3;1|0;8),-4,2\n");
  const Run seg = run("walls " + spec + " " + a1_params() + R"( --class '{"ch0":0,"ch1":{},"ch2":1}' --param epsilon)");
  REQUIRE(seg.status == 0);
  CHECK(parse(seg)["degenerate_segment"].size() == 2);
  const Run box = run("walls " + a2() + " " + write_file("a2p.json", R"({"beta":["-1/3","-1/3"]})") +
                      R"( --class '{"ch0":1,"ch1":{"h":1},"ch2":0}' --param s --candidates box --hcoef 0:1 --ch2 -2:2)");
  REQUIRE(box.status == 0);
  CHECK(parse(box)["candidate_count"].get<int>() > 0);
}

TEST_CASE("cli: stdin input and byte-stable output") {
  const Run a = run("certify support - " + a1_params(), a1());
  const Run b = run("certify support " + a1() + " " + a1_params());
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  const std::string walls = "--format csv walls " + a2() + " " + write_file("a2q.json", R"({"beta":["-1/3","-1/3"]})") +
                            R"( --class '{"ch0":1,"ch1":{"h":1},"ch2":0}' --param s --candidates box --hcoef 0:1)";
  CHECK(run(walls).out == run(walls).out);
}

TEST_CASE("cli: malformed input exits 2 with a JSON diagnostic") {
  const std::string broken = write_file("broken.json", R"({"ade":"A2","h_square":)");
  CHECK(run("certify support " + broken + " " + a1_params()).status == 2);
  const auto diag = nlohmann::json::parse(last_stderr());
  CHECK(diag["error"] == "Parse");
  CHECK(run("ade info E9").status == 2);
  CHECK(nlohmann::json::parse(last_stderr())["error"] == "InvalidRank");
  const std::string bad_sig = write_file("bad_sig.json", R"({"ade":"A1","h_square":0})");
  CHECK(run("ade info A1").status == 0);
  CHECK(run("beta find " + bad_sig).status == 2);
  CHECK(run("lift " + a1() + " missing_file.json").status == 2);
  CHECK(run("charge eval " + a1() + " " + a1_params() + R"( '{"ch0":0,"ch1":{"e":[1,2]},"ch2":0}')").status == 2);
  CHECK(run("no-such-command").status == 2);
}
