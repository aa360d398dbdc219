// Drives the installed binary end to end over the bundled fixtures.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fuzzalg/io.hpp"

using namespace fuzzalg;

namespace {

const std::string kBin = CLI_BIN;
const std::string kFixtures = FIXTURES_DIR;
const std::string kExamples = kFixtures + "/examples.fz";

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = kBin + " " + args + " 2>/dev/null";
  std::FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int st = pclose(p);
  RunResult r;
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  r.out = std::move(out);
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out);
  out << text;
}

}  // namespace

TEST_CASE("validate lists the bundled entities") {
  const RunResult r = run("validate " + kExamples);
  CHECK(r.code == 0);
  CHECK(contains(r.out, "frames: B4 C2 H"));
  CHECK(contains(r.out, "models: RZ Z2"));
  CHECK(contains(r.out, "equations: C"));

  CHECK(run("validate " + tmp_path("no_such_file.fz")).code == 2);
  const std::string bad = tmp_path("fuzzalg_cli_bad.fz");
  spit(bad, "frame H = chain 2;\nframe H = chain 3;\n");
  CHECK(run("validate " + bad).code == 2);
  std::filesystem::remove(bad);
}

TEST_CASE("check-proof verifies fixtures and rejects mutations") {
  const std::string unit = kFixtures + "/derivations/unit_existence.json";
  RunResult r = run("check-proof " + kExamples + " G " + unit);
  CHECK(r.code == 0);
  CHECK(contains(r.out, "verified: [mem h x] |- mem h e"));
  CHECK(run("check-proof " + kExamples + " G " + unit + " --paper-literal")
            .code == 0);

  r = run("check-proof " + kExamples + " N " + kFixtures +
          "/derivations/conjugation_reflection.json --format structured");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "\"verified\": true"));

  const std::string mutated = tmp_path("fuzzalg_cli_mutated.json");
  std::string text = slurp(unit);
  const size_t at = text.find("\"axiom\": 0");
  REQUIRE(at != std::string::npos);
  text.replace(at, 10, "\"axiom\": 1");
  spit(mutated, text);
  r = run("check-proof " + kExamples + " G " + mutated);
  CHECK(r.code == 1);
  CHECK(contains(r.out, "rejected at root.0.0"));
  std::filesystem::remove(mutated);

  CHECK(run("check-proof " + kExamples + " NoSuchTheory " + unit).code == 2);
  CHECK(run("check-proof " + kExamples + " G " + tmp_path("nope.json")).code ==
        2);
}

TEST_CASE("check-model separates models from non-models") {
  CHECK(run("check-model " + kExamples + " Z2 G").code == 0);
  CHECK(run("check-model " + kExamples + " Z2 N").code == 0);
  CHECK(run("check-model " + kExamples + " RZ LI").code == 0);
  CHECK(run("check-model " + kExamples + " RZ E").code == 0);

  const RunResult r = run("check-model " + kExamples + " RZ RI");
  CHECK(r.code == 1);
  CHECK(contains(r.out, "violates axiom"));

  const RunResult js =
      run("check-model " + kExamples + " RZ RI --format structured");
  CHECK(js.code == 1);
  CHECK(contains(js.out, "\"model\": false"));
  CHECK(contains(js.out, "\"failing_axiom\""));

  CHECK(run("check-model " + kExamples + " NoSuchModel G").code == 2);
}

TEST_CASE("find-countermodel emits a file that round-trips") {
  const RunResult r =
      run("find-countermodel " + kExamples + " E \"|- x == y\" --max-size 2");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "countermodel of size 2"));
  CHECK(contains(r.out, "assign {"));

  const std::string path = tmp_path("fuzzalg_cli_counter.fz");
  spit(path, r.out);
  Workspace ws = parse_workspace_file(path);
  const FuzzyAlgebra& a = ws.models.at("counter");
  CHECK(a.size() == 2);
  REQUIRE(ws.assigns.size() == 1);
  CHECK(ws.assigns[0].at("x") != ws.assigns[0].at("y"));
  CHECK(run("validate " + path).code == 0);
  std::filesystem::remove(path);

  const RunResult none = run(
      "find-countermodel " + kExamples +
      " S \"|- mul(mul(x, y), z) == mul(x, mul(y, z))\" --max-size 2");
  CHECK(none.code == 1);
  CHECK(contains(none.out, "none up to 2"));

  CHECK(run("find-countermodel " + kExamples + " S \"x ==\" --max-size 2")
            .code == 2);
}

TEST_CASE("term-model and free-model serialize their classes") {
  const RunResult r = run("term-model " + kExamples + " G --depth 2");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "closed: yes"));
  CHECK(contains(r.out, "model termmodel"));

  const std::string path = tmp_path("fuzzalg_cli_term.fz");
  spit(path, r.out);
  Workspace ws = parse_workspace_file(path);
  CHECK(ws.models.at("termmodel").size() == 1);
  std::filesystem::remove(path);

  const RunResult fm =
      run("free-model " + kExamples + " S \"a: h, b: top\" --depth 3");
  CHECK(fm.code == 0);
  CHECK(contains(fm.out, "# classes: 702, closed: no"));
  CHECK(contains(fm.out, "# class 13: rep mul(b, mul(b, b)),"
                         " witness mul(b, mul(b, b)), level top, complete"));
  CHECK(contains(fm.out, "frontier"));
  CHECK(contains(fm.out, "# unit: a -> class 0 (rep a, level h)"));

  CHECK(run("free-model " + kExamples + " S \"a: h, b: top\" --depth 3"
            " --budget 10")
            .code == 1);
}

TEST_CASE("classify and eq2th report theory structure") {
  RunResult r = run("classify " + kExamples + " S");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "class: unconditional"));
  r = run("classify " + kExamples + " LI");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "class: type_E"));
  CHECK(contains(r.out, "first axiom not unconditional: 1"));

  r = run("eq2th " + kExamples + " C");
  CHECK(r.code == 0);
  const std::string path = tmp_path("fuzzalg_cli_eq.fz");
  spit(path, r.out);
  Workspace ws = parse_workspace_file(path);
  CHECK(ws.theory("C_laws").axioms.size() == 12);
  std::filesystem::remove(path);

  // generators at bottom level: the unconditional form is also available
  CHECK(run("eq2th " + kExamples + " C --unconditional").code == 0);

  const std::string lifted = tmp_path("fuzzalg_cli_lifted.fz");
  spit(lifted,
       "frame H = chain 2;\nsig S { op mul/2; vars x y; }\n"
       "equation L over H for S { gens { x: 1 } target {"
       " carrier { a } mu { a: 1 } op mul { (a,a) = a; } }"
       " val { x = a } }\n");
  CHECK(run("eq2th " + lifted + " L").code == 0);
  CHECK(run("eq2th " + lifted + " L --unconditional").code == 2);
  std::filesystem::remove(lifted);
}

TEST_CASE("closure reports violations with matching exit codes") {
  RunResult r = run("closure " + kExamples + " --theory S --max-size 2"
                    " --mode epi");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "all closed: yes"));

  r = run("closure " + kExamples + " --theory LI --max-size 2 --mode epi");
  CHECK(r.code == 1);
  CHECK(contains(r.out, "epi images: violated"));
  CHECK(contains(r.out, "violation (epi_image)"));

  r = run("closure " + kExamples + " --theory LI --max-size 2 --mode split");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "all closed: yes"));

  r = run("closure " + kExamples + " --models Z2 --mode epi"
          " --format structured");
  CHECK(r.code == 1);
  CHECK(contains(r.out, "\"all_closed\": false"));

  CHECK(run("closure " + kExamples + " --mode epi").code == 2);
}

TEST_CASE("usage errors exit with the input error code") {
  CHECK(run("").code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("check-model " + kExamples).code == 2);
  CHECK(run("--help").code == 0);
}
