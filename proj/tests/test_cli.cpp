// Drives the installed binary end to end: exit codes, artifact files, and
// byte-level reproducibility.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "matmoment/io.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_binary;
fs::path g_dir;

int run(const std::string& args) {
  const std::string cmd = g_binary + " " + args + " >" + (g_dir / "out.txt").string() +
                          " 2>" + (g_dir / "err.txt").string();
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) { return matmoment::read_text_file(p.string()); }

}  // namespace

TEST_CASE("random-instance is reproducible and well formed") {
  const std::string f1 = (g_dir / "a.json").string();
  const std::string f2 = (g_dir / "b.json").string();
  CHECK(run("random-instance --kind trigonometric -p 2 -n 2 --seed 9 --output " + f1) ==
        0);
  CHECK(run("random-instance --kind trigonometric -p 2 -n 2 --seed 9 --output " + f2) ==
        0);
  CHECK(slurp(f1) == slurp(f2));
  auto mm = matmoment::load_moments(f1);
  CHECK(mm.dims.p == 2);
  CHECK(mm.dims.n == 2);

  const std::string f3 = (g_dir / "c.json").string();
  CHECK(run("random-instance --kind hamburger -p 1 -n 2 --seed 4 --output " + f3) == 0);
  CHECK(matmoment::load_moments(f3).kind == matmoment::MomentKind::Hamburger);
}

TEST_CASE("solve writes artifacts for the unit instance") {
  const std::string input = (g_dir / "unit.json").string();
  matmoment::write_text_file(
      input,
      "{\"kind\":\"trigonometric\",\"p\":1,\"n\":1,"
      "\"moments\":[[[[1,0]]],[[[0,0]]]]}\n");
  const std::string prefix = (g_dir / "solve").string();
  CHECK(run("solve --input " + input + " --output " + prefix + " --grid 16") == 0);
  CHECK(fs::exists(prefix + "_coefficients.json"));
  CHECK(fs::exists(prefix + "_density.csv"));
  // The canonical density of the unit instance is identically one.
  const std::string csv = slurp(prefix + "_density.csv");
  CHECK(csv.find(",1,") != std::string::npos);
}

TEST_CASE("input and precondition failures map to exit codes") {
  const std::string bad = (g_dir / "bad.json").string();
  matmoment::write_text_file(bad, "{this is not json");
  CHECK(run("solve --input " + bad) == 1);
  CHECK(run("verify --input " + (g_dir / "does_not_exist.json").string()) == 2);

  // Singular moment matrix: a math precondition failure.
  const std::string sing = (g_dir / "singular.json").string();
  matmoment::write_text_file(
      sing,
      "{\"kind\":\"trigonometric\",\"p\":1,\"n\":1,"
      "\"moments\":[[[[1,0]]],[[[1,0]]]]}\n");
  CHECK(run("solve --input " + sing) == 2);
}

TEST_CASE("verify passes on structured instances and flags perturbations") {
  const std::string input = (g_dir / "t.json").string();
  REQUIRE(run("random-instance --kind trigonometric -p 2 -n 2 --seed 7 --output " +
              input) == 0);
  const std::string report = (g_dir / "report.json").string();
  CHECK(run("verify --input " + input + " --seed 3 --output " + report) == 0);
  CHECK(slurp(report).find("\"pass\": true") != std::string::npos);

  CHECK(run("verify --input " + input + " --seed 3 --perturb") == 4);

  const std::string hinput = (g_dir / "h.json").string();
  REQUIRE(run("random-instance --kind hamburger -p 2 -n 2 --seed 8 --output " +
              hinput) == 0);
  CHECK(run("verify --input " + hinput + " --seed 5") == 0);
}

TEST_CASE("sample-solutions and entropy commands") {
  const std::string input = (g_dir / "unit2.json").string();
  matmoment::write_text_file(
      input,
      "{\"kind\":\"trigonometric\",\"p\":1,\"n\":1,"
      "\"moments\":[[[[1,0]]],[[[0,0]]]]}\n");
  const std::string prefix = (g_dir / "sol").string();
  CHECK(run("sample-solutions --input " + input + " --output " + prefix +
            " --grid 16 --schur {\\\"type\\\":\\\"zero\\\"} "
            "--schur {\\\"type\\\":\\\"constant\\\",\\\"sigma_max\\\":0.5}") == 0);
  CHECK(fs::exists(prefix + "_s0.csv"));
  CHECK(fs::exists(prefix + "_s1.csv"));

  CHECK(run("entropy --input " + input + " --omega 0.3") == 0);
  const std::string out = slurp(g_dir / "out.txt");
  CHECK(out.find("equality") != std::string::npos);
}

int main(int argc, char** argv) {
  doctest::Context context;
  context.applyCommandLine(argc, argv);
  if (const char* env = std::getenv("MATMOMENT_CLI")) g_binary = env;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("-", 0) != 0) g_binary = arg;
  }
  if (g_binary.empty()) {
    std::fprintf(stderr, "usage: test_cli <path-to-binary>\n");
    return 1;
  }
  g_dir = fs::temp_directory_path() / "matmoment_cli_test";
  fs::create_directories(g_dir);
  const int rc = context.run();
  fs::remove_all(g_dir);
  return rc;
}
