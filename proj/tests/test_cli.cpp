#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "rigclust_cli_test";

int run(const std::string& args) {
  const std::string cmd = std::string(RIGCLUST_CLI) + " " + args + " > " + (kDir / "stdout").string() +
                          " 2> " + (kDir / "stderr").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

struct Fixture {
  Fixture() {
    fs::remove_all(kDir);
    fs::create_directories(kDir);
    write(kDir / "small.conf",
          "n = 400\nm = 400\nx_law = pareto(1, 6)\ny_law = pareto(1, 6)\nreplicates = 1\n"
          "seed = 3\nk_max = 12\npmf_k_max = 128\n");
  }
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "usage errors exit 1") {
  CHECK(run("") == 1);
  CHECK(run("nonsense") == 1);
  CHECK(run("theory --no-such-flag") == 1);
  CHECK(run("theory -c " + (kDir / "missing.conf").string()) == 1);
  CHECK(run("--help") == 0);
}

TEST_CASE_FIXTURE(Fixture, "stats") {
  write(kDir / "k4.txt", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  REQUIRE(run("stats " + (kDir / "k4.txt").string()) == 0);
  CHECK(slurp(kDir / "stdout").find("\n3,4,12,12,1,12,12,1\n") != std::string::npos);

  write(kDir / "empty.txt", "");
  CHECK(run("stats " + (kDir / "empty.txt").string()) == 0);
  CHECK(slurp(kDir / "stderr").find("warning") != std::string::npos);

  write(kDir / "bad.txt", "0 1\n1 2 junk\n");
  CHECK(run("stats " + (kDir / "bad.txt").string()) == 2);
  CHECK(slurp(kDir / "stderr").find("line 2") != std::string::npos);
}

TEST_CASE_FIXTURE(Fixture, "theory writes csv and pmfs") {
  const fs::path out = kDir / "theory.csv";
  REQUIRE(run("theory -c " + (kDir / "small.conf").string() + " --out " + out.string() +
              " --dump-pmfs " + (kDir / "pmfs").string()) == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("k,a,b,A_lo,A_hi,B_lo,B_hi,c_pred,C_pred_lo,C_pred_hi\n", 0) == 0);
  CHECK(fs::exists(kDir / "pmfs" / "dstar_1.csv"));
  CHECK(slurp(kDir / "pmfs" / "tau.csv").find("tail_mass,") != std::string::npos);
  // flags override the file
  CHECK(run("theory -c " + (kDir / "small.conf").string() + " --x-law 'pareto(1, 3)'") == 2);
  CHECK(run("theory -c " + (kDir / "small.conf").string() + " --set k_min=1") == 2);
}

TEST_CASE_FIXTURE(Fixture, "simulate and the exported edge list agree") {
  const fs::path out = kDir / "sim";
  REQUIRE(run("simulate -c " + (kDir / "small.conf").string() + " --output-dir " + out.string() +
              " --save-replicates true --export-edges " + (kDir / "edges.txt").string()) == 0);
  CHECK(fs::exists(out / "replicates" / "replicate_0000.csv"));
  REQUIRE(run("stats " + (kDir / "edges.txt").string() + " -o " + (kDir / "stats.csv").string()) == 0);
  CHECK(slurp(kDir / "stats.csv") == slurp(out / "spectrum.csv"));
}

TEST_CASE_FIXTURE(Fixture, "compare and budget abort") {
  const fs::path out = kDir / "cmp";
  REQUIRE(run("compare -c " + (kDir / "small.conf").string() + " --output-dir " + out.string()) == 0);
  CHECK(fs::exists(out / "report.csv"));
  CHECK(fs::exists(out / "report.json"));
  CHECK(fs::exists(out / "timing.json"));
  CHECK(run("compare -c " + (kDir / "small.conf").string() + " --edge-budget 0 --output-dir " +
            out.string()) == 3);
}

TEST_CASE_FIXTURE(Fixture, "fit-delta") {
  write(kDir / "pts.csv", "k,value\n1,2\n2,4\n4,8\n8,16\n");
  REQUIRE(run("fit-delta " + (kDir / "pts.csv").string()) == 0);
  CHECK(slurp(kDir / "stdout").find("\n1,") != std::string::npos);
  write(kDir / "neg.csv", "k,value\n1,2\n2,-4\n4,8\n");
  CHECK(run("fit-delta " + (kDir / "neg.csv").string()) == 2);
  CHECK(run("fit-delta " + (kDir / "pts.csv").string() + " --y missing") == 2);
}
