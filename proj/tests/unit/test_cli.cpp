#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(IRS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("irs_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(Cli, GenRunTune) {
  const fs::path dir = scratch("flow");
  EXPECT_EQ(run("gen --exp 1 --p 6 --T 3 --seed 2 --out " + (dir / "b").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "b" / "manifest.json"));
  EXPECT_EQ(run("gen --exp 2 --p 6 --T 3 --seed 2 --drift directional --out " + (dir / "b2").string()), 0);

  write(dir / "run.json", R"({"methods": ["irs", "kalman"], "stream": {"csv": ")" + (dir / "b").string() +
                              R"("}, "grid": {"lambdas": [0.1, 1], "taus": [1], "k": 3}, "folds": 3, "seeds": [1],
                              "output_dir": ")" + (dir / "out").string() + R"("})");
  EXPECT_EQ(run("run --config " + (dir / "run.json").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "out" / "report.csv"));
  EXPECT_TRUE(fs::exists(dir / "out" / "summary.csv"));

  EXPECT_EQ(run("tune --config " + (dir / "run.json").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "out" / "scores_irs_seed1.csv"));
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("codes");
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("gen --exp 3 --p 5 --T 2 --seed 1 --out x"), 1);
  EXPECT_EQ(run("run --config " + (dir / "missing.json").string()), 1);
  write(dir / "bad.json", R"({"methods": ["irs"], "unknown": true})");
  EXPECT_EQ(run("run --config " + (dir / "bad.json").string()), 1);
  write(dir / "nodata.json", R"({"methods": ["irs"], "stream": {"csv": ")" + (dir / "nowhere").string() + R"("}})");
  EXPECT_EQ(run("run --config " + (dir / "nodata.json").string()), 2);

  // every method fails on two-row epochs split into two folds
  fs::create_directories(dir / "tiny");
  write(dir / "tiny" / "manifest.json", R"({"p": 1, "T": 1, "epochs": ["e.csv"], "truth": null})");
  write(dir / "tiny" / "e.csv", "x_1,y\n1,2\n3,5\n");
  write(dir / "fail.json", R"({"methods": ["kalman"], "stream": {"csv": ")" + (dir / "tiny").string() +
                               R"("}, "fixed": {"lambda": 0.1, "tau": 1}, "folds": 2})");
  EXPECT_EQ(run("run --config " + (dir / "fail.json").string()), 3);
}

TEST(Cli, Features) {
  const fs::path dir = scratch("features");
  write(dir / "tx.csv",
        "Description,Quantity,InvoiceDate,UnitPrice,Country\n"
        "MUG,6,2010-12-01 08:26,2.55,United Kingdom\n"
        "LAMP,2,2010-12-03 13:01,3.39,United Kingdom\n"
        "MUG,1,2011-01-04 19:00,2.55,United Kingdom\n"
        "LAMP,x,2011-01-05 10:00,3.39,United Kingdom\n");
  write(dir / "map.json", R"({"features": {"interactions": true}})");
  EXPECT_EQ(run("features --in " + (dir / "tx.csv").string() + " --map " + (dir / "map.json").string() +
                " --out " + (dir / "out").string()),
            0);
  EXPECT_TRUE(fs::exists(dir / "out" / "epoch_002.csv"));
  write(dir / "badmap.json", R"({"quantity": "Qty"})");
  EXPECT_EQ(run("features --in " + (dir / "tx.csv").string() + " --map " + (dir / "badmap.json").string() +
                " --out " + (dir / "out2").string()),
            2);
}
