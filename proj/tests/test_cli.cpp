#include <doctest.h>

#include "cli_runner.hpp"
#include "seds/grid_io.hpp"
#include "seds/metrics.hpp"

namespace fs = std::filesystem;

TEST_CASE("cli: usage errors exit 2") {
  CHECK(cli::run("") == 2);
  CHECK(cli::run("frobnicate") == 2);
  CHECK(cli::run("spot --size 4 --out /tmp/x.csv") == 2);
  CHECK(cli::run("phantom --rows 3") == 2);
  CHECK(cli::run("scan --sample a --spot b --bc const:-1 --out c") == 2);
  CHECK(cli::run("--help") == 0);
}

TEST_CASE("cli: missing input exits 5") {
  const auto dir = cli::fresh_dir("missing");
  CHECK(cli::run("sted --sample " + (dir / "nope.csv").string() + " --spot " + (dir / "nope.csv").string() +
                 " --out " + (dir / "o.csv").string()) == 5);
}

TEST_CASE("cli: pipeline recovers the phantom") {
  const auto dir = cli::fresh_dir("pipeline");
  const auto p = [&](const char* name) { return (dir / name).string(); };
  REQUIRE(cli::run("phantom --rows 12 --cols 10 --seed 7 --out " + p("e.csv")) == 0);
  REQUIRE(cli::run("spot --size 3 --sigma 0.8 --out " + p("spot.csv")) == 0);
  REQUIRE(cli::run("scan --sample " + p("e.csv") + " --spot " + p("spot.csv") + " --bc const:5 --out " +
                   p("s.csv")) == 0);
  REQUIRE(cli::run("solve --scan " + p("s.csv") + " --spot " + p("spot.csv") + " --out " + p("x.csv") +
                   " --reference " + p("e.csv") + " --report " + p("r.txt") + " --export-matrix " +
                   p("a.txt")) == 0);
  const auto e = seds::read_grid_csv(fs::path(p("e.csv"))).grid;
  const auto x = seds::read_grid_csv(fs::path(p("x.csv"))).grid;
  CHECK(seds::mean_abs_diff(e, x) <= 1e-8);
  const auto report = cli::slurp(p("r.txt"));
  CHECK(report.find("method=direct") != std::string::npos);
  CHECK(report.find("mean_abs_diff=") != std::string::npos);
  CHECK(cli::slurp(p("a.txt")).rfind("0 0 ", 0) == 0);

  REQUIRE(cli::run("scan --mode dds --sample " + p("e.csv") + " --spot " + p("spot.csv") + " --out " +
                   p("d.csv")) == 0);
  REQUIRE(cli::run("dds --scan " + p("d.csv") + " --spot " + p("spot.csv") + " --out " + p("y.csv")) == 0);
  CHECK(seds::mean_abs_diff(e, seds::read_grid_csv(fs::path(p("y.csv"))).grid) <= 1e-6);
  CHECK(cli::run("dds --scan " + p("s.csv") + " --spot " + p("spot.csv") + " --out " + p("z.csv")) == 2);
  CHECK(cli::run("solve --scan " + p("d.csv") + " --spot " + p("spot.csv") + " --out " + p("z.csv")) == 2);

  REQUIRE(cli::run("compare --sample " + p("e.csv") + " --spot " + p("spot.csv") + " --report " + p("c.txt")) == 0);
  CHECK(cli::slurp(p("c.txt")).find("dds_footprints=224") != std::string::npos);
}

TEST_CASE("cli: singular systems exit 3") {
  const auto dir = cli::fresh_dir("degenerate");
  CHECK(cli::run("experiment --preset degenerate --out-dir " + dir.string()) == 3);
}

TEST_CASE("cli: iteration cap exits 4") {
  const auto dir = cli::fresh_dir("capped");
  const auto p = [&](const char* name) { return (dir / name).string(); };
  REQUIRE(cli::run("phantom --rows 10 --cols 10 --out " + p("e.csv")) == 0);
  REQUIRE(cli::run("spot --size 5 --sigma 1 --out " + p("spot.csv")) == 0);
  REQUIRE(cli::run("scan --sample " + p("e.csv") + " --spot " + p("spot.csv") + " --out " + p("s.csv")) == 0);
  CHECK(cli::run("solve --method iterative --max-iters 2 --scan " + p("s.csv") + " --spot " + p("spot.csv") +
                 " --out " + p("x.csv")) == 4);
}

TEST_CASE("cli: experiment output is reproducible") {
  const auto a = cli::fresh_dir("rep_a");
  const auto b = cli::fresh_dir("rep_b");
  REQUIRE(cli::run("experiment --preset 1 --out-dir " + a.string()) == 0);
  REQUIRE(cli::run("--threads 3 experiment --preset 1 --out-dir " + b.string()) == 0);
  const auto sa = cli::snapshot(a);
  CHECK(sa.size() >= 6);
  CHECK(sa == cli::snapshot(b));
}
