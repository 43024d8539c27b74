#include "cli_app.hpp"

#include "vso/report.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using vso::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name)
        : path(fs::temp_directory_path() / ("vso_cli_" + name))
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& text)
{
    std::ofstream(p) << text;
}

} // namespace

TEST_CASE("bench succeeds and prints a summary row")
{
    const auto r = invoke({"bench", "--function", "F1", "--dim", "3", "--iters", "5", "--runs", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("Algorithm,Function,Dimension") == 0);
    CHECK(r.out.find("vso,F1,3,") != std::string::npos);
    CHECK(r.out.find("mean_error,") != std::string::npos);
}

TEST_CASE("configuration errors exit with 2")
{
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"bench", "--function", "F99"}).code == 2);
    CHECK(invoke({"bench", "--runs", "0", "--iters", "2"}).code == 2);
    CHECK(invoke({"bench", "--algo", "pso"}).code == 2);
    CHECK(invoke({"bench", "--param", "bogus=1", "--iters", "2", "--runs", "1"}).code == 2);
    CHECK(invoke({"bench", "--iters", "0", "--runs", "1"}).code == 2);
    CHECK(invoke({"bench", "--dim", "many"}).code == 2);
    CHECK(invoke({"portfolio"}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
}

TEST_CASE("I/O errors exit with 3")
{
    TempDir tmp("io");
    CHECK(invoke({"portfolio", "--prices", (tmp.path / "missing.csv").string()}).code == 3);
    CHECK(invoke({"rank", "--inputs", (tmp.path / "missing.csv").string()}).code == 3);
    CHECK(invoke({"bench", "--config", (tmp.path / "missing.cfg").string()}).code == 3);
    write(tmp.path / "blocker", "x");
    CHECK(invoke({"bench", "--dim", "2", "--iters", "2", "--runs", "1", "--out", (tmp.path / "blocker" / "out").string()})
              .code == 3);
    write(tmp.path / "bad.csv", "date,A\n2020-01-01,10\n2020-01-02,abc\n");
    CHECK(invoke({"portfolio", "--prices", (tmp.path / "bad.csv").string(), "--iters", "2", "--runs", "1"}).code == 3);
}

TEST_CASE("portfolio run reports the Sharpe ratio")
{
    TempDir tmp("portfolio");
    write(tmp.path / "prices.csv",
          "date,AAA,BBB,CCC\n2020-01-01,10,20,30\n2020-01-02,10.2,19.9,30.3\n2020-01-03,10.5,20.3,30.1\n"
          "2020-01-06,10.4,20.8,30.9\n2020-01-07,10.9,20.6,31.2\n");
    const auto r = invoke({"portfolio", "--prices", (tmp.path / "prices.csv").string(), "--iters", "20", "--runs", "2",
                           "--mode", "longshort", "--out", (tmp.path / "out").string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("vso,portfolio-longshort,3,") != std::string::npos);
    CHECK(r.out.find("best_sharpe_ratio,") != std::string::npos);
    CHECK(fs::exists(tmp.path / "out" / "summary.csv"));
}

TEST_CASE("config file supplies defaults and the command line overrides them")
{
    TempDir tmp("config");
    write(tmp.path / "run.cfg", "function = F9\ndim = 4\niters = 3\nruns = 2\nno-import = true\nseed = 9\n");
    const auto r = invoke({"bench", "--config", (tmp.path / "run.cfg").string(), "--dim", "2", "--out",
                           (tmp.path / "out").string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("vso-no-import,F9,2,") != std::string::npos);
    const auto rows = vso::load_summary(tmp.path / "out" / "summary.json");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].runs == 2);
    CHECK(fs::exists(tmp.path / "out" / "traces" / "vso-no-import_F9_D2_seed10.csv"));
}

TEST_CASE("rank over summary files")
{
    TempDir tmp("rank");
    write(tmp.path / "a.csv", "Algorithm,Function,Dimension,Mean,Std,Best,Worst,Time(s)\n"
                              "A,F1,30,1.00E+00,0,1,1,2.00E+00\nA,F2,30,1.00E+00,0,1,1,2.00E+00\n");
    write(tmp.path / "b.csv", "Algorithm,Function,Dimension,Mean,Std,Best,Worst,Time(s)\n"
                              "B,F1,30,2.00E+00,0,1,1,1.00E+00\nB,F2,30,2.00E+00,0,1,1,1.00E+00\n");
    const auto r = invoke({"rank", "--inputs", (tmp.path / "a.csv").string(), (tmp.path / "b.csv").string()});
    CHECK(r.code == 0);
    CHECK(r.out == "Algorithm,AvgFitnessRank,AvgTimeRank\nA,1,2\nB,2,1\n");

    write(tmp.path / "c.csv", "Algorithm,Function,Dimension,Mean,Std,Best,Worst,Time(s)\nC,F1,30,1,0,1,1,1\n");
    CHECK(invoke({"rank", "--inputs", (tmp.path / "a.csv").string(), (tmp.path / "c.csv").string()}).code == 2);
}

TEST_CASE("help exits cleanly")
{
    const auto r = invoke({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("bench") != std::string::npos);
}
