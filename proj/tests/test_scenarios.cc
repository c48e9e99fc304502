#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <porocouple/config.hh>
#include <porocouple/output.hh>
#include <porocouple/scenario.hh>

#include "testutils.hh"

using namespace Porocouple;
namespace fs = std::filesystem;

namespace {

std::string readFile(const fs::path& path)
{
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

//! fresh empty directory below the system temp directory
fs::path scratchDirectory(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("porocouple-test-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

//! test case 1 configuration text without the given key
std::string testcase1Without(const std::string& key)
{
    std::istringstream in(readFile(Test::sourceDir() + "/scenarios/testcase1.conf"));
    std::string text, line;
    while (std::getline(in, line))
        if (line.rfind(key, 0) != 0)
            text += line + '\n';
    return text;
}

} // end anonymous namespace

TEST_CASE("config parsing")
{
    std::istringstream good("# comment\na.b = 1.5   # trailing\nname = tpfa\nlist = 1 2 3\nflag = true\n");
    const auto c = Config::parse(good);
    CHECK(c.getScalar("a.b") == 1.5);
    CHECK(c.getString("name") == "tpfa");
    CHECK(c.getScalars("list").size() == 3);
    CHECK(c.getBool("flag", false));
    CHECK(c.getScalar("missing", 7.0) == 7.0);
    CHECK_THROWS_AS(c.getScalar("name"), ParameterError);
    CHECK_THROWS_AS(c.getInt("a.b"), ParameterError);

    std::istringstream broken("a = 1\nthis line is broken\n");
    try {
        Config::parse(broken, "broken.conf");
        FAIL("no error for a malformed line");
    }
    catch (const ParameterError& e) {
        CHECK(std::string(e.what()).find("broken.conf:2") != std::string::npos);
    }

    std::istringstream duplicate("a = 1\na = 2\n");
    CHECK_THROWS_AS(Config::parse(duplicate), ParameterError);
}

TEST_CASE("missing permeability is reported by key")
{
    std::istringstream in(testcase1Without("perm.k"));
    const auto config = Config::parse(in);
    try {
        Scenario s(config);
        FAIL("no error for a missing key");
    }
    catch (const MissingKey& e) {
        CHECK(e.key() == "perm.k");
    }
}

TEST_CASE("command line exits with status 2 on a missing key")
{
    const auto dir = scratchDirectory("cli");
    {
        std::ofstream out(dir / "broken.conf");
        out << testcase1Without("perm.k");
    }
    const std::string command = std::string(POROCOUPLE_CLI) + " run " + (dir / "broken.conf").string()
                                + " > " + (dir / "stdout.txt").string() + " 2> " + (dir / "stderr.txt").string();
    const int status = std::system(command.c_str());
    REQUIRE(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 2);
    CHECK(readFile(dir / "stderr.txt").find("perm.k") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("rest state has zero fluxes")
{
    Scenario s(Test::smallChannel(true, {{"bc.left.pressure", "0"}, {"observer.cutline", "0.05 0.02 0.05"}}));
    const auto f = s.fluxes(s.initialSolution(), 0.0);
    CHECK(f.gammaIn == 0.0);
    CHECK(f.gammaOut == 0.0);
    CHECK(f.gammaTop == 0.0);
    CHECK(f.constriction == 0.0);
    CHECK(f.transfer == 0.0);
}

TEST_CASE("cut line must follow free-flow faces")
{
    CHECK_THROWS_AS(Scenario(Test::smallChannel(true, {{"observer.cutline", "0.055 0.02 0.05"}})), ParameterError);
}

TEST_CASE("free-flow cells must be squares")
{
    CHECK_THROWS_AS(Scenario(Test::smallChannel(false, {{"freeflow.ny", "4"}})), ParameterError);
}

TEST_CASE("VTK output of the rest state")
{
    const auto dir = scratchDirectory("vtk");
    Scenario s(Test::smallChannel(true, {{"bc.left.pressure", "0"}}));
    s.writeFields(dir.string(), 0, s.initialSolution());
    const auto ff = readFile(dir / "freeflow-00000.vtk");
    const auto pm = readFile(dir / "porousmedium-00000.vtk");
    CHECK(ff.rfind("# vtk DataFile Version 2.0\n", 0) == 0);
    CHECK(pm.rfind("# vtk DataFile Version 2.0\n", 0) == 0);
    CHECK(ff.find("CELL_DATA 50") == std::string::npos); // the porous box is cut out
    CHECK(ff.find("CELL_DATA 46") != std::string::npos);
    CHECK(pm.find("VECTORS velocity double") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("flux time series is reproducible")
{
    const auto dir = scratchDirectory("repro");
    const auto config = Test::smallChannel(true, {{"darcy.scheme", "mpfa"}, {"perm.alpha_degrees", "30"}});
    Scenario(config).run((dir / "a").string());
    Scenario(config).run((dir / "b").string());
    const auto a = readFile(dir / "a" / "fluxes.csv");
    CHECK(a.rfind("time,gamma_in,gamma_out,gamma_top,constriction\n", 0) == 0);
    CHECK(a == readFile(dir / "b" / "fluxes.csv"));
    CHECK(fs::exists(dir / "a" / "summary.json"));
    fs::remove_all(dir);
}

TEST_CASE("test case 1 interface fluxes")
{
    Config config = Config::fromFile(Test::sourceDir() + "/scenarios/testcase1.conf");
    config.set("perm.beta", "100");
    Scenario s(config);
    const auto r = s.run();
    REQUIRE(r.loop.stationary);
    const auto& f = r.final;
    // closed bottom: the interface segments balance
    CHECK(std::abs(f.gammaIn + f.gammaOut + f.gammaTop) <= 1e-6*std::abs(f.gammaIn));
    CHECK(std::abs(f.boundaryBalance) <= 1e-6*std::abs(f.constriction));
    CHECK(f.gammaIn > 0.0);
    CHECK(f.gammaOut < 0.0);
    // with the high permeability along y only little leaves through the top
    CHECK(std::abs(f.gammaTop) < 0.1*std::abs(f.gammaIn));
    MESSAGE("gamma top/in = " << f.gammaTop/f.gammaIn);
}

TEST_CASE("test case 2 output times")
{
    const auto dir = scratchDirectory("tc2");
    Config config = Config::fromFile(Test::sourceDir() + "/scenarios/testcase2.conf");
    config.set("time.t_end", "40");
    config.set("output.times", "20 40");
    Scenario s(config);
    const auto r = s.run(dir.string());
    CHECK(r.loop.time == doctest::Approx(40.0));
    bool hit20 = false;
    for (const auto& step : r.loop.steps)
        if (step.outputTime && std::abs(step.time - 20.0) < 1e-9)
            hit20 = true;
    CHECK(hit20);
    CHECK(fs::exists(dir / "freeflow-00000.vtk"));
    CHECK(fs::exists(dir / "freeflow-00001.vtk"));
    CHECK(fs::exists(dir / "freeflow-00002.vtk"));
    CHECK_FALSE(fs::exists(dir / "freeflow-00003.vtk"));
    fs::remove_all(dir);
}
