// Acceptance checks, one line per criterion. Usage: acceptance [criterion numbers...]

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <porocouple/config.hh>
#include <porocouple/output.hh>
#include <porocouple/scenario.hh>
#include <porocouple/verify.hh>

using namespace Porocouple;

namespace {

struct Outcome
{
    bool passed = false;
    std::string detail;
};

double seconds(std::chrono::steady_clock::time_point start)
{ return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); }

std::string scenarioPath(const std::string& name)
{ return std::string(POROCOUPLE_SOURCE_DIR) + "/scenarios/" + name + ".conf"; }

std::string num(Scalar v)
{
    std::ostringstream s;
    s.precision(4);
    s << v;
    return s.str();
}

Scalar relDiff(Scalar a, Scalar b)
{
    const Scalar scale = std::max(std::abs(a), std::abs(b));
    return scale > 0.0 ? std::abs(a - b)/scale : 0.0;
}

struct ScenarioRun
{
    RunResult result;
    double seconds = 0.0;
    Scalar absTol = 0.0;
};

ScenarioRun runScenario(const std::string& name, const std::map<std::string, std::string>& overrides)
{
    auto config = Config::fromFile(scenarioPath(name));
    for (const auto& [key, value] : overrides)
        config.set(key, value);
    const auto start = std::chrono::steady_clock::now();
    Scenario scenario(config);
    ScenarioRun run;
    run.result = scenario.run();
    run.seconds = seconds(start);
    run.absTol = scenario.newtonConfig().absTol;
    return run;
}

std::string fluxText(const FluxSummary& s)
{
    return "in " + num(s.gammaIn) + ", out " + num(s.gammaOut) + ", top " + num(s.gammaTop);
}

Outcome patchTest()
{
    const auto start = std::chrono::steady_clock::now();
    const auto r = runPatchTest();
    const double t = seconds(start);
    const Scalar mpfa = std::max(r.mpfaPressureError, r.mpfaFluxError);
    return {mpfa <= 1e-10 && r.tpfaPressureError >= 1e-3 && t < 5.0,
            std::to_string(r.numCells) + " triangles: MPFA error " + num(mpfa) + " (<= 1e-10), TPFA error "
            + num(r.tpfaPressureError) + " (>= 1e-3), " + num(t) + " s"};
}

Outcome matrixEquivalence()
{
    const auto start = std::chrono::steady_clock::now();
    const Scalar d = tpfaMpfaMatrixDifference(10, 8, 10.0);
    const double t = seconds(start);
    return {d <= 1e-12 && t < 1.0, "max relative entry difference " + num(d) + " (<= 1e-12), " + num(t) + " s"};
}

Outcome tpfaRotationSign()
{
    const auto plus = runScenario("testcase1", {{"perm.alpha_degrees", "45"}});
    const auto minus = runScenario("testcase1", {{"perm.alpha_degrees", "-45"}});
    const auto& a = plus.result.final;
    const auto& b = minus.result.final;
    const Scalar d = std::max({relDiff(a.gammaIn, b.gammaIn), relDiff(a.gammaOut, b.gammaOut),
                               relDiff(a.gammaTop, b.gammaTop), relDiff(a.constriction, b.constriction)});
    const double t = plus.seconds + minus.seconds;
    return {d <= 1e-12 && plus.result.loop.stationary && minus.result.loop.stationary && t < 120.0,
            "max relative difference " + num(d) + " (<= 1e-12), " + fluxText(a) + ", " + num(t) + " s"};
}

Outcome testCase1SchemesAgree()
{
    const auto tpfa = runScenario("testcase1", {{"darcy.scheme", "tpfa"}});
    const auto mpfa = runScenario("testcase1", {{"darcy.scheme", "mpfa"}});
    const auto& a = tpfa.result.final;
    const auto& b = mpfa.result.final;
    const Scalar dIn = relDiff(a.gammaIn, b.gammaIn);
    const Scalar dOut = relDiff(a.gammaOut, b.gammaOut);
    const Scalar dTop = relDiff(a.gammaTop, b.gammaTop);
    return {std::max({dIn, dOut, dTop}) <= 0.05 && tpfa.result.loop.stationary && mpfa.result.loop.stationary,
            "relative differences in " + num(dIn) + ", out " + num(dOut) + ", top " + num(dTop)
            + " (<= 0.05); TPFA " + fluxText(a) + "; MPFA " + fluxText(b)};
}

Outcome topFluxIncreasesWithAngle()
{
    std::vector<Scalar> top;
    std::string text;
    bool stationary = true;
    for (const char* angle : {"0", "30", "45"})
    {
        const auto run = runScenario("testcase1", {{"darcy.scheme", "mpfa"}, {"perm.beta", "100"},
                                                   {"perm.alpha_degrees", angle}});
        top.push_back(std::abs(run.result.final.gammaTop));
        stationary = stationary && run.result.loop.stationary;
        text += std::string(text.empty() ? "" : ", ") + angle + " deg: " + num(top.back());
    }
    return {stationary && top[0] < top[1] && top[1] < top[2], "|gamma_top| " + text + " kg/s"};
}

Outcome interfaceConservation()
{
    struct Case { std::string name; std::map<std::string, std::string> overrides; bool steady; };
    const std::vector<Case> cases{
        {"testcase1", {{"darcy.scheme", "tpfa"}}, true},
        {"testcase1", {{"darcy.scheme", "mpfa"}, {"perm.alpha_degrees", "30"}}, true},
        {"testcase3", {{"darcy.scheme", "tpfa"}}, true},
        {"testcase3", {{"darcy.scheme", "mpfa"}, {"perm.alpha_degrees", "-45"}}, true},
        {"testcase2", {{"darcy.scheme", "mpfa"}, {"time.t_end", "20"}, {"output.times", ""}}, false}};
    bool ok = true;
    Scalar mismatch = 0.0, balance = 0.0, segments = 0.0;
    for (const auto& c : cases)
    {
        const auto run = runScenario(c.name, c.overrides);
        mismatch = std::max(mismatch, run.result.maxInterfaceMismatch);
        ok = ok && run.result.maxInterfaceMismatch <= 1e-14;
        if (c.steady)
        {
            const auto& f = run.result.final;
            const Scalar b = std::abs(f.boundaryBalance)/run.absTol;
            const Scalar s = std::abs(f.gammaIn + f.gammaOut + f.gammaTop)/run.absTol;
            balance = std::max(balance, b);
            segments = std::max(segments, s);
            ok = ok && run.result.loop.stationary && b <= 10.0 && s <= 10.0;
        }
    }
    return {ok, "max per-face mismatch " + num(mismatch) + " (<= 1e-14) over all accepted steps of "
                + std::to_string(cases.size()) + " runs; steady boundary balance " + num(balance)
                + " abs_tol, segment sum " + num(segments) + " abs_tol (<= 10)"};
}

Outcome poiseuille()
{
    const auto start = std::chrono::steady_clock::now();
    const auto r = runPoiseuille();
    const double t = seconds(start);
    return {r.maxRelativeError <= 1e-9 && t < 10.0,
            "max relative face velocity error " + num(r.maxRelativeError) + " (<= 1e-9), cut-line flux error "
            + num(r.fluxRelativeError) + ", " + num(t) + " s"};
}

Outcome oracle()
{
    bool ok = true;
    std::string text;
    for (const auto& c : runOracleComparison())
    {
        const Scalar e = std::max(c.pressureError, c.fluxError);
        ok = ok && e <= 1e-12 && c.cells <= 500;
        text += (text.empty() ? "" : "; ") + c.mesh + " (" + std::to_string(c.cells) + " cells) " + num(e);
    }
    return {ok, text + " (<= 1e-12)"};
}

std::map<std::string, ScenarioRun> testCase2Runs()
{
    std::map<std::string, ScenarioRun> runs;
    for (const char* scheme : {"tpfa", "mpfa"})
        runs[scheme] = runScenario("testcase2", {{"darcy.scheme", scheme}, {"perm.alpha_degrees", "0"}});
    return runs;
}

Outcome testCase2Constriction()
{
    auto runs = testCase2Runs();
    const auto& a = runs["tpfa"];
    const auto& b = runs["mpfa"];
    const Scalar d = relDiff(a.result.final.constriction, b.result.final.constriction);
    const double slowest = std::max(a.seconds, b.seconds);
    return {d <= 0.05 && slowest <= 900.0 && a.result.loop.time >= 1000.0 - 1e-9,
            "constriction at t = " + num(a.result.loop.time) + " s: TPFA " + num(a.result.final.constriction)
            + ", MPFA " + num(b.result.final.constriction) + ", relative difference " + num(d)
            + " (<= 0.05); run times " + num(a.seconds) + " s, " + num(b.seconds) + " s (<= 900)"};
}

Outcome testCase2BackFlux()
{
    auto runs = testCase2Runs();
    bool ok = true;
    std::string text;
    for (const auto& [scheme, run] : runs)
    {
        const auto& f = run.result.final;
        const Scalar ratio = std::abs(f.gammaOut)/std::abs(f.gammaIn);
        ok = ok && ratio <= 0.02;
        text += (text.empty() ? "" : "; ") + scheme + " |out|/|in| = " + num(ratio) + " (" + fluxText(f) + ")";
    }
    return {ok, text + " (<= 0.02)"};
}

// largest segment difference relative to the largest segment flux
Scalar segmentDifference(const FluxSummary& a, const FluxSummary& b)
{
    const Scalar scale = std::max({std::abs(a.gammaIn), std::abs(a.gammaOut), std::abs(a.gammaTop),
                                   std::abs(b.gammaIn), std::abs(b.gammaOut), std::abs(b.gammaTop)});
    const Scalar diff = std::max({std::abs(a.gammaIn - b.gammaIn), std::abs(a.gammaOut - b.gammaOut),
                                  std::abs(a.gammaTop - b.gammaTop)});
    return scale > 0.0 ? diff/scale : 0.0;
}

Outcome triangulatedBlock()
{
    std::map<std::string, FluxSummary> f;
    bool stationary = true;
    for (const char* scheme : {"tpfa", "mpfa"})
        for (const char* angle : {"45", "-45"})
        {
            const auto run = runScenario("testcase3", {{"darcy.scheme", scheme}, {"perm.alpha_degrees", angle}});
            f[std::string(scheme) + angle] = run.result.final;
            stationary = stationary && run.result.loop.stationary;
        }
    const Scalar schemesPlus = segmentDifference(f["mpfa45"], f["tpfa45"]);
    const Scalar schemesMinus = segmentDifference(f["mpfa-45"], f["tpfa-45"]);
    const Scalar mpfaAngles = segmentDifference(f["mpfa45"], f["mpfa-45"]);
    const Scalar tpfaAngles = segmentDifference(f["tpfa45"], f["tpfa-45"]);
    const bool ok = stationary && schemesPlus >= 0.1 && schemesMinus >= 0.1 && mpfaAngles >= 0.01 && tpfaAngles <= 1e-12;
    return {ok, "MPFA +45 " + fluxText(f["mpfa45"]) + "; MPFA -45 " + fluxText(f["mpfa-45"])
                + "; TPFA +-45 " + fluxText(f["tpfa45"])
                + "; scheme differences " + num(schemesPlus) + ", " + num(schemesMinus)
                + " (>= 0.1); MPFA angle difference " + num(mpfaAngles) + " (>= 0.01); TPFA angle difference "
                + num(tpfaAngles) + " (<= 1e-12); total inflow MPFA " + num(f["mpfa45"].transfer) + ", "
                + num(f["mpfa-45"].transfer) + ", TPFA " + num(f["tpfa45"].transfer)};
}

Outcome newtonAndEuler()
{
    const int it = linearDarcyNewtonIterations(1e-3);
    const auto euler = runEulerOrderStudy();
    bool orders = true;
    std::string text;
    for (auto o : euler.orders)
    {
        orders = orders && o >= 0.9 && o <= 1.1;
        text += (text.empty() ? "" : " ") + num(o);
    }
    return {it == 1 && orders, "linear Darcy Newton iterations " + std::to_string(it)
                               + " (== 1); implicit Euler orders " + text + " (in [0.9, 1.1])"};
}

} // end anonymous namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"MPFA patch test exact, TPFA inconsistent", patchTest},
        {"TPFA and MPFA matrices equal on Cartesian grid", matrixEquivalence},
        {"TPFA fluxes invariant under alpha -> -alpha", tpfaRotationSign},
        {"test case 1, alpha 0: MPFA and TPFA fluxes within 5%", testCase1SchemesAgree},
        {"test case 1, MPFA, beta 100: |gamma_top| increasing in alpha", topFluxIncreasesWithAngle},
        {"interface mass conservation", interfaceConservation},
        {"Poiseuille profile", poiseuille},
        {"sparse MPFA equals dense oracle", oracle},
        {"test case 2 constriction flux, TPFA vs MPFA", testCase2Constriction},
        {"test case 2, no flux over the obstacle's back", testCase2BackFlux},
        {"triangulated block: scheme and angle sensitivity", triangulatedBlock},
        {"Newton on linear problem, implicit Euler order", newtonAndEuler}};

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i)
    {
        const int n = std::atoi(argv[i]);
        if (n < 1 || n > static_cast<int>(criteria.size()))
        {
            std::cerr << "unknown criterion " << argv[i] << '\n';
            return 2;
        }
        selected.push_back(n);
    }
    if (selected.empty())
        for (int n = 1; n <= static_cast<int>(criteria.size()); ++n)
            selected.push_back(n);

    int failures = 0;
    for (int n : selected)
    {
        const auto& [name, check] = criteria[n - 1];
        Outcome outcome;
        try {
            outcome = check();
        }
        catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        std::cout << "criterion " << n << ": " << (outcome.passed ? "PASS" : "FAIL") << " - " << name
                  << " [" << outcome.detail << "]" << std::endl;
        if (!outcome.passed)
            ++failures;
    }
    return failures == 0 ? 0 : 1;
}
