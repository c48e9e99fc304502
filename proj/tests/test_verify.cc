#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include <porocouple/scenario.hh>
#include <porocouple/solver.hh>
#include <porocouple/verify.hh>

#include "testutils.hh"

using namespace Porocouple;

namespace {

BoundaryTag allPressure(const Vec2&, const Vec2&) { return BoundaryTag::pressure; }

//! stationary velocity dofs of the Poiseuille channel for a given pressure drop
SolutionVector poiseuilleState(Scalar pressureDrop)
{
    Config config = Config::fromFile(Test::sourceDir() + "/scenarios/poiseuille.conf");
    config.set("bc.left.pressure", std::to_string(pressureDrop));
    Scenario s(config);
    SolutionVector u = s.initialSolution();
    s.model().prepareStep(std::numeric_limits<Scalar>::infinity(), u);
    JacobianAssembler assembler(s.model());
    NewtonConfig newton = s.newtonConfig();
    newton.relTol = 1e-12;
    newtonSolve(assembler, u, newton);
    const auto& layout = s.model().layout();
    return u.segment(layout.ffVelocity(0), layout.numFfFaces);
}

} // end anonymous namespace

TEST_CASE("analytic Poiseuille profile")
{
    PoiseuilleCase p;
    CHECK(p.centerlineVelocity() == doctest::Approx(4.340e-4).epsilon(1e-3));
    CHECK(p.velocity(0.0) == 0.0);
    CHECK(p.velocity(p.height) == 0.0);
    PoiseuilleCase zero;
    zero.pressureDrop = 0.0;
    CHECK(zero.centerlineVelocity() == 0.0);
}

TEST_CASE("discrete Poiseuille flow")
{
    const auto r = runPoiseuille();
    CHECK(r.maxRelativeError <= 1e-8);
    CHECK(r.fluxRelativeError <= 1e-8);
    CHECK(r.exactIntegralDeviation < 1e-2);

    CHECK(poiseuilleState(0.0).lpNorm<Eigen::Infinity>() == 0.0);
    const auto v1 = poiseuilleState(1e-6);
    const auto v2 = poiseuilleState(2e-6);
    CHECK((v2 - 2.0*v1).lpNorm<Eigen::Infinity>() <= 1e-8*v2.lpNorm<Eigen::Infinity>());
}

TEST_CASE("dense oracle with constant Dirichlet data")
{
    const auto mesh = patchTestMesh();
    const PermeabilityField K(mesh.numCells(), rotatedPermeability(1.0, 10.0, 0.7));
    const auto constant = [](const Vec2&) { return 4.5; };
    const auto oracle = denseMpfaOracle(mesh, K, 0.5, constant);
    CHECK((oracle.pressure.array() - 4.5).abs().maxCoeff() <= 1e-12);
    for (const auto f : oracle.subFaceFlux)
        if (std::isfinite(f))
            CHECK(std::abs(f) <= 1e-12);
    const auto sparse = solveStationaryDarcy(mesh, K, DarcyScheme::mpfa, 0.5, constant);
    CHECK((sparse.pressure.array() - 4.5).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("sparse MPFA path matches the dense oracle")
{
    const auto comparisons = runOracleComparison();
    REQUIRE(comparisons.size() == 3);
    CHECK(comparisons[0].cells == 25);
    for (const auto& c : comparisons)
    {
        CAPTURE(c.mesh);
        CHECK(c.pressureError <= 1e-12);
        CHECK(c.fluxError <= 1e-10);
    }
}

TEST_CASE("patch test on several refinement levels")
{
    const Tensor k = rotatedPermeability(1.0, 10.0, std::numbers::pi/4);
    const auto linear = [](const Vec2& x) { return 0.7*x.x() - 1.3*x.y() + 2.0; };
    for (std::size_t n : {4, 8, 16})
    {
        CAPTURE(n);
        const auto mesh = meshFromTriangles(structuredTriangulation(Vec2(0, 0), Vec2(1, 1), n, n, 0.3, 13),
                                            allPressure);
        const PermeabilityField K(mesh.numCells(), k);
        const auto s = solveStationaryDarcy(mesh, K, DarcyScheme::mpfa, 0.5, linear);
        Scalar err = 0.0;
        for (Index c = 0; c < mesh.numCells(); ++c)
            err = std::max(err, std::abs(s.pressure[c] - linear(mesh.cell(c).center)));
        CHECK(err <= 1e-10);
    }
    const auto r = runPatchTest();
    CHECK(r.mpfaPressureError <= 1e-10);
    CHECK(r.mpfaFluxError <= 1e-10);
    CHECK(r.tpfaPressureError > 1e-4); // two-point fluxes are inconsistent here
}

TEST_CASE("unknown verification suite")
{
    CHECK_THROWS_AS(runVerification("nonsense"), ParameterError);
}
