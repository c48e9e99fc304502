#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include <porocouple/scenario.hh>
#include <porocouple/solver.hh>
#include <porocouple/verify.hh>

#include "testutils.hh"

using namespace Porocouple;

namespace {

const Scalar inf = std::numeric_limits<Scalar>::infinity();

SparseMatrix fromDense(const Eigen::MatrixXd& A)
{ return A.sparseView(); }

/*!
 * \brief Scalar implicit Euler problem du/dt = -atan(u - 5) with u(0) = 0.
 *
 * Newton on the atan part diverges from far away, so large time steps fail
 * without line search while small ones converge.
 */
class AtanProblem : public ResidualFunction
{
public:
    std::size_t size() const override { return 1; }
    Scalar residual(Index, const StateView& u) const override
    {
        const Scalar x = u[0];
        return (std::isfinite(dt_) ? (x - old_)/dt_ : 0.0) + std::atan(x - 5.0);
    }
    void prepareStep(Scalar dt, const SolutionVector& old) override { dt_ = dt; old_ = old[0]; }

private:
    Scalar dt_ = 1.0;
    Scalar old_ = 0.0;
};

} // end anonymous namespace

TEST_CASE("linear solver")
{
    const Eigen::VectorXd b = Eigen::Vector3d(1.0, -2.0, 3.0);
    CHECK((solveLinearSystem(fromDense(Eigen::Matrix3d::Identity()), b) - b).norm() == 0.0);

    Eigen::Matrix3d poisson;
    poisson << 2, -1, 0, -1, 2, -1, 0, -1, 2;
    const Eigen::VectorXd x = solveLinearSystem(fromDense(poisson), Eigen::Vector3d(1.0, 0.0, 1.0));
    CHECK((x - Eigen::Vector3d::Ones()).norm() < 1e-14);

    Eigen::Matrix3d singular;
    singular << 1, 2, 3, 1, 2, 3, 0, 1, 1;
    CHECK_THROWS_AS(solveLinearSystem(fromDense(singular), Eigen::Vector3d(1.0, 1.0, 0.0)), NumericalProblem);
}

TEST_CASE("finite-difference Jacobian of a linear Darcy problem")
{
    const auto mesh = meshFromTriangles(structuredTriangulation(Vec2(0, 0), Vec2(1, 1), 4, 4, 0.25, 5),
                                        [](const Vec2&, const Vec2&) { return BoundaryTag::pressure; });
    const PermeabilityField K(mesh.numCells(), rotatedPermeability(1.0, 10.0, 0.4));
    const auto table = buildMpfaTable(mesh, K, 0.5, Vec2::Zero());
    const auto fluid = FluidModel::constant(1.0, 1.0);
    CoupledModel model(fluid, Vec2::Zero(), 0.0);
    DarcyBoundaryData bc;
    bc.pressure = [](const Vec2& x) { return x.x() + 2.0*x.y(); };
    model.setPorousMedium(mesh, K, table, bc);
    model.finalize();
    SolutionVector u = model.initialSolution(1.0);
    model.prepareStep(inf, u);

    JacobianAssembler assembler(model);
    assembler.buildPattern(u);
    Eigen::VectorXd r;
    assembler.residual(u, r);
    const Eigen::MatrixXd J = assembler.jacobian(u, r, 1e-8);
    const Eigen::MatrixXd A = assembleDarcyMatrix(table, mesh.numCells());
    CHECK((J - A).lpNorm<Eigen::Infinity>() <= 1e-6*A.lpNorm<Eigen::Infinity>());
}

TEST_CASE("Jacobian rows of Dirichlet velocity dofs are identity rows")
{
    Scenario s(Test::smallChannel(true));
    auto& model = s.model();
    const SolutionVector u = s.initialSolution();
    model.prepareStep(1.0, u);
    JacobianAssembler assembler(model);
    assembler.buildPattern(u);
    Eigen::VectorXd r;
    assembler.residual(u, r);
    const SparseMatrix J = assembler.jacobian(u, r, 1e-8);
    int checked = 0;
    for (Index f = 0; f < s.freeFlowMesh().numFaces(); ++f)
    {
        if (!model.freeFlow()->dirichletFace(f))
            continue;
        const Index row = model.layout().ffVelocity(f);
        for (Index col = 0; col < model.size(); ++col)
            CHECK(J.coeff(row, col) == doctest::Approx(col == row ? 1.0 : 0.0).scale(1.0).epsilon(1e-12));
        ++checked;
        if (checked == 3)
            break;
    }
    CHECK(checked == 3);
}

TEST_CASE("Jacobian against a directional finite difference")
{
    Scenario s(Test::smallChannel(true, {{"darcy.scheme", "mpfa"}}));
    auto result = s.run();
    auto& model = s.model();
    const SolutionVector& u = result.solution;
    model.prepareStep(10.0, u);

    JacobianAssembler assembler(model);
    assembler.buildPattern(u);
    Eigen::VectorXd r, rw;
    assembler.residual(u, r);
    const SparseMatrix J = assembler.jacobian(u, r, 1e-8);

    std::mt19937 gen(42);
    std::uniform_real_distribution<Scalar> dist(-1.0, 1.0);
    Eigen::VectorXd w(u.size());
    for (Index i = 0; i < Index(w.size()); ++i)
        w[i] = dist(gen)*(model.layout().block(i) == DofLayout::Block::ffVelocity ? 1e-4 : 1e-6);
    const Scalar delta = 1e-7;
    w /= w.lpNorm<Eigen::Infinity>();
    assembler.residual(u + delta*w, rw);
    const Eigen::VectorXd Jw = J*w;
    CHECK(((rw - r)/delta - Jw).norm() <= 1e-5*Jw.norm());
}

TEST_CASE("Newton converges in one iteration on a linear Darcy problem")
{
    CHECK(linearDarcyNewtonIterations(1e-3) == 1);
}

TEST_CASE("Newton on the coupled constant-fluid problem")
{
    Scenario s(Test::smallChannel(true, {{"fluid.kind", "constant"},
                                         {"fluid.reference_density", "1.2"}, {"fluid.viscosity", "1.8e-5"},
                                         {"darcy.scheme", "mpfa"}}));
    auto& model = s.model();
    SolutionVector u = s.initialSolution();
    model.prepareStep(inf, u);
    JacobianAssembler assembler(model);
    NewtonConfig config;
    config.absTol = 1e-18;
    const auto result = newtonSolve(assembler, u, config);
    CHECK(result.iterations >= 1);
    CHECK(result.iterations <= 5);
    CHECK(result.residualHistory.back() <= std::max(config.absTol, config.relTol*result.residualHistory.front()));
}

TEST_CASE("negative pressure is reported by the fluid model")
{
    const auto mesh = buildCartesianMesh(Vec2(0, 0), Vec2(1, 1), 2, 2,
                                         [](const Vec2&, const Vec2&) { return BoundaryTag::wall; });
    const PermeabilityField K(mesh.numCells(), Tensor::Identity());
    const auto table = buildTpfaTable(mesh, K, Vec2::Zero());
    const auto air = FluidModel::idealGasAir();
    CoupledModel model(air, Vec2::Zero(), 0.0);
    model.setPorousMedium(mesh, K, table, DarcyBoundaryData{});
    model.finalize();
    SolutionVector u = model.initialSolution(-1.0);
    const SolutionVector old = model.initialSolution(1e5);
    model.prepareStep(1.0, old);
    JacobianAssembler assembler(model);
    CHECK_THROWS_AS(newtonSolve(assembler, u, NewtonConfig{}), NumericalProblem);
}

TEST_CASE("time loop with zero end time returns the initial state")
{
    AtanProblem problem;
    SolutionVector u = SolutionVector::Constant(1, 0.25);
    TimeLoopConfig config;
    config.tEnd = 0.0;
    const auto result = runTimeLoop(problem, u, config, NewtonConfig{});
    CHECK(result.steps.empty());
    CHECK(result.acceptedSteps == 0);
    CHECK(u[0] == 0.25);
}

TEST_CASE("failed steps are retried with a smaller time step")
{
    AtanProblem problem;
    SolutionVector u = SolutionVector::Zero(1);
    TimeLoopConfig config;
    config.dtInitial = 1e3;
    config.tEnd = 1e3;
    config.stopWhenStationary = false;
    NewtonConfig newton;
    newton.maxIterations = 6;
    newton.maxLineSearchHalvings = 0;
    newton.absTol = 1e-12;
    const auto result = runTimeLoop(problem, u, config, newton);
    CHECK(result.rejectedSteps > 0);
    CHECK(result.time == doctest::Approx(1e3));
    CHECK(u[0] == doctest::Approx(5.0).epsilon(1e-6));

    config.dtMin = 1e2;
    u.setZero();
    CHECK_THROWS_AS(runTimeLoop(problem, u, config, newton), NumericalProblem);
}

TEST_CASE("invalid solver parameters")
{
    TimeLoopConfig t;
    t.growthFactor = 1.0;
    CHECK_THROWS_AS(validate(t), ParameterError);
    NewtonConfig n;
    n.maxIterations = 0;
    CHECK_THROWS_AS(validate(n), ParameterError);
}

TEST_CASE("test case 1 becomes stationary after a few steps")
{
    Config config = Config::fromFile(Test::sourceDir() + "/scenarios/testcase1.conf");
    Scenario s(config);
    const auto result = s.run();
    CHECK(result.loop.stationary);
    CHECK(result.loop.acceptedSteps <= 40);
    MESSAGE("accepted steps: " << result.loop.acceptedSteps);
}
