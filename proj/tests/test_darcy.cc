#include <doctest.h>

#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include <porocouple/fluxstencils.hh>
#include <porocouple/model.hh>
#include <porocouple/verify.hh>

using namespace Porocouple;

namespace {

const Scalar inf = std::numeric_limits<Scalar>::infinity();

BoundaryTag allPressure(const Vec2&, const Vec2&) { return BoundaryTag::pressure; }

//! Darcy-only model with a constant fluid (rho = 1, mu = 1) unless given
struct DarcySetup
{
    Mesh mesh;
    PermeabilityField K;
    TransmissibilityTable table;
    FluidModel fluid;
    std::unique_ptr<CoupledModel> model;

    DarcySetup(Mesh m, const Tensor& k, DarcyScheme scheme, DarcyBoundaryData bc,
               FluidModel f = FluidModel::constant(1.0, 1.0), Scalar xi = 0.5)
    : mesh(std::move(m)), K(mesh.numCells(), k), table(buildTable(scheme, mesh, K, xi, Vec2::Zero()))
    , fluid(f)
    {
        model = std::make_unique<CoupledModel>(fluid, Vec2::Zero(), 0.0);
        model->setPorousMedium(mesh, K, table, std::move(bc));
        model->finalize();
    }

    Scalar residual(Index cell, const SolutionVector& u) const
    { return model->residual(model->layout().pmPressure(cell), StateView(u)); }
};

Index interiorFace(const Mesh& mesh)
{
    for (Index f = 0; f < mesh.numFaces(); ++f)
        if (!mesh.face(f).boundary())
            return f;
    return invalidIndex;
}

} // end anonymous namespace

TEST_CASE("TPFA transmissibility of unit cells")
{
    const auto mesh = buildCartesianMesh(Vec2(0, 0), Vec2(2, 1), 2, 1, allPressure);
    const PermeabilityField K(2, Tensor::Identity());
    const auto table = buildTpfaTable(mesh, K, Vec2::Zero());
    const Index f = interiorFace(mesh);
    // half transmissibilities t = |s| k / d = 2, harmonic T = 1
    const auto& st = table.flux(f);
    REQUIRE(st.cells.size() == 2);
    for (const auto& [cell, c] : st.cells)
        CHECK(c == doctest::Approx(cell == table.fluxFace(f).cells[0] ? 1.0 : -1.0));
}

TEST_CASE("TPFA uses the normal diagonal entry")
{
    const Scalar k = 1e-6, beta = 10.0, h = 0.1;
    const auto mesh = buildCartesianMesh(Vec2(0, 0), Vec2(2*h, h), 2, 1, allPressure);
    const PermeabilityField K(2, rotatedPermeability(k, beta, 0.0));
    const auto table = buildTpfaTable(mesh, K, Vec2::Zero());
    const auto& st = table.flux(interiorFace(mesh));
    for (const auto& [cell, c] : st.cells)
        CHECK(std::abs(c) == doctest::Approx((k/beta)*h/h));
}

TEST_CASE("fluxes vanish for constant pressure")
{
    const auto mesh = meshFromTriangles(structuredTriangulation(Vec2(0, 0), Vec2(1, 1), 4, 4, 0.25, 2), allPressure);
    const PermeabilityField K(mesh.numCells(), rotatedPermeability(1.0, 10.0, 0.5));
    for (auto scheme : {DarcyScheme::tpfa, DarcyScheme::mpfa})
    {
        const auto table = buildTable(scheme, mesh, K, 0.5, Vec2::Zero());
        for (auto i : table.activeFaces())
        {
            Scalar sum = 0.0, scale = 0.0;
            for (const auto& [cell, c] : table.flux(i).cells) { sum += c; scale += std::abs(c); }
            for (const auto& [face, c] : table.flux(i).dirichlet) { sum += c; scale += std::abs(c); }
            CHECK(std::abs(sum) <= 1e-13*scale);
        }
    }
}

TEST_CASE("MPFA stencils are exact for linear pressure")
{
    const auto mesh = meshFromTriangles(structuredTriangulation(Vec2(0, 0), Vec2(1, 1), 5, 5, 0.3, 9), allPressure);
    const Tensor k = rotatedPermeability(2.0, 10.0, std::numbers::pi/4);
    const PermeabilityField K(mesh.numCells(), k);
    const Vec2 a(1.5, -0.25);
    for (Scalar xi : {0.0, 0.5})
    {
        const auto table = buildMpfaTable(mesh, K, xi, Vec2::Zero());
        for (auto i : table.activeFaces())
        {
            const auto& ff = table.fluxFace(i);
            Scalar F = 0.0;
            for (const auto& [cell, c] : table.flux(i).cells)
                F += c*a.dot(mesh.cell(cell).center);
            for (const auto& [face, c] : table.flux(i).dirichlet)
                F += c*a.dot(table.fluxFace(face).point);
            const Scalar exact = -ff.measure*ff.normal.dot(k*a);
            CHECK(F == doctest::Approx(exact).epsilon(1e-11).scale(1.0));
        }
    }
}

TEST_CASE("MPFA with xi = 0 reduces to TPFA for diagonal tensors on Cartesian grids")
{
    CHECK(tpfaMpfaMatrixDifference(4, 3, 7.0) <= 1e-13);
}

TEST_CASE("storage and source terms")
{
    const auto mesh = buildCartesianMesh(Vec2(0, 0), Vec2(1, 1), 2, 2,
                                         [](const Vec2&, const Vec2&) { return BoundaryTag::wall; });
    DarcyBoundaryData bc;
    bc.source = [](const Vec2&) { return 4e-6; }; // Q_K = 4e-6 * 0.25
    const auto air = FluidModel::idealGasAir();
    DarcySetup s(mesh, Tensor::Identity()*1e-10, DarcyScheme::tpfa, bc, air);

    SolutionVector u = s.model->initialSolution(1e5);
    s.model->prepareStep(inf, u);
    for (Index c = 0; c < 4; ++c)
        CHECK(s.residual(c, u) == doctest::Approx(-1e-6));

    SolutionVector old = s.model->initialSolution(0.9e5);
    s.model->prepareStep(2.0, old);
    const Scalar storage = 0.25/2.0*(air.density(1e5) - air.density(0.9e5));
    for (Index c = 0; c < 4; ++c)
        CHECK(s.residual(c, u) == doctest::Approx(storage - 1e-6));
}

TEST_CASE("three-cell column with Dirichlet ends")
{
    const auto mesh = buildCartesianMesh(Vec2(0, 0), Vec2(1, 1.0/3), 3, 1,
                                         [](const Vec2& x, const Vec2&) {
                                             return x.x() < 1e-12 || x.x() > 1 - 1e-12 ? BoundaryTag::pressure
                                                                                       : BoundaryTag::wall;
                                         });
    DarcyBoundaryData bc;
    bc.pressure = [](const Vec2& x) { return x.x() < 0.5 ? 2.0 : 1.0; };
    for (auto scheme : {DarcyScheme::tpfa, DarcyScheme::mpfa})
    {
        DarcySetup s(mesh, Tensor::Identity(), scheme, bc);
        SolutionVector u = s.model->initialSolution();
        for (Index c = 0; c < 3; ++c)
            u[s.model->layout().pmPressure(c)] = 2.0 - mesh.cell(c).center.x();
        s.model->prepareStep(inf, u);
        for (Index c = 0; c < 3; ++c)
            CHECK(std::abs(s.residual(c, u)) < 1e-13);
    }
}

TEST_CASE("single cell between two Dirichlet faces")
{
    const auto mesh = buildCartesianMesh(Vec2(0, 0), Vec2(1, 1), 1, 1,
                                         [](const Vec2& x, const Vec2&) {
                                             return std::abs(x.y() - 0.5) < 1e-12 ? BoundaryTag::pressure
                                                                                  : BoundaryTag::wall;
                                         });
    DarcyBoundaryData bc;
    bc.pressure = [](const Vec2& x) { return x.x() < 0.5 ? 2.0 : 1.0; };
    DarcySetup s(mesh, Tensor::Identity(), DarcyScheme::tpfa, bc);
    // p = 1.5 balances the two half transmissibilities 2, the flux through the cell is 1
    SolutionVector u = s.model->initialSolution(1.5);
    s.model->prepareStep(inf, u);
    CHECK(std::abs(s.residual(0, u)) < 1e-15);
    const StateView view(u);
    for (auto i : s.table.cellFluxFaces(0))
    {
        const auto& ff = s.table.fluxFace(i);
        if (ff.dirichlet())
            CHECK(std::abs(s.model->darcy()->flux(i, view)) == doctest::Approx(1.0));
        else
            CHECK(s.model->darcy()->flux(i, view) == 0.0);
    }
}

TEST_CASE("Dirichlet data equal to the cell pressure gives zero fluxes")
{
    const auto mesh = meshFromTriangles(structuredTriangulation(Vec2(0, 0), Vec2(1, 1), 3, 3, 0.2, 4), allPressure);
    DarcyBoundaryData bc;
    bc.pressure = [](const Vec2&) { return 3.0; };
    DarcySetup s(mesh, rotatedPermeability(1.0, 10.0, 0.3), DarcyScheme::mpfa, bc);
    SolutionVector u = s.model->initialSolution(3.0);
    const StateView view(u);
    for (auto i : s.table.activeFaces())
        CHECK(std::abs(s.model->darcy()->flux(i, view)) < 1e-14);
}

TEST_CASE("patch-test residual and velocity reconstruction")
{
    const auto mesh = patchTestMesh();
    const Tensor k = rotatedPermeability(1.0, 10.0, std::numbers::pi/4);
    const Vec2 a(0.7, -1.3);
    DarcyBoundaryData bc;
    bc.pressure = [&](const Vec2& x) { return a.dot(x) + 2.0; };
    const auto fluid = FluidModel::constant(1.0, 2.0);
    DarcySetup s(mesh, k, DarcyScheme::mpfa, bc, fluid);
    SolutionVector u = s.model->initialSolution();
    for (Index c = 0; c < mesh.numCells(); ++c)
        u[s.model->layout().pmPressure(c)] = a.dot(mesh.cell(c).center) + 2.0;
    s.model->prepareStep(inf, u);
    const StateView view(u);
    const Vec2 v = -(1.0/fluid.viscosity(0.0))*(k*a);
    for (Index c = 0; c < mesh.numCells(); ++c)
    {
        CHECK(std::abs(s.residual(c, u)) < 1e-10);
        CHECK((s.model->darcy()->cellVelocity(c, view) - v).norm() <= 1e-9*v.norm());
    }
}

TEST_CASE("walls carry no flux")
{
    const auto mesh = buildCartesianMesh(Vec2(0, 0), Vec2(1, 1), 2, 2,
                                         [](const Vec2&, const Vec2&) { return BoundaryTag::wall; });
    DarcySetup s(mesh, Tensor::Identity(), DarcyScheme::mpfa, DarcyBoundaryData{});
    SolutionVector u = s.model->initialSolution();
    for (Index c = 0; c < 4; ++c)
        u[s.model->layout().pmPressure(c)] = c;
    const StateView view(u);
    for (auto i : s.table.activeFaces())
        if (s.table.fluxFace(i).type == SubFaceType::boundary)
            CHECK(s.model->darcy()->neumannFlux(i, view) == 0.0);
}

TEST_CASE("prescribed normal velocity")
{
    const auto mesh = buildCartesianMesh(Vec2(0, 0), Vec2(1, 1), 1, 1,
                                         [](const Vec2& x, const Vec2&) {
                                             return x.x() < 1e-12 ? BoundaryTag::velocity : BoundaryTag::wall;
                                         });
    DarcyBoundaryData bc;
    bc.normalVelocity = [](const Vec2&) { return -1e-3; }; // inflow
    const auto fluid = FluidModel::constant(1000.0, 1e-3);
    DarcySetup s(mesh, Tensor::Identity()*1e-10, DarcyScheme::tpfa, bc, fluid);
    SolutionVector u = s.model->initialSolution();
    s.model->prepareStep(inf, u);
    // mass inflow rho |s| v = 1 kg/s
    CHECK(s.residual(0, u) == doctest::Approx(-1.0));
}
