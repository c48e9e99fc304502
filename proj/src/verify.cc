#include <porocouple/verify.hh>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include <Eigen/Dense>

#include <porocouple/fluid.hh>
#include <porocouple/model.hh>
#include <porocouple/output.hh>
#include <porocouple/scenario.hh>
#include <porocouple/solver.hh>

namespace Porocouple {

namespace {

const Scalar nan = std::numeric_limits<Scalar>::quiet_NaN();

BoundaryTag allPressure(const Vec2&, const Vec2&) { return BoundaryTag::pressure; }

Scalar maxAbs(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

} // end anonymous namespace

DarcySolution solveStationaryDarcy(const Mesh& mesh, const PermeabilityField& K,
                                   DarcyScheme scheme, Scalar xi,
                                   const ScalarFunction& dirichlet,
                                   const ScalarFunction& source)
{
    const auto fluid = FluidModel::constant(1.0, 1.0);
    const Vec2 g = Vec2::Zero();
    const auto table = buildTable(scheme, mesh, K, xi, g);

    CoupledModel model(fluid, g, 0.0);
    DarcyBoundaryData bc;
    bc.pressure = dirichlet;
    bc.source = source;
    model.setPorousMedium(mesh, K, table, bc);
    model.finalize();
    model.prepareStep(std::numeric_limits<Scalar>::infinity(), model.initialSolution());

    SolutionVector u = model.initialSolution();
    JacobianAssembler assembler(model);
    assembler.buildPattern(u);
    NewtonConfig newton;
    newton.absTol = 1e-300;
    newton.relTol = 1e-13;
    newton.maxIterations = 8;
    const auto result = newtonSolve(assembler, u, newton);

    DarcySolution solution;
    solution.newtonIterations = result.iterations;
    solution.pressure = u.segment(model.layout().pmPressure(0), mesh.numCells());
    solution.flux.assign(table.numFluxFaces(), nan);
    StateView view(u);
    for (auto i : table.activeFaces())
        solution.flux[i] = model.darcy()->flux(i, view);
    return solution;
}

Eigen::SparseMatrix<Scalar> assembleDarcyMatrix(const TransmissibilityTable& table, std::size_t numCells)
{
    std::vector<Eigen::Triplet<Scalar>> entries;
    for (Index c = 0; c < numCells; ++c)
        for (auto i : table.cellFluxFaces(c))
        {
            const Scalar sign = table.fluxFace(i).cells[0] == c ? 1.0 : -1.0;
            for (const auto& [cell, coeff] : table.flux(i).cells)
                entries.emplace_back(c, cell, sign*coeff);
        }
    Eigen::SparseMatrix<Scalar> A(numCells, numCells);
    A.setFromTriplets(entries.begin(), entries.end());
    A.prune(0.0);
    return A;
}

namespace {

Eigen::VectorXd dirichletLoad(const TransmissibilityTable& table, std::size_t numCells,
                              const ScalarFunction& dirichlet)
{
    Eigen::VectorXd b = Eigen::VectorXd::Zero(numCells);
    for (Index c = 0; c < numCells; ++c)
        for (auto i : table.cellFluxFaces(c))
        {
            const Scalar sign = table.fluxFace(i).cells[0] == c ? 1.0 : -1.0;
            for (const auto& [face, coeff] : table.flux(i).dirichlet)
                b[c] += sign*coeff*dirichlet(table.fluxFace(face).point);
        }
    return b;
}

} // end anonymous namespace

Eigen::VectorXd solveDarcyFromTable(const Mesh& mesh, const TransmissibilityTable& table,
                                    const ScalarFunction& dirichlet)
{
    const auto A = assembleDarcyMatrix(table, mesh.numCells());
    const Eigen::VectorXd b = dirichletLoad(table, mesh.numCells(), dirichlet);
    return solveLinearSystem(A, -b);
}

/*
 * The reference implementation works vertex by vertex. Inside a region, the
 * flux of cell K across one of its two sub-faces is
 *   F = sum_j w_j (p_j - p_K),  w = -|s| n^T K D^-1,
 * with D holding the vectors from x_K to the two continuity points as rows.
 * Unknown sub-face pressures follow from flux continuity and are eliminated
 * with a dense fully pivoted LU decomposition.
 */
OracleSolution denseMpfaOracle(const Mesh& mesh, const PermeabilityField& K, Scalar xi,
                               const ScalarFunction& dirichlet)
{
    const Index nc = mesh.numCells();
    // every sub-face flux (out of face.cells[0]) as an affine function a^T p + a0
    std::vector<Eigen::VectorXd> fluxRow(2*mesh.numFaces());
    std::vector<Scalar> fluxConst(2*mesh.numFaces(), 0.0);

    for (Index v = 0; v < mesh.numVertices(); ++v)
    {
        const Vec2& xv = mesh.vertex(v);
        // local sub-faces: global id -> local index
        std::map<Index, int> local;
        std::vector<Index> ids;
        for (auto f : mesh.vertexFaces(v))
        {
            const auto& face = mesh.face(f);
            const int k = face.vertices[0] == v ? 0 : 1;
            local[2*f + k] = static_cast<int>(ids.size());
            ids.push_back(2*f + k);
        }
        const int ns = static_cast<int>(ids.size());
        auto point = [&](Index id) {
            const auto& face = mesh.face(id/2);
            return Vec2(face.center + xi*(xv - face.center));
        };
        auto isDirichlet = [&](Index id) { return mesh.face(id/2).boundary(); };

        // unknown numbering of the interior sub-faces
        std::map<int, int> unknown;
        for (int s = 0; s < ns; ++s)
            if (!isDirichlet(ids[s]))
                unknown[s] = static_cast<int>(unknown.size());
        const int nu = static_cast<int>(unknown.size());

        // local cell numbering
        const auto& cells = mesh.vertexCells(v);
        std::map<Index, int> localCell;
        for (auto c : cells)
            localCell[c] = static_cast<int>(localCell.size());
        const int nlc = static_cast<int>(cells.size());

        // per cell and sub-face: weights with respect to the two sub-face pressures
        struct Half { int sub[2]; Scalar w[2]; };
        std::map<std::pair<int, int>, Half> halves; // (local cell, local sub-face) -> weights
        for (auto c : cells)
        {
            const auto& cell = mesh.cell(c);
            int sub[2];
            int found = 0;
            for (auto f : cell.faces)
            {
                const auto& face = mesh.face(f);
                if (face.vertices[0] == v || face.vertices[1] == v)
                {
                    if (found == 2)
                        throw GridError("oracle: more than two faces at a vertex of one cell");
                    sub[found++] = local.at(2*f + (face.vertices[0] == v ? 0 : 1));
                }
            }
            if (found != 2)
                throw GridError("oracle: cell without two faces at its vertex");
            const Vec2 d0 = point(ids[sub[0]]) - cell.center;
            const Vec2 d1 = point(ids[sub[1]]) - cell.center;
            const Scalar det = d0.x()*d1.y() - d0.y()*d1.x();
            // inverse of D = [d0^T; d1^T] has the columns (d1.y, -d1.x)/det and (-d0.y, d0.x)/det
            Eigen::Matrix2d Dinv;
            Dinv << d1.y()/det, -d0.y()/det,
                   -d1.x()/det,  d0.x()/det;
            for (int j = 0; j < 2; ++j)
            {
                const Index id = ids[sub[j]];
                const auto& face = mesh.face(id/2);
                const Vec2 n = face.cells[0] == c ? face.normal : Vec2(-face.normal);
                const Eigen::RowVector2d w = -0.5*face.measure*n.transpose()*K[c]*Dinv;
                halves[{localCell.at(c), sub[j]}] = Half{{sub[0], sub[1]}, {w(0), w(1)}};
            }
        }

        // continuity: F_K + F_L = 0 for interior sub-faces
        // A x = B p_cells + c, where the constant collects Dirichlet data
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nu, nu);
        Eigen::MatrixXd B = Eigen::MatrixXd::Zero(nu, nlc);
        Eigen::VectorXd c0 = Eigen::VectorXd::Zero(nu);
        auto addHalf = [&](int row, int lc, const Half& h) {
            for (int j = 0; j < 2; ++j)
            {
                const int s = h.sub[j];
                if (unknown.count(s))
                    A(row, unknown.at(s)) += h.w[j];
                else
                    c0[row] -= h.w[j]*dirichlet(point(ids[s]));
                B(row, lc) += h.w[j];
            }
        };
        for (const auto& [s, row] : unknown)
        {
            const auto& face = mesh.face(ids[s]/2);
            for (int side = 0; side < 2; ++side)
            {
                const int lc = localCell.at(face.cells[side]);
                addHalf(row, lc, halves.at({lc, s}));
            }
        }
        Eigen::MatrixXd X = Eigen::MatrixXd::Zero(nu, nlc);
        Eigen::VectorXd x0 = Eigen::VectorXd::Zero(nu);
        if (nu > 0)
        {
            Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
            if (!lu.isInvertible())
                throw NumericalProblem("oracle: singular local system");
            X = lu.solve(B);
            x0 = lu.solve(c0);
        }

        // sub-face fluxes out of face.cells[0]
        for (int s = 0; s < ns; ++s)
        {
            const Index id = ids[s];
            const auto& face = mesh.face(id/2);
            const int lc = localCell.at(face.cells[0]);
            const Half& h = halves.at({lc, s});
            Eigen::VectorXd row = Eigen::VectorXd::Zero(nc);
            Scalar constant = 0.0;
            for (int j = 0; j < 2; ++j)
            {
                const int t = h.sub[j];
                row[face.cells[0]] -= h.w[j];
                if (unknown.count(t))
                {
                    const int u = unknown.at(t);
                    for (int m = 0; m < nlc; ++m)
                        row[cells[m]] += h.w[j]*X(u, m);
                    constant += h.w[j]*x0[u];
                }
                else
                    constant += h.w[j]*dirichlet(point(ids[t]));
            }
            fluxRow[id] = row;
            fluxConst[id] = constant;
        }
    }

    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(nc, nc);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nc);
    for (Index id = 0; id < fluxRow.size(); ++id)
    {
        if (fluxRow[id].size() == 0)
            continue;
        const auto& face = mesh.face(id/2);
        M.row(face.cells[0]) += fluxRow[id].transpose();
        rhs[face.cells[0]] -= fluxConst[id];
        if (!face.boundary())
        {
            M.row(face.cells[1]) -= fluxRow[id].transpose();
            rhs[face.cells[1]] += fluxConst[id];
        }
    }

    OracleSolution solution;
    solution.pressure = M.fullPivLu().solve(rhs);
    solution.subFaceFlux.assign(fluxRow.size(), nan);
    for (Index id = 0; id < fluxRow.size(); ++id)
        if (fluxRow[id].size() > 0)
            solution.subFaceFlux[id] = fluxRow[id].dot(solution.pressure) + fluxConst[id];
    return solution;
}

Mesh patchTestMesh()
{
    const auto data = structuredTriangulation(Vec2(0.0, 0.0), Vec2(1.0, 1.0), 10, 10, 0.3, 7);
    return meshFromTriangles(data, allPressure);
}

Mesh distortedTriangulation(std::size_t n)
{
    auto data = structuredTriangulation(Vec2(0.0, 0.0), Vec2(1.0, 1.0), n, n);
    for (auto& x : data.nodes)
    {
        const Scalar s = 0.06*std::sin(2.0*std::numbers::pi*x.x())*std::sin(2.0*std::numbers::pi*x.y());
        x += Vec2(s, s);
    }
    return meshFromTriangles(data, allPressure);
}

PatchTestResult runPatchTest()
{
    const Mesh mesh = patchTestMesh();
    const Tensor K = rotatedPermeability(1.0, 10.0, std::numbers::pi/4.0);
    const PermeabilityField field(mesh.numCells(), K);
    const Vec2 a(0.7, -1.3);
    const Scalar b = 2.0;
    auto exact = [&](const Vec2& x) { return a.dot(x) + b; };

    PatchTestResult result;
    result.numCells = mesh.numCells();
    Scalar pmax = 0.0;
    for (const auto& c : mesh.cells())
        pmax = std::max(pmax, std::abs(exact(c.center)));

    auto pressureError = [&](const DarcySolution& s) {
        Scalar e = 0.0;
        for (Index c = 0; c < mesh.numCells(); ++c)
            e = std::max(e, std::abs(s.pressure[c] - exact(mesh.cell(c).center)));
        return e/pmax;
    };

    const auto mpfa = solveStationaryDarcy(mesh, field, DarcyScheme::mpfa, 0.5, exact);
    result.mpfaPressureError = pressureError(mpfa);
    // exact sub-face flux -|s| n^T K a
    Scalar fmax = 0.0, ferr = 0.0;
    for (Index id = 0; id < mpfa.flux.size(); ++id)
    {
        if (std::isnan(mpfa.flux[id]))
            continue;
        const auto& face = mesh.face(id/2);
        const Scalar F = -0.5*face.measure*face.normal.dot(K*a);
        fmax = std::max(fmax, std::abs(F));
        ferr = std::max(ferr, std::abs(F - mpfa.flux[id]));
    }
    result.mpfaFluxError = ferr/fmax;

    const auto tpfa = solveStationaryDarcy(mesh, field, DarcyScheme::tpfa, 0.5, exact);
    result.tpfaPressureError = pressureError(tpfa);
    return result;
}

PoiseuilleResult runPoiseuille(std::size_t nx, std::size_t ny)
{
    const PoiseuilleCase pc;
    const Scalar rho = 1.2;
    Config config;
    config.set("domain.length", std::to_string(pc.length));
    config.set("domain.height", formatScientific(pc.height));
    config.set("freeflow.nx", std::to_string(nx));
    config.set("freeflow.ny", std::to_string(ny));
    config.set("bc.left.type", "poiseuille");
    config.set("bc.left.pressure", formatScientific(pc.pressureDrop));
    config.set("bc.right.pressure", "0");
    config.set("fluid.kind", "constant");
    config.set("fluid.reference_density", formatScientific(rho));
    config.set("fluid.viscosity", formatScientific(pc.viscosity));
    config.set("time.t_end", "1");
    config.set("observer.cutline", "0.5 0 " + formatScientific(pc.height));

    Scenario scenario(config);
    auto& model = scenario.model();
    SolutionVector u = scenario.initialSolution();
    model.prepareStep(std::numeric_limits<Scalar>::infinity(), u);
    JacobianAssembler assembler(model);
    assembler.buildPattern(u);
    NewtonConfig newton;
    newton.absTol = 1e-300;
    newton.relTol = 1e-12;
    newton.maxIterations = 10;
    const auto nr = newtonSolve(assembler, u, newton);

    PoiseuilleResult result;
    result.newtonIterations = nr.iterations;
    const Mesh& mesh = scenario.freeFlowMesh();
    const auto& layout = model.layout();
    const Scalar vmax = pc.centerlineVelocity();
    for (Index f = 0; f < mesh.numFaces(); ++f)
    {
        const auto& face = mesh.face(f);
        if (face.boundary())
            continue;
        const bool xFace = std::abs(face.normal.x()) > 0.5;
        const Scalar exact = xFace ? pc.velocity(face.center.y()) : 0.0;
        result.maxRelativeError = std::max(result.maxRelativeError,
                                           std::abs(u[layout.ffVelocity(f)] - exact)/vmax);
    }

    // face-center quadrature of the profile over the cut line
    const Scalar h = pc.height/ny;
    Scalar quadrature = 0.0;
    for (std::size_t j = 0; j < ny; ++j)
        quadrature += rho*h*pc.velocity((j + 0.5)*h);
    const Scalar flux = scenario.fluxes(u, 0.0).constriction;
    result.fluxRelativeError = std::abs(flux - quadrature)/quadrature;
    result.exactIntegralDeviation = std::abs(flux - pc.massFlux(rho))/pc.massFlux(rho);
    return result;
}

ConvergenceResult runConvergenceStudy(DarcyScheme scheme, const std::vector<std::size_t>& levels)
{
    const Tensor K = rotatedPermeability(1.0, 10.0, std::numbers::pi/4.0);
    const Scalar pi = std::numbers::pi;
    auto exact = [&](const Vec2& x) { return std::sin(pi*x.x())*std::sin(pi*x.y()) + x.x(); };
    // q = -div(K grad p)
    auto source = [&](const Vec2& x) {
        const Scalar ss = std::sin(pi*x.x())*std::sin(pi*x.y());
        const Scalar cc = std::cos(pi*x.x())*std::cos(pi*x.y());
        return pi*pi*((K(0, 0) + K(1, 1))*ss - 2.0*K(0, 1)*cc);
    };

    ConvergenceResult result;
    for (auto n : levels)
    {
        const Mesh mesh = distortedTriangulation(n);
        const PermeabilityField field(mesh.numCells(), K);
        const auto s = solveStationaryDarcy(mesh, field, scheme, 0.5, exact, source);
        Scalar e2 = 0.0, p2 = 0.0;
        for (Index c = 0; c < mesh.numCells(); ++c)
        {
            const auto& cell = mesh.cell(c);
            const Scalar p = exact(cell.center);
            e2 += cell.volume*(s.pressure[c] - p)*(s.pressure[c] - p);
            p2 += cell.volume*p*p;
        }
        result.h.push_back(1.0/n);
        result.error.push_back(std::sqrt(e2/p2));
    }
    for (std::size_t i = 1; i < result.error.size(); ++i)
    {
        result.orders.push_back(std::log(result.error[i - 1]/result.error[i])/std::log(result.h[i - 1]/result.h[i]));
        if (result.error[i] >= result.error[i - 1])
            result.monotone = false;
    }
    return result;
}

Scalar tpfaMpfaMatrixDifference(std::size_t nx, std::size_t ny, Scalar beta)
{
    const Mesh mesh = buildCartesianMesh(Vec2(0.0, 0.0), Vec2(1.0, 0.8), nx, ny, allPressure);
    const PermeabilityField field(mesh.numCells(), rotatedPermeability(1e-6, beta, 0.0));
    const Vec2 g = Vec2::Zero();
    const auto tpfa = buildTpfaTable(mesh, field, g);
    const auto mpfa = buildMpfaTable(mesh, field, 0.0, g);
    const Eigen::MatrixXd At(assembleDarcyMatrix(tpfa, mesh.numCells()));
    const Eigen::MatrixXd Am(assembleDarcyMatrix(mpfa, mesh.numCells()));
    auto data = [](const Vec2& x) { return 1.0 + x.x()*x.x() + 3.0*x.y(); };
    const Eigen::VectorXd bt = dirichletLoad(tpfa, mesh.numCells(), data);
    const Eigen::VectorXd bm = dirichletLoad(mpfa, mesh.numCells(), data);
    const Scalar scale = At.cwiseAbs().maxCoeff();
    const Scalar matrixDiff = (At - Am).cwiseAbs().maxCoeff()/scale;
    const Scalar loadDiff = maxAbs(bt - bm)/maxAbs(bt);
    return std::max(matrixDiff, loadDiff);
}

std::vector<OracleComparison> runOracleComparison()
{
    struct Case { std::string name; Mesh mesh; Tensor K; };
    std::vector<Case> cases;
    cases.push_back({"cartesian 5x5, alpha 30 deg",
                     buildCartesianMesh(Vec2(0.0, 0.0), Vec2(1.0, 1.0), 5, 5, allPressure),
                     rotatedPermeability(1.0, 10.0, std::numbers::pi/6.0)});
    cases.push_back({"jittered triangles, alpha 45 deg", patchTestMesh(),
                     rotatedPermeability(1.0, 10.0, std::numbers::pi/4.0)});
    cases.push_back({"distorted triangles, alpha -30 deg", distortedTriangulation(15),
                     rotatedPermeability(1.0, 100.0, -std::numbers::pi/6.0)});
    auto data = [](const Vec2& x) { return std::sin(2.0*x.x()) + x.y()*x.y() + 0.5; };

    std::vector<OracleComparison> out;
    for (const auto& c : cases)
    {
        const PermeabilityField field(c.mesh.numCells(), c.K);
        const auto table = buildMpfaTable(c.mesh, field, 0.5, Vec2::Zero());
        const Eigen::VectorXd p = solveDarcyFromTable(c.mesh, table, data);
        const auto oracle = denseMpfaOracle(c.mesh, field, 0.5, data);

        OracleComparison cmp{c.name, c.mesh.numCells(), 0.0, 0.0};
        cmp.pressureError = maxAbs(p - oracle.pressure)/maxAbs(oracle.pressure);

        // sparse fluxes from the stencils at the sparse solution
        Scalar fmax = 0.0, ferr = 0.0;
        for (auto i : table.activeFaces())
        {
            const auto& st = table.flux(i);
            Scalar F = 0.0;
            for (const auto& [cell, coeff] : st.cells)
                F += coeff*p[cell];
            for (const auto& [face, coeff] : st.dirichlet)
                F += coeff*data(table.fluxFace(face).point);
            const Scalar ref = oracle.subFaceFlux.at(i);
            if (std::isnan(ref))
                throw NumericalProblem("oracle has no flux for sub-face " + std::to_string(i));
            fmax = std::max(fmax, std::abs(ref));
            ferr = std::max(ferr, std::abs(F - ref));
        }
        cmp.fluxError = ferr/fmax;
        out.push_back(cmp);
    }
    return out;
}

int linearDarcyNewtonIterations(Scalar pressureDrop)
{
    const Mesh mesh = meshFromTriangles(structuredTriangulation(Vec2(0.0, 0.0), Vec2(1.0, 1.0), 8, 8, 0.25, 3),
                                        [](const Vec2& x, const Vec2&) {
                                            return x.x() < 1e-12 || x.x() > 1.0 - 1e-12 ? BoundaryTag::pressure
                                                                                        : BoundaryTag::wall;
                                        });
    const PermeabilityField field(mesh.numCells(), rotatedPermeability(1e-8, 10.0, std::numbers::pi/6.0));
    const auto fluid = FluidModel::constant(1.2, 1.8e-5);
    const Vec2 g = Vec2::Zero();
    const auto table = buildMpfaTable(mesh, field, 0.5, g);
    CoupledModel model(fluid, g, 0.0);
    DarcyBoundaryData bc;
    bc.pressure = [=](const Vec2& x) { return x.x() < 0.5 ? pressureDrop : 0.0; };
    model.setPorousMedium(mesh, field, table, bc);
    model.finalize();
    SolutionVector u = model.initialSolution();
    model.prepareStep(std::numeric_limits<Scalar>::infinity(), u);
    JacobianAssembler assembler(model);
    assembler.buildPattern(u);
    return newtonSolve(assembler, u, NewtonConfig{}).iterations;
}

EulerResult runEulerOrderStudy()
{
    const Scalar k = 9e-11, pInit = 2e5, pOut = 1e5, tEnd = 1.0;
    const Mesh mesh = buildCartesianMesh(Vec2(0.0, 0.0), Vec2(1.0, 1.0), 1, 1,
                                         [](const Vec2& x, const Vec2&) {
                                             return x.x() < 1e-12 ? BoundaryTag::pressure : BoundaryTag::wall;
                                         });
    const PermeabilityField field(1, Tensor::Identity()*k);
    const auto fluid = FluidModel::idealGasAir();
    const Vec2 g = Vec2::Zero();
    const auto table = buildTpfaTable(mesh, field, g);

    // unit cell, Dirichlet face at distance 1/2: dp/dt = -a p (p - pOut) with a = 2k/mu
    const Scalar a = 2.0*k/fluid.viscosity(pOut);
    const Scalar r = a*pOut;
    const Scalar exact = pOut/(1.0 - (1.0 - pOut/pInit)*std::exp(-r*tEnd));

    EulerResult result;
    for (Scalar dt : {0.1, 0.05, 0.025, 0.0125, 0.00625})
    {
        CoupledModel model(fluid, g, 0.0);
        DarcyBoundaryData bc;
        bc.pressure = [&](const Vec2&) { return pOut; };
        model.setPorousMedium(mesh, field, table, bc);
        model.finalize();
        SolutionVector u = model.initialSolution(pInit);

        TimeLoopConfig tc;
        tc.dtInitial = dt;
        tc.dtMax = dt;
        tc.tEnd = tEnd;
        tc.stopWhenStationary = false;
        NewtonConfig nc;
        nc.absTol = 1e-300;
        nc.relTol = 1e-12;
        runTimeLoop(model, u, tc, nc);

        result.dt.push_back(dt);
        result.error.push_back(std::abs(u[0] - exact)/exact);
    }
    for (std::size_t i = 1; i < result.error.size(); ++i)
        result.orders.push_back(std::log(result.error[i - 1]/result.error[i])/std::log(result.dt[i - 1]/result.dt[i]));
    return result;
}

namespace {

std::string joined(const std::vector<Scalar>& v)
{
    std::ostringstream s;
    s << std::setprecision(4);
    for (std::size_t i = 0; i < v.size(); ++i)
        s << (i ? " " : "") << v[i];
    return s.str();
}

template<class F>
void timed(std::vector<VerificationResult>& out, F&& f)
{
    const auto start = std::chrono::steady_clock::now();
    auto results = f();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (auto& r : results)
    {
        r.seconds = seconds/results.size();
        out.push_back(std::move(r));
    }
}

} // end anonymous namespace

std::vector<VerificationResult> runVerification(const std::string& suite)
{
    static const std::vector<std::string> suites{"patch", "oracle", "equivalence", "poiseuille",
                                                 "convergence", "newton", "euler"};
    if (suite != "all" && std::find(suites.begin(), suites.end(), suite) == suites.end())
        throw ParameterError("unknown verification suite '" + suite + "'");
    auto selected = [&](const std::string& s) { return suite == "all" || suite == s; };

    std::vector<VerificationResult> out;
    if (selected("patch"))
        timed(out, [] {
            const auto r = runPatchTest();
            VerificationResult m{"patch-mpfa", std::max(r.mpfaPressureError, r.mpfaFluxError) <= 1e-10,
                                 std::max(r.mpfaPressureError, r.mpfaFluxError), 1e-10, {}};
            m.detail = std::to_string(r.numCells) + " triangles, pressure " + formatScientific(r.mpfaPressureError)
                     + ", flux " + formatScientific(r.mpfaFluxError);
            VerificationResult t{"patch-tpfa", r.tpfaPressureError >= 1e-3, r.tpfaPressureError, 1e-3,
                                 "inconsistent for rotated anisotropy (error must stay large)"};
            return std::vector<VerificationResult>{m, t};
        });
    if (selected("oracle"))
        timed(out, [] {
            std::vector<VerificationResult> v;
            for (const auto& c : runOracleComparison())
            {
                const Scalar e = std::max(c.pressureError, c.fluxError);
                v.push_back({"oracle " + c.mesh, e <= 1e-12, e, 1e-12,
                             std::to_string(c.cells) + " cells, pressure " + formatScientific(c.pressureError)
                             + ", flux " + formatScientific(c.fluxError)});
            }
            return v;
        });
    if (selected("equivalence"))
        timed(out, [] {
            const Scalar d = tpfaMpfaMatrixDifference(8, 6, 10.0);
            return std::vector<VerificationResult>{
                {"tpfa-mpfa-equivalence", d <= 1e-12, d, 1e-12, "8x6 Cartesian, diagonal K, xi = 0"}};
        });
    if (selected("poiseuille"))
        timed(out, [] {
            const auto r = runPoiseuille();
            return std::vector<VerificationResult>{
                {"poiseuille-velocity", r.maxRelativeError <= 1e-9, r.maxRelativeError, 1e-9,
                 std::to_string(r.newtonIterations) + " Newton iterations"},
                {"poiseuille-flux", r.fluxRelativeError <= 1e-8, r.fluxRelativeError, 1e-8,
                 "deviation from the exact integral (quadrature) " + formatScientific(r.exactIntegralDeviation)}};
        });
    if (selected("convergence"))
        timed(out, [] {
            const std::vector<std::size_t> levels{8, 16, 32, 64};
            const auto m = runConvergenceStudy(DarcyScheme::mpfa, levels);
            const auto t = runConvergenceStudy(DarcyScheme::tpfa, levels);
            return std::vector<VerificationResult>{
                {"convergence-mpfa", m.monotone && m.orders.back() >= 1.8, m.orders.back(), 1.8,
                 "errors " + joined(m.error) + ", orders " + joined(m.orders)},
                {"convergence-tpfa", t.orders.back() <= 0.5, t.orders.back(), 0.5,
                 "errors " + joined(t.error) + ", orders " + joined(t.orders)}};
        });
    if (selected("newton"))
        timed(out, [] {
            const int it = linearDarcyNewtonIterations(1e-3);
            const int itUnit = linearDarcyNewtonIterations(1.0);
            return std::vector<VerificationResult>{
                {"newton-linear", it == 1, Scalar(it), 1.0,
                 "linear Darcy problem, dp = 1e-3 Pa, default tolerances (dp = 1 Pa: "
                 + std::to_string(itUnit) + " iterations)"}};
        });
    if (selected("euler"))
        timed(out, [] {
            const auto r = runEulerOrderStudy();
            const Scalar order = r.orders.back();
            return std::vector<VerificationResult>{
                {"euler-order", order >= 0.9 && order <= 1.1, order, 1.0,
                 "errors " + joined(r.error) + ", orders " + joined(r.orders)}};
        });
    return out;
}

void printVerification(std::ostream& out, const std::vector<VerificationResult>& results)
{
    for (const auto& r : results)
        out << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(44) << r.name
            << " value " << std::setw(24) << formatScientific(r.value)
            << " threshold " << std::setw(24) << formatScientific(r.threshold)
            << " " << r.detail << '\n';
}

void writeVerificationCsv(const std::string& path, const std::vector<VerificationResult>& results)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path);
    out << "name,passed,value,threshold,seconds\n";
    for (const auto& r : results)
        out << '"' << r.name << "\"," << (r.passed ? 1 : 0) << ',' << formatScientific(r.value) << ','
            << formatScientific(r.threshold) << ',' << r.seconds << '\n';
}

} // end namespace Porocouple
