#ifndef POROCOUPLE_VERIFY_HH
#define POROCOUPLE_VERIFY_HH

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <porocouple/common.hh>
#include <porocouple/fluxstencils.hh>
#include <porocouple/mesh.hh>
#include <porocouple/permeability.hh>

namespace Porocouple {

using ScalarFunction = std::function<Scalar(const Vec2&)>;

//! Stationary single-phase Darcy solution with fluxes per flux face.
struct DarcySolution
{
    Eigen::VectorXd pressure;
    std::vector<Scalar> flux; //!< F of each flux face (NaN for unused ids)
    int newtonIterations = 0;
};

/*!
 * \brief Solves -div(K grad p) = q with Dirichlet data on all boundaries.
 *
 * Uses the regular residual, finite-difference Jacobian and Newton path with a
 * constant fluid (rho = 1, mu = 1), i.e. F is the volume flux.
 */
DarcySolution solveStationaryDarcy(const Mesh& mesh, const PermeabilityField& K,
                                   DarcyScheme scheme, Scalar xi,
                                   const ScalarFunction& dirichlet,
                                   const ScalarFunction& source = {});

/*!
 * \brief Cell-to-cell matrix of the net outward flux sum_sigma F_K,sigma.
 *
 * Boundary data does not enter; the matrix is what multiplies the cell pressures.
 */
Eigen::SparseMatrix<Scalar> assembleDarcyMatrix(const TransmissibilityTable& table, std::size_t numCells);

//! Sparse direct solve of the stencil system with Dirichlet data on all boundaries.
Eigen::VectorXd solveDarcyFromTable(const Mesh& mesh, const TransmissibilityTable& table,
                                    const ScalarFunction& dirichlet);

//! Result of the dense reference implementation.
struct OracleSolution
{
    Eigen::VectorXd pressure;
    std::vector<Scalar> subFaceFlux; //!< indexed by sub-face id 2 face + k
};

/*!
 * \brief Dense reference MPFA-O solution with Dirichlet data on all boundaries.
 *
 * Independent implementation: local systems are set up with explicit 2x2
 * inverses and solved with full pivoting, the global system is dense.
 */
OracleSolution denseMpfaOracle(const Mesh& mesh, const PermeabilityField& K, Scalar xi,
                               const ScalarFunction& dirichlet);

//! 200 triangles on the unit square with jittered interior nodes.
Mesh patchTestMesh();

//! structured triangulation of the unit square mapped by a smooth distortion
Mesh distortedTriangulation(std::size_t n);

//! Analytic plane Poiseuille flow v_x(y) = dp/(2 mu L) y (H - y).
struct PoiseuilleCase
{
    Scalar height = 0.25;
    Scalar pressureDrop = 1e-6;
    Scalar viscosity = 1.8e-5;
    Scalar length = 1.0;

    Scalar velocity(Scalar y) const { return pressureDrop/(2.0*viscosity*length)*y*(height - y); }
    Scalar centerlineVelocity() const { return velocity(0.5*height); }
    //! exact mass flux for density rho
    Scalar massFlux(Scalar rho) const { return rho*pressureDrop*height*height*height/(12.0*viscosity*length); }
};

struct PatchTestResult
{
    Scalar mpfaPressureError = 0.0; //!< max relative cell pressure error
    Scalar mpfaFluxError = 0.0;     //!< max relative sub-face flux error
    Scalar tpfaPressureError = 0.0;
    std::size_t numCells = 0;
};

PatchTestResult runPatchTest();

struct PoiseuilleResult
{
    Scalar maxRelativeError = 0.0;  //!< interior face dofs, relative to the centerline velocity
    Scalar fluxRelativeError = 0.0; //!< cut-line flux vs face-center quadrature of the profile
    Scalar exactIntegralDeviation = 0.0; //!< cut-line flux vs exact integral (quadrature error)
    int newtonIterations = 0;
};

PoiseuilleResult runPoiseuille(std::size_t nx = 40, std::size_t ny = 10);

struct ConvergenceResult
{
    std::vector<Scalar> h;
    std::vector<Scalar> error;   //!< discrete L2 cell pressure errors
    std::vector<Scalar> orders;  //!< observed orders between consecutive levels
    bool monotone = true;
};

ConvergenceResult runConvergenceStudy(DarcyScheme scheme, const std::vector<std::size_t>& levels);

//! largest entrywise relative difference of the TPFA and MPFA (xi = 0) matrices on a Cartesian grid
Scalar tpfaMpfaMatrixDifference(std::size_t nx, std::size_t ny, Scalar beta);

//! largest relative difference between sparse MPFA path and dense oracle over the suite meshes
struct OracleComparison { std::string mesh; std::size_t cells; Scalar pressureError; Scalar fluxError; };
std::vector<OracleComparison> runOracleComparison();

/*!
 * \brief Newton iterations (default configuration) for a linear Darcy problem.
 *
 * Constant-density air through an anisotropic medium with k = 1e-8 m^2 and the
 * given pressure drop across the unit square.
 */
int linearDarcyNewtonIterations(Scalar pressureDrop);

struct EulerResult
{
    std::vector<Scalar> dt;
    std::vector<Scalar> error;
    std::vector<Scalar> orders;
};

/*!
 * \brief Single compressible cell draining through a Dirichlet face.
 *
 * The ideal gas gives dp/dt = -a p (p - p_D) with a logistic exact solution.
 */
EulerResult runEulerOrderStudy();

struct VerificationResult
{
    std::string name;
    bool passed = false;
    Scalar value = 0.0;
    Scalar threshold = 0.0;
    std::string detail;
    double seconds = 0.0;
};

std::vector<VerificationResult> runVerification(const std::string& suite);
void printVerification(std::ostream& out, const std::vector<VerificationResult>& results);
void writeVerificationCsv(const std::string& path, const std::vector<VerificationResult>& results);

} // end namespace Porocouple

#endif
