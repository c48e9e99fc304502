#ifndef POROCOUPLE_SOLVER_HH
#define POROCOUPLE_SOLVER_HH

#include <functional>
#include <limits>
#include <vector>

#include <Eigen/SparseCore>

#include <porocouple/common.hh>
#include <porocouple/model.hh>
#include <porocouple/state.hh>

namespace Porocouple {

using SparseMatrix = Eigen::SparseMatrix<Scalar>;

/*!
 * \brief Residual and finite-difference Jacobian with a detected sparsity pattern.
 *
 * The pattern is obtained by recording which entries each residual row reads.
 * Column j of the Jacobian is (R(u + delta e_j) - R(u))/delta with
 * delta = eps max(|u_j|, 1), evaluated only for the rows depending on u_j.
 */
class JacobianAssembler
{
public:
    explicit JacobianAssembler(const ResidualFunction& function);

    void buildPattern(const SolutionVector& u);
    bool hasPattern() const { return !rowDofs_.empty() || function_->size() == 0; }

    //! residual of all rows, throws NumericalProblem on non-finite entries
    void residual(const SolutionVector& u, Eigen::VectorXd& r) const;

    SparseMatrix jacobian(const SolutionVector& u, const Eigen::VectorXd& r, Scalar eps) const;

    std::size_t nonZeros() const;
    const std::vector<Index>& rowDofs(Index row) const { return rowDofs_[row]; }

private:
    const ResidualFunction* function_;
    std::vector<std::vector<Index>> rowDofs_;
    std::vector<std::vector<Index>> colRows_;
};

/*!
 * \brief Direct sparse LU solve with row equilibration and iterative refinement.
 *
 * Guarantees |Ax - b|_inf <= 1e-10 (|A|_inf |x|_inf + |b|_inf) or throws.
 */
Eigen::VectorXd solveLinearSystem(const SparseMatrix& A, const Eigen::VectorXd& b);

struct NewtonConfig
{
    Scalar absTol = 1e-11;
    Scalar relTol = 1e-8;
    int maxIterations = 15;
    Scalar fdEpsilon = 1e-8;
    int maxLineSearchHalvings = 4;
    bool verbose = false;
};

struct NewtonResult
{
    int iterations = 0;
    std::vector<Scalar> residualHistory; //!< infinity norms, starting with the initial residual
};

/*!
 * \brief Newton's method with finite-difference Jacobian and half-step line search.
 *
 * Converged when |R|_inf <= absTol or |R|_inf <= relTol |R_0|_inf. On failure a
 * NumericalProblem is thrown and u is left unchanged.
 */
NewtonResult newtonSolve(JacobianAssembler& assembler,
                         SolutionVector& u, const NewtonConfig& config);

struct TimeLoopConfig
{
    Scalar dtInitial = 1.0;
    Scalar dtMax = std::numeric_limits<Scalar>::infinity();
    Scalar dtMin = 1e-8;
    Scalar tEnd = 1.0;
    Scalar growthFactor = 1.5;
    Scalar backoffFactor = 0.5;
    int growthIterations = 4;
    Scalar stationaryTolerance = 1e-12;
    bool stopWhenStationary = true;
    std::vector<Scalar> outputTimes; //!< step sizes are clipped to hit these
};

struct StepInfo
{
    int step = 0;
    Scalar time = 0.0;
    Scalar dt = 0.0;
    int newtonIterations = 0;
    Scalar relativeChangeRate = 0.0;
    bool stationary = false;
    bool outputTime = false;
};

struct TimeLoopResult
{
    Scalar time = 0.0;
    int acceptedSteps = 0;
    int rejectedSteps = 0;
    int newtonIterations = 0;
    bool stationary = false;
    std::vector<StepInfo> steps;
};

using StepObserver = std::function<void(const StepInfo&, const SolutionVector&)>;

void validate(const TimeLoopConfig& config);
void validate(const NewtonConfig& config);

/*!
 * \brief Implicit Euler time loop with adaptive step size.
 *
 * The step grows by growthFactor after easy convergence, failed steps are
 * retried with dt times backoffFactor. The solution is stationary when the
 * largest block-wise relative change per unit time falls below the tolerance.
 * Blocks are given as [begin, end) ranges of dofs.
 */
TimeLoopResult runTimeLoop(ResidualFunction& function, SolutionVector& u,
                           const TimeLoopConfig& config, const NewtonConfig& newton,
                           const std::vector<std::pair<Index, Index>>& blocks = {},
                           const StepObserver& observer = {});

//! dof blocks of a layout for the stationarity check
std::vector<std::pair<Index, Index>> layoutBlocks(const DofLayout& layout);

} // end namespace Porocouple

#endif
