#include <porocouple/solver.hh>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseLU>

namespace Porocouple {

JacobianAssembler::JacobianAssembler(const ResidualFunction& function)
: function_(&function)
{}

void JacobianAssembler::buildPattern(const SolutionVector& u)
{
    const std::size_t n = function_->size();
    rowDofs_.assign(n, {});
    colRows_.assign(n, {});
    std::vector<Index> record;
    for (Index row = 0; row < n; ++row)
    {
        record.clear();
        StateView view(u, &record);
        function_->residual(row, view);
        std::sort(record.begin(), record.end());
        record.erase(std::unique(record.begin(), record.end()), record.end());
        rowDofs_[row] = record;
        for (auto j : record)
            colRows_[j].push_back(row);
    }
}

std::size_t JacobianAssembler::nonZeros() const
{
    std::size_t nnz = 0;
    for (const auto& r : rowDofs_)
        nnz += r.size();
    return nnz;
}

void JacobianAssembler::residual(const SolutionVector& u, Eigen::VectorXd& r) const
{
    const std::size_t n = function_->size();
    r.resize(n);
    StateView view(u);
    for (Index row = 0; row < n; ++row)
    {
        r[row] = function_->residual(row, view);
        if (!std::isfinite(r[row]))
            throw NumericalProblem("non-finite residual at " + function_->describe(row));
    }
}

SparseMatrix JacobianAssembler::jacobian(const SolutionVector& u, const Eigen::VectorXd& r, Scalar eps) const
{
    const std::size_t n = function_->size();
    std::vector<Eigen::Triplet<Scalar>> triplets;
    triplets.reserve(nonZeros());
    SolutionVector work = u;
    StateView view(work);
    for (Index j = 0; j < n; ++j)
    {
        const Scalar delta = eps*std::max(std::abs(u[j]), 1.0);
        work[j] = u[j] + delta;
        const Scalar actual = work[j] - u[j];
        for (auto row : colRows_[j])
        {
            const Scalar value = (function_->residual(row, view) - r[row])/actual;
            if (!std::isfinite(value))
                throw NumericalProblem("non-finite Jacobian entry at " + function_->describe(row));
            triplets.emplace_back(row, j, value);
        }
        work[j] = u[j];
    }
    SparseMatrix J(n, n);
    J.setFromTriplets(triplets.begin(), triplets.end());
    J.makeCompressed();
    return J;
}

Eigen::VectorXd solveLinearSystem(const SparseMatrix& A, const Eigen::VectorXd& b)
{
    const Index n = A.rows();
    if (A.cols() != A.rows() || b.size() != A.rows())
        throw NumericalProblem("linear system is not square");

    // row equilibration
    Eigen::VectorXd scale = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < A.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(A, k); it; ++it)
            scale[it.row()] = std::max(scale[it.row()], std::abs(it.value()));
    for (Index i = 0; i < n; ++i)
    {
        if (!(scale[i] > 0.0))
            throw NumericalProblem("singular linear system: row " + std::to_string(i) + " is zero");
        scale[i] = 1.0/scale[i];
    }
    SparseMatrix S = scale.asDiagonal()*A;
    S.makeCompressed();
    const Eigen::VectorXd sb = scale.cwiseProduct(b);

    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(S);
    lu.factorize(S);
    if (lu.info() != Eigen::Success)
        throw NumericalProblem("singular linear system: " + lu.lastErrorMessage());

    Eigen::VectorXd x = lu.solve(sb);
    Eigen::VectorXd rowSums = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < S.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(S, k); it; ++it)
            rowSums[it.row()] += std::abs(it.value());
    const Scalar normA = rowSums.maxCoeff();
    for (int refine = 0; refine <= 3; ++refine)
    {
        if (!x.allFinite())
            throw NumericalProblem("singular linear system: non-finite solution");
        const Eigen::VectorXd res = sb - S*x;
        const Scalar bound = 1e-10*(normA*x.lpNorm<Eigen::Infinity>() + sb.lpNorm<Eigen::Infinity>());
        if (res.lpNorm<Eigen::Infinity>() <= bound)
            return x;
        if (refine == 3)
            break;
        x += lu.solve(res);
    }
    throw NumericalProblem("linear solver did not reach the required accuracy (numerically singular?)");
}

NewtonResult newtonSolve(JacobianAssembler& assembler,
                         SolutionVector& u, const NewtonConfig& config)
{
    if (!assembler.hasPattern())
        assembler.buildPattern(u);

    NewtonResult result;
    SolutionVector x = u;
    Eigen::VectorXd r;
    assembler.residual(x, r);
    Scalar norm = r.lpNorm<Eigen::Infinity>();
    const Scalar norm0 = norm;
    result.residualHistory.push_back(norm);
    auto converged = [&](Scalar nrm) {
        return nrm <= config.absTol || nrm <= config.relTol*norm0;
    };
    if (config.verbose)
        std::cout << "  newton 0: |R| = " << norm << '\n';

    while (!converged(norm))
    {
        if (result.iterations >= config.maxIterations)
            throw NumericalProblem("Newton did not converge in " + std::to_string(config.maxIterations)
                                   + " iterations (|R| = " + std::to_string(norm) + ")");
        const SparseMatrix J = assembler.jacobian(x, r, config.fdEpsilon);
        const Eigen::VectorXd dx = solveLinearSystem(J, r);

        Scalar lambda = 1.0;
        SolutionVector trial;
        Eigen::VectorXd rTrial;
        Scalar normTrial = std::numeric_limits<Scalar>::infinity();
        for (int halving = 0; ; ++halving)
        {
            trial = x - lambda*dx;
            bool ok = true;
            try {
                assembler.residual(trial, rTrial);
                normTrial = rTrial.lpNorm<Eigen::Infinity>();
            }
            catch (const NumericalProblem&) {
                ok = false;
            }
            if (ok && (normTrial <= norm || halving >= config.maxLineSearchHalvings))
                break;
            if (halving >= config.maxLineSearchHalvings)
                throw NumericalProblem("Newton update leads to an invalid state");
            lambda *= 0.5;
        }
        x = trial;
        r = rTrial;
        norm = normTrial;
        ++result.iterations;
        result.residualHistory.push_back(norm);
        if (config.verbose)
            std::cout << "  newton " << result.iterations << ": |R| = " << norm
                      << (lambda < 1.0 ? " (damped " + std::to_string(lambda) + ")" : std::string()) << '\n';
    }
    u = x;
    return result;
}

void validate(const NewtonConfig& config)
{
    if (!(config.absTol > 0.0) || !(config.relTol > 0.0))
        throw ParameterError("Newton tolerances must be positive");
    if (config.maxIterations < 1)
        throw ParameterError("Newton needs at least one iteration");
    if (!(config.fdEpsilon > 0.0))
        throw ParameterError("finite difference epsilon must be positive");
}

void validate(const TimeLoopConfig& config)
{
    if (!(config.growthFactor > 1.0))
        throw ParameterError("time step growth factor must be larger than 1");
    if (!(config.backoffFactor > 0.0 && config.backoffFactor < 1.0))
        throw ParameterError("time step backoff factor must lie in (0, 1)");
    if (!(config.dtInitial > 0.0) || !(config.dtMin > 0.0) || !(config.dtMax > 0.0))
        throw ParameterError("time step sizes must be positive");
    if (!(config.tEnd >= 0.0))
        throw ParameterError("end time must not be negative");
}

std::vector<std::pair<Index, Index>> layoutBlocks(const DofLayout& layout)
{
    std::vector<std::pair<Index, Index>> blocks;
    const Index a = layout.numFfCells, b = a + layout.numFfFaces, c = b + layout.numPmCells;
    if (a > 0) blocks.emplace_back(0, a);
    if (b > a) blocks.emplace_back(a, b);
    if (c > b) blocks.emplace_back(b, c);
    return blocks;
}

TimeLoopResult runTimeLoop(ResidualFunction& function, SolutionVector& u,
                           const TimeLoopConfig& config, const NewtonConfig& newton,
                           const std::vector<std::pair<Index, Index>>& blocksIn,
                           const StepObserver& observer)
{
    validate(config);
    validate(newton);

    auto blocks = blocksIn;
    if (blocks.empty())
        blocks.emplace_back(0, u.size());

    std::vector<Scalar> outputTimes = config.outputTimes;
    std::sort(outputTimes.begin(), outputTimes.end());

    TimeLoopResult result;
    JacobianAssembler assembler(function);
    Scalar t = 0.0;
    Scalar dt = std::min(config.dtInitial, config.dtMax);
    const Scalar eps = 1e-12*std::max(config.tEnd, 1.0);

    while (t < config.tEnd - eps)
    {
        // clip to the next output time and the end time
        Scalar target = config.tEnd;
        for (auto to : outputTimes)
            if (to > t + eps)
            {
                target = std::min(target, to);
                break;
            }
        Scalar stepDt = std::min(dt, target - t);
        const bool hitsTarget = stepDt >= target - t - eps;

        SolutionVector next = u;
        NewtonResult nr;
        try {
            function.prepareStep(stepDt, u);
            nr = newtonSolve(assembler, next, newton);
        }
        catch (const NumericalProblem& e) {
            ++result.rejectedSteps;
            dt = stepDt*config.backoffFactor;
            if (newton.verbose)
                std::cout << "step rejected (" << e.what() << "), dt -> " << dt << '\n';
            if (dt < config.dtMin)
                throw NumericalProblem(std::string("time step size below minimum after repeated failures: ") + e.what());
            continue;
        }

        const Scalar tNew = hitsTarget ? target : t + stepDt;
        Scalar rate = 0.0;
        for (const auto& [begin, end] : blocks)
        {
            const auto seg = next.segment(begin, end - begin);
            const Scalar change = (seg - u.segment(begin, end - begin)).lpNorm<Eigen::Infinity>();
            const Scalar scale = seg.lpNorm<Eigen::Infinity>();
            if (change > 0.0)
                rate = std::max(rate, change/(scale > 0.0 ? scale : 1.0)/stepDt);
        }

        u = next;
        t = tNew;
        StepInfo info;
        info.step = ++result.acceptedSteps;
        info.time = t;
        info.dt = stepDt;
        info.newtonIterations = nr.iterations;
        info.relativeChangeRate = rate;
        info.stationary = rate < config.stationaryTolerance;
        info.outputTime = std::any_of(outputTimes.begin(), outputTimes.end(),
                                      [&](Scalar to) { return std::abs(to - t) <= eps; })
                          || std::abs(t - config.tEnd) <= eps;
        result.newtonIterations += nr.iterations;
        result.steps.push_back(info);
        result.stationary = info.stationary;
        if (newton.verbose)
            std::cout << "step " << info.step << ": t = " << t << ", dt = " << stepDt
                      << ", newton " << nr.iterations << ", change rate " << rate << '\n';
        if (observer)
            observer(info, u);

        if (info.stationary && config.stopWhenStationary)
            break;

        if (nr.iterations <= config.growthIterations)
            dt = std::max(dt, stepDt)*config.growthFactor;
        dt = std::min(dt, config.dtMax);
    }
    result.time = t;
    return result;
}

} // end namespace Porocouple
