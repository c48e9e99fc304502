#ifndef POROCOUPLE_STATE_HH
#define POROCOUPLE_STATE_HH

#include <vector>

#include <Eigen/Core>

#include <porocouple/common.hh>

namespace Porocouple {

using SolutionVector = Eigen::VectorXd;

/*!
 * \brief Block layout [free-flow cell pressures | free-flow face velocities | porous-medium cell pressures].
 *
 * Pressures are stored relative to a reference pressure p_ref.
 */
struct DofLayout
{
    std::size_t numFfCells = 0;
    std::size_t numFfFaces = 0;
    std::size_t numPmCells = 0;

    Index ffPressure(Index cell) const { return cell; }
    Index ffVelocity(Index face) const { return numFfCells + face; }
    Index pmPressure(Index cell) const { return numFfCells + numFfFaces + cell; }

    std::size_t size() const { return numFfCells + numFfFaces + numPmCells; }

    enum class Block { ffPressure, ffVelocity, pmPressure };
    Block block(Index dof) const
    {
        if (dof < numFfCells) return Block::ffPressure;
        if (dof < numFfCells + numFfFaces) return Block::ffVelocity;
        return Block::pmPressure;
    }
};

/*!
 * \brief Read access to a solution vector that can record the accessed entries.
 *
 * Recording the reads of a residual evaluation yields the sparsity pattern of
 * the Jacobian row.
 */
class StateView
{
public:
    explicit StateView(const SolutionVector& u, std::vector<Index>* record = nullptr)
    : u_(&u), record_(record)
    {}

    Scalar operator[](Index i) const
    {
        if (record_)
            record_->push_back(i);
        return (*u_)[i];
    }

    const SolutionVector& vector() const { return *u_; }

private:
    const SolutionVector* u_;
    std::vector<Index>* record_;
};

//! Upwind selection, the arithmetic mean on ties.
inline Scalar upwind(Scalar upstreamIfPositive, Scalar upstreamIfNegative, Scalar direction)
{
    if (direction > 0.0)
        return upstreamIfPositive;
    if (direction < 0.0)
        return upstreamIfNegative;
    return 0.5*(upstreamIfPositive + upstreamIfNegative);
}

} // end namespace Porocouple

#endif
