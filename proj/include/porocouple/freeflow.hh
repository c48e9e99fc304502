#ifndef POROCOUPLE_FREEFLOW_HH
#define POROCOUPLE_FREEFLOW_HH

#include <functional>
#include <vector>

#include <porocouple/common.hh>
#include <porocouple/fluid.hh>
#include <porocouple/mesh.hh>
#include <porocouple/staggered.hh>
#include <porocouple/state.hh>

namespace Porocouple {

class InterfaceCoupling;

//! Boundary data of the free flow (pressures relative to p_ref).
struct FreeFlowBoundaryData
{
    //! pressure at faces tagged pressure
    std::function<Scalar(const Vec2&)> pressure;
    //! velocity at faces tagged velocity; walls have zero velocity
    std::function<Vec2(const Vec2&)> velocity;
    //! mass source in kg/(m^3 s)
    std::function<Scalar(const Vec2&)> source;
};

//! Average and jump (times the normal) at a dual face.
struct DualFaceValues
{
    Vec2 average = Vec2::Zero();
    Vec2 jump = Vec2::Zero();
};

/*!
 * \brief Average and jump operators at a cell center (P point).
 *
 * {v} = 1/2 (vxE + vxW, vyN + vyS), [v] = 2/h (vxE - vxW, vyN - vyS)
 */
DualFaceValues cellCenterOperators(Scalar vxE, Scalar vxW, Scalar vyN, Scalar vyS, Scalar h);

/*!
 * \brief Average and jump operators at a grid vertex (V point).
 *
 * {v} = 1/2 (vxN + vxS, vyE + vyW), [v] = 1/h (vxN - vxS + vyE - vyW) (1, 1)
 */
DualFaceValues vertexOperators(Scalar vxN, Scalar vxS, Scalar vyE, Scalar vyW, Scalar h);

/*!
 * \brief Staggered-grid (MAC) discretization of the compressible Navier-Stokes equations.
 *
 * Mass balances live on the cells, momentum balances on the secondary control
 * volumes around the faces. Faces with Dirichlet velocity keep their dof with
 * the residual v - v_Gamma.
 */
class FreeFlowModel
{
public:
    FreeFlowModel(const StaggeredTopology& topology, const FluidModel& fluid,
                  FreeFlowBoundaryData bc, const Vec2& gravity, Scalar pref,
                  const DofLayout& layout);

    void setCoupling(const InterfaceCoupling* coupling) { coupling_ = coupling; }

    Scalar massResidual(Index cell, const StateView& u, const SolutionVector& old, Scalar dt) const;
    Scalar momentumResidual(Index face, const StateView& u, const SolutionVector& old, Scalar dt) const;

    //! mass flux in kg/s through a face along the positive axis direction
    Scalar axialMassFlux(Index face, const StateView& u) const;

    //! cell-center velocity (mean of the opposite face velocities)
    Vec2 cellVelocity(Index cell, const StateView& u) const;

    bool dirichletFace(Index face) const;

    const StaggeredTopology& topology() const { return *topology_; }
    const Mesh& mesh() const { return topology_->mesh(); }
    Scalar referencePressure() const { return pref_; }

private:
    Scalar density(Scalar prel) const { return fluid_->density(pref_ + prel); }
    Scalar viscosity(Scalar prel) const { return fluid_->viscosity(pref_ + prel); }
    Scalar cellDensity(Index cell, const StateView& u) const;
    Scalar faceDensity(Index face, const StateView& u) const;
    Scalar velocity(Index face, const StateView& u) const { return u[layout_.ffVelocity(face)]; }
    Vec2 boundaryVelocity(const Vec2& x) const;
    Scalar boundaryPressure(Index face) const { return boundaryPressure_[face]; }
    Scalar slipFactor(Index face, int tangentAxis) const;

    const StaggeredTopology* topology_;
    const FluidModel* fluid_;
    FreeFlowBoundaryData bc_;
    Vec2 gravity_;
    Scalar pref_;
    DofLayout layout_;
    const InterfaceCoupling* coupling_ = nullptr;
    std::vector<Scalar> boundaryPressure_;
    std::vector<Scalar> source_;
};

} // end namespace Porocouple

#endif
