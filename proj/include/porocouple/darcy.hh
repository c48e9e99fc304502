#ifndef POROCOUPLE_DARCY_HH
#define POROCOUPLE_DARCY_HH

#include <functional>
#include <vector>

#include <porocouple/common.hh>
#include <porocouple/fluid.hh>
#include <porocouple/fluxstencils.hh>
#include <porocouple/mesh.hh>
#include <porocouple/state.hh>

namespace Porocouple {

class InterfaceCoupling;

//! Boundary data of the porous medium (pressures relative to p_ref).
struct DarcyBoundaryData
{
    //! pressure at faces tagged pressure
    std::function<Scalar(const Vec2&)> pressure;
    //! outward normal velocity at faces tagged velocity (walls have zero)
    std::function<Scalar(const Vec2&)> normalVelocity;
    //! mass source in kg/(m^3 s)
    std::function<Scalar(const Vec2&)> source;
};

/*!
 * \brief Cell-centered finite volume mass balance of the porous medium.
 *
 * Residual of cell K: |K|/dt (rho - rho_old) + sum_sigma (rho/mu)^up F_K,sigma - Q_K
 * with fluxes F from the transmissibility table. At interface faces the mass
 * flux is given by the free-flow velocity (see InterfaceCoupling).
 */
class DarcyModel
{
public:
    DarcyModel(const Mesh& mesh, const TransmissibilityTable& table, const FluidModel& fluid,
               DarcyBoundaryData bc, const Vec2& gravity, Scalar pref, const DofLayout& layout);

    void setCoupling(const InterfaceCoupling* coupling) { coupling_ = coupling; }

    Scalar residual(Index cell, const StateView& u, const SolutionVector& old, Scalar dt) const;

    //! F of a flux face (outward of cells[0]), mu times volume flux
    Scalar flux(Index fluxFace, const StateView& u) const;

    //! mass flux in kg/s out of cells[0] of the flux face
    Scalar massFlux(Index fluxFace, const StateView& u) const;

    //! value of an affine stencil at the given state
    Scalar evaluate(const Stencil& stencil, const StateView& u) const;

    //! prescribed flux F at a Neumann or interface flux face
    Scalar neumannFlux(Index fluxFace, const StateView& u) const;

    //! density used in the gravity term of a flux face
    Scalar gravityDensity(Index fluxFace, const StateView& u) const;

    Scalar cellPressure(Index cell, const StateView& u) const { return u[layout_.pmPressure(cell)]; }
    Scalar dirichletPressure(Index fluxFace) const { return dirichlet_[fluxFace]; }

    //! cell-center velocity reconstructed from the face fluxes
    Vec2 cellVelocity(Index cell, const StateView& u) const;

    const Mesh& mesh() const { return *mesh_; }
    const TransmissibilityTable& table() const { return *table_; }
    const FluidModel& fluid() const { return *fluid_; }
    Scalar referencePressure() const { return pref_; }

private:
    Scalar density(Scalar prel) const { return fluid_->density(pref_ + prel); }
    Scalar viscosity(Scalar prel) const { return fluid_->viscosity(pref_ + prel); }

    const Mesh* mesh_;
    const TransmissibilityTable* table_;
    const FluidModel* fluid_;
    DarcyBoundaryData bc_;
    Vec2 gravity_;
    Scalar pref_;
    DofLayout layout_;
    const InterfaceCoupling* coupling_ = nullptr;
    std::vector<Scalar> dirichlet_;
    std::vector<Scalar> neumannVelocity_;
    std::vector<Scalar> source_;
};

} // end namespace Porocouple

#endif
