#ifndef POROCOUPLE_COUPLING_HH
#define POROCOUPLE_COUPLING_HH

#include <porocouple/common.hh>
#include <porocouple/darcy.hh>
#include <porocouple/fluid.hh>
#include <porocouple/interfacemapping.hh>
#include <porocouple/permeability.hh>
#include <porocouple/state.hh>

namespace Porocouple {

/*!
 * \brief Slip factor of the Beavers-Joseph-Saffman condition.
 *
 * One-sided difference over the distance h/2 between the interface and the first
 * tangential velocity v_t gives v_slip = v_t / (1 + alpha h / (2 sqrt(t.K t))).
 */
Scalar bjsSlipFactor(Scalar alphaBJ, Scalar h, Scalar sqrtTKt);

/*!
 * \brief Interface conditions between the free flow and the porous medium.
 *
 * The normal free-flow velocity prescribes the porous-medium flux
 * F = -mu^up |sigma| v.n, the reconstructed porous-medium face pressure enters
 * the normal momentum balance and the tangential velocity obeys the
 * Beavers-Joseph-Saffman condition. n points out of the free-flow domain.
 */
class InterfaceCoupling
{
public:
    InterfaceCoupling(const InterfaceMapping& mapping, const DarcyModel& darcy,
                      const PermeabilityField& K, const FluidModel& fluid,
                      Scalar alphaBJ, Scalar pref, const DofLayout& layout);

    const InterfaceMapping& mapping() const { return *mapping_; }
    Scalar alphaBJ() const { return alphaBJ_; }

    //! normal velocity v.n of the free-flow face of link l
    Scalar normalVelocity(Index l, const StateView& u) const;

    //! density upwinded between the free-flow and the porous-medium cell
    Scalar density(Index l, const StateView& u) const;
    Scalar viscosity(Index l, const StateView& u) const;

    //! mass flux in kg/s out of the free-flow domain (into the porous medium)
    Scalar ffMassFlux(Index l, const StateView& u) const;

    //! reconstructed porous-medium face pressure (relative to p_ref)
    Scalar pmFacePressure(Index l, const StateView& u) const;

    //! the same queries keyed by porous-medium flux face
    Scalar pmNeumannFlux(Index pmFluxFace, const StateView& u) const;
    Scalar pmMassFlux(Index pmFluxFace, const StateView& u) const;
    Scalar pmVolumeFlux(Index pmFluxFace, const StateView& u) const;

    //! permeability of the porous-medium cell of link l
    const Tensor& permeability(Index l) const { return (*K_)[mapping_->link(l).pmCell]; }

private:
    const InterfaceMapping* mapping_;
    const DarcyModel* darcy_;
    const PermeabilityField* K_;
    const FluidModel* fluid_;
    Scalar alphaBJ_;
    Scalar pref_;
    DofLayout layout_;
    std::vector<int> axis_;
};

} // end namespace Porocouple

#endif
