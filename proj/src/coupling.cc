#include <porocouple/coupling.hh>

#include <cmath>

namespace Porocouple {

Scalar bjsSlipFactor(Scalar alphaBJ, Scalar h, Scalar sqrtTKt)
{
    if (!(sqrtTKt > 0.0))
        throw NumericalProblem("non-positive tangential permeability in the slip condition");
    return 1.0/(1.0 + alphaBJ*h/(2.0*sqrtTKt));
}

InterfaceCoupling::InterfaceCoupling(const InterfaceMapping& mapping, const DarcyModel& darcy,
                                     const PermeabilityField& K, const FluidModel& fluid,
                                     Scalar alphaBJ, Scalar pref, const DofLayout& layout)
: mapping_(&mapping), darcy_(&darcy), K_(&K), fluid_(&fluid)
, alphaBJ_(alphaBJ), pref_(pref), layout_(layout)
{
    if (!(alphaBJ > 0.0))
        throw ParameterError("Beavers-Joseph coefficient must be positive");
    for (const auto& link : mapping.links())
        axis_.push_back(std::abs(link.normal[0]) > 0.5 ? 0 : 1);
}

Scalar InterfaceCoupling::normalVelocity(Index l, const StateView& u) const
{
    const auto& link = mapping_->link(l);
    // velocity dofs point along the positive coordinate axis
    return u[layout_.ffVelocity(link.ffFace)]*link.normal[axis_[l]];
}

Scalar InterfaceCoupling::density(Index l, const StateView& u) const
{
    const auto& link = mapping_->link(l);
    const Scalar rhoFf = fluid_->density(pref_ + u[layout_.ffPressure(link.ffCell)]);
    const Scalar rhoPm = fluid_->density(pref_ + u[layout_.pmPressure(link.pmCell)]);
    return upwind(rhoFf, rhoPm, normalVelocity(l, u));
}

Scalar InterfaceCoupling::viscosity(Index l, const StateView& u) const
{
    const auto& link = mapping_->link(l);
    const Scalar muFf = fluid_->viscosity(pref_ + u[layout_.ffPressure(link.ffCell)]);
    const Scalar muPm = fluid_->viscosity(pref_ + u[layout_.pmPressure(link.pmCell)]);
    return upwind(muFf, muPm, normalVelocity(l, u));
}

Scalar InterfaceCoupling::ffMassFlux(Index l, const StateView& u) const
{ return density(l, u)*mapping_->link(l).measure*normalVelocity(l, u); }

Scalar InterfaceCoupling::pmFacePressure(Index l, const StateView& u) const
{
    const auto& link = mapping_->link(l);
    return darcy_->evaluate(darcy_->table().facePressure(link.pmFluxFace), u);
}

Scalar InterfaceCoupling::pmNeumannFlux(Index pmFluxFace, const StateView& u) const
{
    const Index l = mapping_->linkOfPmFluxFace(pmFluxFace);
    if (l == invalidIndex)
        throw GridError("porous-medium interface face without free-flow partner");
    return -viscosity(l, u)*mapping_->link(l).measure*normalVelocity(l, u);
}

Scalar InterfaceCoupling::pmMassFlux(Index pmFluxFace, const StateView& u) const
{
    const Index l = mapping_->linkOfPmFluxFace(pmFluxFace);
    if (l == invalidIndex)
        throw GridError("porous-medium interface face without free-flow partner");
    return -ffMassFlux(l, u);
}

Scalar InterfaceCoupling::pmVolumeFlux(Index pmFluxFace, const StateView& u) const
{
    const Index l = mapping_->linkOfPmFluxFace(pmFluxFace);
    if (l == invalidIndex)
        throw GridError("porous-medium interface face without free-flow partner");
    return -mapping_->link(l).measure*normalVelocity(l, u);
}

} // end namespace Porocouple
