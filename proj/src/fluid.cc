#include <porocouple/fluid.hh>

#include <cmath>

namespace Porocouple {

FluidModel FluidModel::idealGasAir(Scalar temperature, Scalar molarMass, Scalar viscosity)
{
    if (!(temperature > 0.0) || !(molarMass > 0.0) || !(viscosity > 0.0))
        throw ParameterError("ideal gas needs positive temperature, molar mass and viscosity");
    FluidModel f;
    f.kind_ = Kind::idealGas;
    f.temperature_ = temperature;
    f.molarMass_ = molarMass;
    f.viscosity_ = viscosity;
    return f;
}

FluidModel FluidModel::constant(Scalar density, Scalar viscosity)
{
    if (!(density > 0.0) || !(viscosity > 0.0))
        throw ParameterError("constant fluid needs positive density and viscosity");
    FluidModel f;
    f.kind_ = Kind::constant;
    f.referenceDensity_ = density;
    f.viscosity_ = viscosity;
    return f;
}

Scalar FluidModel::density(Scalar p) const
{
    if (kind_ == Kind::constant)
        return referenceDensity_;
    if (!(p > 0.0))
        throw NumericalProblem("ideal gas density evaluated at non-positive pressure " + std::to_string(p));
    return p*molarMass_/(gasConstant*temperature_);
}

Scalar FluidModel::densityDerivative(Scalar p) const
{
    if (kind_ == Kind::constant)
        return 0.0;
    if (!(p > 0.0))
        throw NumericalProblem("ideal gas density evaluated at non-positive pressure " + std::to_string(p));
    return molarMass_/(gasConstant*temperature_);
}

Scalar FluidModel::viscosity(Scalar) const
{ return viscosity_; }

} // end namespace Porocouple
