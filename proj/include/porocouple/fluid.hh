#ifndef POROCOUPLE_FLUID_HH
#define POROCOUPLE_FLUID_HH

#include <porocouple/common.hh>

namespace Porocouple {

//! Universal gas constant in J/(mol K)
inline constexpr Scalar gasConstant = 8.314462618;

/*!
 * \brief Single-phase fluid with pressure dependent density.
 *
 * Two kinds are available: an isothermal ideal gas (air) and a fluid with
 * constant properties for analytic verification. The viscosity is constant
 * for both.
 */
class FluidModel
{
public:
    enum class Kind { idealGas, constant };

    static FluidModel idealGasAir(Scalar temperature = 293.15,
                                  Scalar molarMass = 0.02896,
                                  Scalar viscosity = 1.8e-5);

    static FluidModel constant(Scalar density, Scalar viscosity);

    Kind kind() const { return kind_; }

    //! density in kg/m^3 at the absolute pressure p
    Scalar density(Scalar p) const;

    //! d(density)/dp
    Scalar densityDerivative(Scalar p) const;

    //! dynamic viscosity in Pa s
    Scalar viscosity(Scalar p) const;

    Scalar molarMass() const { return molarMass_; }
    Scalar temperature() const { return temperature_; }

private:
    FluidModel() = default;

    Kind kind_ = Kind::constant;
    Scalar molarMass_ = 0.0;
    Scalar temperature_ = 0.0;
    Scalar viscosity_ = 0.0;
    Scalar referenceDensity_ = 0.0;
};

} // end namespace Porocouple

#endif
