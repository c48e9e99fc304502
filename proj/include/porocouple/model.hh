#ifndef POROCOUPLE_MODEL_HH
#define POROCOUPLE_MODEL_HH

#include <memory>
#include <string>

#include <porocouple/common.hh>
#include <porocouple/coupling.hh>
#include <porocouple/darcy.hh>
#include <porocouple/freeflow.hh>
#include <porocouple/state.hh>

namespace Porocouple {

/*!
 * \brief Nonlinear residual evaluated row by row.
 *
 * Rows may only depend on the entries read through the StateView, which is
 * how the Jacobian sparsity pattern is detected.
 */
class ResidualFunction
{
public:
    virtual ~ResidualFunction() = default;
    virtual std::size_t size() const = 0;
    virtual Scalar residual(Index row, const StateView& u) const = 0;

    //! set the time step size (infinity for stationary problems) and the old solution
    virtual void prepareStep(Scalar dt, const SolutionVector& old) = 0;

    //! human readable description of a dof (for diagnostics)
    virtual std::string describe(Index dof) const { return "dof " + std::to_string(dof); }
};

/*!
 * \brief Monolithic residual of free flow, porous medium and interface conditions.
 *
 * Either subdomain may be absent. Row order equals the dof order of DofLayout.
 */
class CoupledModel : public ResidualFunction
{
public:
    CoupledModel(const FluidModel& fluid, const Vec2& gravity, Scalar pref);

    void setFreeFlow(const StaggeredTopology& topology, FreeFlowBoundaryData bc);
    void setPorousMedium(const Mesh& mesh, const PermeabilityField& K,
                         const TransmissibilityTable& table, DarcyBoundaryData bc);
    void setInterface(const InterfaceMapping& mapping, Scalar alphaBJ);

    //! create the sub-models, must be called after the set* functions
    void finalize();

    std::size_t size() const override { return layout_.size(); }
    Scalar residual(Index row, const StateView& u) const override;
    void prepareStep(Scalar dt, const SolutionVector& old) override;
    std::string describe(Index dof) const override;

    const DofLayout& layout() const { return layout_; }
    const FreeFlowModel* freeFlow() const { return freeFlow_.get(); }
    const DarcyModel* darcy() const { return darcy_.get(); }
    const InterfaceCoupling* coupling() const { return coupling_.get(); }
    const FluidModel& fluid() const { return *fluid_; }
    Scalar referencePressure() const { return pref_; }
    Scalar timeStep() const { return dt_; }

    //! uniform initial state with all relative pressures p0 and zero velocity (Dirichlet values imposed)
    SolutionVector initialSolution(Scalar p0 = 0.0) const;

private:
    const FluidModel* fluid_;
    Vec2 gravity_;
    Scalar pref_;

    const StaggeredTopology* topology_ = nullptr;
    FreeFlowBoundaryData ffBc_;
    const Mesh* pmMesh_ = nullptr;
    const PermeabilityField* K_ = nullptr;
    const TransmissibilityTable* table_ = nullptr;
    DarcyBoundaryData pmBc_;
    const InterfaceMapping* mapping_ = nullptr;
    Scalar alphaBJ_ = 1.0;

    DofLayout layout_;
    std::unique_ptr<FreeFlowModel> freeFlow_;
    std::unique_ptr<DarcyModel> darcy_;
    std::unique_ptr<InterfaceCoupling> coupling_;

    Scalar dt_ = 1.0;
    SolutionVector old_;
};

} // end namespace Porocouple

#endif
