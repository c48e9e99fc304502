#ifndef POROCOUPLE_SCENARIO_HH
#define POROCOUPLE_SCENARIO_HH

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <porocouple/config.hh>
#include <porocouple/fluxstencils.hh>
#include <porocouple/interfacemapping.hh>
#include <porocouple/mesh.hh>
#include <porocouple/model.hh>
#include <porocouple/permeability.hh>
#include <porocouple/solver.hh>
#include <porocouple/staggered.hh>

namespace Porocouple {

//! Observed mass fluxes in kg/s (per unit depth).
struct FluxSummary
{
    Scalar time = 0.0;
    Scalar gammaIn = 0.0;      //!< left side of the porous obstacle, positive into the porous medium
    Scalar gammaOut = 0.0;     //!< right side
    Scalar gammaTop = 0.0;     //!< top side
    Scalar constriction = 0.0; //!< through the cut line, positive in +x
    Scalar transfer = 0.0;     //!< sum of all positive interface fluxes into the porous medium
    Scalar boundaryBalance = 0.0;       //!< net outflow over the external boundaries
    Scalar interfaceMismatch = 0.0;     //!< max relative |ff flux + pm flux| over interface faces
};

struct RunResult
{
    TimeLoopResult loop;
    FluxSummary final;
    std::vector<FluxSummary> series;
    SolutionVector solution;
    Scalar maxInterfaceMismatch = 0.0;
};

/*!
 * \brief Channel with a porous obstacle, built from a configuration.
 *
 * The free flow fills [0, L] x [0, H] minus the porous box. Left and right are
 * pressure (or parabolic inflow) boundaries, top and bottom are walls. The
 * porous medium is a structured or triangulated box whose sides facing the
 * free flow form the interface.
 */
class Scenario
{
public:
    explicit Scenario(const Config& config);

    CoupledModel& model() { return *model_; }
    const CoupledModel& model() const { return *model_; }

    bool hasPorousMedium() const { return pmMesh_ != nullptr; }
    const Mesh& freeFlowMesh() const { return *ffMesh_; }
    const Mesh* porousMesh() const { return pmMesh_.get(); }
    const TransmissibilityTable& table() const { return table_; }
    const InterfaceMapping& mapping() const { return mapping_; }
    const StaggeredTopology& topology() const { return *topology_; }
    DarcyScheme scheme() const { return scheme_; }

    const TimeLoopConfig& timeConfig() const { return timeConfig_; }
    const NewtonConfig& newtonConfig() const { return newtonConfig_; }
    TimeLoopConfig& timeConfig() { return timeConfig_; }
    NewtonConfig& newtonConfig() { return newtonConfig_; }

    SolutionVector initialSolution() const;
    FluxSummary fluxes(const SolutionVector& u, Scalar time) const;

    /*!
     * \brief Runs the time loop.
     *
     * With a non-empty output directory, writes fluxes.csv (every accepted step),
     * VTK files at output times and summary.json.
     */
    RunResult run(const std::string& outputDirectory = {}, bool verbose = false);

    void writeFields(const std::string& directory, int index, const SolutionVector& u) const;

    //! dof counts and grid information
    std::string info() const;

    //! analytic Poiseuille velocity at height y (for parabolic inflow)
    Scalar poiseuilleVelocity(Scalar y) const;

    Scalar height() const { return height_; }
    Scalar length() const { return length_; }
    Scalar pressureDrop() const { return pLeft_ - pRight_; }

private:
    Config config_;
    FluidModel fluid_;
    Vec2 gravity_ = Vec2::Zero();
    Scalar pref_ = 1e5;
    Scalar length_ = 0.0, height_ = 0.0;
    Scalar pLeft_ = 0.0, pRight_ = 0.0;
    bool parabolicInflow_ = false;
    std::optional<std::array<Scalar, 4>> pmBox_; //!< xmin, xmax, ymin, ymax
    DarcyScheme scheme_ = DarcyScheme::tpfa;
    Scalar xi_ = 0.5;

    std::unique_ptr<Mesh> ffMesh_;
    std::unique_ptr<StaggeredTopology> topology_;
    std::unique_ptr<Mesh> pmMesh_;
    PermeabilityField K_;
    TransmissibilityTable table_;
    InterfaceMapping mapping_;
    std::unique_ptr<CoupledModel> model_;

    TimeLoopConfig timeConfig_;
    NewtonConfig newtonConfig_;

    std::array<std::vector<Index>, 3> segments_; //!< interface links of in, out, top
    std::vector<Index> cutFaces_;
    std::vector<std::string> warnings_;
};

} // end namespace Porocouple

#endif
