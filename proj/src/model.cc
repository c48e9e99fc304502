#include <porocouple/model.hh>

#include <limits>

namespace Porocouple {

CoupledModel::CoupledModel(const FluidModel& fluid, const Vec2& gravity, Scalar pref)
: fluid_(&fluid), gravity_(gravity), pref_(pref)
{}

void CoupledModel::setFreeFlow(const StaggeredTopology& topology, FreeFlowBoundaryData bc)
{
    topology_ = &topology;
    ffBc_ = std::move(bc);
}

void CoupledModel::setPorousMedium(const Mesh& mesh, const PermeabilityField& K,
                                   const TransmissibilityTable& table, DarcyBoundaryData bc)
{
    pmMesh_ = &mesh;
    K_ = &K;
    table_ = &table;
    pmBc_ = std::move(bc);
}

void CoupledModel::setInterface(const InterfaceMapping& mapping, Scalar alphaBJ)
{
    mapping_ = &mapping;
    alphaBJ_ = alphaBJ;
}

void CoupledModel::finalize()
{
    layout_ = DofLayout{};
    if (topology_)
    {
        layout_.numFfCells = topology_->mesh().numCells();
        layout_.numFfFaces = topology_->mesh().numFaces();
    }
    if (pmMesh_)
        layout_.numPmCells = pmMesh_->numCells();
    if (layout_.size() == 0)
        throw ParameterError("model without subdomains");

    if (topology_)
        freeFlow_ = std::make_unique<FreeFlowModel>(*topology_, *fluid_, ffBc_, gravity_, pref_, layout_);
    if (pmMesh_)
        darcy_ = std::make_unique<DarcyModel>(*pmMesh_, *table_, *fluid_, pmBc_, gravity_, pref_, layout_);
    if (mapping_ && mapping_->size() > 0)
    {
        if (!freeFlow_ || !darcy_)
            throw ParameterError("interface coupling needs both subdomains");
        coupling_ = std::make_unique<InterfaceCoupling>(*mapping_, *darcy_, *K_, *fluid_, alphaBJ_, pref_, layout_);
        freeFlow_->setCoupling(coupling_.get());
        darcy_->setCoupling(coupling_.get());
    }
    old_ = SolutionVector::Zero(layout_.size());
}

void CoupledModel::prepareStep(Scalar dt, const SolutionVector& old)
{
    if (!(dt > 0.0))
        throw ParameterError("time step size must be positive");
    dt_ = dt;
    old_ = old;
}

Scalar CoupledModel::residual(Index row, const StateView& u) const
{
    switch (layout_.block(row))
    {
        case DofLayout::Block::ffPressure:
            return freeFlow_->massResidual(row, u, old_, dt_);
        case DofLayout::Block::ffVelocity:
            return freeFlow_->momentumResidual(row - layout_.numFfCells, u, old_, dt_);
        case DofLayout::Block::pmPressure:
            return darcy_->residual(row - layout_.numFfCells - layout_.numFfFaces, u, old_, dt_);
    }
    return 0.0;
}

std::string CoupledModel::describe(Index dof) const
{
    switch (layout_.block(dof))
    {
        case DofLayout::Block::ffPressure:
            return "free-flow pressure of cell " + std::to_string(dof);
        case DofLayout::Block::ffVelocity:
            return "free-flow velocity of face " + std::to_string(dof - layout_.numFfCells);
        case DofLayout::Block::pmPressure:
            return "porous-medium pressure of cell " + std::to_string(dof - layout_.numFfCells - layout_.numFfFaces);
    }
    return "dof " + std::to_string(dof);
}

SolutionVector CoupledModel::initialSolution(Scalar p0) const
{
    SolutionVector u = SolutionVector::Zero(layout_.size());
    for (Index c = 0; c < layout_.numFfCells; ++c)
        u[layout_.ffPressure(c)] = p0;
    for (Index c = 0; c < layout_.numPmCells; ++c)
        u[layout_.pmPressure(c)] = p0;
    if (freeFlow_)
    {
        for (Index f = 0; f < layout_.numFfFaces; ++f)
            if (freeFlow_->dirichletFace(f))
            {
                // the Dirichlet residual is linear, one evaluation gives the value
                StateView view(u);
                u[layout_.ffVelocity(f)] -= freeFlow_->momentumResidual(f, view, old_, dt_);
            }
    }
    return u;
}

} // end namespace Porocouple
