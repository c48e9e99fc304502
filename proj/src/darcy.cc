#include <porocouple/darcy.hh>

#include <cmath>

#include <porocouple/coupling.hh>

namespace Porocouple {

DarcyModel::DarcyModel(const Mesh& mesh, const TransmissibilityTable& table, const FluidModel& fluid,
                       DarcyBoundaryData bc, const Vec2& gravity, Scalar pref, const DofLayout& layout)
: mesh_(&mesh), table_(&table), fluid_(&fluid), bc_(std::move(bc))
, gravity_(gravity), pref_(pref), layout_(layout)
{
    dirichlet_.assign(table.numFluxFaces(), 0.0);
    neumannVelocity_.assign(table.numFluxFaces(), 0.0);
    for (auto i : table.activeFaces())
    {
        const auto& ff = table.fluxFace(i);
        if (ff.dirichlet())
        {
            if (!bc_.pressure)
                throw ParameterError("porous-medium pressure boundary without pressure data");
            dirichlet_[i] = bc_.pressure(ff.point);
        }
        else if (ff.type == SubFaceType::boundary && ff.tag == BoundaryTag::velocity && bc_.normalVelocity)
            neumannVelocity_[i] = bc_.normalVelocity(ff.point);
    }
    source_.assign(mesh.numCells(), 0.0);
    if (bc_.source)
        for (Index c = 0; c < mesh.numCells(); ++c)
            source_[c] = bc_.source(mesh.cell(c).center)*mesh.cell(c).volume;
}

Scalar DarcyModel::gravityDensity(Index fluxFace, const StateView& u) const
{
    const auto& ff = table_->fluxFace(fluxFace);
    const Scalar rhoK = density(cellPressure(ff.cells[0], u));
    if (ff.cells[1] == invalidIndex)
        return rhoK;
    return 0.5*(rhoK + density(cellPressure(ff.cells[1], u)));
}

Scalar DarcyModel::neumannFlux(Index fluxFace, const StateView& u) const
{
    const auto& ff = table_->fluxFace(fluxFace);
    if (ff.type == SubFaceType::interface)
    {
        if (!coupling_)
            return 0.0; // uncoupled: no-flow interface
        return coupling_->pmNeumannFlux(fluxFace, u);
    }
    if (neumannVelocity_[fluxFace] == 0.0)
        return 0.0;
    return viscosity(cellPressure(ff.cells[0], u))*ff.measure*neumannVelocity_[fluxFace];
}

Scalar DarcyModel::evaluate(const Stencil& st, const StateView& u) const
{
    Scalar value = 0.0;
    for (const auto& [cell, c] : st.cells)
        value += c*cellPressure(cell, u);
    for (const auto& [face, c] : st.dirichlet)
        value += c*dirichlet_[face];
    for (const auto& [face, c] : st.neumann)
        value += c*neumannFlux(face, u);
    for (const auto& [face, c] : st.gravity)
        value += c*gravityDensity(face, u);
    return value;
}

Scalar DarcyModel::flux(Index fluxFace, const StateView& u) const
{ return evaluate(table_->flux(fluxFace), u); }

Scalar DarcyModel::massFlux(Index fluxFace, const StateView& u) const
{
    const auto& ff = table_->fluxFace(fluxFace);
    if (ff.type == SubFaceType::interface && coupling_)
        return coupling_->pmMassFlux(fluxFace, u);

    const Scalar F = flux(fluxFace, u);
    const Scalar pK = cellPressure(ff.cells[0], u);
    const Scalar mobK = density(pK)/viscosity(pK);
    Scalar mobL = mobK;
    if (ff.cells[1] != invalidIndex)
    {
        const Scalar pL = cellPressure(ff.cells[1], u);
        mobL = density(pL)/viscosity(pL);
    }
    else if (ff.dirichlet())
        mobL = density(dirichlet_[fluxFace])/viscosity(dirichlet_[fluxFace]);
    return upwind(mobK, mobL, F)*F;
}

Scalar DarcyModel::residual(Index cell, const StateView& u, const SolutionVector& old, Scalar dt) const
{
    const auto& K = mesh_->cell(cell);
    Scalar r = 0.0;
    if (std::isfinite(dt))
    {
        const Scalar p = cellPressure(cell, u);
        const Scalar pOld = old[layout_.pmPressure(cell)];
        r += K.volume/dt*(density(p) - density(pOld));
    }
    for (auto i : table_->cellFluxFaces(cell))
    {
        const Scalar q = massFlux(i, u);
        r += table_->fluxFace(i).cells[0] == cell ? q : -q;
    }
    return r - source_[cell];
}

Vec2 DarcyModel::cellVelocity(Index cell, const StateView& u) const
{
    // v_K = 1/|K| sum_sigma q_sigma (x_sigma - x_K), exact for constant velocities
    const auto& K = mesh_->cell(cell);
    Vec2 v = Vec2::Zero();
    for (auto i : table_->cellFluxFaces(cell))
    {
        const auto& ff = table_->fluxFace(i);
        const Scalar sign = ff.cells[0] == cell ? 1.0 : -1.0;
        Scalar q;
        if (ff.type == SubFaceType::interface && coupling_)
            q = coupling_->pmVolumeFlux(i, u);
        else
            q = flux(i, u)/viscosity(cellPressure(cell, u));
        const Vec2 mid = mesh_->face(ff.face).center;
        v += sign*q*(mid - K.center);
    }
    return v/K.volume;
}

} // end namespace Porocouple
