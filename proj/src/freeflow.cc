#include <porocouple/freeflow.hh>

#include <cmath>

#include <porocouple/coupling.hh>

namespace Porocouple {

DualFaceValues cellCenterOperators(Scalar vxE, Scalar vxW, Scalar vyN, Scalar vyS, Scalar h)
{
    DualFaceValues r;
    r.average = Vec2(0.5*(vxE + vxW), 0.5*(vyN + vyS));
    r.jump = Vec2(2.0/h*(vxE - vxW), 2.0/h*(vyN - vyS));
    return r;
}

DualFaceValues vertexOperators(Scalar vxN, Scalar vxS, Scalar vyE, Scalar vyW, Scalar h)
{
    DualFaceValues r;
    r.average = Vec2(0.5*(vxN + vxS), 0.5*(vyE + vyW));
    const Scalar j = (vxN - vxS + vyE - vyW)/h;
    r.jump = Vec2(j, j);
    return r;
}

FreeFlowModel::FreeFlowModel(const StaggeredTopology& topology, const FluidModel& fluid,
                             FreeFlowBoundaryData bc, const Vec2& gravity, Scalar pref,
                             const DofLayout& layout)
: topology_(&topology), fluid_(&fluid), bc_(std::move(bc))
, gravity_(gravity), pref_(pref), layout_(layout)
{
    const auto& mesh = topology.mesh();
    boundaryPressure_.assign(mesh.numFaces(), 0.0);
    for (Index f = 0; f < mesh.numFaces(); ++f)
    {
        const auto& face = mesh.face(f);
        if (!face.boundary())
            continue;
        if (face.tag == BoundaryTag::none)
            throw GridError("untagged free-flow boundary face " + std::to_string(f));
        if (face.tag == BoundaryTag::pressure)
        {
            if (!bc_.pressure)
                throw ParameterError("free-flow pressure boundary without pressure data");
            boundaryPressure_[f] = bc_.pressure(face.center);
        }
    }
    source_.assign(mesh.numCells(), 0.0);
    if (bc_.source)
        for (Index c = 0; c < mesh.numCells(); ++c)
            source_[c] = bc_.source(mesh.cell(c).center)*mesh.cell(c).volume;
}

bool FreeFlowModel::dirichletFace(Index face) const
{
    const auto& f = mesh().face(face);
    return f.boundary() && (f.tag == BoundaryTag::velocity || f.tag == BoundaryTag::wall);
}

Vec2 FreeFlowModel::boundaryVelocity(const Vec2& x) const
{
    return bc_.velocity ? bc_.velocity(x) : Vec2(Vec2::Zero());
}

Scalar FreeFlowModel::cellDensity(Index cell, const StateView& u) const
{ return density(u[layout_.ffPressure(cell)]); }

Scalar FreeFlowModel::faceDensity(Index face, const StateView& u) const
{
    const auto& vol = topology_->volume(face);
    if (vol.cells[0] == invalidIndex)
        return cellDensity(vol.cells[1], u);
    if (vol.cells[1] == invalidIndex)
        return cellDensity(vol.cells[0], u);
    return 0.5*(cellDensity(vol.cells[0], u) + cellDensity(vol.cells[1], u));
}

Scalar FreeFlowModel::slipFactor(Index face, int tangentAxis) const
{
    if (!coupling_)
        throw GridError("interface face " + std::to_string(face) + " without coupling");
    const Index l = coupling_->mapping().linkOfFfFace(face);
    if (l == invalidIndex)
        throw GridError("free-flow interface face " + std::to_string(face) + " is not mapped");
    const Tensor& K = coupling_->permeability(l);
    return bjsSlipFactor(coupling_->alphaBJ(), topology_->h(), std::sqrt(K(tangentAxis, tangentAxis)));
}

Scalar FreeFlowModel::axialMassFlux(Index face, const StateView& u) const
{
    const auto& vol = topology_->volume(face);
    const auto& f = mesh().face(face);
    const Scalar v = velocity(face, u);
    if (f.boundary() && f.tag == BoundaryTag::interface && coupling_)
    {
        const Index l = coupling_->mapping().linkOfFfFace(face);
        return coupling_->density(l, u)*f.measure*v;
    }
    Scalar rhoMinus, rhoPlus;
    if (vol.cells[0] != invalidIndex && vol.cells[1] != invalidIndex)
    {
        rhoMinus = cellDensity(vol.cells[0], u);
        rhoPlus = cellDensity(vol.cells[1], u);
    }
    else
    {
        const Index inner = vol.cells[vol.innerSide()];
        const Scalar rhoInner = cellDensity(inner, u);
        const Scalar rhoOuter = f.tag == BoundaryTag::pressure ? density(boundaryPressure(face)) : rhoInner;
        rhoMinus = vol.cells[0] != invalidIndex ? rhoInner : rhoOuter;
        rhoPlus = vol.cells[1] != invalidIndex ? rhoInner : rhoOuter;
    }
    return upwind(rhoMinus, rhoPlus, v)*f.measure*v;
}

Scalar FreeFlowModel::massResidual(Index cell, const StateView& u, const SolutionVector& old, Scalar dt) const
{
    const auto& K = mesh().cell(cell);
    Scalar r = 0.0;
    if (std::isfinite(dt))
        r += K.volume/dt*(cellDensity(cell, u) - density(old[layout_.ffPressure(cell)]));
    for (auto f : K.faces)
    {
        const auto& vol = topology_->volume(f);
        // velocity dofs point along +e_a, i.e. out of the minus cell
        const Scalar q = axialMassFlux(f, u);
        r += vol.cells[0] == cell ? q : -q;
    }
    return r - source_[cell];
}

Scalar FreeFlowModel::momentumResidual(Index face, const StateView& u, const SolutionVector& old, Scalar dt) const
{
    const auto& f = mesh().face(face);
    const auto& vol = topology_->volume(face);
    const int a = vol.axis, b = 1 - a;

    if (dirichletFace(face))
        return velocity(face, u) - boundaryVelocity(f.center)[a];

    const Scalar h = topology_->h();
    const bool half = vol.halfVolume();
    const Scalar vSelf = velocity(face, u);
    const Scalar rhoSelf = faceDensity(face, u);
    const Scalar volume = half ? 0.5*h*h : h*h;

    Scalar r = 0.0;

    // storage and gravity
    if (std::isfinite(dt))
    {
        Scalar rhoOld;
        auto oldDensity = [&](Index c) { return density(old[layout_.ffPressure(c)]); };
        if (vol.cells[0] == invalidIndex)
            rhoOld = oldDensity(vol.cells[1]);
        else if (vol.cells[1] == invalidIndex)
            rhoOld = oldDensity(vol.cells[0]);
        else
            rhoOld = 0.5*(oldDensity(vol.cells[0]) + oldDensity(vol.cells[1]));
        r += volume/dt*(rhoSelf*vSelf - rhoOld*old[layout_.ffVelocity(face)]);
    }
    r -= volume*rhoSelf*gravity_[a];

    // frontal dual faces at the adjacent cell centers
    for (int side = 0; side < 2; ++side)
    {
        const Index c = vol.cells[side];
        if (c == invalidIndex)
            continue;
        const Scalar ns = side == 1 ? 1.0 : -1.0;
        const Index other = vol.frontal[side];
        const Scalar vOther = velocity(other, u);
        const Scalar rhoOther = faceDensity(other, u);
        const Scalar pc = u[layout_.ffPressure(c)];
        // P point: average and jump along the face axis
        const Scalar vPlus = side == 1 ? vOther : vSelf;
        const Scalar vMinus = side == 1 ? vSelf : vOther;
        const Scalar avgN = ns*0.5*(vPlus + vMinus);
        const Scalar jumpN = ns*2.0/h*(vPlus - vMinus);
        r += h*avgN*upwind(rhoSelf*vSelf, rhoOther*vOther, avgN);
        r -= h*viscosity(pc)*jumpN;
        r += h*ns*pc;
    }

    // boundary dual face of a half control volume
    if (half)
    {
        const int outSide = vol.cells[0] == invalidIndex ? 0 : 1;
        const Scalar ns = outSide == 1 ? 1.0 : -1.0;
        if (f.tag == BoundaryTag::pressure)
        {
            const Scalar pG = boundaryPressure(face);
            const Scalar vn = ns*vSelf;
            r += h*vn*upwind(rhoSelf*vSelf, density(pG)*vSelf, vn);
            r += h*ns*pG;
        }
        else if (f.tag == BoundaryTag::interface)
        {
            if (!coupling_)
                throw GridError("interface face " + std::to_string(face) + " without coupling");
            const Index l = coupling_->mapping().linkOfFfFace(face);
            if (l == invalidIndex)
                throw GridError("free-flow interface face " + std::to_string(face) + " is not mapped");
            r += h*ns*coupling_->pmFacePressure(l, u);
        }
        else
            throw GridError("unsupported boundary condition at face " + std::to_string(face));
    }

    // lateral dual faces at the vertices
    const Scalar lateral = half ? 0.5*h : h;
    for (int s = 0; s < 2; ++s)
    {
        const Scalar ns = s == 1 ? 1.0 : -1.0;

        // cross velocities (axis b) on both sides of the vertex
        std::array<Scalar, 2> vb{0.0, 0.0};
        const auto& cross = vol.cross[s];
        const bool have0 = cross[0] != invalidIndex, have1 = cross[1] != invalidIndex;
        if (!have0 && !have1)
            throw GridError("unresolved lateral neighbors at face " + std::to_string(face));
        if (have0) vb[0] = velocity(cross[0], u);
        if (have1) vb[1] = velocity(cross[1], u);
        if (!have0 || !have1)
        {
            // the missing face lies outside, use the condition of this boundary face
            const int miss = have0 ? 1 : 0;
            const Scalar vIn = vb[1 - miss];
            if (f.tag == BoundaryTag::pressure)
                vb[miss] = vIn;
            else if (f.tag == BoundaryTag::interface)
                vb[miss] = (2.0*slipFactor(face, b) - 1.0)*vIn;
            else
                vb[miss] = 2.0*boundaryVelocity(vol.vertexPosition[s])[b] - vIn;
        }

        // parallel velocity beyond the lateral face
        Scalar vPar, rhoPar;
        const Index par = vol.parallel[s];
        if (par != invalidIndex)
        {
            vPar = velocity(par, u);
            rhoPar = faceDensity(par, u);
        }
        else
        {
            // ghost value from the boundary the vertex lies on
            BoundaryTag tag = BoundaryTag::none;
            for (auto cf : cross)
            {
                if (cf == invalidIndex || !mesh().face(cf).boundary())
                    continue;
                const auto t = mesh().face(cf).tag;
                if (t == BoundaryTag::wall || t == BoundaryTag::velocity)
                    tag = BoundaryTag::wall;
                else if (t == BoundaryTag::interface && tag != BoundaryTag::wall)
                    tag = BoundaryTag::interface;
                else if (t == BoundaryTag::pressure && tag == BoundaryTag::none)
                    tag = BoundaryTag::pressure;
            }
            if (tag == BoundaryTag::wall)
            {
                const Scalar vG = boundaryVelocity(vol.vertexPosition[s])[a];
                const Index next = vol.parallel[1 - s];
                // quadratic extrapolation through the wall value, exact for parabolic profiles
                vPar = next != invalidIndex ? 8.0/3.0*vG - 2.0*vSelf + velocity(next, u)/3.0
                                            : 2.0*vG - vSelf;
            }
            else if (tag == BoundaryTag::interface)
            {
                // average the slip factor of the interface faces meeting at the vertex
                Scalar phi = 0.0;
                int n = 0;
                for (auto cf : cross)
                    if (cf != invalidIndex && mesh().face(cf).boundary() && mesh().face(cf).tag == BoundaryTag::interface)
                    {
                        phi += slipFactor(cf, a);
                        ++n;
                    }
                phi /= n;
                vPar = (2.0*phi - 1.0)*vSelf;
            }
            else if (tag == BoundaryTag::pressure)
                vPar = vSelf;
            else
                throw GridError("missing boundary condition at vertex of face " + std::to_string(face));
            rhoPar = rhoSelf;
        }

        Scalar mu = 0.0;
        for (auto c : vol.vertexCells[s])
            mu += viscosity(u[layout_.ffPressure(c)]);
        mu /= vol.vertexCells[s].size();

        const Scalar avgN = ns*0.5*(vb[0] + vb[1]);
        const Scalar dParallel = s == 1 ? vPar - vSelf : vSelf - vPar;
        const Scalar jumpN = ns*(dParallel + vb[1] - vb[0])/h;
        r += lateral*avgN*upwind(rhoSelf*vSelf, rhoPar*vPar, avgN);
        r -= lateral*mu*jumpN;
    }

    return r;
}

Vec2 FreeFlowModel::cellVelocity(Index cell, const StateView& u) const
{
    const auto [i, j] = topology_->cellLattice(cell);
    const Scalar vx = 0.5*(velocity(topology_->faceAt(0, i, j), u) + velocity(topology_->faceAt(0, i+1, j), u));
    const Scalar vy = 0.5*(velocity(topology_->faceAt(1, i, j), u) + velocity(topology_->faceAt(1, i, j+1), u));
    return Vec2(vx, vy);
}

} // end namespace Porocouple
