#include <porocouple/scenario.hh>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include <porocouple/output.hh>

namespace Porocouple {

namespace {

FluidModel makeFluid(const Config& config)
{
    const auto kind = config.getString("fluid.kind", "air");
    if (kind == "air" || kind == "ideal_gas_air")
        return FluidModel::idealGasAir(config.getScalar("fluid.temperature", 293.15),
                                       config.getScalar("fluid.molar_mass", 0.02896),
                                       config.getScalar("fluid.viscosity", 1.8e-5));
    if (kind == "constant")
        return FluidModel::constant(config.getScalar("fluid.reference_density"),
                                    config.getScalar("fluid.viscosity"));
    throw ParameterError("unknown fluid kind '" + kind + "'");
}

BoundaryTag tagFromString(const std::string& name)
{
    if (name == "wall" || name == "noslip") return BoundaryTag::wall;
    if (name == "interface") return BoundaryTag::interface;
    if (name == "pressure") return BoundaryTag::pressure;
    if (name == "velocity") return BoundaryTag::velocity;
    throw ParameterError("unknown boundary type '" + name + "'");
}

} // end anonymous namespace

Scenario::Scenario(const Config& config)
: config_(config)
, fluid_(makeFluid(config))
{
    length_ = config.getScalar("domain.length");
    height_ = config.getScalar("domain.height");
    if (!(length_ > 0.0) || !(height_ > 0.0))
        throw ParameterError("domain extent must be positive");
    const long nx = config.getInt("freeflow.nx");
    const long ny = config.getInt("freeflow.ny");
    if (nx < 1 || ny < 1)
        throw ParameterError("freeflow.nx and freeflow.ny must be positive");
    const Scalar h = length_/nx;
    if (std::abs(height_/ny - h) > 1e-12*h)
        throw ParameterError("free-flow cells must be squares (domain.length/freeflow.nx = domain.height/freeflow.ny)");

    pref_ = config.getScalar("pressure.reference", 1e5);
    if (config.has("gravity"))
    {
        const auto g = config.getScalars("gravity");
        if (g.size() != 2)
            throw ParameterError("gravity needs two components");
        gravity_ = Vec2(g[0], g[1]);
    }

    pRight_ = config.getScalar("bc.right.pressure");
    pLeft_ = config.getScalar("bc.left.pressure");
    const auto leftType = config.getString("bc.left.type", "pressure");
    if (leftType == "poiseuille")
        parabolicInflow_ = true;
    else if (leftType != "pressure")
        throw ParameterError("bc.left.type must be pressure or poiseuille");
    if (config.getString("bc.walls", "noslip") != "noslip")
        throw ParameterError("only bc.walls = noslip is supported");

    // porous box
    if (config.has("pm.xmin"))
    {
        pmBox_ = std::array<Scalar, 4>{config.getScalar("pm.xmin"), config.getScalar("pm.xmax"),
                                       config.getScalar("pm.ymin"), config.getScalar("pm.ymax")};
        const auto& b = *pmBox_;
        if (!(b[0] < b[1]) || !(b[2] < b[3]) || b[0] < 0.0 || b[1] > length_ || b[2] < 0.0 || b[3] > height_)
            throw ParameterError("porous box must be a non-empty subset of the domain");
    }

    const Scalar gtol = 1e-9*h;
    auto onPmBox = [&](const Vec2& x) {
        if (!pmBox_)
            return false;
        const auto& b = *pmBox_;
        const bool inX = x[0] >= b[0] - gtol && x[0] <= b[1] + gtol;
        const bool inY = x[1] >= b[2] - gtol && x[1] <= b[3] + gtol;
        return inX && inY;
    };

    // free flow
    TagFunction ffTags = [&, onPmBox](const Vec2& x, const Vec2&) {
        if (std::abs(x[1]) < gtol || std::abs(x[1] - height_) < gtol)
            return BoundaryTag::wall;
        if (std::abs(x[0]) < gtol)
            return parabolicInflow_ ? BoundaryTag::velocity : BoundaryTag::pressure;
        if (std::abs(x[0] - length_) < gtol)
            return BoundaryTag::pressure;
        if (onPmBox(x))
            return BoundaryTag::interface;
        return BoundaryTag::none;
    };
    CellFilter keep;
    if (pmBox_)
    {
        const auto b = *pmBox_;
        keep = [b](const Vec2& x) { return !(x[0] > b[0] && x[0] < b[1] && x[1] > b[2] && x[1] < b[3]); };
    }
    ffMesh_ = std::make_unique<Mesh>(buildCartesianMesh(Vec2(0.0, 0.0), Vec2(length_, height_), nx, ny, ffTags, keep));
    topology_ = std::make_unique<StaggeredTopology>(*ffMesh_);
    if (pmBox_)
    {
        // the box must be resolved by the free-flow lattice
        for (auto v : *pmBox_)
            if (std::abs(v/h - std::round(v/h)) > 1e-9)
                throw ParameterError("porous box is not aligned with the free-flow grid");
    }

    model_ = std::make_unique<CoupledModel>(fluid_, gravity_, pref_);

    FreeFlowBoundaryData ffBc;
    ffBc.pressure = [this](const Vec2& x) { return x[0] < 0.5*length_ ? pLeft_ : pRight_; };
    ffBc.velocity = [this, gtol](const Vec2& x) {
        if (parabolicInflow_ && std::abs(x[0]) < gtol)
            return Vec2(poiseuilleVelocity(x[1]), 0.0);
        return Vec2(0.0, 0.0);
    };
    model_->setFreeFlow(*topology_, ffBc);

    if (pmBox_)
    {
        const auto& b = *pmBox_;
        scheme_ = darcySchemeFromString(config.getString("darcy.scheme", "tpfa"));
        xi_ = config.getScalar("darcy.xi", 0.5);
        const std::array<BoundaryTag, 4> sideTags{
            tagFromString(config.getString("pm.tag.left", "interface")),
            tagFromString(config.getString("pm.tag.right", "interface")),
            tagFromString(config.getString("pm.tag.bottom", std::abs(b[2]) < gtol ? "wall" : "interface")),
            tagFromString(config.getString("pm.tag.top", "interface"))};
        TagFunction pmTags = [b, gtol, sideTags](const Vec2& x, const Vec2&) {
            if (std::abs(x[1] - b[2]) < gtol) return sideTags[2];
            if (std::abs(x[1] - b[3]) < gtol) return sideTags[3];
            if (std::abs(x[0] - b[0]) < gtol) return sideTags[0];
            if (std::abs(x[0] - b[1]) < gtol) return sideTags[1];
            return BoundaryTag::none;
        };

        const std::string schemeName = toString(scheme_);
        const std::string nodesKey = config.has("pm.mesh." + schemeName + ".nodes") ? "pm.mesh." + schemeName + ".nodes" : "pm.mesh.nodes";
        const std::string elementsKey = config.has("pm.mesh." + schemeName + ".elements") ? "pm.mesh." + schemeName + ".elements" : "pm.mesh.elements";
        if (config.has(nodesKey))
        {
            const auto nodesPath = config.resolvePath(config.getString(nodesKey));
            const auto elementsPath = config.resolvePath(config.getString(elementsKey));
            std::ifstream nodes(nodesPath), elements(elementsPath);
            if (!nodes)
                throw ParameterError("cannot open mesh file '" + nodesPath + "'");
            if (!elements)
                throw ParameterError("cannot open mesh file '" + elementsPath + "'");
            pmMesh_ = std::make_unique<Mesh>(importTriangleMesh(nodes, elements, pmTags, &warnings_));
        }
        else
        {
            // default: interface ratio 2:1 for MPFA, 1:1 for TPFA
            const Scalar hpm = scheme_ == DarcyScheme::mpfa ? 2.0*h : h;
            const long pnx = config.getInt("pm.nx", std::lround((b[1] - b[0])/hpm));
            const long pny = config.getInt("pm.ny", std::lround((b[3] - b[2])/hpm));
            if (pnx < 1 || pny < 1)
                throw ParameterError("pm.nx and pm.ny must be positive");
            pmMesh_ = std::make_unique<Mesh>(buildCartesianMesh(Vec2(b[0], b[2]), Vec2(b[1] - b[0], b[3] - b[2]), pnx, pny, pmTags));
        }
        for (Index f = 0; f < pmMesh_->numFaces(); ++f)
            if (pmMesh_->face(f).boundary() && pmMesh_->face(f).tag == BoundaryTag::none)
                throw GridError("porous-medium boundary face off the porous box");

        const Scalar k = config.getScalar("perm.k");
        const Scalar beta = config.getScalar("perm.beta", 1.0);
        const Scalar alpha = config.getScalar("perm.alpha_degrees", 0.0)*std::numbers::pi/180.0;
        K_ = PermeabilityField(pmMesh_->numCells(), rotatedPermeability(k, beta, alpha));
        table_ = buildTable(scheme_, *pmMesh_, K_, xi_, gravity_);
        mapping_ = InterfaceMapping(*ffMesh_, *pmMesh_, table_, xi_);

        DarcyBoundaryData pmBc;
        const Scalar pmPressure = config.getScalar("pm.bc.pressure", 0.0);
        pmBc.pressure = [pmPressure](const Vec2&) { return pmPressure; };
        model_->setPorousMedium(*pmMesh_, K_, table_, pmBc);
        model_->setInterface(mapping_, config.getScalar("coupling.alpha_bf", 1.0));

        for (Index l = 0; l < mapping_.size(); ++l)
        {
            const Vec2& n = mapping_.link(l).normal;
            if (n[0] > 0.5) segments_[0].push_back(l);
            else if (n[0] < -0.5) segments_[1].push_back(l);
            else if (n[1] < -0.5) segments_[2].push_back(l);
        }
    }
    model_->finalize();

    if (config.has("observer.cutline"))
    {
        const auto c = config.getScalars("observer.cutline");
        if (c.size() != 3)
            throw ParameterError("observer.cutline needs x, y0 and y1");
        for (Index f = 0; f < ffMesh_->numFaces(); ++f)
        {
            const auto& face = ffMesh_->face(f);
            if (topology_->volume(f).axis == 0 && std::abs(face.center[0] - c[0]) < gtol
                && face.center[1] > c[1] && face.center[1] < c[2])
                cutFaces_.push_back(f);
        }
        const Scalar covered = cutFaces_.size()*h;
        if (cutFaces_.empty() || std::abs(covered - (c[2] - c[1])) > 1e-9*h)
            throw ParameterError("cut line is not aligned with free-flow faces");
    }

    // solver settings
    timeConfig_.dtInitial = config.getScalar("time.dt_initial", 1.0);
    timeConfig_.dtMax = config.getScalar("time.dt_max", std::numeric_limits<Scalar>::infinity());
    timeConfig_.dtMin = config.getScalar("time.dt_min", 1e-8);
    timeConfig_.tEnd = config.getScalar("time.t_end");
    timeConfig_.growthFactor = config.getScalar("time.growth", 1.5);
    timeConfig_.backoffFactor = config.getScalar("time.backoff", 0.5);
    timeConfig_.growthIterations = config.getInt("time.growth_iterations", 4);
    timeConfig_.stationaryTolerance = config.getScalar("time.stationary_tolerance", 1e-12);
    timeConfig_.stopWhenStationary = config.getBool("time.stop_when_stationary", true);
    timeConfig_.outputTimes = config.getScalars("output.times", {});
    newtonConfig_.absTol = config.getScalar("newton.abs_tol", 1e-11);
    newtonConfig_.relTol = config.getScalar("newton.rel_tol", 1e-8);
    newtonConfig_.maxIterations = config.getInt("newton.max_iter", 15);
    newtonConfig_.fdEpsilon = config.getScalar("newton.fd_epsilon", 1e-8);
    newtonConfig_.verbose = config.getBool("newton.verbose", false);
    validate(timeConfig_);
    validate(newtonConfig_);
}

Scalar Scenario::poiseuilleVelocity(Scalar y) const
{
    const Scalar mu = fluid_.viscosity(pref_);
    return (pLeft_ - pRight_)/(2.0*mu*length_)*y*(height_ - y);
}

SolutionVector Scenario::initialSolution() const
{
    SolutionVector u = model_->initialSolution(0.0);
    return u;
}

FluxSummary Scenario::fluxes(const SolutionVector& u, Scalar time) const
{
    FluxSummary s;
    s.time = time;
    StateView view(u);
    const auto* coupling = model_->coupling();
    if (coupling)
    {
        std::array<Scalar*, 3> targets{&s.gammaIn, &s.gammaOut, &s.gammaTop};
        for (int k = 0; k < 3; ++k)
            for (auto l : segments_[k])
                *targets[k] += coupling->ffMassFlux(l, view);
        for (Index l = 0; l < mapping_.size(); ++l)
        {
            const Scalar ff = coupling->ffMassFlux(l, view);
            const Scalar pm = model_->darcy()->massFlux(mapping_.link(l).pmFluxFace, view);
            s.transfer += std::max(ff, 0.0);
            const Scalar scale = std::max(std::abs(ff), std::abs(pm));
            if (scale > 0.0)
                s.interfaceMismatch = std::max(s.interfaceMismatch, std::abs(ff + pm)/scale);
        }
    }
    const auto* ff = model_->freeFlow();
    for (auto f : cutFaces_)
        s.constriction += ff->axialMassFlux(f, view);

    // net outflow over the external boundaries
    for (Index f = 0; f < ffMesh_->numFaces(); ++f)
    {
        const auto& face = ffMesh_->face(f);
        if (!face.boundary() || face.tag == BoundaryTag::interface)
            continue;
        const auto& vol = topology_->volume(f);
        const Scalar sign = vol.cells[0] != invalidIndex ? 1.0 : -1.0;
        s.boundaryBalance += sign*ff->axialMassFlux(f, view);
    }
    if (const auto* darcy = model_->darcy())
        for (auto i : table_.activeFaces())
        {
            const auto& fface = table_.fluxFace(i);
            if (fface.type == SubFaceType::boundary)
                s.boundaryBalance += darcy->massFlux(i, view);
        }
    return s;
}

void Scenario::writeFields(const std::string& directory, int index, const SolutionVector& u) const
{
    StateView view(u);
    const auto& layout = model_->layout();
    std::vector<Scalar> p(ffMesh_->numCells());
    std::vector<Vec2> v(ffMesh_->numCells());
    for (Index c = 0; c < ffMesh_->numCells(); ++c)
    {
        p[c] = u[layout.ffPressure(c)];
        v[c] = model_->freeFlow()->cellVelocity(c, view);
    }
    char name[64];
    std::snprintf(name, sizeof(name), "freeflow-%05d.vtk", index);
    writeVtk((std::filesystem::path(directory) / name).string(), *ffMesh_,
             {{"pressure", p}}, {{"velocity", v}}, "free flow, pressure relative to p_ref");

    if (pmMesh_)
    {
        std::vector<Scalar> pp(pmMesh_->numCells());
        std::vector<Vec2> pv(pmMesh_->numCells());
        for (Index c = 0; c < pmMesh_->numCells(); ++c)
        {
            pp[c] = u[layout.pmPressure(c)];
            pv[c] = model_->darcy()->cellVelocity(c, view);
        }
        std::snprintf(name, sizeof(name), "porousmedium-%05d.vtk", index);
        writeVtk((std::filesystem::path(directory) / name).string(), *pmMesh_,
                 {{"pressure", pp}}, {{"velocity", pv}}, "porous medium, pressure relative to p_ref");
    }
}

RunResult Scenario::run(const std::string& outputDirectory, bool verbose)
{
    RunResult result;
    SolutionVector u = initialSolution();
    const bool write = !outputDirectory.empty();
    std::ofstream csv;
    int vtkIndex = 0;
    if (write)
    {
        std::filesystem::create_directories(outputDirectory);
        csv.open((std::filesystem::path(outputDirectory) / "fluxes.csv").string());
        if (!csv)
            throw Error("cannot write to output directory '" + outputDirectory + "'");
        csv << "time,gamma_in,gamma_out,gamma_top,constriction\n";
        writeFields(outputDirectory, vtkIndex++, u);
    }

    auto observer = [&](const StepInfo& info, const SolutionVector& state) {
        const auto s = fluxes(state, info.time);
        result.series.push_back(s);
        result.maxInterfaceMismatch = std::max(result.maxInterfaceMismatch, s.interfaceMismatch);
        if (verbose)
            std::cout << "step " << info.step << "  t = " << info.time << "  dt = " << info.dt
                      << "  newton " << info.newtonIterations << "  in/out/top = "
                      << s.gammaIn << " " << s.gammaOut << " " << s.gammaTop << '\n';
        if (write)
        {
            csv << formatScientific(s.time) << ',' << formatScientific(s.gammaIn) << ','
                << formatScientific(s.gammaOut) << ',' << formatScientific(s.gammaTop) << ','
                << formatScientific(s.constriction) << '\n';
            if (info.outputTime || (info.stationary && timeConfig_.stopWhenStationary))
                writeFields(outputDirectory, vtkIndex++, state);
        }
    };

    auto newton = newtonConfig_;
    newton.verbose = newton.verbose && verbose;
    result.loop = runTimeLoop(*model_, u, timeConfig_, newton, layoutBlocks(model_->layout()), observer);
    result.solution = u;
    result.final = fluxes(u, result.loop.time);

    if (write)
    {
        nlohmann::json j;
        j["scheme"] = pmMesh_ ? toString(scheme_) : "none";
        j["dofs"] = model_->layout().size();
        j["time"] = result.loop.time;
        j["stationary"] = result.loop.stationary;
        j["accepted_steps"] = result.loop.acceptedSteps;
        j["rejected_steps"] = result.loop.rejectedSteps;
        j["newton_iterations"] = result.loop.newtonIterations;
        j["fluxes"] = {{"gamma_in", result.final.gammaIn}, {"gamma_out", result.final.gammaOut},
                       {"gamma_top", result.final.gammaTop}, {"constriction", result.final.constriction},
                       {"transfer", result.final.transfer}};
        j["boundary_balance"] = result.final.boundaryBalance;
        j["max_interface_mismatch"] = result.maxInterfaceMismatch;
        j["warnings"] = warnings_;
        std::ofstream out((std::filesystem::path(outputDirectory) / "summary.json").string());
        out << j.dump(2) << '\n';
    }
    return result;
}

std::string Scenario::info() const
{
    std::ostringstream s;
    const auto& layout = model_->layout();
    s << "free-flow cells:      " << layout.numFfCells << '\n'
      << "free-flow faces:      " << layout.numFfFaces << '\n'
      << "porous-medium cells:  " << layout.numPmCells << '\n'
      << "interface faces:      " << mapping_.size() << '\n'
      << "total dofs:           " << layout.size() << '\n'
      << "mesh width h:         " << topology_->h() << '\n';
    if (pmMesh_)
        s << "darcy scheme:         " << toString(scheme_) << '\n';
    for (const auto& w : warnings_)
        s << "warning: " << w << '\n';
    return s.str();
}

} // end namespace Porocouple
