#include <porocouple/interfacemapping.hh>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace Porocouple {

namespace {

std::string formatCoordinate(Scalar x)
{
    std::ostringstream s;
    s << x;
    return s.str();
}

} // end anonymous namespace

InterfaceMapping::InterfaceMapping(const Mesh& ffMesh, const Mesh& pmMesh,
                                   const TransmissibilityTable& table, Scalar xi)
{
    if (table.scheme() == DarcyScheme::mpfa && std::abs(xi - 0.5) > 1e-14)
        throw ParameterError("coupling with MPFA requires xi = 0.5");

    std::vector<Index> ffFaces;
    for (Index f = 0; f < ffMesh.numFaces(); ++f)
        if (ffMesh.face(f).boundary() && ffMesh.face(f).tag == BoundaryTag::interface)
            ffFaces.push_back(f);

    std::vector<Index> pmFaces;
    for (auto i : table.activeFaces())
        if (table.fluxFace(i).type == SubFaceType::interface)
            pmFaces.push_back(i);

    if (ffFaces.empty() && pmFaces.empty())
        return;

    Scalar h = 0.0;
    for (auto f : ffFaces)
        h = std::max(h, ffMesh.face(f).measure);
    const Scalar tol = 1e-12*std::max(h, 1e-300);

    ffLink_.assign(ffMesh.numFaces(), invalidIndex);
    pmLink_.assign(table.numFluxFaces(), invalidIndex);
    std::vector<std::string> problems;
    for (auto i : pmFaces)
    {
        const auto& pf = table.fluxFace(i);
        if (table.scheme() == DarcyScheme::mpfa)
        {
            // 2:1 coarsening: sub-face width equals free-flow face width
            if (std::abs(pmMesh.face(pf.face).measure - 2.0*pf.measure) > tol)
                problems.push_back(" pm face " + std::to_string(pf.face) + " (not split in halves)");
        }
        Index match = invalidIndex;
        for (auto f : ffFaces)
        {
            const auto& face = ffMesh.face(f);
            if ((face.center - pf.point).norm() <= tol && std::abs(face.measure - pf.measure) <= tol)
            {
                match = f;
                break;
            }
        }
        if (match == invalidIndex)
        {
            problems.push_back(" pm flux face " + std::to_string(i) + " at (" + formatCoordinate(pf.point[0]) + ", " + formatCoordinate(pf.point[1]) + ")");
            continue;
        }
        if (ffLink_[match] != invalidIndex)
        {
            problems.push_back(" ff face " + std::to_string(match) + " (matched twice)");
            continue;
        }
        const auto& face = ffMesh.face(match);
        InterfaceLink link;
        link.ffFace = match;
        link.ffCell = face.cells[0];
        link.pmFluxFace = i;
        link.pmCell = pf.cells[0];
        link.normal = face.normal;
        link.measure = face.measure;
        if (link.normal.dot(pf.normal) > -0.5)
            problems.push_back(" ff face " + std::to_string(match) + " (normals not opposite)");
        ffLink_[match] = links_.size();
        pmLink_[i] = links_.size();
        links_.push_back(link);
    }
    for (auto f : ffFaces)
        if (ffLink_[f] == invalidIndex)
            problems.push_back(" ff face " + std::to_string(f) + " at (" + formatCoordinate(ffMesh.face(f).center[0]) + ", " + formatCoordinate(ffMesh.face(f).center[1]) + ")");

    if (!problems.empty())
    {
        std::string message = "non-matching interface grids (" + std::to_string(problems.size()) + " problems):";
        for (std::size_t k = 0; k < std::min<std::size_t>(problems.size(), 6); ++k)
            message += problems[k];
        if (problems.size() > 6)
            message += " ...";
        throw GridError(message);
    }
}

} // end namespace Porocouple
