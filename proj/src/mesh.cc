#include <porocouple/mesh.hh>

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

namespace Porocouple {

std::string toString(BoundaryTag tag)
{
    switch (tag)
    {
        case BoundaryTag::none: return "none";
        case BoundaryTag::velocity: return "velocity";
        case BoundaryTag::pressure: return "pressure";
        case BoundaryTag::interface: return "interface";
        case BoundaryTag::wall: return "wall";
    }
    return "unknown";
}

namespace {

Scalar cross(const Vec2& a, const Vec2& b)
{ return a[0]*b[1] - a[1]*b[0]; }

Scalar signedArea(const std::vector<Vec2>& points, const std::vector<Index>& polygon)
{
    Scalar area = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i)
        area += cross(points[polygon[i]], points[polygon[(i+1) % polygon.size()]]);
    return 0.5*area;
}

Vec2 polygonCentroid(const std::vector<Vec2>& points, const std::vector<Index>& polygon, Scalar area)
{
    // shift to the first vertex to limit cancellation
    const Vec2 ref = points[polygon[0]];
    Vec2 c = Vec2::Zero();
    for (std::size_t i = 0; i < polygon.size(); ++i)
    {
        const Vec2 a = points[polygon[i]] - ref;
        const Vec2 b = points[polygon[(i+1) % polygon.size()]] - ref;
        c += (a + b)*cross(a, b);
    }
    return ref + c/(6.0*area);
}

} // end anonymous namespace

Mesh::Mesh(std::vector<Vec2> vertices,
           std::vector<std::vector<Index>> cellVertices,
           const TagFunction& tags)
: vertices_(std::move(vertices))
{
    if (cellVertices.empty())
        throw GridError("mesh without cells");

    std::set<std::vector<Index>> seen;
    std::map<std::pair<Index, Index>, Index> edgeToFace;
    cells_.reserve(cellVertices.size());

    for (Index c = 0; c < cellVertices.size(); ++c)
    {
        auto polygon = std::move(cellVertices[c]);
        if (polygon.size() < 3)
            throw GridError("cell " + std::to_string(c) + " has fewer than three vertices");
        for (auto v : polygon)
            if (v >= vertices_.size())
                throw GridError("cell " + std::to_string(c) + " references unknown vertex " + std::to_string(v));

        auto sorted = polygon;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw GridError("cell " + std::to_string(c) + " repeats a vertex");
        if (!seen.insert(sorted).second)
            throw GridError("duplicate cell " + std::to_string(c));

        Scalar area = signedArea(vertices_, polygon);
        if (area < 0.0)
        {
            std::reverse(polygon.begin(), polygon.end());
            area = -area;
        }
        if (area < 1e-14)
            throw GridError("degenerate cell " + std::to_string(c) + " (area " + std::to_string(area) + ")");

        Cell cell;
        cell.volume = area;
        cell.center = polygonCentroid(vertices_, polygon, area);

        // star-shapedness with respect to the center
        for (std::size_t i = 0; i < polygon.size(); ++i)
        {
            const Vec2& a = vertices_[polygon[i]];
            const Vec2& b = vertices_[polygon[(i+1) % polygon.size()]];
            if (cross(b - a, cell.center - a) <= 0.0)
                throw GridError("cell " + std::to_string(c) + " is not star-shaped with respect to its center");
        }

        for (std::size_t i = 0; i < polygon.size(); ++i)
        {
            const Index va = polygon[i];
            const Index vb = polygon[(i+1) % polygon.size()];
            const auto key = std::minmax(va, vb);
            auto it = edgeToFace.find(key);
            if (it == edgeToFace.end())
            {
                Face face;
                face.vertices = {va, vb};
                face.cells[0] = c;
                const Vec2 d = vertices_[vb] - vertices_[va];
                face.measure = d.norm();
                face.center = 0.5*(vertices_[va] + vertices_[vb]);
                face.normal = Vec2(d[1], -d[0])/face.measure;
                edgeToFace.emplace(key, faces_.size());
                cell.faces.push_back(faces_.size());
                faces_.push_back(face);
            }
            else
            {
                auto& face = faces_[it->second];
                if (face.cells[1] != invalidIndex)
                    throw GridError("edge shared by more than two cells at cell " + std::to_string(c));
                face.cells[1] = c;
                cell.faces.push_back(it->second);
            }
        }
        cell.vertices = std::move(polygon);
        cells_.push_back(std::move(cell));
    }

    vertexFaces_.resize(vertices_.size());
    vertexCells_.resize(vertices_.size());
    for (Index f = 0; f < faces_.size(); ++f)
    {
        auto& face = faces_[f];
        for (auto v : face.vertices)
            vertexFaces_[v].push_back(f);
        if (face.boundary() && tags)
            face.tag = tags(face.center, face.normal);
    }
    for (Index c = 0; c < cells_.size(); ++c)
        for (auto v : cells_[c].vertices)
            vertexCells_[v].push_back(c);
}

Vec2 Mesh::outerNormal(Index f, Index c) const
{
    const auto& face = faces_[f];
    if (face.cells[0] == c)
        return face.normal;
    if (face.cells[1] == c)
        return -face.normal;
    throw GridError("face " + std::to_string(f) + " is not a face of cell " + std::to_string(c));
}

Scalar Mesh::distance(Index c, Index f) const
{
    const auto& face = faces_[f];
    return std::abs((face.center - cells_[c].center).dot(face.normal));
}

Index Mesh::otherCell(Index f, Index c) const
{
    const auto& face = faces_[f];
    return face.cells[0] == c ? face.cells[1] : face.cells[0];
}

Scalar Mesh::totalVolume() const
{
    Scalar v = 0.0;
    for (const auto& c : cells_)
        v += c.volume;
    return v;
}

std::pair<Scalar, Scalar> Mesh::faceMeasureRange() const
{
    Scalar lo = std::numeric_limits<Scalar>::max(), hi = 0.0;
    for (const auto& f : faces_)
    {
        lo = std::min(lo, f.measure);
        hi = std::max(hi, f.measure);
    }
    return {lo, hi};
}

Mesh buildCartesianMesh(const Vec2& origin, const Vec2& extent,
                        std::size_t nx, std::size_t ny,
                        const TagFunction& tags,
                        const CellFilter& keep)
{
    if (nx == 0 || ny == 0)
        throw GridError("Cartesian grid needs at least one cell per direction");
    if (!(extent[0] > 0.0) || !(extent[1] > 0.0))
        throw GridError("Cartesian grid needs a positive extent");

    const Scalar hx = extent[0]/nx;
    const Scalar hy = extent[1]/ny;
    auto node = [&](std::size_t i, std::size_t j) { return j*(nx+1) + i; };

    std::vector<Vec2> lattice((nx+1)*(ny+1));
    for (std::size_t j = 0; j <= ny; ++j)
        for (std::size_t i = 0; i <= nx; ++i)
        {
            // hit the upper bounds exactly
            const Scalar x = (i == nx) ? origin[0] + extent[0] : origin[0] + i*hx;
            const Scalar y = (j == ny) ? origin[1] + extent[1] : origin[1] + j*hy;
            lattice[node(i, j)] = Vec2(x, y);
        }

    std::vector<std::vector<Index>> cells;
    cells.reserve(nx*ny);
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i)
        {
            const Vec2 center = 0.5*(lattice[node(i, j)] + lattice[node(i+1, j+1)]);
            if (keep && !keep(center))
                continue;
            cells.push_back({node(i, j), node(i+1, j), node(i+1, j+1), node(i, j+1)});
        }
    if (cells.empty())
        throw GridError("cell filter removed all cells");

    // drop lattice nodes not used by any kept cell
    std::vector<Index> newIndex(lattice.size(), invalidIndex);
    std::vector<Vec2> vertices;
    for (auto& cell : cells)
        for (auto& v : cell)
        {
            if (newIndex[v] == invalidIndex)
            {
                newIndex[v] = vertices.size();
                vertices.push_back(lattice[v]);
            }
            v = newIndex[v];
        }

    return Mesh(std::move(vertices), std::move(cells), tags);
}

namespace {

std::size_t readHeader(std::istream& in, const std::string& keyword)
{
    std::string word;
    long long count = -1;
    if (!(in >> word >> count) || word != keyword || count < 0)
        throw GridError("expected header '" + keyword + " <count>'");
    return static_cast<std::size_t>(count);
}

} // end anonymous namespace

TriangleMeshData readTriangleMeshData(std::istream& nodes, std::istream& elements)
{
    TriangleMeshData data;

    const auto numNodes = readHeader(nodes, "NODES");
    data.nodes.resize(numNodes);
    std::vector<bool> haveNode(numNodes, false);
    for (std::size_t n = 0; n < numNodes; ++n)
    {
        long long id;
        Scalar x, y;
        if (!(nodes >> id >> x >> y))
            throw GridError("node file: could not read node entry " + std::to_string(n));
        if (id < 0 || static_cast<std::size_t>(id) >= numNodes || haveNode[id])
            throw GridError("node file: invalid or repeated node id " + std::to_string(id));
        haveNode[id] = true;
        data.nodes[id] = Vec2(x, y);
    }

    const auto numElements = readHeader(elements, "ELEMENTS");
    data.triangles.resize(numElements);
    std::vector<bool> haveElement(numElements, false);
    for (std::size_t e = 0; e < numElements; ++e)
    {
        long long id, a, b, c;
        if (!(elements >> id >> a >> b >> c))
            throw GridError("element file: could not read element entry " + std::to_string(e));
        if (id < 0 || static_cast<std::size_t>(id) >= numElements || haveElement[id])
            throw GridError("element file: invalid or repeated element id " + std::to_string(id));
        for (auto n : {a, b, c})
            if (n < 0 || static_cast<std::size_t>(n) >= numNodes)
                throw GridError("element " + std::to_string(id) + " references unknown node " + std::to_string(n));
        haveElement[id] = true;
        data.triangles[id] = {Index(a), Index(b), Index(c)};
    }
    return data;
}

void writeTriangleMeshData(const TriangleMeshData& data, std::ostream& nodes, std::ostream& elements)
{
    nodes << "NODES " << data.nodes.size() << '\n';
    nodes.precision(17);
    for (std::size_t n = 0; n < data.nodes.size(); ++n)
        nodes << n << ' ' << data.nodes[n][0] << ' ' << data.nodes[n][1] << '\n';
    elements << "ELEMENTS " << data.triangles.size() << '\n';
    for (std::size_t e = 0; e < data.triangles.size(); ++e)
    {
        const auto& t = data.triangles[e];
        elements << e << ' ' << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    }
}

Mesh meshFromTriangles(const TriangleMeshData& data, const TagFunction& tags,
                       std::vector<std::string>* warnings)
{
    std::vector<Index> newIndex(data.nodes.size(), invalidIndex);
    std::vector<Vec2> vertices;
    std::vector<std::vector<Index>> cells;
    cells.reserve(data.triangles.size());
    for (const auto& t : data.triangles)
    {
        std::vector<Index> cell;
        for (auto n : t)
        {
            if (newIndex[n] == invalidIndex)
            {
                newIndex[n] = vertices.size();
                vertices.push_back(data.nodes[n]);
            }
            cell.push_back(newIndex[n]);
        }
        cells.push_back(std::move(cell));
    }

    if (warnings)
        for (std::size_t n = 0; n < data.nodes.size(); ++n)
            if (newIndex[n] == invalidIndex)
                warnings->push_back("dangling node " + std::to_string(n) + " removed");

    return Mesh(std::move(vertices), std::move(cells), tags);
}

Mesh importTriangleMesh(std::istream& nodes, std::istream& elements,
                        const TagFunction& tags, std::vector<std::string>* warnings)
{
    return meshFromTriangles(readTriangleMeshData(nodes, elements), tags, warnings);
}

TriangleMeshData structuredTriangulation(const Vec2& origin, const Vec2& extent,
                                         std::size_t nx, std::size_t ny,
                                         Scalar jitter, unsigned seed)
{
    if (nx == 0 || ny == 0 || !(extent[0] > 0.0) || !(extent[1] > 0.0))
        throw GridError("invalid triangulation parameters");

    TriangleMeshData data;
    const Scalar hx = extent[0]/nx, hy = extent[1]/ny;
    std::mt19937 gen(seed);
    std::uniform_real_distribution<Scalar> offset(-jitter, jitter);

    data.nodes.reserve((nx+1)*(ny+1));
    for (std::size_t j = 0; j <= ny; ++j)
        for (std::size_t i = 0; i <= nx; ++i)
        {
            Vec2 p(i == nx ? origin[0] + extent[0] : origin[0] + i*hx,
                   j == ny ? origin[1] + extent[1] : origin[1] + j*hy);
            if (jitter > 0.0 && i > 0 && i < nx && j > 0 && j < ny)
            {
                const Scalar dx = offset(gen), dy = offset(gen);
                p += Vec2(dx*hx, dy*hy);
            }
            data.nodes.push_back(p);
        }

    auto node = [&](std::size_t i, std::size_t j) { return Index(j*(nx+1) + i); };
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i)
        {
            const Index a = node(i, j), b = node(i+1, j), c = node(i+1, j+1), d = node(i, j+1);
            if ((i + j) % 2 == 0)
            {
                data.triangles.push_back({a, b, c});
                data.triangles.push_back({a, c, d});
            }
            else
            {
                data.triangles.push_back({a, b, d});
                data.triangles.push_back({b, c, d});
            }
        }
    return data;
}

} // end namespace Porocouple
