#include <porocouple/staggered.hh>

#include <cmath>

namespace Porocouple {

StaggeredTopology::StaggeredTopology(const Mesh& mesh)
: mesh_(&mesh)
{
    Vec2 lo = mesh.vertex(0), hi = mesh.vertex(0);
    for (const auto& v : mesh.vertices())
    {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    origin_ = lo;

    // all cells must be squares of the same size
    for (Index c = 0; c < mesh.numCells(); ++c)
    {
        const auto& cell = mesh.cell(c);
        if (cell.vertices.size() != 4)
            throw GridError("staggered grid needs quadrilateral cells");
        Vec2 cmin = mesh.vertex(cell.vertices[0]), cmax = cmin;
        for (auto v : cell.vertices)
        {
            cmin = cmin.cwiseMin(mesh.vertex(v));
            cmax = cmax.cwiseMax(mesh.vertex(v));
        }
        const Vec2 size = cmax - cmin;
        if (std::abs(cell.volume - size[0]*size[1]) > 1e-9*cell.volume)
            throw GridError("staggered grid needs axis-aligned rectangles");
        if (c == 0)
            h_ = size[0];
        if (std::abs(size[0] - h_) > 1e-12*h_ || std::abs(size[1] - h_) > 1e-12*h_)
            throw GridError("staggered grid needs uniform square cells (cell " + std::to_string(c) + ")");
    }

    nx_ = std::lround((hi[0] - lo[0])/h_);
    ny_ = std::lround((hi[1] - lo[1])/h_);

    auto latticeCoordinate = [&](Scalar x, Scalar x0) {
        const Scalar s = (x - x0)/h_;
        const long i = std::lround(s);
        if (std::abs(s - i) > 1e-8)
            throw GridError("grid node off the uniform lattice");
        return i;
    };

    cellMap_.assign(nx_*ny_, invalidIndex);
    cellLattice_.resize(mesh.numCells());
    for (Index c = 0; c < mesh.numCells(); ++c)
    {
        const Vec2& x = mesh.cell(c).center;
        const long i = latticeCoordinate(x[0] - 0.5*h_, lo[0]);
        const long j = latticeCoordinate(x[1] - 0.5*h_, lo[1]);
        cellMap_[j*nx_ + i] = c;
        cellLattice_[c] = {i, j};
    }

    faceMap_[0].assign((nx_+1)*ny_, invalidIndex);
    faceMap_[1].assign(nx_*(ny_+1), invalidIndex);
    volumes_.resize(mesh.numFaces());
    for (Index f = 0; f < mesh.numFaces(); ++f)
    {
        const auto& face = mesh.face(f);
        const int axis = std::abs(face.normal[0]) > 0.5 ? 0 : 1;
        const Vec2& x = face.center;
        long i, j;
        if (axis == 0)
        {
            i = latticeCoordinate(x[0], lo[0]);
            j = latticeCoordinate(x[1] - 0.5*h_, lo[1]);
            faceMap_[0][j*(nx_+1) + i] = f;
        }
        else
        {
            i = latticeCoordinate(x[0] - 0.5*h_, lo[0]);
            j = latticeCoordinate(x[1], lo[1]);
            faceMap_[1][j*nx_ + i] = f;
        }
        volumes_[f].axis = axis;
        volumes_[f].lattice = {i, j};
        volumes_[f].face = f;
    }

    for (auto& vol : volumes_)
    {
        const int a = vol.axis, b = 1 - a;
        std::array<long, 2> ea{0, 0}, eb{0, 0};
        ea[a] = 1;
        eb[b] = 1;
        const auto& idx = vol.lattice;
        auto shifted = [](std::array<long, 2> p, const std::array<long, 2>& e, long s) {
            p[0] += s*e[0];
            p[1] += s*e[1];
            return p;
        };
        auto cell = [&](const std::array<long, 2>& p) { return cellAt(p[0], p[1]); };
        auto face = [&](int ax, const std::array<long, 2>& p) { return faceAt(ax, p[0], p[1]); };

        vol.cells = {cell(shifted(idx, ea, -1)), cell(idx)};
        vol.frontal = {face(a, shifted(idx, ea, -1)), face(a, shifted(idx, ea, 1))};
        vol.parallel = {face(a, shifted(idx, eb, -1)), face(a, shifted(idx, eb, 1))};
        for (int s = 0; s < 2; ++s)
        {
            const auto vertex = shifted(idx, eb, s);
            vol.cross[s] = {face(b, shifted(vertex, ea, -1)), face(b, vertex)};
            vol.vertexPosition[s] = origin_ + h_*Vec2(vertex[0], vertex[1]);
            for (long dj = -1; dj <= 0; ++dj)
                for (long di = -1; di <= 0; ++di)
                {
                    const Index c = cellAt(vertex[0] + di, vertex[1] + dj);
                    if (c != invalidIndex)
                        vol.vertexCells[s].push_back(c);
                }
        }
        if (vol.cells[0] == invalidIndex && vol.cells[1] == invalidIndex)
            throw GridError("face without adjacent cells in the staggered grid");
    }
}

Index StaggeredTopology::cellAt(long i, long j) const
{
    if (i < 0 || j < 0 || i >= nx_ || j >= ny_)
        return invalidIndex;
    return cellMap_[j*nx_ + i];
}

Index StaggeredTopology::faceAt(int axis, long i, long j) const
{
    if (axis == 0)
    {
        if (i < 0 || j < 0 || i > nx_ || j >= ny_)
            return invalidIndex;
        return faceMap_[0][j*(nx_+1) + i];
    }
    if (i < 0 || j < 0 || i >= nx_ || j > ny_)
        return invalidIndex;
    return faceMap_[1][j*nx_ + i];
}

} // end namespace Porocouple
