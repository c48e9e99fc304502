#include <porocouple/output.hh>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace Porocouple {

std::string formatScientific(Scalar value)
{
    std::ostringstream s;
    s << std::scientific << std::setprecision(16) << value;
    return s.str();
}

void writeVtk(const std::string& path, const Mesh& mesh,
              const std::vector<ScalarCellData>& scalars,
              const std::vector<VectorCellData>& vectors,
              const std::string& title)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot open '" + path + "' for writing");
    out << std::setprecision(17);
    out << "# vtk DataFile Version 2.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << mesh.numVertices() << " double\n";
    for (const auto& v : mesh.vertices())
        out << v[0] << ' ' << v[1] << " 0\n";

    std::size_t size = 0;
    for (const auto& c : mesh.cells())
        size += c.vertices.size() + 1;
    out << "CELLS " << mesh.numCells() << ' ' << size << '\n';
    for (const auto& c : mesh.cells())
    {
        out << c.vertices.size();
        for (auto v : c.vertices)
            out << ' ' << v;
        out << '\n';
    }
    out << "CELL_TYPES " << mesh.numCells() << '\n';
    for (const auto& c : mesh.cells())
        out << (c.vertices.size() == 3 ? 5 : c.vertices.size() == 4 ? 9 : 7) << '\n';

    out << "CELL_DATA " << mesh.numCells() << '\n';
    for (const auto& [name, data] : scalars)
    {
        if (data.size() != mesh.numCells())
            throw Error("cell data '" + name + "' has wrong size");
        out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
        for (auto x : data)
            out << x << '\n';
    }
    for (const auto& [name, data] : vectors)
    {
        if (data.size() != mesh.numCells())
            throw Error("cell data '" + name + "' has wrong size");
        out << "VECTORS " << name << " double\n";
        for (const auto& x : data)
            out << x[0] << ' ' << x[1] << " 0\n";
    }
    if (!out)
        throw Error("error while writing '" + path + "'");
}

} // end namespace Porocouple
