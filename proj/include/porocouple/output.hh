#ifndef POROCOUPLE_OUTPUT_HH
#define POROCOUPLE_OUTPUT_HH

#include <string>
#include <utility>
#include <vector>

#include <porocouple/common.hh>
#include <porocouple/mesh.hh>

namespace Porocouple {

using ScalarCellData = std::pair<std::string, std::vector<Scalar>>;
using VectorCellData = std::pair<std::string, std::vector<Vec2>>;

/*!
 * \brief Writes a grid with cell data as legacy ASCII VTK unstructured grid.
 */
void writeVtk(const std::string& path, const Mesh& mesh,
              const std::vector<ScalarCellData>& scalars,
              const std::vector<VectorCellData>& vectors,
              const std::string& title = "porocouple");

//! formats a value in full-precision scientific notation
std::string formatScientific(Scalar value);

} // end namespace Porocouple

#endif
