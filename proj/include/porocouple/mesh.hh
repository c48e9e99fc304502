#ifndef POROCOUPLE_MESH_HH
#define POROCOUPLE_MESH_HH

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <porocouple/common.hh>

namespace Porocouple {

//! Kind of condition imposed on a boundary face.
enum class BoundaryTag { none, velocity, pressure, interface, wall };

std::string toString(BoundaryTag tag);

struct Cell
{
    std::vector<Index> vertices; //!< counter-clockwise
    std::vector<Index> faces;    //!< faces[i] connects vertices[i] and vertices[i+1]
    Scalar volume = 0.0;
    Vec2 center = Vec2::Zero();  //!< barycenter
};

struct Face
{
    std::array<Index, 2> vertices{invalidIndex, invalidIndex};
    //! cells[0] is always valid, cells[1] is invalidIndex on the boundary
    std::array<Index, 2> cells{invalidIndex, invalidIndex};
    Scalar measure = 0.0;
    Vec2 center = Vec2::Zero();
    Vec2 normal = Vec2::Zero(); //!< unit normal, outward with respect to cells[0]
    BoundaryTag tag = BoundaryTag::none;

    bool boundary() const { return cells[1] == invalidIndex; }
};

//! Assigns a tag to a boundary face given its center and outer unit normal.
using TagFunction = std::function<BoundaryTag(const Vec2& center, const Vec2& outerNormal)>;

/*!
 * \brief Immutable two-dimensional polygonal grid.
 *
 * Faces are built from the cell edges. All queries are index based. Cell centers
 * are barycenters, face evaluation points are the edge midpoints.
 */
class Mesh
{
public:
    Mesh(std::vector<Vec2> vertices,
         std::vector<std::vector<Index>> cellVertices,
         const TagFunction& tags = {});

    std::size_t numCells() const { return cells_.size(); }
    std::size_t numFaces() const { return faces_.size(); }
    std::size_t numVertices() const { return vertices_.size(); }

    const Cell& cell(Index i) const { return cells_[i]; }
    const Face& face(Index i) const { return faces_[i]; }
    const Vec2& vertex(Index i) const { return vertices_[i]; }

    const std::vector<Cell>& cells() const { return cells_; }
    const std::vector<Face>& faces() const { return faces_; }
    const std::vector<Vec2>& vertices() const { return vertices_; }

    const std::vector<Index>& vertexFaces(Index v) const { return vertexFaces_[v]; }
    const std::vector<Index>& vertexCells(Index v) const { return vertexCells_[v]; }

    //! unit normal of face f pointing out of cell c
    Vec2 outerNormal(Index f, Index c) const;

    //! Euclidean distance between the center of cell c and the line of face f
    Scalar distance(Index c, Index f) const;

    //! neighbor of c across f, invalidIndex on the boundary
    Index otherCell(Index f, Index c) const;

    Scalar totalVolume() const;

    //! smallest and largest face measure
    std::pair<Scalar, Scalar> faceMeasureRange() const;

private:
    std::vector<Vec2> vertices_;
    std::vector<Cell> cells_;
    std::vector<Face> faces_;
    std::vector<std::vector<Index>> vertexFaces_;
    std::vector<std::vector<Index>> vertexCells_;
};

//! Predicate selecting which lattice cells of a Cartesian grid are kept.
using CellFilter = std::function<bool(const Vec2& cellCenter)>;

/*!
 * \brief Builds a structured grid of nx x ny rectangles covering origin + [0, extent].
 *
 * Cells whose centers are rejected by the optional filter are dropped, which is how
 * the free-flow channel with a porous obstacle cut out of it is created.
 */
Mesh buildCartesianMesh(const Vec2& origin, const Vec2& extent,
                        std::size_t nx, std::size_t ny,
                        const TagFunction& tags = {},
                        const CellFilter& keep = {});

//! Plain node/element lists of a triangulation.
struct TriangleMeshData
{
    std::vector<Vec2> nodes;
    std::vector<std::array<Index, 3>> triangles;
};

/*!
 * \brief Reads a triangulation in the ASCII node/element format.
 *
 * Node file: "NODES <count>" followed by "<id> <x> <y>" lines. Element file:
 * "ELEMENTS <count>" followed by "<id> <n1> <n2> <n3>" lines. Ids are 0-based.
 * Nodes not referenced by any triangle are dropped, a message is appended to
 * warnings (if given) for each of them.
 */
Mesh importTriangleMesh(std::istream& nodes, std::istream& elements,
                        const TagFunction& tags = {},
                        std::vector<std::string>* warnings = nullptr);

TriangleMeshData readTriangleMeshData(std::istream& nodes, std::istream& elements);
void writeTriangleMeshData(const TriangleMeshData& data, std::ostream& nodes, std::ostream& elements);
Mesh meshFromTriangles(const TriangleMeshData& data, const TagFunction& tags = {},
                       std::vector<std::string>* warnings = nullptr);

/*!
 * \brief Triangulates a rectangle with nx x ny quads split into two triangles each.
 *
 * Diagonals alternate in a checkerboard pattern. Interior nodes are displaced by
 * a uniformly distributed offset of at most jitter times the local spacing
 * (deterministic for a given seed); boundary nodes stay on the lattice.
 */
TriangleMeshData structuredTriangulation(const Vec2& origin, const Vec2& extent,
                                         std::size_t nx, std::size_t ny,
                                         Scalar jitter = 0.0, unsigned seed = 1);

} // end namespace Porocouple

#endif
