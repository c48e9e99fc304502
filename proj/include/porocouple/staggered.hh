#ifndef POROCOUPLE_STAGGERED_HH
#define POROCOUPLE_STAGGERED_HH

#include <array>
#include <vector>

#include <porocouple/common.hh>
#include <porocouple/mesh.hh>

namespace Porocouple {

/*!
 * \brief Secondary control volume around one face of the free-flow grid.
 *
 * The face has normal axis a (0 = x, 1 = y); b = 1 - a is the tangential axis.
 * In lattice coordinates the face sits between the "minus" cell idx - e_a and the
 * "plus" cell idx. Neighbor faces that do not exist are invalidIndex.
 */
struct SecondaryVolume
{
    int axis = 0;
    std::array<long, 2> lattice{0, 0};
    Index face = invalidIndex;
    std::array<Index, 2> cells{invalidIndex, invalidIndex}; //!< minus, plus cell

    //! parallel faces at idx - e_a and idx + e_a (frontal dual faces at the cell centers)
    std::array<Index, 2> frontal{invalidIndex, invalidIndex};

    //! parallel faces at idx - e_b and idx + e_b (beyond the lateral dual faces)
    std::array<Index, 2> parallel{invalidIndex, invalidIndex};

    /*!
     * cross[s][m]: faces of axis b touching the lateral vertex s
     * (s = 0: vertex idx, s = 1: vertex idx + e_b); m = 0 on the minus side
     * (vertex - e_a), m = 1 on the plus side (vertex).
     */
    std::array<std::array<Index, 2>, 2> cross{{{invalidIndex, invalidIndex}, {invalidIndex, invalidIndex}}};

    //! cells sharing lateral vertex s
    std::array<std::vector<Index>, 2> vertexCells;

    std::array<Vec2, 2> vertexPosition;

    bool halfVolume() const { return cells[0] == invalidIndex || cells[1] == invalidIndex; }

    //! the existing cell if halfVolume(), side index 0 or 1
    int innerSide() const { return cells[0] == invalidIndex ? 1 : 0; }

    //! number of dual faces (frontal, frontal or boundary, two lateral)
    static constexpr int numDualFaces() { return 4; }
};

/*!
 * \brief Dual topology of a uniform Cartesian free-flow grid (MAC arrangement).
 *
 * Cells may be missing from the bounding lattice (obstacles); faces adjacent to
 * a missing cell are boundary faces.
 */
class StaggeredTopology
{
public:
    explicit StaggeredTopology(const Mesh& mesh);

    Scalar h() const { return h_; }
    const Vec2& origin() const { return origin_; }
    long nx() const { return nx_; }
    long ny() const { return ny_; }

    const Mesh& mesh() const { return *mesh_; }

    const SecondaryVolume& volume(Index face) const { return volumes_[face]; }
    std::size_t numVolumes() const { return volumes_.size(); }

    //! cell index at lattice position (i, j) or invalidIndex
    Index cellAt(long i, long j) const;

    //! face of the given axis at lattice position (i, j) or invalidIndex
    Index faceAt(int axis, long i, long j) const;

    //! lattice position of a cell
    std::array<long, 2> cellLattice(Index cell) const { return cellLattice_[cell]; }

private:
    const Mesh* mesh_;
    Scalar h_ = 0.0;
    Vec2 origin_ = Vec2::Zero();
    long nx_ = 0, ny_ = 0;
    std::vector<Index> cellMap_;
    std::array<std::vector<Index>, 2> faceMap_;
    std::vector<std::array<long, 2>> cellLattice_;
    std::vector<SecondaryVolume> volumes_;
};

} // end namespace Porocouple

#endif
