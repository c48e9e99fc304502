#ifndef POROCOUPLE_FLUXSTENCILS_HH
#define POROCOUPLE_FLUXSTENCILS_HH

#include <string>
#include <utility>
#include <vector>

#include <porocouple/common.hh>
#include <porocouple/interactionregion.hh>
#include <porocouple/mesh.hh>
#include <porocouple/permeability.hh>

namespace Porocouple {

enum class DarcyScheme { tpfa, mpfa };

DarcyScheme darcySchemeFromString(const std::string& name);
std::string toString(DarcyScheme scheme);

/*!
 * \brief A face (TPFA) or sub-face (MPFA) across which a discrete flux is computed.
 */
struct FluxFace
{
    Index face = invalidIndex;    //!< parent grid face
    std::array<Index, 2> cells{invalidIndex, invalidIndex}; //!< flux is outward of cells[0]
    Scalar measure = 0.0;
    Vec2 normal = Vec2::Zero();   //!< outward with respect to cells[0]
    Vec2 point = Vec2::Zero();    //!< continuity point (MPFA) or face center (TPFA)
    SubFaceType type = SubFaceType::interior;
    BoundaryTag tag = BoundaryTag::none;
    bool valid = false;

    bool dirichlet() const { return type == SubFaceType::boundary && tag == BoundaryTag::pressure; }
    bool neumann() const { return type == SubFaceType::interface || (type == SubFaceType::boundary && !dirichlet()); }
};

using Coefficients = std::vector<std::pair<Index, Scalar>>;

/*!
 * \brief Affine expression in the cell pressures and the boundary data.
 *
 * value = sum c p_cell + sum d p_dirichlet(face) + sum n F_neumann(face) + sum g rho(face),
 * where all data except the cell pressures is keyed by flux face id.
 */
struct Stencil
{
    Coefficients cells;
    Coefficients dirichlet;
    Coefficients neumann;
    Coefficients gravity;
};

/*!
 * \brief Precomputed flux stencils of one porous-medium discretization.
 *
 * Fluxes F are "mu times volume flux" out of cells[0]: F = -|s| n^T K (grad p - rho g).
 * Flux faces of interface type additionally carry a stencil reconstructing the
 * face pressure.
 */
class TransmissibilityTable
{
public:
    TransmissibilityTable() = default;
    TransmissibilityTable(DarcyScheme scheme, std::size_t numFluxFaces, std::size_t numCells);

    DarcyScheme scheme() const { return scheme_; }

    std::size_t numFluxFaces() const { return faces_.size(); }
    const FluxFace& fluxFace(Index i) const { return faces_[i]; }
    const Stencil& flux(Index i) const { return flux_[i]; }
    const Stencil& facePressure(Index i) const { return pressure_[i]; }

    //! flux faces adjacent to a cell
    const std::vector<Index>& cellFluxFaces(Index cell) const { return cellFluxFaces_[cell]; }

    void setFace(Index i, const FluxFace& face, Stencil flux);
    void setFacePressure(Index i, Stencil pressure) { pressure_[i] = std::move(pressure); }

    //! ids of the valid flux faces
    const std::vector<Index>& activeFaces() const { return active_; }

    void finalize();

private:
    DarcyScheme scheme_ = DarcyScheme::tpfa;
    std::vector<FluxFace> faces_;
    std::vector<Stencil> flux_;
    std::vector<Stencil> pressure_;
    std::vector<std::vector<Index>> cellFluxFaces_;
    std::vector<Index> active_;
};

/*!
 * \brief MPFA-O stencils from the interaction regions of all vertices.
 *
 * Interior sub-faces impose flux continuity, Neumann and interface sub-faces
 * impose a prescribed flux and Dirichlet sub-faces carry the known pressure.
 * Flux face ids are sub-face ids (2 face + k).
 */
TransmissibilityTable buildMpfaTable(const Mesh& mesh, const PermeabilityField& K,
                                     Scalar xi, const Vec2& gravity);

/*!
 * \brief Two-point stencils using only the diagonal entries of K.
 *
 * Flux face ids are face ids.
 */
TransmissibilityTable buildTpfaTable(const Mesh& mesh, const PermeabilityField& K,
                                     const Vec2& gravity);

TransmissibilityTable buildTable(DarcyScheme scheme, const Mesh& mesh, const PermeabilityField& K,
                                 Scalar xi, const Vec2& gravity);

} // end namespace Porocouple

#endif
