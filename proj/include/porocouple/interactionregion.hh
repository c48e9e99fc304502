#ifndef POROCOUPLE_INTERACTIONREGION_HH
#define POROCOUPLE_INTERACTIONREGION_HH

#include <array>
#include <vector>

#include <porocouple/common.hh>
#include <porocouple/mesh.hh>

namespace Porocouple {

enum class SubFaceType { interior, boundary, interface };

/*!
 * \brief Half of a grid face belonging to the interaction region of one of its vertices.
 *
 * Sub-faces are numbered globally as 2*face + k where face.vertices[k] is the
 * anchor vertex of the region.
 */
struct SubFace
{
    Index id = invalidIndex;     //!< global sub-face index
    Index face = invalidIndex;   //!< parent face
    Scalar measure = 0.0;
    Vec2 continuityPoint = Vec2::Zero();
    std::array<Index, 2> cells{invalidIndex, invalidIndex}; //!< as in the parent face
    Vec2 normal = Vec2::Zero();  //!< outward with respect to cells[0]
    SubFaceType type = SubFaceType::interior;
    BoundaryTag tag = BoundaryTag::none;
};

//! Part of a cell inside an interaction region.
struct SubControlVolume
{
    Index cell = invalidIndex;
    std::array<Index, 2> subFaces{invalidIndex, invalidIndex}; //!< local sub-face indices
};

struct InteractionRegion
{
    Index vertex = invalidIndex;
    std::vector<SubControlVolume> scvs;
    std::vector<SubFace> subFaces;
};

inline Index subFaceId(Index face, int localVertex) { return 2*face + localVertex; }

/*!
 * \brief Builds one interaction region per grid vertex.
 *
 * The continuity point on a sub-face is x_sigma + xi (v - x_sigma), where
 * x_sigma is the parent face center and v the anchor vertex.
 */
std::vector<InteractionRegion> buildInteractionRegions(const Mesh& mesh, Scalar xi);

} // end namespace Porocouple

#endif
