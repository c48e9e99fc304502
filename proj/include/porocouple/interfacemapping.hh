#ifndef POROCOUPLE_INTERFACEMAPPING_HH
#define POROCOUPLE_INTERFACEMAPPING_HH

#include <vector>

#include <porocouple/common.hh>
#include <porocouple/fluxstencils.hh>
#include <porocouple/mesh.hh>

namespace Porocouple {

//! One coincident pair of a free-flow face and a porous-medium flux face.
struct InterfaceLink
{
    Index ffFace = invalidIndex;
    Index ffCell = invalidIndex;
    Index pmFluxFace = invalidIndex;
    Index pmCell = invalidIndex;
    Vec2 normal = Vec2::Zero(); //!< unit normal pointing out of the free-flow domain
    Scalar measure = 0.0;
};

/*!
 * \brief Bijection between free-flow interface faces and porous-medium interface flux faces.
 *
 * With MPFA every porous-medium interface face is split into two sub-faces,
 * each coinciding with one free-flow face (2:1 coarsening, xi = 0.5). With
 * TPFA the faces coincide one to one.
 */
class InterfaceMapping
{
public:
    InterfaceMapping() = default;
    InterfaceMapping(const Mesh& ffMesh, const Mesh& pmMesh,
                     const TransmissibilityTable& table, Scalar xi);

    std::size_t size() const { return links_.size(); }
    const InterfaceLink& link(Index i) const { return links_[i]; }
    const std::vector<InterfaceLink>& links() const { return links_; }

    //! link index of a free-flow face or invalidIndex
    Index linkOfFfFace(Index f) const { return f < ffLink_.size() ? ffLink_[f] : invalidIndex; }

    //! link index of a porous-medium flux face or invalidIndex
    Index linkOfPmFluxFace(Index f) const { return f < pmLink_.size() ? pmLink_[f] : invalidIndex; }

private:
    std::vector<InterfaceLink> links_;
    std::vector<Index> ffLink_;
    std::vector<Index> pmLink_;
};

} // end namespace Porocouple

#endif
