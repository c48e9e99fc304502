#ifndef POROCOUPLE_PERMEABILITY_HH
#define POROCOUPLE_PERMEABILITY_HH

#include <vector>

#include <porocouple/common.hh>

namespace Porocouple {

/*!
 * \brief Anisotropic tensor R(alpha) diag(k/beta, k) R(-alpha).
 *
 * \param k largest eigenvalue in m^2
 * \param beta anisotropy ratio (>= 1)
 * \param alpha rotation angle in radians
 */
Tensor rotatedPermeability(Scalar k, Scalar beta, Scalar alpha);

//! Cell-wise permeability tensors of the porous medium.
class PermeabilityField
{
public:
    PermeabilityField() = default;

    //! the same tensor in all numCells cells
    PermeabilityField(std::size_t numCells, const Tensor& K);

    explicit PermeabilityField(std::vector<Tensor> tensors);

    const Tensor& operator[](Index cell) const { return tensors_[cell]; }
    std::size_t size() const { return tensors_.size(); }

private:
    static void check(const Tensor& K);
    std::vector<Tensor> tensors_;
};

} // end namespace Porocouple

#endif
