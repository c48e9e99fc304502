#include <porocouple/permeability.hh>

#include <cmath>

#include <Eigen/Eigenvalues>

namespace Porocouple {

Tensor rotatedPermeability(Scalar k, Scalar beta, Scalar alpha)
{
    if (!(k > 0.0))
        throw ParameterError("permeability k must be positive");
    if (!(beta >= 1.0))
        throw ParameterError("anisotropy ratio beta must be at least 1");

    Tensor R;
    R << std::cos(alpha), -std::sin(alpha),
         std::sin(alpha),  std::cos(alpha);
    Tensor D = Tensor::Zero();
    D(0, 0) = k/beta;
    D(1, 1) = k;
    Tensor K = R*D*R.transpose();
    // remove round-off asymmetry
    K(0, 1) = K(1, 0) = 0.5*(K(0, 1) + K(1, 0));
    return K;
}

PermeabilityField::PermeabilityField(std::size_t numCells, const Tensor& K)
: tensors_(numCells, K)
{ check(K); }

PermeabilityField::PermeabilityField(std::vector<Tensor> tensors)
: tensors_(std::move(tensors))
{
    for (const auto& K : tensors_)
        check(K);
}

void PermeabilityField::check(const Tensor& K)
{
    const Scalar scale = K.cwiseAbs().maxCoeff();
    if (!(scale > 0.0) || std::abs(K(0, 1) - K(1, 0)) > 1e-14*scale)
        throw ParameterError("permeability tensor must be symmetric and non-zero");
    Eigen::SelfAdjointEigenSolver<Tensor> eig(K);
    if (!(eig.eigenvalues().minCoeff() > 0.0))
        throw ParameterError("permeability tensor must be positive definite");
}

} // end namespace Porocouple
