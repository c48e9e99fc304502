#include <porocouple/fluxstencils.hh>

#include <cmath>
#include <map>

#include <Eigen/Dense>

namespace Porocouple {

DarcyScheme darcySchemeFromString(const std::string& name)
{
    if (name == "tpfa")
        return DarcyScheme::tpfa;
    if (name == "mpfa")
        return DarcyScheme::mpfa;
    throw ParameterError("unknown Darcy scheme '" + name + "' (expected tpfa or mpfa)");
}

std::string toString(DarcyScheme scheme)
{ return scheme == DarcyScheme::tpfa ? "tpfa" : "mpfa"; }

TransmissibilityTable::TransmissibilityTable(DarcyScheme scheme, std::size_t numFluxFaces, std::size_t numCells)
: scheme_(scheme)
, faces_(numFluxFaces)
, flux_(numFluxFaces)
, pressure_(numFluxFaces)
, cellFluxFaces_(numCells)
{}

void TransmissibilityTable::setFace(Index i, const FluxFace& face, Stencil flux)
{
    faces_[i] = face;
    faces_[i].valid = true;
    flux_[i] = std::move(flux);
}

void TransmissibilityTable::finalize()
{
    active_.clear();
    for (auto& list : cellFluxFaces_)
        list.clear();
    for (Index i = 0; i < faces_.size(); ++i)
    {
        if (!faces_[i].valid)
            continue;
        active_.push_back(i);
        for (auto c : faces_[i].cells)
            if (c != invalidIndex)
                cellFluxFaces_[c].push_back(i);
    }
}

namespace {

//! Linear form in the local unknowns of an interaction region.
struct LocalForm
{
    Eigen::RowVectorXd u, c, d, g;
};

void addTo(Coefficients& coeffs, Index key, Scalar value)
{
    if (value == 0.0)
        return;
    for (auto& [k, v] : coeffs)
        if (k == key)
        {
            v += value;
            return;
        }
    coeffs.emplace_back(key, value);
}

} // end anonymous namespace

TransmissibilityTable buildMpfaTable(const Mesh& mesh, const PermeabilityField& K,
                                     Scalar xi, const Vec2& gravity)
{
    if (K.size() != mesh.numCells())
        throw ParameterError("permeability field does not match the grid");

    TransmissibilityTable table(DarcyScheme::mpfa, 2*mesh.numFaces(), mesh.numCells());
    const auto regions = buildInteractionRegions(mesh, xi);

    for (const auto& region : regions)
    {
        const std::size_t nsf = region.subFaces.size();
        const std::size_t nscv = region.scvs.size();

        // local numbering of face unknowns and boundary data
        std::vector<Index> uIdx(nsf, invalidIndex), dIdx(nsf, invalidIndex), fIdx(nsf, invalidIndex);
        std::size_t nu = 0, nd = 0, nf = 0;
        std::vector<FluxFace> fluxFaces(nsf);
        for (std::size_t i = 0; i < nsf; ++i)
        {
            const auto& sf = region.subFaces[i];
            auto& ff = fluxFaces[i];
            ff.face = sf.face;
            ff.cells = sf.cells;
            ff.measure = sf.measure;
            ff.normal = sf.normal;
            ff.point = sf.continuityPoint;
            ff.type = sf.type;
            ff.tag = sf.tag;
            if (ff.type == SubFaceType::boundary && ff.tag == BoundaryTag::none)
                throw GridError("untagged porous-medium boundary face " + std::to_string(sf.face));
            if (ff.dirichlet())
                dIdx[i] = nd++;
            else
                uIdx[i] = nu++;
            if (ff.neumann())
                fIdx[i] = nf++;
        }

        // flux of every (scv, sub-face) pair as linear form
        std::vector<std::array<LocalForm, 2>> forms(nscv);
        for (std::size_t s = 0; s < nscv; ++s)
        {
            const auto& scv = region.scvs[s];
            const Index cell = scv.cell;
            const Vec2& xK = mesh.cell(cell).center;
            Eigen::Matrix2d D;
            D.col(0) = region.subFaces[scv.subFaces[0]].continuityPoint - xK;
            D.col(1) = region.subFaces[scv.subFaces[1]].continuityPoint - xK;
            Eigen::JacobiSVD<Eigen::Matrix2d> svd(D);
            const auto sv = svd.singularValues();
            if (!(sv[1] > 0.0) || sv[0]/sv[1] > 1e8)
                throw NumericalProblem("degenerate sub-control volume geometry at vertex "
                                       + std::to_string(region.vertex));
            const Eigen::Matrix2d Dinv = D.inverse();

            for (int j = 0; j < 2; ++j)
            {
                const auto& sf = region.subFaces[scv.subFaces[j]];
                const Vec2 n = sf.cells[0] == cell ? sf.normal : Vec2(-sf.normal);
                const Eigen::Vector2d omega = -sf.measure*(Dinv*(K[cell]*n));
                auto& form = forms[s][j];
                form.u = Eigen::RowVectorXd::Zero(nu);
                form.c = Eigen::RowVectorXd::Zero(nscv);
                form.d = Eigen::RowVectorXd::Zero(nd);
                form.g = Eigen::RowVectorXd::Zero(nsf);
                for (int m = 0; m < 2; ++m)
                {
                    const Index local = scv.subFaces[m];
                    if (uIdx[local] != invalidIndex)
                        form.u[uIdx[local]] += omega[m];
                    else
                        form.d[dIdx[local]] += omega[m];
                }
                form.c[s] -= omega.sum();
                form.g[scv.subFaces[j]] += sf.measure*n.dot(K[cell]*gravity);
            }
        }

        // which (scv, j) computes the flux of sub-face i out of its cells[0] / cells[1]
        std::vector<std::array<std::pair<Index, int>, 2>> owner(nsf, {std::pair<Index, int>{invalidIndex, 0}, {invalidIndex, 0}});
        for (std::size_t s = 0; s < nscv; ++s)
            for (int j = 0; j < 2; ++j)
            {
                const Index i = region.scvs[s].subFaces[j];
                const int side = region.subFaces[i].cells[0] == region.scvs[s].cell ? 0 : 1;
                owner[i][side] = {s, j};
            }

        // local system A u = B c + Bd d + N f + G rho
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nu, nu);
        Eigen::MatrixXd B = Eigen::MatrixXd::Zero(nu, nscv);
        Eigen::MatrixXd Bd = Eigen::MatrixXd::Zero(nu, nd);
        Eigen::MatrixXd N = Eigen::MatrixXd::Zero(nu, nf);
        Eigen::MatrixXd G = Eigen::MatrixXd::Zero(nu, nsf);
        for (std::size_t i = 0; i < nsf; ++i)
        {
            if (uIdx[i] == invalidIndex)
                continue;
            const Index r = uIdx[i];
            for (int side = 0; side < 2; ++side)
            {
                const auto [s, j] = owner[i][side];
                if (s == invalidIndex)
                    continue;
                const auto& form = forms[s][j];
                A.row(r) += form.u;
                B.row(r) -= form.c;
                Bd.row(r) -= form.d;
                G.row(r) -= form.g;
            }
            if (fIdx[i] != invalidIndex)
                N(r, fIdx[i]) = 1.0;
        }

        Eigen::MatrixXd Uc(nu, nscv), Ud(nu, nd), Uf(nu, nf), Ug(nu, nsf);
        if (nu > 0)
        {
            Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
            if (!(lu.rcond() > 1e-14))
                throw NumericalProblem("singular MPFA local system at vertex " + std::to_string(region.vertex));
            Uc = lu.solve(B);
            Ud = lu.solve(Bd);
            Uf = lu.solve(N);
            Ug = lu.solve(G);
        }

        auto globalize = [&](const Eigen::RowVectorXd& c, const Eigen::RowVectorXd& d,
                             const Eigen::RowVectorXd& f, const Eigen::RowVectorXd& g) {
            Stencil st;
            for (std::size_t s = 0; s < nscv; ++s)
                addTo(st.cells, region.scvs[s].cell, c[s]);
            for (std::size_t i = 0; i < nsf; ++i)
            {
                const Index id = region.subFaces[i].id;
                if (dIdx[i] != invalidIndex)
                    addTo(st.dirichlet, id, d[dIdx[i]]);
                if (fIdx[i] != invalidIndex)
                    addTo(st.neumann, id, f[fIdx[i]]);
                addTo(st.gravity, id, g[i]);
            }
            return st;
        };

        for (std::size_t i = 0; i < nsf; ++i)
        {
            const Index id = region.subFaces[i].id;
            if (fIdx[i] != invalidIndex)
            {
                Stencil st;
                st.neumann.emplace_back(id, 1.0);
                table.setFace(id, fluxFaces[i], std::move(st));
            }
            else
            {
                const auto [s, j] = owner[i][0];
                const auto& form = forms[s][j];
                const Eigen::RowVectorXd c = form.u*Uc + form.c;
                const Eigen::RowVectorXd d = form.u*Ud + form.d;
                const Eigen::RowVectorXd f = form.u*Uf;
                const Eigen::RowVectorXd g = form.u*Ug + form.g;
                table.setFace(id, fluxFaces[i], globalize(c, d, f, g));
            }

            if (uIdx[i] != invalidIndex)
            {
                const Index r = uIdx[i];
                table.setFacePressure(id, globalize(Uc.row(r), Ud.row(r), Uf.row(r), Ug.row(r)));
            }
        }
    }

    table.finalize();
    return table;
}

TransmissibilityTable buildTpfaTable(const Mesh& mesh, const PermeabilityField& K,
                                     const Vec2& gravity)
{
    if (K.size() != mesh.numCells())
        throw ParameterError("permeability field does not match the grid");

    TransmissibilityTable table(DarcyScheme::tpfa, mesh.numFaces(), mesh.numCells());

    auto halfTransmissibility = [&](Index cell, Index f) {
        const auto& face = mesh.face(f);
        // only the diagonal part of K enters
        const Vec2 n = face.normal;
        const Scalar knn = n[0]*n[0]*K[cell](0, 0) + n[1]*n[1]*K[cell](1, 1);
        return face.measure*knn/mesh.distance(cell, f);
    };

    for (Index f = 0; f < mesh.numFaces(); ++f)
    {
        const auto& face = mesh.face(f);
        FluxFace ff;
        ff.face = f;
        ff.cells = face.cells;
        ff.measure = face.measure;
        ff.normal = face.normal;
        ff.point = face.center;
        ff.tag = face.tag;
        ff.type = !face.boundary() ? SubFaceType::interior
                : face.tag == BoundaryTag::interface ? SubFaceType::interface
                : SubFaceType::boundary;
        if (ff.type == SubFaceType::boundary && ff.tag == BoundaryTag::none)
            throw GridError("untagged porous-medium boundary face " + std::to_string(f));

        const Index cK = face.cells[0];
        const Scalar tK = halfTransmissibility(cK, f);
        const Scalar dK = mesh.distance(cK, f);
        const Scalar gn = gravity.dot(face.normal);
        Stencil st;
        if (ff.type == SubFaceType::interior)
        {
            const Index cL = face.cells[1];
            const Scalar tL = halfTransmissibility(cL, f);
            if (!(tK + tL > 0.0))
                throw NumericalProblem("vanishing transmissibility at face " + std::to_string(f));
            const Scalar T = tK*tL/(tK + tL);
            st.cells = {{cK, T}, {cL, -T}};
            if (gn != 0.0)
                st.gravity.emplace_back(f, T*gn*(dK + mesh.distance(cL, f)));
        }
        else if (ff.dirichlet())
        {
            st.cells = {{cK, tK}};
            st.dirichlet = {{f, -tK}};
            if (gn != 0.0)
                st.gravity.emplace_back(f, tK*gn*dK);
        }
        else
        {
            st.neumann = {{f, 1.0}};
            // p_face = p_K + rho g.n d_K - F/t_K
            Stencil p;
            p.cells = {{cK, 1.0}};
            p.neumann = {{f, -1.0/tK}};
            if (gn != 0.0)
                p.gravity.emplace_back(f, gn*dK);
            table.setFacePressure(f, std::move(p));
        }
        table.setFace(f, ff, std::move(st));
    }

    table.finalize();
    return table;
}

TransmissibilityTable buildTable(DarcyScheme scheme, const Mesh& mesh, const PermeabilityField& K,
                                 Scalar xi, const Vec2& gravity)
{
    if (scheme == DarcyScheme::mpfa)
        return buildMpfaTable(mesh, K, xi, gravity);
    return buildTpfaTable(mesh, K, gravity);
}

} // end namespace Porocouple
