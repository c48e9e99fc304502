#include <porocouple/interactionregion.hh>

#include <algorithm>

namespace Porocouple {

std::vector<InteractionRegion> buildInteractionRegions(const Mesh& mesh, Scalar xi)
{
    if (!(xi >= 0.0 && xi < 1.0))
        throw ParameterError("continuity point parameter xi must lie in [0, 1)");

    std::vector<InteractionRegion> regions(mesh.numVertices());
    for (Index v = 0; v < mesh.numVertices(); ++v)
    {
        auto& region = regions[v];
        region.vertex = v;
        const Vec2& xv = mesh.vertex(v);

        const auto& faces = mesh.vertexFaces(v);
        for (auto f : faces)
        {
            const auto& face = mesh.face(f);
            SubFace sf;
            const int k = face.vertices[0] == v ? 0 : 1;
            sf.id = subFaceId(f, k);
            sf.face = f;
            sf.measure = 0.5*face.measure;
            sf.continuityPoint = face.center + xi*(xv - face.center);
            sf.cells = face.cells;
            sf.normal = face.normal;
            sf.tag = face.tag;
            if (!face.boundary())
                sf.type = SubFaceType::interior;
            else if (face.tag == BoundaryTag::interface)
                sf.type = SubFaceType::interface;
            else
                sf.type = SubFaceType::boundary;
            region.subFaces.push_back(sf);
        }

        auto localIndex = [&](Index f) {
            return Index(std::find(faces.begin(), faces.end(), f) - faces.begin());
        };

        for (auto c : mesh.vertexCells(v))
        {
            SubControlVolume scv;
            scv.cell = c;
            int n = 0;
            for (auto f : mesh.cell(c).faces)
            {
                const auto& face = mesh.face(f);
                if (face.vertices[0] == v || face.vertices[1] == v)
                {
                    if (n == 2)
                        throw GridError("cell touches vertex with more than two faces");
                    scv.subFaces[n++] = localIndex(f);
                }
            }
            if (n != 2)
                throw GridError("sub-control volume without two sub-faces at vertex " + std::to_string(v));
            region.scvs.push_back(scv);
        }
    }
    return regions;
}

} // end namespace Porocouple
