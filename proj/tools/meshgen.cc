#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include <porocouple/mesh.hh>

using namespace Porocouple;

//! Writes jittered structured triangulations of a box in the node/element format.
int main(int argc, char** argv)
{
    CLI::App app{"Triangle mesh generator for porous-medium blocks"};
    std::vector<double> box{0.4, 0.6, 0.0, 0.2};
    std::size_t nx = 8, ny = 8;
    double jitter = 0.2;
    unsigned seed = 11;
    std::string prefix;
    app.add_option("prefix", prefix, "output prefix, writes <prefix>.nodes and <prefix>.elements")->required();
    app.add_option("--box", box, "xmin xmax ymin ymax")->expected(4);
    app.add_option("--nx", nx, "quads in x");
    app.add_option("--ny", ny, "quads in y");
    app.add_option("--jitter", jitter, "interior node displacement relative to the spacing");
    app.add_option("--seed", seed, "random seed");
    CLI11_PARSE(app, argc, argv);

    try {
        const auto data = structuredTriangulation(Vec2(box[0], box[2]), Vec2(box[1] - box[0], box[3] - box[2]),
                                                  nx, ny, jitter, seed);
        meshFromTriangles(data); // validates the result
        std::ofstream nodes(prefix + ".nodes"), elements(prefix + ".elements");
        if (!nodes || !elements)
        {
            std::cerr << "error: cannot write " << prefix << ".*\n";
            return 1;
        }
        writeTriangleMeshData(data, nodes, elements);
        std::cout << data.triangles.size() << " triangles, " << data.nodes.size() << " nodes\n";
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
