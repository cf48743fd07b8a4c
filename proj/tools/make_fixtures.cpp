// Regenerates the JSON meshes under fixtures/.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <utility>
#include <vector>

#include "dectk/fixtures.hpp"
#include "dectk/mesh.hpp"

int main(int argc, char** argv)
{
    namespace fx = dectk::fixtures;
    const std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
    std::filesystem::create_directories(dir);

    const std::vector<std::pair<const char*, dectk::GeometricComplex>> meshes{
        {"triangle", fx::reference_triangle()},
        {"square", fx::unit_square()},
        {"grid8", fx::square_grid(8)},
        {"disk", fx::disk(6, 12)},
        {"annulus", fx::annulus(4, 16)},
        {"hollow_triangle", fx::hollow_triangle()},
        {"tetrahedron_boundary", fx::tetrahedron_boundary()},
        {"torus", fx::torus7()},
        {"torus_fine", fx::torus_grid(12, 8)},
        {"rp2", fx::projective_plane6()},
        {"tet", fx::reference_tetrahedron()},
        {"cube", fx::unit_cube()},
    };
    for (const auto& [name, mesh] : meshes) {
        const auto path = dir / (std::string(name) + ".json");
        std::ofstream out(path);
        if (!out) {
            std::cerr << "cannot write " << path << '\n';
            return 1;
        }
        dectk::write_mesh(out, mesh, dectk::MeshFormat::Json);
        std::cout << path.string() << '\n';
    }
    return 0;
}
