// Writes the bundled example inputs, or with --check compares them with the
// files already on disk.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "simpfib/category.hpp"
#include "simpfib/constructions.hpp"
#include "simpfib/ssx.hpp"

using namespace simpfib;

namespace {

FiniteCategory c4() {
    return FiniteCategory::from_poset({"a", "b", "x", "y"}, {{"a", "x"}, {"a", "y"}, {"b", "x"}, {"b", "y"}});
}

Functor double_cover() {
    const FiniteCategory cover = FiniteCategory::from_poset(
        {"a0", "a1", "b0", "b1", "x0", "x1", "y0", "y1"},
        {{"a0", "x0"}, {"a1", "x1"}, {"b0", "x0"}, {"b1", "x1"}, {"b0", "y0"}, {"b1", "y1"}, {"a0", "y1"}, {"a1", "y0"}});
    return Functor::thin(cover, c4(), {0, 0, 1, 1, 2, 2, 3, 3});
}

SMap constant(const SimplicialSet& x, const SimplicialSet& y, int vertex) {
    const std::vector<int> image(static_cast<std::size_t>(x.empty() ? 0 : x.cell_count(0)), vertex);
    return map_from_vertices(x, y, image);
}

SMap vertex_map(const SimplicialSet& y, const char* id) { return constant(standard_simplex(0), y, y.at(id).cell); }

std::vector<std::pair<std::string, std::string>> corpus() {
    const SimplicialSet nc = nerve(c4());
    const SimplicialSet d1 = standard_simplex(1);
    auto cat = [](const Json& j) { return j.dump(2) + "\n"; };
    return {
        {"double_cover.ssx", emit_ssx(nerve_functor(double_cover()))},
        {"circle_terminal.ssx", emit_ssx(constant(boundary(2), standard_simplex(0), 0))},
        {"boundary3.ssx", emit_ssx(boundary(3))},
        {"boundary2_const.ssx", emit_ssx(constant(boundary(2), d1, d1.at("0").cell))},
        {"c4_product.ssx", emit_ssx(product(nc, d1).second())},
        {"c4_identity.ssx", emit_ssx(identity_map(nc))},
        {"c4_vertex_a.ssx", emit_ssx(vertex_map(nc, "a"))},
        {"delta1_vertex0.ssx", emit_ssx(vertex_map(d1, "0"))},
        {"c4.cat", cat(category_to_json(c4()))},
        {"c4_identity.cat", cat(functor_to_json(identity_functor(c4())))},
        {"c4_point_a.cat", cat(functor_to_json(object_functor(c4(), "a")))},
        {"double_cover.cat", cat(functor_to_json(double_cover()))},
    };
}

}  // namespace

int main(int argc, char** argv) {
    const bool check = argc == 3 && std::string(argv[1]) == "--check";
    if (!(argc == 2 || check)) {
        std::cerr << "usage: simpfib_corpus [--check] <dir>\n";
        return 3;
    }
    const std::filesystem::path dir = argv[argc - 1];
    int mismatches = 0;
    for (const auto& [name, text] : corpus()) {
        const auto path = dir / name;
        if (check) {
            std::ifstream in(path, std::ios::binary);
            std::ostringstream have;
            have << in.rdbuf();
            if (!in || have.str() != text) {
                std::cerr << "differs: " << path.string() << "\n";
                ++mismatches;
            }
        } else {
            std::filesystem::create_directories(dir);
            std::ofstream(path, std::ios::binary) << text;
        }
    }
    return mismatches == 0 ? 0 : 1;
}
