#pragma once

#include <string>
#include <vector>

#include "simpfib/constructions.hpp"

namespace fixture {

using namespace simpfib;

/// Polygon with n vertices v0..v{n-1} and edges e_i : v_i -> v_{i+1 mod n}.
inline SimplicialSet polygon(int n) {
    SimplicialSetBuilder b;
    for (int i = 0; i < n; ++i) b.add_cell(0, "v" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        b.add_cell(1, "e" + std::to_string(i), {Simplex{0, 0, (i + 1) % n, 0}, Simplex{0, 0, i, 0}});
    return b.build();
}

/// Polygon with m*k edges wrapped k times around the m-gon.
inline SMap wrap(int m, int k) {
    const SimplicialSet big = polygon(m * k);
    const SimplicialSet small = polygon(m);
    std::vector<std::vector<Simplex>> images(2);
    for (int i = 0; i < m * k; ++i) images[0].push_back(Simplex{0, 0, i % m, 0});
    for (int i = 0; i < m * k; ++i) images[1].push_back(Simplex{1, 1, i % m, 0});
    return SMap(big, small, images);
}

/// One vertex, one loop e, one 2-cell with boundary 2e: homology (Z, Z/2).
inline SimplicialSet projective_plane() {
    SimplicialSetBuilder b;
    b.add_cell(0, "v");
    b.add_cell_named(1, "e", {{"", "v"}, {"", "v"}});
    b.add_cell_named(2, "t", {{"", "e"}, {"0", "v"}, {"", "e"}});
    return b.build();
}

inline SimplicialSet points(int n) {
    SimplicialSetBuilder b;
    for (int i = 0; i < n; ++i) b.add_cell(0, "p" + std::to_string(i));
    return b.build();
}

}  // namespace fixture
