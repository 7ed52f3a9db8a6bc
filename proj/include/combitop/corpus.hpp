#pragma once

#include <string>
#include <vector>

#include "combitop/complex.hpp"

namespace combitop {

/** All proper faces of a tetrahedron: a 2-sphere. */
inline SimplicialComplex boundary_delta3() {
    SimplicialComplex k;
    for (auto v : {"0", "1", "2", "3"}) k.add_vertex(v);
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            for (int c = b + 1; c < 4; ++c) k.add_simplex_closed({a, b, c});
    return k;
}

/** Two triangles sharing the edge {x, y}: contractible, pure of dimension 2. */
inline SimplicialComplex two_triangles() {
    SimplicialComplex k;
    for (auto v : {"x", "y", "z", "w"}) k.add_vertex(v);
    k.add_simplex_closed({0, 1, 2});
    k.add_simplex_closed({0, 1, 3});
    return k;
}

/** The cycle graph on six vertices: a circle, pure of dimension 1. */
inline SimplicialComplex six_cycle() {
    SimplicialComplex k;
    for (int v = 0; v < 6; ++v) k.add_vertex("v" + std::to_string(v));
    for (int v = 0; v < 6; ++v) k.add_simplex_closed({v, (v + 1) % 6});
    return k;
}

/** Seven-vertex triangulation of the torus (two triangle orbits mod 7). */
inline SimplicialComplex torus7() {
    SimplicialComplex k;
    for (int v = 0; v < 7; ++v) k.add_vertex("t" + std::to_string(v));
    for (int i = 0; i < 7; ++i) {
        k.add_simplex_closed({i, (i + 1) % 7, (i + 3) % 7});
        k.add_simplex_closed({i, (i + 2) % 7, (i + 3) % 7});
    }
    return k;
}

/** Six-vertex triangulation of the projective plane (antipodal icosahedron). */
inline SimplicialComplex rp2_6() {
    SimplicialComplex k;
    for (int v = 1; v <= 6; ++v) k.add_vertex("p" + std::to_string(v));
    const int tri[10][3] = {{1, 2, 3}, {1, 2, 4}, {1, 3, 5}, {1, 4, 6}, {1, 5, 6},
                            {2, 3, 6}, {2, 4, 5}, {2, 5, 6}, {3, 4, 5}, {3, 4, 6}};
    for (const auto& t : tri) k.add_simplex_closed({t[0] - 1, t[1] - 1, t[2] - 1});
    return k;
}

inline std::vector<std::string> corpus_names() {
    return {"boundary-delta-3", "two-triangles", "six-cycle", "torus-7", "rp2-6"};
}

inline SimplicialComplex corpus_complex(const std::string& name) {
    if (name == "boundary-delta-3") return boundary_delta3();
    if (name == "two-triangles") return two_triangles();
    if (name == "six-cycle") return six_cycle();
    if (name == "torus-7") return torus7();
    if (name == "rp2-6") return rp2_6();
    throw input_error("unknown corpus complex: " + name);
}

}  // namespace combitop
