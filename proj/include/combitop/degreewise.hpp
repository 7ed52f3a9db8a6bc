#pragma once

#include <functional>
#include <string>
#include <vector>

#include "combitop/sset.hpp"

namespace combitop {

/**
 * A simplicial set given degreewise: for each degree m up to a cap, the list
 * of all degree-m simplices (by canonical key, sorted ascending within each
 * degree), plus the face and degeneracy actions by index.  The extractor
 * turns this into a normalized presentation by stripping degeneracies.
 */
struct DegreewiseModel {
    std::vector<std::vector<std::string>> keys;
    std::function<int(int, int, int)> face;   // face(m, idx, i) -> index in degree m-1
    std::function<int(int, int, int)> degen;  // degen(m, idx, i) -> index in degree m+1
};

struct Extraction {
    SSet sset;
    std::vector<std::vector<Simplex>> normal;  // per degree, per element: normal form
};

inline Extraction extract_presentation(const DegreewiseModel& model, int trusted) {
    const int M = static_cast<int>(model.keys.size()) - 1;
    for (const auto& layer : model.keys)
        for (size_t i = 1; i < layer.size(); ++i)
            require(layer[i - 1] < layer[i], "degreewise keys must be sorted and unique");

    SSetBuilder b;
    b.set_trusted(trusted);
    Extraction out;
    out.normal.resize(static_cast<size_t>(M) + 1);
    for (int m = 0; m <= M; ++m) {
        const auto& layer = model.keys[static_cast<size_t>(m)];
        out.normal[static_cast<size_t>(m)].resize(layer.size());
        for (int e = 0; e < static_cast<int>(layer.size()); ++e) {
            int degen_j = -1, inner = -1;
            for (int j = 0; j < m; ++j) {
                int f = model.face(m, e, j);
                if (model.degen(m - 1, f, j) == e) {
                    degen_j = j;
                    inner = f;
                    break;
                }
            }
            if (degen_j < 0) {
                std::vector<Simplex> faces;
                for (int i = 0; i <= m && m > 0; ++i)
                    faces.push_back(out.normal[static_cast<size_t>(m) - 1]
                                              [static_cast<size_t>(model.face(m, e, i))]);
                CellRef r = b.add_cell(m, layer[static_cast<size_t>(e)], std::move(faces));
                out.normal[static_cast<size_t>(m)][static_cast<size_t>(e)] =
                    Simplex{DegeneracyWord{}, r};
            } else {
                const Simplex& n = out.normal[static_cast<size_t>(m) - 1][static_cast<size_t>(inner)];
                MonotoneMap total = compose(word_to_surjection(n.word, m - 1),
                                            MonotoneMap::codegeneracy(m - 1, degen_j));
                out.normal[static_cast<size_t>(m)][static_cast<size_t>(e)] =
                    Simplex{surjection_to_word(total), n.cell};
            }
        }
    }
    out.sset = b.finalize();
    return out;
}

}  // namespace combitop
