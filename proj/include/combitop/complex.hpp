#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "combitop/util.hpp"

namespace combitop {

/**
 * Abstract simplicial complex on ordered, labeled vertices.  Simplices are
 * stored as sorted vertex-index tuples and must be closed under taking
 * nonempty subsets.
 */
class SimplicialComplex {
public:
    int add_vertex(const std::string& label) {
        require(vertex_index_.count(label) == 0, "duplicate vertex label " + label);
        vertex_labels_.push_back(label);
        vertex_index_[label] = static_cast<int>(vertex_labels_.size()) - 1;
        return static_cast<int>(vertex_labels_.size()) - 1;
    }

    int vertex(const std::string& label) const {
        auto it = vertex_index_.find(label);
        require(it != vertex_index_.end(), "unknown vertex " + label);
        return it->second;
    }

    int n_vertices() const { return static_cast<int>(vertex_labels_.size()); }
    const std::string& vertex_label(int v) const { return vertex_labels_[static_cast<size_t>(v)]; }
    const std::vector<std::string>& vertex_labels() const { return vertex_labels_; }

    // inserts the simplex together with all of its nonempty subsets
    void add_simplex_closed(std::vector<int> verts) {
        normalize(verts);
        size_t n = verts.size();
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            std::vector<int> s;
            for (size_t i = 0; i < n; ++i)
                if (mask & (1u << i)) s.push_back(verts[i]);
            simplices_.insert(std::move(s));
        }
    }

    // inserts exactly the given simplex; closure is checked by validate()
    void add_simplex_raw(std::vector<int> verts) {
        normalize(verts);
        simplices_.insert(std::move(verts));
    }

    void validate() const {
        for (const auto& s : simplices_) {
            require(!s.empty(), "empty simplex stored");
            for (int v : s)
                if (v < 0 || v >= n_vertices())
                    throw input_error("simplex vertex out of range: " + encode_simplex(s));
            for (size_t skip = 0; skip < s.size() && s.size() > 1; ++skip) {
                std::vector<int> f;
                for (size_t i = 0; i < s.size(); ++i)
                    if (i != skip) f.push_back(s[i]);
                if (!simplices_.count(f))
                    throw input_error("closure violation: missing face " + encode_simplex(f) +
                                      " of " + encode_simplex(s));
            }
        }
    }

    // vertices not covered by any simplex (allowed; reported as a warning)
    std::vector<int> uncovered_vertices() const {
        std::vector<char> seen(static_cast<size_t>(n_vertices()), 0);
        for (const auto& s : simplices_)
            for (int v : s) seen[static_cast<size_t>(v)] = 1;
        std::vector<int> out;
        for (int v = 0; v < n_vertices(); ++v)
            if (!seen[static_cast<size_t>(v)]) out.push_back(v);
        return out;
    }

    const std::set<std::vector<int>>& simplices() const { return simplices_; }
    bool contains(const std::vector<int>& s) const { return simplices_.count(s) > 0; }

    int dim() const {
        int d = -1;
        for (const auto& s : simplices_) d = std::max(d, static_cast<int>(s.size()) - 1);
        return d;
    }

    bool is_maximal(const std::vector<int>& s) const {
        require(contains(s), "is_maximal on non-simplex");
        for (const auto& t : simplices_)
            if (t.size() > s.size() && std::includes(t.begin(), t.end(), s.begin(), s.end()))
                return false;
        return true;
    }

    std::vector<std::vector<int>> maximal_simplices() const {
        std::vector<std::vector<int>> out;
        for (const auto& s : simplices_)
            if (is_maximal(s)) out.push_back(s);
        return out;
    }

    bool is_pure() const {
        int d = dim();
        for (const auto& s : maximal_simplices())
            if (static_cast<int>(s.size()) - 1 != d) return false;
        return true;
    }

    std::string encode_simplex(const std::vector<int>& s) const {
        std::string out = "{";
        for (size_t i = 0; i < s.size(); ++i) {
            if (i) out += ",";
            out += (s[i] >= 0 && s[i] < n_vertices()) ? vertex_label(s[i]) : std::to_string(s[i]);
        }
        return out + "}";
    }

    // union of two simplices; the caller checks membership
    static std::vector<int> simplex_union(const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> u;
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
        return u;
    }

    static bool subset(const std::vector<int>& a, const std::vector<int>& b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    }

private:
    static void normalize(std::vector<int>& verts) {
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        require(!verts.empty(), "cannot add empty simplex");
    }

    std::vector<std::string> vertex_labels_;
    std::map<std::string, int> vertex_index_;
    std::set<std::vector<int>> simplices_;
};

}  // namespace combitop
