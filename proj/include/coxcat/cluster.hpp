#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "coxcat/group.hpp"
#include "coxcat/root_system.hpp"

namespace coxcat {

// ---------------------------------------------------------------------------
// Compatibility of almost-positive roots, and its colored refinement.  The
// working definition used everywhere: for the two roots ordered by the total
// root order, the product of their reflections (later one first) must lie
// below the bipartite Coxeter element.  Antipodal pairs are never compatible
// and are excluded before the reflection test, which would wrongly accept
// them (their reflections coincide, so the product is the identity).
// ---------------------------------------------------------------------------

inline bool compatible(const RootSystem& rs, int x, int y) {
    if (!rs.is_almost_positive(x) || !rs.is_almost_positive(y))
        throw not_almost_positive_error("compatible: roots must be almost positive");
    if (x == y) throw equal_roots_error("compatible: need two distinct roots");
    if (rs.neg[x] == y) return false;
    int a = x, b = y;
    if (total_order_position(rs, a) > total_order_position(rs, b)) std::swap(a, b);
    GroupElement u = compose(reflection_element(rs, b), reflection_element(rs, a));
    return absolute_leq(u, bipartite_coxeter(rs));
}

// Independent reformulation through the bilinear pairing: nonparallel roots
// have commuting-below-gamma reflections exactly when the pairing of the
// twisted later root against the earlier one vanishes.
inline bool compatible_via_form(const RootSystem& rs, int x, int y) {
    if (!rs.is_almost_positive(x) || !rs.is_almost_positive(y))
        throw not_almost_positive_error("compatible_via_form: roots must be almost positive");
    if (x == y) throw equal_roots_error("compatible_via_form: need two distinct roots");
    if (rs.neg[x] == y) return false;
    int a = x, b = y;
    if (total_order_position(rs, a) > total_order_position(rs, b)) std::swap(a, b);
    return mu_pair(rs, b, a) == 0;
}

// Colored compatibility, by the degree rules.  Colored roots carry colors in
// 1..m; negative simple roots only color 1.  A root is never compatible with
// a second copy of itself, whatever the colors.
inline bool m_compatible(const RootSystem& rs, int m, const ColoredRoot& a,
                         const ColoredRoot& b) {
    check_colored(rs, m, a);
    check_colored(rs, m, b);
    if (a.root == b.root) {
        if (a.color == b.color)
            throw equal_roots_error("m_compatible: need two distinct colored roots");
        return false;
    }
    if (a.color == b.color) return compatible(rs, a.root, b.root);
    // Normalize so the first root has the larger color.
    const ColoredRoot& hi = a.color > b.color ? a : b;
    const ColoredRoot& lo = a.color > b.color ? b : a;
    if (degree(rs, hi.root) <= degree(rs, lo.root)) {
        int rotated = rotation_R(rs, hi.root);
        if (rotated == lo.root) return false;  // rotation collides with the partner
        return compatible(rs, rotated, lo.root);
    }
    return compatible(rs, hi.root, lo.root);
}

// Recursive characterization used as an independent oracle: colored
// compatibility is invariant under the colored rotation, and a negative
// simple root is compatible with exactly the roots avoiding its coordinate.
inline bool m_compatible_by_rotation(const RootSystem& rs, int m, ColoredRoot a, ColoredRoot b) {
    check_colored(rs, m, a);
    check_colored(rs, m, b);
    if (a.root == b.root && a.color == b.color)
        throw equal_roots_error("m_compatible_by_rotation: need two distinct colored roots");
    const int cap = m * (2 * rs.num_positive + rs.rank) + 1;
    for (int step = 0; step < cap; ++step) {
        if (rs.is_negative_simple(a.root)) {
            int i = rs.simple_of_root[rs.neg[a.root]];
            return rs.roots[b.root][i] == 0;
        }
        if (rs.is_negative_simple(b.root)) {
            int i = rs.simple_of_root[rs.neg[b.root]];
            return rs.roots[a.root][i] == 0;
        }
        a = rotation_Rm(rs, m, a);
        b = rotation_Rm(rs, m, b);
    }
    throw internal_error("m_compatible_by_rotation: rotation never reached a negative simple");
}

// ---------------------------------------------------------------------------
// Face enumeration.  Vertices are the colored almost-positive roots in the
// canonical order (root by total order, then color); faces are the subsets
// of pairwise compatible vertices, listed with the empty face first and then
// in lexicographic order of their vertex-id lists.
// ---------------------------------------------------------------------------

struct FaceEnumeration {
    int m = 1;
    std::vector<ColoredRoot> vertices;
    std::vector<std::vector<bool>> compat;   // vertex-vertex compatibility
    std::vector<std::vector<int>> faces;     // sorted vertex ids, includes {}
    std::map<std::pair<int, int>, long> f_counts;  // (#positive, #negative) -> count

    int vertex_id(const ColoredRoot& cr) const {
        for (size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i] == cr) return static_cast<int>(i);
        return -1;
    }
};

inline FaceEnumeration enumerate_faces(const RootSystem& rs, int m) {
    if (m < 1) throw invalid_m_error("enumerate_faces: need m >= 1");
    FaceEnumeration fe;
    fe.m = m;
    for (int id : rs.ap_order) {
        if (rs.is_negative_simple(id))
            fe.vertices.push_back({id, 1});
        else
            for (int c = 1; c <= m; ++c) fe.vertices.push_back({id, c});
    }
    const int V = static_cast<int>(fe.vertices.size());
    fe.compat.assign(V, std::vector<bool>(V, false));
    for (int i = 0; i < V; ++i)
        for (int j = i + 1; j < V; ++j)
            fe.compat[i][j] = fe.compat[j][i] =
                m_compatible(rs, m, fe.vertices[i], fe.vertices[j]);

    std::vector<int> face;
    auto record = [&]() {
        int pos = 0, neg = 0;
        for (int v : face) (rs.is_negative_simple(fe.vertices[v].root) ? neg : pos)++;
        fe.faces.push_back(face);
        ++fe.f_counts[{pos, neg}];
    };
    auto extend = [&](auto&& self, int start) -> void {
        record();
        for (int v = start; v < V; ++v) {
            bool ok = true;
            for (int u : face) ok = ok && fe.compat[u][v];
            if (!ok) continue;
            face.push_back(v);
            self(self, v + 1);
            face.pop_back();
        }
    };
    extend(extend, 0);
    return fe;
}

// Face counts of a complex by face size; index i counts the faces with i
// vertices (so entry 0 is 1 for the empty face).
inline std::vector<long> size_counts(const FaceEnumeration& fe) {
    std::vector<long> out;
    for (const auto& f : fe.faces) {
        if (out.size() <= f.size()) out.resize(f.size() + 1, 0);
        ++out[f.size()];
    }
    return out;
}

// Same statistics for the link of a face: the faces disjoint from it whose
// union with it is again a face.
inline std::vector<long> link_size_counts(const FaceEnumeration& fe,
                                          const std::vector<int>& face) {
    std::vector<int> key = face;
    std::sort(key.begin(), key.end());
    bool found = false;
    for (const auto& f : fe.faces) found = found || f == key;
    if (!found) throw not_a_face_error("link_size_counts: the given set is not a face");
    std::vector<long> out{0};
    for (const auto& f : fe.faces) {
        if (f.size() < key.size()) continue;
        if (!std::includes(f.begin(), f.end(), key.begin(), key.end())) continue;
        size_t rest = f.size() - key.size();
        if (out.size() <= rest) out.resize(rest + 1, 0);
        ++out[rest];
    }
    return out;
}

// ---------------------------------------------------------------------------
// The membership criterion.  A part is a set of roots that are either all
// negative simple or all positive; its group element is the product of the
// reflections through its roots, taken largest first in the total order.
// ---------------------------------------------------------------------------

inline GroupElement w_of_part(const RootSystem& rs, std::vector<int> roots) {
    bool has_pos = false, has_neg = false;
    for (int r : roots) {
        if (!rs.is_almost_positive(r))
            throw not_almost_positive_error("w_of_part: roots must be almost positive");
        (rs.is_negative_simple(r) ? has_neg : has_pos) = true;
    }
    if (has_pos && has_neg)
        throw mixed_part_error("w_of_part: part mixes positive and negative simple roots");
    std::sort(roots.begin(), roots.end(), [&rs](int a, int b) {
        return total_order_position(rs, a) > total_order_position(rs, b);
    });
    for (size_t i = 0; i + 1 < roots.size(); ++i)
        if (roots[i] == roots[i + 1]) throw equal_roots_error("w_of_part: repeated root");
    GroupElement w = identity_element(rs);
    for (int r : roots) w = compose(w, reflection_element(rs, r));
    return w;
}

// The candidate m-divisible tuple of a colored set: slot i collects the
// positive roots of color m-i+1; the negative simple roots in the plus part
// of the bipartition multiply into the first slot from the left, the ones in
// the minus part into the last slot from the right.
inline std::vector<GroupElement> membership_tuple(const RootSystem& rs, int m,
                                                  const std::vector<ColoredRoot>& face) {
    if (m < 1) throw invalid_m_error("membership_tuple: need m >= 1");
    std::vector<std::vector<int>> by_color(m + 1);
    std::vector<int> neg_plus, neg_minus;
    for (const auto& cr : face) {
        check_colored(rs, m, cr);
        if (rs.is_negative_simple(cr.root))
            (rs.plus_class[rs.simple_of_root[rs.neg[cr.root]]] ? neg_plus : neg_minus)
                .push_back(cr.root);
        else
            by_color[cr.color].push_back(cr.root);
    }
    std::vector<GroupElement> tuple;
    tuple.reserve(m);
    for (int i = 1; i <= m; ++i) tuple.push_back(w_of_part(rs, by_color[m - i + 1]));
    tuple.front() = compose(w_of_part(rs, neg_plus), tuple.front());
    tuple.back() = compose(tuple.back(), w_of_part(rs, neg_minus));
    return tuple;
}

// Membership test: the tuple must have additive reflection lengths summing
// to the face size, with product below the bipartite Coxeter element.
inline bool face_by_membership_tuple(const RootSystem& rs, int m,
                                     const std::vector<ColoredRoot>& face) {
    for (size_t i = 0; i < face.size(); ++i)
        for (size_t j = i + 1; j < face.size(); ++j)
            if (face[i] == face[j])
                throw equal_roots_error("face_by_membership_tuple: repeated colored root");
    auto tuple = membership_tuple(rs, m, face);
    int total = 0;
    GroupElement prod = identity_element(rs);
    for (const auto& w : tuple) {
        total += absolute_length(w);
        prod = compose(prod, w);
    }
    if (total != static_cast<int>(face.size())) return false;
    if (absolute_length(prod) != total) return false;
    return absolute_leq(prod, bipartite_coxeter(rs));
}

}  // namespace coxcat
