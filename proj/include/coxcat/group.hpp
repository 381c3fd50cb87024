#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "coxcat/linalg.hpp"
#include "coxcat/root_system.hpp"

namespace coxcat {

// ---------------------------------------------------------------------------
// Elements of the Weyl group, represented by their permutation action on the
// root ids of a fixed root system.  The reflection length ("absolute length")
// of w is the codimension of its fixed space, computed as rank(M_w - I) over
// the rationals; u <= v in the absolute order iff the lengths add up along
// u, u^{-1}v.  The noncrossing partition lattice NC(gamma) is the interval
// [1, gamma] under this order.
// ---------------------------------------------------------------------------

struct GroupElement {
    const RootSystem* rs = nullptr;
    std::vector<int> perm;  // root id -> root id

    bool is_identity() const {
        for (size_t i = 0; i < perm.size(); ++i)
            if (perm[i] != static_cast<int>(i)) return false;
        return true;
    }
    bool operator==(const GroupElement& o) const { return rs == o.rs && perm == o.perm; }
    bool operator!=(const GroupElement& o) const { return !(*this == o); }
    // Canonical order: by permutation word (used for reproducible listings).
    bool operator<(const GroupElement& o) const { return perm < o.perm; }
};

inline GroupElement identity_element(const RootSystem& rs) {
    GroupElement e{&rs, std::vector<int>(2 * rs.num_positive)};
    std::iota(e.perm.begin(), e.perm.end(), 0);
    return e;
}

// The reflection in (either sign of) the given root.
inline GroupElement reflection_element(const RootSystem& rs, int root_id) {
    if (root_id < 0 || root_id >= 2 * rs.num_positive)
        throw not_a_root_error("reflection_element: bad root id");
    int p = rs.is_positive(root_id) ? root_id : rs.neg[root_id];
    return {&rs, rs.reflection_perm[p]};
}

inline GroupElement bipartite_coxeter(const RootSystem& rs) { return {&rs, rs.gamma_perm}; }

inline void check_same_system(const GroupElement& a, const GroupElement& b) {
    if (a.rs == nullptr || a.rs != b.rs)
        throw mixed_system_error("group elements from different root systems");
}

// compose(a, b) applies b first: (a b)(x) = a(b(x)).
inline GroupElement compose(const GroupElement& a, const GroupElement& b) {
    check_same_system(a, b);
    GroupElement c{a.rs, std::vector<int>(a.perm.size())};
    for (size_t i = 0; i < a.perm.size(); ++i) c.perm[i] = a.perm[b.perm[i]];
    return c;
}

inline GroupElement inverse(const GroupElement& a) {
    GroupElement c{a.rs, std::vector<int>(a.perm.size())};
    for (size_t i = 0; i < a.perm.size(); ++i) c.perm[a.perm[i]] = static_cast<int>(i);
    return c;
}

inline GroupElement conjugate(const GroupElement& w, const GroupElement& x) {
    return compose(compose(w, x), inverse(w));
}

// Matrix of the element on simple-root coordinates (columns = images of the
// simple roots); recovers the linear action exactly.
inline Mat element_matrix(const GroupElement& w) {
    const RootSystem& rs = *w.rs;
    Mat m(rs.rank, rs.rank);
    for (int i = 0; i < rs.rank; ++i) {
        const Vec& img = rs.roots[w.perm[rs.simple_ids[i]]];
        for (int j = 0; j < rs.rank; ++j) m.at(j, i) = img[j];
    }
    return m;
}

// Reflection length = codimension of the fixed space = rank(M_w - I).
inline int absolute_length(const GroupElement& w) {
    return matrix_rank(mat_sub(element_matrix(w), identity_matrix(w.rs->rank)));
}

// If w is a reflection, the id of its positive root; -1 otherwise.
inline int root_of_reflection(const GroupElement& w) {
    const RootSystem& rs = *w.rs;
    for (int p = 0; p < rs.num_positive; ++p)
        if (w.perm[p] == rs.neg[p]) return w.perm == rs.reflection_perm[p] ? p : -1;
    return -1;
}

// Absolute (reflection-length) order: u <= v iff l(u) + l(u^{-1} v) = l(v).
inline bool absolute_leq(const GroupElement& u, const GroupElement& v) {
    check_same_system(u, v);
    return absolute_length(u) + absolute_length(compose(inverse(u), v)) == absolute_length(v);
}

// A factorization is minimal when the factor lengths add up to the length of
// the product.
inline bool is_minimal_factorization(const std::vector<GroupElement>& factors,
                                     const GroupElement& w) {
    GroupElement prod = identity_element(*w.rs);
    int total = 0;
    for (const auto& f : factors) {
        check_same_system(f, w);
        prod = compose(prod, f);
        total += absolute_length(f);
    }
    return prod == w && total == absolute_length(w);
}

// Memoizing context for absolute-order computations.  Fill happens during
// poset construction (single-threaded); afterwards reads are pure lookups.
class AbsOrderCache {
   public:
    explicit AbsOrderCache(const RootSystem& rs) : rs_(&rs) {}

    const RootSystem& system() const { return *rs_; }

    int length(const GroupElement& w) {
        if (w.rs != rs_) throw mixed_system_error("AbsOrderCache: foreign element");
        auto it = len_.find(w.perm);
        if (it != len_.end()) return it->second;
        int l = absolute_length(w);
        len_.emplace(w.perm, l);
        return l;
    }

    bool leq(const GroupElement& u, const GroupElement& v) {
        return length(u) + length(compose(inverse(u), v)) == length(v);
    }

    // All elements of the interval [1, w], sorted by (length, permutation).
    const std::vector<GroupElement>& below_interval(const GroupElement& w) {
        if (w.rs != rs_) throw mixed_system_error("AbsOrderCache: foreign element");
        auto it = below_.find(w.perm);
        if (it != below_.end()) return it->second;

        const int lw = length(w);
        std::map<std::vector<int>, GroupElement> seen;
        GroupElement id = identity_element(*rs_);
        seen.emplace(id.perm, id);
        std::vector<GroupElement> frontier{id};
        for (int k = 0; k < lw; ++k) {
            std::vector<GroupElement> next;
            for (const auto& u : frontier) {
                for (int p = 0; p < rs_->num_positive; ++p) {
                    GroupElement v = compose(u, reflection_element(*rs_, p));
                    if (seen.count(v.perm)) continue;
                    if (length(v) != k + 1) continue;
                    if (length(v) + length(compose(inverse(v), w)) != lw) continue;
                    seen.emplace(v.perm, v);
                    next.push_back(std::move(v));
                }
            }
            frontier = std::move(next);
        }
        std::vector<GroupElement> out;
        out.reserve(seen.size());
        for (auto& [_, e] : seen) out.push_back(std::move(e));
        std::sort(out.begin(), out.end(), [&](const GroupElement& a, const GroupElement& b) {
            int la = length(a), lb = length(b);
            if (la != lb) return la < lb;
            return a.perm < b.perm;
        });
        return below_.emplace(w.perm, std::move(out)).first->second;
    }

   private:
    const RootSystem* rs_;
    std::map<std::vector<int>, int> len_;
    std::map<std::vector<int>, std::vector<GroupElement>> below_;
};

// Uncached one-shot variant.
inline std::vector<GroupElement> below_interval(const GroupElement& w) {
    AbsOrderCache cache(*w.rs);
    return cache.below_interval(w);
}

// The whole group, generated by the simple reflections (breadth-first, for
// small systems & tests).
inline std::vector<GroupElement> generate_group(const RootSystem& rs) {
    std::map<std::vector<int>, GroupElement> seen;
    GroupElement id = identity_element(rs);
    seen.emplace(id.perm, id);
    std::vector<GroupElement> frontier{id};
    while (!frontier.empty()) {
        std::vector<GroupElement> next;
        for (const auto& u : frontier)
            for (int i = 0; i < rs.rank; ++i) {
                GroupElement v = compose(u, reflection_element(rs, rs.simple_ids[i]));
                if (seen.emplace(v.perm, v).second) next.push_back(std::move(v));
            }
        frontier = std::move(next);
    }
    std::vector<GroupElement> out;
    for (auto& [_, e] : seen) out.push_back(std::move(e));
    return out;
}

}  // namespace coxcat
