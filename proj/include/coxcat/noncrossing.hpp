#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "coxcat/group.hpp"
#include "coxcat/root_system.hpp"

namespace coxcat {

// ---------------------------------------------------------------------------
// Noncrossing partition lattice NC(top): the interval [1, top] in the
// absolute order, with covers labelled by the positive root of the reflection
// joining the two elements.  Elements are listed bottom-up: sorted by
// (reflection length, permutation word), so index 0 is the identity.
// ---------------------------------------------------------------------------

struct NcCover {
    int lower = -1;
    int upper = -1;
    int root = -1;  // positive root id of upper = lower * reflection
};

struct NcLattice {
    RootSystemPtr rs;
    GroupElement top_element;
    std::vector<GroupElement> elements;
    std::vector<int> length_of;
    std::vector<std::vector<bool>> leq_mat;
    std::vector<NcCover> covers;
    std::vector<std::vector<int>> covers_up;    // element -> ids into covers
    std::vector<std::vector<int>> covers_down;  // element -> ids into covers
    std::map<std::vector<int>, int> index;      // permutation -> element id

    int size() const { return static_cast<int>(elements.size()); }
    bool leq(int a, int b) const { return leq_mat[a][b]; }
    int identity_id() const { return 0; }
    int top_id() const { return size() - 1; }
    int id_of(const GroupElement& w) const {
        auto it = index.find(w.perm);
        return it == index.end() ? -1 : it->second;
    }
};

using NcLatticePtr = std::shared_ptr<const NcLattice>;

inline NcLatticePtr build_nc(RootSystemPtr rs, const GroupElement& top) {
    if (top.rs != rs.get()) throw mixed_system_error("build_nc: top from a different system");
    auto nc = std::make_shared<NcLattice>();
    nc->rs = rs;
    nc->top_element = top;

    AbsOrderCache cache(*rs);
    nc->elements = cache.below_interval(top);
    const int n = nc->size();
    nc->length_of.resize(n);
    for (int i = 0; i < n; ++i) {
        nc->length_of[i] = cache.length(nc->elements[i]);
        nc->index.emplace(nc->elements[i].perm, i);
    }
    // The top element has the unique maximal length, hence sorts last.
    if (nc->elements[nc->top_id()] != top)
        throw internal_error("build_nc: top element not last in the listing");

    nc->leq_mat.assign(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (nc->length_of[a] <= nc->length_of[b])
                nc->leq_mat[a][b] = cache.leq(nc->elements[a], nc->elements[b]);

    nc->covers_up.resize(n);
    nc->covers_down.resize(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (nc->length_of[b] != nc->length_of[a] + 1 || !nc->leq_mat[a][b]) continue;
            GroupElement t = compose(inverse(nc->elements[a]), nc->elements[b]);
            int root = root_of_reflection(t);
            if (root < 0) throw internal_error("build_nc: cover difference is not a reflection");
            int id = static_cast<int>(nc->covers.size());
            nc->covers.push_back({a, b, root});
            nc->covers_up[a].push_back(id);
            nc->covers_down[b].push_back(id);
        }
    return nc;
}

inline NcLatticePtr build_nc(RootSystemPtr rs) { return build_nc(rs, bipartite_coxeter(*rs)); }

// ---------------------------------------------------------------------------
// m-divisible noncrossing partitions: m-tuples (w_1, ..., w_m) of lattice
// elements whose product again lies below the top and whose reflection
// lengths add up along the product.  Ordered componentwise; this is a lower
// order ideal in the m-fold product of NC with itself, so covers are exactly
// the one-slot lattice covers.  Edge labels pair the 1-based slot with the
// root of the cover reflection.
// ---------------------------------------------------------------------------

struct EdgeLabel {
    int slot = 0;  // 1-based
    int root = -1;
    bool operator==(const EdgeLabel& o) const { return slot == o.slot && root == o.root; }
};

// Label order used by the chain analysis: labels with a LARGER slot come
// first; ties are broken by the total order on the roots.
inline bool label_less(const RootSystem& rs, const EdgeLabel& a, const EdgeLabel& b) {
    if (a.slot != b.slot) return a.slot > b.slot;
    return total_order_position(rs, a.root) < total_order_position(rs, b.root);
}

struct NcmCover {
    int lower = -1;
    int upper = -1;
    EdgeLabel label;
};

struct NcmPoset {
    NcLatticePtr nc;
    int m = 1;
    int top = -1;  // lattice id bounding the slot products
    std::vector<std::vector<int>> elements;  // m lattice ids per element
    std::vector<int> rank_of;
    std::vector<std::vector<bool>> leq_mat;
    std::vector<NcmCover> covers;
    std::vector<std::vector<int>> covers_up;
    std::vector<std::vector<int>> covers_down;
    std::map<std::vector<int>, int> index;

    int size() const { return static_cast<int>(elements.size()); }
    bool leq(int a, int b) const { return leq_mat[a][b]; }
    int bottom() const { return 0; }
    int height() const { return nc->length_of[top]; }
    int index_of(const std::vector<int>& slots) const {
        auto it = index.find(slots);
        return it == index.end() ? -1 : it->second;
    }
    const RootSystem& system() const { return *nc->rs; }
};

namespace detail {
// All minimal m-part factorizations of w (tuples with product w and additive
// lengths), each part recorded by its lattice id.
inline void minimal_factorizations(const NcLattice& nc, AbsOrderCache& cache,
                                   const GroupElement& w, int m, std::vector<int>& prefix,
                                   std::vector<std::vector<int>>& out) {
    if (m == 1) {
        int id = nc.id_of(w);
        if (id < 0) throw internal_error("minimal_factorizations: part escaped the lattice");
        prefix.push_back(id);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (const auto& w1 : cache.below_interval(w)) {
        int id = nc.id_of(w1);
        if (id < 0) throw internal_error("minimal_factorizations: part escaped the lattice");
        prefix.push_back(id);
        minimal_factorizations(nc, cache, compose(inverse(w1), w), m - 1, prefix, out);
        prefix.pop_back();
    }
}
}  // namespace detail

inline NcmPoset build_ncm(NcLatticePtr nc, int top_nc_id, int m) {
    if (m < 1) throw invalid_m_error("build_ncm: need m >= 1");
    if (top_nc_id < 0 || top_nc_id >= nc->size())
        throw invalid_spec_error("build_ncm: top id out of range");
    NcmPoset p;
    p.nc = nc;
    p.m = m;
    p.top = top_nc_id;

    AbsOrderCache cache(*nc->rs);
    std::vector<int> prefix;
    for (const auto& w : cache.below_interval(nc->elements[top_nc_id]))
        detail::minimal_factorizations(*nc, cache, w, m, prefix, p.elements);

    auto rank_of = [&](const std::vector<int>& slots) {
        int r = 0;
        for (int s : slots) r += nc->length_of[s];
        return r;
    };
    std::sort(p.elements.begin(), p.elements.end(),
              [&](const std::vector<int>& a, const std::vector<int>& b) {
                  int ra = rank_of(a), rb = rank_of(b);
                  if (ra != rb) return ra < rb;
                  return a < b;
              });
    const int n = p.size();
    p.rank_of.resize(n);
    for (int i = 0; i < n; ++i) {
        p.rank_of[i] = rank_of(p.elements[i]);
        p.index.emplace(p.elements[i], i);
    }

    p.leq_mat.assign(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (p.rank_of[a] > p.rank_of[b]) continue;
            bool le = true;
            for (int s = 0; s < m && le; ++s)
                le = nc->leq(p.elements[a][s], p.elements[b][s]);
            p.leq_mat[a][b] = le;
        }

    p.covers_up.resize(n);
    p.covers_down.resize(n);
    for (int a = 0; a < n; ++a)
        for (int s = 0; s < m; ++s)
            for (int cid : nc->covers_up[p.elements[a][s]]) {
                std::vector<int> up = p.elements[a];
                up[s] = nc->covers[cid].upper;
                int b = p.index_of(up);
                if (b < 0) continue;  // left the ideal
                int id = static_cast<int>(p.covers.size());
                p.covers.push_back({a, b, EdgeLabel{s + 1, nc->covers[cid].root}});
                p.covers_up[a].push_back(id);
                p.covers_down[b].push_back(id);
            }
    return p;
}

inline NcmPoset build_ncm(RootSystemPtr rs, int m) {
    auto nc = build_nc(rs);
    return build_ncm(nc, nc->top_id(), m);
}

// ---------------------------------------------------------------------------
// Moebius function of a finite poset given by size and comparability,
// computed by the defining recursion and memoized.  Posets stay immutable;
// the table is a separate object.
// ---------------------------------------------------------------------------

class MobiusTable {
   public:
    MobiusTable(int n, std::function<bool(int, int)> leq) : n_(n), leq_(std::move(leq)) {}
    explicit MobiusTable(const NcmPoset& p)
        : MobiusTable(p.size(), [&p](int a, int b) { return p.leq(a, b); }) {}
    explicit MobiusTable(const NcLattice& nc)
        : MobiusTable(nc.size(), [&nc](int a, int b) { return nc.leq(a, b); }) {}

    Int mu(int a, int b) {
        if (a < 0 || b < 0 || a >= n_ || b >= n_ || !leq_(a, b))
            throw not_comparable_error("mu: elements are not comparable");
        return mu_inner(a, b);
    }

   private:
    Int mu_inner(int a, int b) {
        if (a == b) return 1;
        auto key = std::make_pair(a, b);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Int acc = 0;
        for (int z = 0; z < n_; ++z)
            if (z != b && leq_(a, z) && leq_(z, b)) acc += mu_inner(a, z);
        Int val = -acc;
        memo_.emplace(key, val);
        return val;
    }

    int n_;
    std::function<bool(int, int)> leq_;
    std::map<std::pair<int, int>, Int> memo_;
};

// ---------------------------------------------------------------------------
// Chain analysis.  A maximal chain of an interval is recorded by its list of
// cover ids; a chain is falling when its label sequence never rises.
// ---------------------------------------------------------------------------

namespace detail {
inline void chains_dfs(const NcmPoset& p, int at, int b, std::vector<int>& path,
                       std::vector<std::vector<int>>& out, bool falling_only) {
    if (at == b) {
        out.push_back(path);
        return;
    }
    for (int cid : p.covers_up[at]) {
        const NcmCover& c = p.covers[cid];
        if (!p.leq(c.upper, b)) continue;
        if (falling_only && !path.empty()) {
            const EdgeLabel& prev = p.covers[path.back()].label;
            if (label_less(p.system(), prev, c.label)) continue;  // label rose
        }
        path.push_back(cid);
        chains_dfs(p, c.upper, b, path, out, falling_only);
        path.pop_back();
    }
}
}  // namespace detail

inline std::vector<std::vector<int>> maximal_chains(const NcmPoset& p, int a, int b) {
    if (!p.leq(a, b)) throw not_comparable_error("maximal_chains: a is not below b");
    std::vector<std::vector<int>> out;
    std::vector<int> path;
    detail::chains_dfs(p, a, b, path, out, false);
    return out;
}

inline std::vector<std::vector<int>> falling_chains(const NcmPoset& p, int a, int b) {
    if (!p.leq(a, b)) throw not_comparable_error("falling_chains: a is not below b");
    std::vector<std::vector<int>> out;
    std::vector<int> path;
    detail::chains_dfs(p, a, b, path, out, true);
    return out;
}

// Checks the shelling-order property of the labelling: every interval has
// exactly one strictly rising maximal chain, and that chain is
// lexicographically first among the interval's maximal chains.
inline bool is_el_labeling(const NcmPoset& p,
                           const std::function<bool(const EdgeLabel&, const EdgeLabel&)>& less) {
    auto labels_of = [&](const std::vector<int>& chain) {
        std::vector<EdgeLabel> ls;
        ls.reserve(chain.size());
        for (int cid : chain) ls.push_back(p.covers[cid].label);
        return ls;
    };
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b) {
            if (!p.leq(a, b) || a == b) continue;
            auto chains = maximal_chains(p, a, b);
            int rising = 0;
            std::vector<EdgeLabel> rising_labels;
            for (const auto& ch : chains) {
                auto ls = labels_of(ch);
                bool up = true;
                for (size_t i = 0; i + 1 < ls.size() && up; ++i) up = less(ls[i], ls[i + 1]);
                if (up) {
                    ++rising;
                    rising_labels = ls;
                }
            }
            if (rising != 1) return false;
            for (const auto& ch : chains) {
                auto ls = labels_of(ch);
                if (ls == rising_labels) continue;
                if (std::lexicographical_compare(ls.begin(), ls.end(), rising_labels.begin(),
                                                 rising_labels.end(), less))
                    return false;
            }
        }
    return true;
}

inline bool is_el_labeling(const NcmPoset& p) {
    const RootSystem& rs = p.system();
    return is_el_labeling(
        p, [&rs](const EdgeLabel& a, const EdgeLabel& b) { return label_less(rs, a, b); });
}

// A falling chain from the bottom maps to a face of the positive part of the
// generalized cluster complex: the cover in slot s contributes its root with
// color m - s + 1.  The result is sorted by the colored-root order.
inline std::vector<ColoredRoot> chain_to_facet(const NcmPoset& p, const std::vector<int>& chain) {
    const RootSystem& rs = p.system();
    std::vector<ColoredRoot> facet;
    int at = -1;
    for (size_t i = 0; i < chain.size(); ++i) {
        const NcmCover& c = p.covers[chain[i]];
        if (i > 0) {
            if (c.lower != at) throw error("chain_to_facet: covers do not form a chain");
            const EdgeLabel& prev = p.covers[chain[i - 1]].label;
            if (label_less(rs, prev, c.label))
                throw not_falling_error("chain_to_facet: labels rise along the chain");
        }
        at = c.upper;
        facet.push_back(ColoredRoot{c.label.root, p.m - c.label.slot + 1});
    }
    std::sort(facet.begin(), facet.end(), [&rs](const ColoredRoot& a, const ColoredRoot& b) {
        return colored_less(rs, a, b);
    });
    return facet;
}

}  // namespace coxcat
