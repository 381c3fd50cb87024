#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "coxcat/errors.hpp"
#include "coxcat/linalg.hpp"

namespace coxcat {

// ---------------------------------------------------------------------------
// Finite crystallographic root systems.
//
// Every root is stored as its (integer) expansion in the simple-root basis,
// and the geometry is carried by the Gram matrix B of the simple roots with
// the standard length normalization (types A, D, E: all roots length^2 = 2;
// B_n: short last simple, length^2 = 1; C_n: long last simple, length^2 = 4;
// F4: lengths^2 (2,2,1,1); G2: lengths^2 (2,6)).  This keeps the ambient
// dimension equal to the rank and all arithmetic rational for every type.
//
// The simple roots are 2-colored by the (bipartite) Coxeter diagram; the
// product of the simple reflections, positive class first, is the bipartite
// Coxeter element gamma.  Iterating gamma's prefix products over the simple
// roots in bipartite order yields a cyclic sequence rho_1, rho_2, ... whose
// first N terms enumerate the positive roots; it induces the total order on
// the almost positive roots (negatives of the minus-class simples, then the
// positive roots in rho order, then negatives of the plus-class simples).
// The rotation R negates plus-class simples and negatives of minus-class
// simples and applies gamma^{-1} elsewhere; deg(alpha) counts rotations until
// a negative simple is reached.
//
// Reducible systems are assembled from their irreducible components; the
// rho indexing and the total order are concatenated component-by-component
// (the cyclic rho recurrences are per-component statements).
// ---------------------------------------------------------------------------

struct Component {
    std::string family;        // "A".."G" when built from a spec, "" when synthesized
    int rank = 0;              // number of simple roots
    int num_positive = 0;      // N_c
    int coxeter_number = 0;    // h_c
    std::vector<int> exponents;       // ascending
    std::vector<int> simples;         // global simple indices (consecutive)
};

struct RootSystem {
    std::string name;          // canonical spec string, e.g. "A2", "A1xB3"
    int rank = 0;              // n
    int num_positive = 0;      // N; roots[i] positive for i < N, roots[N+i] = -roots[i]
    Mat cartan;                // n x n
    Mat form;                  // Gram matrix B
    std::vector<Vec> roots;    // all 2N roots, simple-root coordinates
    std::vector<int> neg;      // root id of the negated root
    std::vector<int> height;   // coordinate sum (integer) per root
    std::vector<int> simple_ids;      // root id of sigma_i, i = 0..n-1
    std::vector<int> simple_of_root;  // root id -> simple index, or -1

    // Reflection action: reflection_perm[p][x] = image root id of root x under
    // the reflection in positive root p (p = positive root id).
    std::vector<std::vector<int>> reflection_perm;

    std::vector<char> plus_class;     // per simple index: 1 if in the + class
    int r_plus = 0;                   // |Pi_+|
    std::vector<int> gamma_perm;      // bipartite Coxeter element on root ids
    std::vector<int> gamma_inv_perm;
    Mat gamma_matrix;
    Mat mu;                           // 2 (I - gamma)^{-1}
    int coxeter_order = 0;            // multiplicative order of gamma

    std::vector<int> rho_seq;         // length 2N; rho_seq[i] = root id of rho_{i+1}
    std::vector<int> rho_index_of;    // root id -> 1-based rho index
    std::vector<int> ap_order;        // almost positive roots in the total order
    std::vector<int> ap_pos;          // root id -> position in ap_order, or -1
    std::vector<int> rotation;        // per root id: image under R, or -1 if not a.p.
    std::vector<int> degree_of;       // per root id: rotations to a negative simple, or -1

    std::vector<Component> components;
    std::vector<int> component_of_simple;  // simple index -> component index
    std::vector<int> component_of_root;    // root id -> component index

    bool is_positive(int root_id) const { return root_id < num_positive; }
    bool is_almost_positive(int root_id) const { return ap_pos[root_id] >= 0; }
    bool is_negative_simple(int root_id) const {
        return root_id >= num_positive && simple_of_root[neg[root_id]] >= 0;
    }
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

namespace detail {

struct FamilySpec {
    char family;
    int rank;
};

inline FamilySpec parse_component_token(const std::string& tok) {
    if (tok.size() < 2) throw invalid_spec_error("bad component '" + tok + "'");
    char fam = static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0])));
    for (size_t i = 1; i < tok.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(tok[i])))
            throw invalid_spec_error("bad component '" + tok + "'");
    long rank = 0;
    try {
        rank = std::stol(tok.substr(1));
    } catch (const std::exception&) {
        throw invalid_spec_error("bad component rank in '" + tok + "'");
    }
    auto reject = [&] { throw invalid_spec_error("unsupported component '" + tok + "'"); };
    switch (fam) {
        case 'A': if (rank < 1 || rank > 32) reject(); break;
        case 'B': if (rank < 2 || rank > 32) reject(); break;
        case 'C': if (rank < 3 || rank > 32) reject(); break;
        case 'D': if (rank < 4 || rank > 32) reject(); break;
        case 'E': if (rank < 6 || rank > 8) reject(); break;
        case 'F': if (rank != 4) reject(); break;
        case 'G': if (rank != 2) reject(); break;
        default: reject();
    }
    return {fam, static_cast<int>(rank)};
}

inline std::vector<FamilySpec> parse_spec(const std::string& spec) {
    std::vector<FamilySpec> parts;
    std::string tok;
    for (char c : spec + "x") {
        if (c == 'x' || c == 'X') {
            if (tok.empty()) throw invalid_spec_error("empty component in '" + spec + "'");
            parts.push_back(parse_component_token(tok));
            tok.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            tok.push_back(c);
        }
    }
    if (parts.empty()) throw invalid_spec_error("empty system spec");
    return parts;
}

inline std::string canonical_name(const std::vector<FamilySpec>& parts) {
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += 'x';
        s += parts[i].family;
        s += std::to_string(parts[i].rank);
    }
    return s;
}

// Gram matrix of one irreducible family in the standard normalization:
// B_ij = C_ij * (sigma_j, sigma_j)/2 with C the Cartan matrix.
inline Mat gram_for(const FamilySpec& fs) {
    const int n = fs.rank;
    Mat cartan = identity_matrix(n);
    for (auto& e : cartan.a) e *= 2;
    std::vector<Rational> halflen(n, Rational(1));  // (sigma_i, sigma_i)/2
    auto edge = [&](int i, int j) { cartan.at(i, j) = -1; cartan.at(j, i) = -1; };
    switch (fs.family) {
        case 'A':
            for (int i = 0; i + 1 < n; ++i) edge(i, i + 1);
            break;
        case 'B':
            for (int i = 0; i + 1 < n; ++i) edge(i, i + 1);
            cartan.at(n - 2, n - 1) = -2;
            halflen[n - 1] = make_rational(1, 2);
            break;
        case 'C':
            for (int i = 0; i + 1 < n; ++i) edge(i, i + 1);
            cartan.at(n - 1, n - 2) = -2;
            halflen[n - 1] = 2;
            break;
        case 'D':
            for (int i = 0; i + 1 < n - 2; ++i) edge(i, i + 1);
            if (n >= 3) { edge(n - 3, n - 2); edge(n - 3, n - 1); }
            break;
        case 'E':
            edge(0, 2); edge(2, 3); edge(3, 4); edge(4, 5);
            if (n >= 7) edge(5, 6);
            if (n >= 8) edge(6, 7);
            edge(1, 3);
            break;
        case 'F':
            edge(0, 1); edge(1, 2); edge(2, 3);
            cartan.at(1, 2) = -2;
            halflen[2] = make_rational(1, 2);
            halflen[3] = make_rational(1, 2);
            break;
        case 'G':
            cartan.at(0, 1) = -1;
            cartan.at(1, 0) = -3;
            halflen[1] = 3;
            break;
    }
    Mat B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) B.at(i, j) = cartan.at(i, j) * halflen[j];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (B.at(i, j) != B.at(j, i)) throw internal_error("gram_for: asymmetric form");
    return B;
}

// Everything about one irreducible system, in its own local coordinates.
struct CoreData {
    Mat cartan, form;
    int n = 0, N = 0, h = 0, r_plus = 0;
    std::vector<Vec> roots;
    std::vector<int> neg, simple_ids, simple_of, height;
    std::vector<std::vector<int>> refl;
    std::vector<char> plus_class;
    std::vector<int> bipartite;  // simple indices: + class ascending, then - class
    std::vector<int> gamma, gamma_inv;
    std::vector<int> rho;  // local ids, rho[i] = rho_{i+1}, length 2N
    std::vector<int> ap;
    std::vector<int> rot, deg;
    std::vector<int> exponents;
};

inline int ivec_height(const Vec& v) {
    Rational s(0);
    for (const auto& e : v) s += e;
    if (!is_integer(s)) throw internal_error("root with non-integral height");
    return static_cast<int>(s.get_num().get_si());
}

// Build one connected (irreducible) system from its Gram matrix.
inline CoreData build_core(const Mat& B) {
    CoreData cd;
    const int n = B.rows;
    cd.n = n;
    cd.form = B;
    cd.cartan = Mat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cd.cartan.at(i, j) = Rational(2) * B.at(i, j) / B.at(j, j);

    // Close the simple roots under the simple reflections.
    std::vector<Vec> simples(n, Vec(n, Rational(0)));
    for (int i = 0; i < n; ++i) simples[i][i] = 1;
    std::map<Vec, int> index;
    std::vector<Vec> all;
    for (int i = 0; i < n; ++i) {
        index[simples[i]] = static_cast<int>(all.size());
        all.push_back(simples[i]);
    }
    for (size_t head = 0; head < all.size(); ++head) {
        Vec cur = all[head];
        for (int j = 0; j < n; ++j) {
            Vec img = reflect(simples[j], cur, B);
            if (index.emplace(img, static_cast<int>(all.size())).second) all.push_back(img);
        }
    }
    if (all.size() % 2 != 0) throw internal_error("odd root count");

    // Canonical positive-root order: ascending height, then lexicographically
    // descending coordinates (so the simple roots come out in diagram order).
    std::vector<Vec> positives;
    for (const Vec& v : all) {
        bool nonneg = true, nonpos = true;
        for (const auto& e : v) {
            if (e < 0) nonneg = false;
            if (e > 0) nonpos = false;
        }
        if (!nonneg && !nonpos) throw internal_error("root with mixed signs");
        if (nonneg) positives.push_back(v);
    }
    std::sort(positives.begin(), positives.end(), [](const Vec& a, const Vec& b) {
        int ha = ivec_height(a), hb = ivec_height(b);
        if (ha != hb) return ha < hb;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    });
    cd.N = static_cast<int>(positives.size());
    if (2 * cd.N != static_cast<int>(all.size())) throw internal_error("positive/negative mismatch");

    cd.roots = positives;
    for (const Vec& v : positives) cd.roots.push_back(vec_neg(v));
    index.clear();
    for (size_t i = 0; i < cd.roots.size(); ++i) index[cd.roots[i]] = static_cast<int>(i);

    cd.neg.resize(2 * cd.N);
    cd.height.resize(2 * cd.N);
    for (int i = 0; i < cd.N; ++i) {
        cd.neg[i] = cd.N + i;
        cd.neg[cd.N + i] = i;
    }
    for (int i = 0; i < 2 * cd.N; ++i) cd.height[i] = ivec_height(cd.roots[i]);

    cd.simple_ids.resize(n);
    cd.simple_of.assign(2 * cd.N, -1);
    for (int i = 0; i < n; ++i) {
        cd.simple_ids[i] = index.at(simples[i]);
        cd.simple_of[cd.simple_ids[i]] = i;
    }

    cd.refl.resize(cd.N);
    for (int p = 0; p < cd.N; ++p) {
        cd.refl[p].resize(2 * cd.N);
        for (int x = 0; x < 2 * cd.N; ++x)
            cd.refl[p][x] = index.at(reflect(cd.roots[p], cd.roots[x], B));
    }

    // 2-color the diagram (connected, hence a tree: always 2-colorable);
    // the lowest-indexed simple root gets the + class.
    cd.plus_class.assign(n, 0);
    std::vector<int> color(n, -1);
    std::vector<int> stack{0};
    color[0] = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w = 0; w < n; ++w) {
            if (w == v || B.at(v, w) == 0) continue;
            if (color[w] == -1) {
                color[w] = 1 - color[v];
                stack.push_back(w);
            } else if (color[w] == color[v]) {
                throw internal_error("Coxeter diagram is not bipartite");
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        if (color[i] == -1) throw internal_error("build_core: disconnected diagram");
        cd.plus_class[i] = color[i] == 0;
    }
    for (int i = 0; i < n; ++i)
        if (cd.plus_class[i]) cd.bipartite.push_back(i);
    cd.r_plus = static_cast<int>(cd.bipartite.size());
    for (int i = 0; i < n; ++i)
        if (!cd.plus_class[i]) cd.bipartite.push_back(i);

    // gamma = R(sigma_{b_1}) ... R(sigma_{b_n}), rightmost factor applied first.
    cd.gamma.resize(2 * cd.N);
    for (int x = 0; x < 2 * cd.N; ++x) {
        int y = x;
        for (int i = n - 1; i >= 0; --i) y = cd.refl[cd.simple_ids[cd.bipartite[i]]][y];
        cd.gamma[x] = y;
    }
    cd.gamma_inv.resize(2 * cd.N);
    for (int x = 0; x < 2 * cd.N; ++x) cd.gamma_inv[cd.gamma[x]] = x;

    // rho_i = R(sigma_{b_1}) ... R(sigma_{b_{i-1}}) (sigma_{b_i}), index cyclic mod n.
    // Maintained via the prefix products P_{i+1} = P_i o R(sigma_{b_i}).
    std::vector<int> prefix(2 * cd.N);
    std::iota(prefix.begin(), prefix.end(), 0);
    cd.rho.resize(2 * cd.N);
    for (int i = 0; i < 2 * cd.N; ++i) {
        int b = cd.bipartite[i % n];
        cd.rho[i] = prefix[cd.simple_ids[b]];
        const std::vector<int>& r = cd.refl[cd.simple_ids[b]];
        std::vector<int> next(2 * cd.N);
        for (int x = 0; x < 2 * cd.N; ++x) next[x] = prefix[r[x]];
        prefix = std::move(next);
    }
    {
        std::vector<char> seen(2 * cd.N, 0);
        for (int i = 0; i < cd.N; ++i) {
            if (cd.rho[i] >= cd.N) throw internal_error("rho prefix leaves the positive roots");
            seen[cd.rho[i]] = 1;
        }
        for (int i = 0; i < cd.N; ++i)
            if (!seen[i]) throw internal_error("rho prefix misses a positive root");
        // The second half enumerates the negative roots (not necessarily the
        // antipodes of the first half in order: that stronger statement needs
        // the longest element to act as -1).
        std::vector<char> seen_neg(2 * cd.N, 0);
        for (int i = cd.N; i < 2 * cd.N; ++i) {
            if (cd.rho[i] < cd.N || seen_neg[cd.rho[i]])
                throw internal_error("rho second half does not enumerate the negative roots");
            seen_neg[cd.rho[i]] = 1;
        }
    }

    // Total order on almost positive roots:
    //   rho_{-(n-r-1)}, ..., rho_0  (= negatives of the - class simples),
    //   rho_1, ..., rho_N           (= the positive roots),
    //   rho_{N+1}, ..., rho_{N+r}   (= negatives of the + class simples).
    const int r = cd.r_plus;
    for (int i = 2 * cd.N - (n - r); i < 2 * cd.N; ++i) cd.ap.push_back(cd.rho[i]);
    for (int i = 0; i < cd.N; ++i) cd.ap.push_back(cd.rho[i]);
    for (int i = cd.N; i < cd.N + r; ++i) cd.ap.push_back(cd.rho[i]);
    {
        int count_neg_minus = 0, count_neg_plus = 0;
        for (int k = 0; k < n - r; ++k) {
            int id = cd.ap[k];
            int s = cd.simple_of[cd.neg[id]];
            if (id < cd.N || s < 0 || cd.plus_class[s]) throw internal_error("bad -Pi_- block");
            ++count_neg_minus;
        }
        for (size_t k = cd.ap.size() - r; k < cd.ap.size(); ++k) {
            int id = cd.ap[k];
            int s = cd.simple_of[cd.neg[id]];
            if (id < cd.N || s < 0 || !cd.plus_class[s]) throw internal_error("bad -Pi_+ block");
            ++count_neg_plus;
        }
        if (count_neg_minus != n - r || count_neg_plus != r)
            throw internal_error("total order blocks of wrong size");
    }

    // Rotation R: negate on Pi_+ and -(Pi_-), gamma^{-1} elsewhere.
    cd.rot.assign(2 * cd.N, -1);
    for (int id : cd.ap) {
        int s = cd.simple_of[id];
        int sneg = cd.simple_of[cd.neg[id]];
        bool flip = (id < cd.N && s >= 0 && cd.plus_class[s]) ||
                    (id >= cd.N && sneg >= 0 && !cd.plus_class[sneg]);
        int img = flip ? cd.neg[id] : cd.gamma_inv[id];
        cd.rot[id] = img;
    }
    for (int id : cd.ap)
        if (cd.rot[id] < 0 || std::find(cd.ap.begin(), cd.ap.end(), cd.rot[id]) == cd.ap.end())
            throw internal_error("rotation leaves the almost positive roots");

    // deg(alpha): rotations until a negative simple is reached.
    cd.deg.assign(2 * cd.N, -1);
    for (int id : cd.ap) {
        int cur = id, steps = 0;
        while (!(cur >= cd.N && cd.simple_of[cd.neg[cur]] >= 0)) {
            cur = cd.rot[cur];
            ++steps;
            if (steps > 2 * cd.N + n) throw internal_error("rotation orbit misses negative simples");
        }
        cd.deg[id] = steps;
    }

    // Exponents: the positive-root height distribution, as a partition, is
    // conjugate to the exponent partition.
    {
        std::map<int, int> by_height;
        for (int i = 0; i < cd.N; ++i) ++by_height[cd.height[i]];
        std::vector<int> lambda;
        for (int ht = 1; by_height.count(ht); ++ht) lambda.push_back(by_height[ht]);
        int covered = 0;
        for (int c : lambda) covered += c;
        if (covered != cd.N) throw internal_error("height distribution has gaps");
        for (size_t i = 0; i + 1 < lambda.size(); ++i)
            if (lambda[i] < lambda[i + 1]) throw internal_error("height distribution not a partition");
        for (int k = 1; k <= (lambda.empty() ? 0 : lambda[0]); ++k) {
            int cnt = 0;
            for (int c : lambda)
                if (c >= k) ++cnt;
            cd.exponents.push_back(cnt);
        }
        std::sort(cd.exponents.begin(), cd.exponents.end());
        if (static_cast<int>(cd.exponents.size()) != n)
            throw internal_error("exponent count differs from rank");
    }
    if ((2 * cd.N) % n != 0) throw internal_error("2N not divisible by rank");
    cd.h = 2 * cd.N / n;
    if (cd.exponents.back() != cd.h - 1) throw internal_error("largest exponent != h-1");

    return cd;
}

// Split a Gram matrix into connected blocks; returns the list of simple-index
// groups, ordered by lowest member.
inline std::vector<std::vector<int>> connected_blocks(const Mat& B) {
    const int n = B.rows;
    std::vector<int> comp(n, -1);
    int nc = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        std::vector<int> stack{s};
        comp[s] = nc;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < n; ++w)
                if (w != v && B.at(v, w) != 0 && comp[w] == -1) {
                    comp[w] = nc;
                    stack.push_back(w);
                }
        }
        ++nc;
    }
    std::vector<std::vector<int>> blocks(nc);
    for (int i = 0; i < n; ++i) blocks[comp[i]].push_back(i);
    return blocks;
}

// Assemble a RootSystem from built components.  `families[c]` may be "".
inline RootSystemPtr assemble(std::string name, const std::vector<CoreData>& cores,
                              const std::vector<std::string>& families) {
    auto out = std::make_shared<RootSystem>();
    RootSystem& rs = *out;
    rs.name = std::move(name);
    const int nc = static_cast<int>(cores.size());

    int n = 0, N = 0;
    std::vector<int> simple_offset(nc), pos_offset(nc);
    for (int c = 0; c < nc; ++c) {
        simple_offset[c] = n;
        pos_offset[c] = N;
        n += cores[c].n;
        N += cores[c].N;
    }
    rs.rank = n;
    rs.num_positive = N;

    rs.cartan = Mat(n, n);
    rs.form = Mat(n, n);
    for (int c = 0; c < nc; ++c)
        for (int i = 0; i < cores[c].n; ++i)
            for (int j = 0; j < cores[c].n; ++j) {
                rs.cartan.at(simple_offset[c] + i, simple_offset[c] + j) = cores[c].cartan.at(i, j);
                rs.form.at(simple_offset[c] + i, simple_offset[c] + j) = cores[c].form.at(i, j);
            }

    // Local root id -> global root id.
    auto glob = [&](int c, int local) {
        return local < cores[c].N ? pos_offset[c] + local : N + pos_offset[c] + (local - cores[c].N);
    };
    // Local coordinate vector -> global coordinate vector.
    auto glob_vec = [&](int c, const Vec& v) {
        Vec g(n, Rational(0));
        for (int i = 0; i < cores[c].n; ++i) g[simple_offset[c] + i] = v[i];
        return g;
    };

    rs.roots.assign(2 * N, Vec{});
    rs.neg.assign(2 * N, -1);
    rs.height.assign(2 * N, 0);
    rs.simple_of_root.assign(2 * N, -1);
    rs.simple_ids.assign(n, -1);
    rs.component_of_root.assign(2 * N, -1);
    rs.component_of_simple.assign(n, -1);
    rs.plus_class.assign(n, 0);
    for (int c = 0; c < nc; ++c) {
        const CoreData& cd = cores[c];
        for (int l = 0; l < 2 * cd.N; ++l) {
            int g = glob(c, l);
            rs.roots[g] = glob_vec(c, cd.roots[l]);
            rs.neg[g] = glob(c, cd.neg[l]);
            rs.height[g] = cd.height[l];
            rs.component_of_root[g] = c;
            if (cd.simple_of[l] >= 0) rs.simple_of_root[g] = simple_offset[c] + cd.simple_of[l];
        }
        for (int i = 0; i < cd.n; ++i) {
            rs.simple_ids[simple_offset[c] + i] = glob(c, cd.simple_ids[i]);
            rs.component_of_simple[simple_offset[c] + i] = c;
            rs.plus_class[simple_offset[c] + i] = cd.plus_class[i];
        }
    }
    rs.r_plus = 0;
    for (char p : rs.plus_class) rs.r_plus += p ? 1 : 0;

    // Reflections act componentwise; identity outside their component.
    rs.reflection_perm.assign(N, {});
    for (int c = 0; c < nc; ++c) {
        const CoreData& cd = cores[c];
        for (int p = 0; p < cd.N; ++p) {
            std::vector<int> perm(2 * N);
            std::iota(perm.begin(), perm.end(), 0);
            for (int l = 0; l < 2 * cd.N; ++l) perm[glob(c, l)] = glob(c, cd.refl[p][l]);
            rs.reflection_perm[glob(c, p)] = std::move(perm);
        }
    }

    // gamma is the product of the component bipartite Coxeter elements
    // (they commute, acting on disjoint components).
    rs.gamma_perm.assign(2 * N, -1);
    rs.gamma_inv_perm.assign(2 * N, -1);
    for (int c = 0; c < nc; ++c)
        for (int l = 0; l < 2 * cores[c].N; ++l) {
            rs.gamma_perm[glob(c, l)] = glob(c, cores[c].gamma[l]);
            rs.gamma_inv_perm[glob(c, l)] = glob(c, cores[c].gamma_inv[l]);
        }
    rs.gamma_matrix = Mat(n, n);
    for (int i = 0; i < n; ++i) {
        Vec img = rs.roots[rs.gamma_perm[rs.simple_ids[i]]];
        for (int j = 0; j < n; ++j) rs.gamma_matrix.at(j, i) = img[j];
    }
    rs.mu = mat_scale(Rational(2), matrix_inverse(mat_sub(identity_matrix(n), rs.gamma_matrix)));

    {
        // Multiplicative order of gamma (= lcm of the component Coxeter numbers).
        std::vector<int> cur(rs.gamma_perm);
        int order = 1;
        auto is_id = [&](const std::vector<int>& p) {
            for (size_t i = 0; i < p.size(); ++i)
                if (p[i] != static_cast<int>(i)) return false;
            return true;
        };
        while (!is_id(cur)) {
            std::vector<int> next(cur.size());
            for (size_t i = 0; i < cur.size(); ++i) next[i] = rs.gamma_perm[cur[i]];
            cur = std::move(next);
            ++order;
            if (order > 1000) throw internal_error("gamma order runaway");
        }
        rs.coxeter_order = order;
    }

    // rho indexing and the total order concatenate componentwise.
    rs.rho_seq.clear();
    for (int c = 0; c < nc; ++c)
        for (int i = 0; i < cores[c].N; ++i) rs.rho_seq.push_back(glob(c, cores[c].rho[i]));
    for (int c = 0; c < nc; ++c)
        for (int i = cores[c].N; i < 2 * cores[c].N; ++i) rs.rho_seq.push_back(glob(c, cores[c].rho[i]));
    rs.rho_index_of.assign(2 * N, -1);
    for (int i = 0; i < 2 * N; ++i) rs.rho_index_of[rs.rho_seq[i]] = i + 1;

    rs.ap_order.clear();
    for (int c = 0; c < nc; ++c)
        for (int l : cores[c].ap) rs.ap_order.push_back(glob(c, l));
    rs.ap_pos.assign(2 * N, -1);
    for (size_t i = 0; i < rs.ap_order.size(); ++i) rs.ap_pos[rs.ap_order[i]] = static_cast<int>(i);

    rs.rotation.assign(2 * N, -1);
    rs.degree_of.assign(2 * N, -1);
    for (int c = 0; c < nc; ++c)
        for (int l : cores[c].ap) {
            rs.rotation[glob(c, l)] = glob(c, cores[c].rot[l]);
            rs.degree_of[glob(c, l)] = cores[c].deg[l];
        }

    for (int c = 0; c < nc; ++c) {
        Component comp;
        comp.family = families[c];
        comp.rank = cores[c].n;
        comp.num_positive = cores[c].N;
        comp.coxeter_number = cores[c].h;
        comp.exponents = cores[c].exponents;
        for (int i = 0; i < cores[c].n; ++i) comp.simples.push_back(simple_offset[c] + i);
        rs.components.push_back(std::move(comp));
    }
    return out;
}

}  // namespace detail

// Parse and canonicalize a system spec such as "A2", "b3", "A1xA2".
inline std::string canonical_system_name(const std::string& spec) {
    return detail::canonical_name(detail::parse_spec(spec));
}

// Build the root system described by `spec` (components joined with 'x').
inline RootSystemPtr build_root_system(const std::string& spec) {
    auto parts = detail::parse_spec(spec);
    std::vector<detail::CoreData> cores;
    std::vector<std::string> families;
    for (const auto& p : parts) {
        cores.push_back(detail::build_core(detail::gram_for(p)));
        families.push_back(std::string(1, p.family));
    }
    return detail::assemble(detail::canonical_name(parts), cores, families);
}

// The standard parabolic subsystem spanned by all simple roots except
// sigma_{simple_index} (0-based): the result plus the map from its simple
// indices back to the parent's.  Components carry no family label; all
// structural data is recomputed from the restricted Gram matrix.  The child's
// simple order groups the parent simples by connected component (components
// of a restricted diagram may interleave), so the map is essential for
// transporting roots between child and parent coordinates.
struct ParabolicSubsystem {
    RootSystemPtr system;
    std::vector<int> parent_simple;  // child simple index -> parent simple index
};

inline ParabolicSubsystem parabolic_subsystem(const RootSystem& rs, int simple_index) {
    if (simple_index < 0 || simple_index >= rs.rank)
        throw invalid_spec_error("parabolic_subsystem: simple index out of range");
    std::vector<int> keep;
    for (int i = 0; i < rs.rank; ++i)
        if (i != simple_index) keep.push_back(i);
    Mat B(rs.rank - 1, rs.rank - 1);
    for (size_t i = 0; i < keep.size(); ++i)
        for (size_t j = 0; j < keep.size(); ++j)
            B.at(static_cast<int>(i), static_cast<int>(j)) = rs.form.at(keep[i], keep[j]);
    auto blocks = detail::connected_blocks(B);
    std::vector<detail::CoreData> cores;
    std::vector<std::string> families;
    std::vector<int> parent_simple;
    for (const auto& blk : blocks) {
        Mat sub(static_cast<int>(blk.size()), static_cast<int>(blk.size()));
        for (size_t i = 0; i < blk.size(); ++i)
            for (size_t j = 0; j < blk.size(); ++j)
                sub.at(static_cast<int>(i), static_cast<int>(j)) = B.at(blk[i], blk[j]);
        cores.push_back(detail::build_core(sub));
        families.emplace_back("");
        for (int b : blk) parent_simple.push_back(keep[b]);
    }
    std::string name = rs.name + "-minus-s" + std::to_string(simple_index + 1);
    return {detail::assemble(std::move(name), cores, families), std::move(parent_simple)};
}

// Transport a root of a parabolic subsystem into the parent's coordinates.
inline Vec to_parent_coords(const RootSystem& parent, const ParabolicSubsystem& sub, int sub_root_id) {
    Vec out(parent.rank, Rational(0));
    const Vec& v = sub.system->roots[sub_root_id];
    for (int i = 0; i < sub.system->rank; ++i) out[sub.parent_simple[i]] = v[i];
    return out;
}

// Root id of an exact coordinate vector; throws not_a_root_error otherwise.
inline int find_root(const RootSystem& rs, const Vec& v) {
    for (size_t i = 0; i < rs.roots.size(); ++i)
        if (rs.roots[i] == v) return static_cast<int>(i);
    throw not_a_root_error("find_root: not a root of " + rs.name);
}

// rho_i for any integer i (cyclic with period 2N).  For reducible systems the
// indexing is positional (componentwise concatenation); the cyclic recurrences
// are per-component statements.
inline int rho_at(const RootSystem& rs, long i) {
    const long period = 2L * rs.num_positive;
    long idx = (i - 1) % period;
    if (idx < 0) idx += period;
    return rs.rho_seq[static_cast<size_t>(idx)];
}

// Position in the total order on almost positive roots (0-based).
inline int total_order_position(const RootSystem& rs, int root_id) {
    if (root_id < 0 || root_id >= 2 * rs.num_positive || rs.ap_pos[root_id] < 0)
        throw not_almost_positive_error("total_order_position: not an almost positive root");
    return rs.ap_pos[root_id];
}

// The map mu = 2 (I - gamma)^{-1}, as a matrix in simple-root coordinates.
inline const Mat& mu_map(const RootSystem& rs) { return rs.mu; }

// mu applied to a root, then paired with another root under the form.
inline Rational mu_pair(const RootSystem& rs, int x_id, int y_id) {
    return inner(mat_vec(rs.mu, rs.roots[x_id]), rs.roots[y_id], rs.form);
}

inline int rotation_R(const RootSystem& rs, int root_id) {
    if (root_id < 0 || root_id >= 2 * rs.num_positive || rs.rotation[root_id] < 0)
        throw not_almost_positive_error("rotation_R: not an almost positive root");
    return rs.rotation[root_id];
}

inline int degree(const RootSystem& rs, int root_id) {
    if (root_id < 0 || root_id >= 2 * rs.num_positive || rs.degree_of[root_id] < 0)
        throw not_almost_positive_error("degree: not an almost positive root");
    return rs.degree_of[root_id];
}

// A colored almost positive root: positive roots carry a color in 1..m,
// negative simples always carry color 1.
struct ColoredRoot {
    int root = -1;  // root id
    int color = 1;
    bool operator==(const ColoredRoot& o) const { return root == o.root && color == o.color; }
    bool operator!=(const ColoredRoot& o) const { return !(*this == o); }
};

inline void check_colored(const RootSystem& rs, int m, const ColoredRoot& cr) {
    if (m < 1) throw invalid_m_error("color multiplicity m must be >= 1");
    if (cr.root < 0 || cr.root >= 2 * rs.num_positive || !rs.is_almost_positive(cr.root))
        throw not_almost_positive_error("colored root: not an almost positive root");
    if (rs.is_positive(cr.root)) {
        if (cr.color < 1 || cr.color > m) throw color_range_error("color out of 1..m");
    } else {
        if (cr.color != 1) throw color_range_error("negative simples carry color 1");
    }
}

// Colored rotation: bump the color of a positive root until it saturates at m,
// then rotate the underlying root and reset the color.
inline ColoredRoot rotation_Rm(const RootSystem& rs, int m, const ColoredRoot& cr) {
    check_colored(rs, m, cr);
    if (rs.is_positive(cr.root) && cr.color < m) return {cr.root, cr.color + 1};
    return {rotation_R(rs, cr.root), 1};
}

// Canonical order on colored roots: by total-order position, then color.
inline bool colored_less(const RootSystem& rs, const ColoredRoot& a, const ColoredRoot& b) {
    int pa = total_order_position(rs, a.root), pb = total_order_position(rs, b.root);
    if (pa != pb) return pa < pb;
    return a.color < b.color;
}

}  // namespace coxcat
