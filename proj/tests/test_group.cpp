#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "coxcat/group.hpp"
#include "coxcat/root_system.hpp"

using namespace coxcat;

namespace {

// ---------------------------------------------------------------------------
// Independent oracle: reflection length as graph distance from the identity
// in the Cayley graph of W generated by ALL reflections.  This only uses the
// permutation action and breadth-first search; no linear algebra.
// ---------------------------------------------------------------------------
std::map<std::vector<int>, int> cayley_reflection_distances(const RootSystem& rs) {
    std::vector<GroupElement> gens;
    for (int p = 0; p < rs.num_positive; ++p) gens.push_back(reflection_element(rs, p));

    std::map<std::vector<int>, int> dist;
    GroupElement id = identity_element(rs);
    dist.emplace(id.perm, 0);
    std::vector<GroupElement> frontier{id};
    int d = 0;
    while (!frontier.empty()) {
        std::vector<GroupElement> next;
        ++d;
        for (const auto& u : frontier)
            for (const auto& t : gens) {
                GroupElement v = compose(u, t);
                if (dist.emplace(v.perm, d).second) next.push_back(std::move(v));
            }
        frontier = std::move(next);
    }
    return dist;
}

std::vector<GroupElement> sorted_by_length_then_perm(std::vector<GroupElement> v) {
    std::sort(v.begin(), v.end(), [](const GroupElement& a, const GroupElement& b) {
        int la = absolute_length(a), lb = absolute_length(b);
        if (la != lb) return la < lb;
        return a.perm < b.perm;
    });
    return v;
}

}  // namespace

TEST_CASE("group algebra basics") {
    auto rs = build_root_system("A2");
    GroupElement id = identity_element(*rs);
    GroupElement s1 = reflection_element(*rs, rs->simple_ids[0]);
    GroupElement s2 = reflection_element(*rs, rs->simple_ids[1]);
    GroupElement g = bipartite_coxeter(*rs);

    CHECK(id.is_identity());
    CHECK(compose(s1, s1) == id);
    CHECK(compose(s2, s2) == id);
    CHECK(inverse(s1) == s1);
    CHECK(compose(g, inverse(g)) == id);
    CHECK(compose(inverse(g), g) == id);
    // gamma = s_+ s_- with the plus part applied last.
    CHECK(g == compose(s1, s2));
    // Braid relation in rank 2 with a 3-cycle Coxeter element.
    CHECK(compose(compose(s1, s2), s1) == compose(compose(s2, s1), s2));
    // Reflection through a negative root id is the same reflection.
    for (int p = 0; p < rs->num_positive; ++p)
        CHECK(reflection_element(*rs, p) == reflection_element(*rs, rs->neg[p]));
    CHECK_THROWS_AS(reflection_element(*rs, 99), not_a_root_error);

    auto rsB = build_root_system("B2");
    CHECK_THROWS_AS(compose(s1, identity_element(*rsB)), mixed_system_error);
    CHECK_THROWS_AS(absolute_leq(s1, bipartite_coxeter(*rsB)), mixed_system_error);
}

TEST_CASE("element matrices act like the permutations") {
    for (const char* spec : {"A2", "B2", "A3", "G2"}) {
        auto rs = build_root_system(spec);
        GroupElement g = bipartite_coxeter(*rs);
        CHECK(element_matrix(g).a == rs->gamma_matrix.a);

        GroupElement s0 = reflection_element(*rs, rs->simple_ids[0]);
        GroupElement w = compose(g, s0);
        // Multiplicativity: M_{gs} = M_g M_s.
        CHECK(mat_mul(element_matrix(g), element_matrix(s0)).a == element_matrix(w).a);
        // The matrix really moves every root to its permuted image.
        for (int i = 0; i < 2 * rs->num_positive; ++i)
            CHECK(mat_vec(element_matrix(w), rs->roots[i]) == rs->roots[w.perm[i]]);
        // Invariance of the bilinear form: M^T B M = B.
        Mat mt = transpose(element_matrix(w));
        CHECK(mat_mul(mt, mat_mul(rs->form, element_matrix(w))).a == rs->form.a);
    }
}

TEST_CASE("group order equals the product of exponents plus one") {
    const std::pair<const char*, size_t> expected[] = {
        {"A1", 2}, {"A2", 6},  {"A3", 24},  {"B2", 8},
        {"B3", 48}, {"G2", 12}, {"D4", 192}, {"A1xA2", 12},
    };
    for (auto [spec, order] : expected) {
        auto rs = build_root_system(spec);
        CHECK(generate_group(*rs).size() == order);
        size_t prod = 1;
        for (const auto& comp : rs->components)
            for (int e : comp.exponents) prod *= static_cast<size_t>(e + 1);
        CHECK(prod == order);
    }
}

TEST_CASE("reflection length agrees with the Cayley-graph distance oracle") {
    for (const char* spec : {"A2", "B2", "A3", "G2", "B3", "D4"}) {
        INFO("system " << spec);
        auto rs = build_root_system(spec);
        auto dist = cayley_reflection_distances(*rs);
        CHECK(dist.size() == generate_group(*rs).size());
        GroupElement w{rs.get(), {}};
        for (const auto& [perm, d] : dist) {
            w.perm = perm;
            CHECK(absolute_length(w) == d);
        }
    }
}

TEST_CASE("reflection length basics") {
    auto rs = build_root_system("B3");
    CHECK(absolute_length(identity_element(*rs)) == 0);
    for (int p = 0; p < rs->num_positive; ++p)
        CHECK(absolute_length(reflection_element(*rs, p)) == 1);
    for (const char* spec : {"A1", "A2", "A3", "B2", "B3", "G2", "D4", "A1xA2"}) {
        auto r = build_root_system(spec);
        CHECK(absolute_length(bipartite_coxeter(*r)) == r->rank);
    }
    // Longest element of B2 is -1, a product of two orthogonal reflections.
    auto rsB = build_root_system("B2");
    GroupElement g = bipartite_coxeter(*rsB);
    GroupElement w0 = compose(g, g);
    for (int i = 0; i < 2 * rsB->num_positive; ++i) CHECK(w0.perm[i] == rsB->neg[i]);
    CHECK(absolute_length(w0) == 2);
}

TEST_CASE("reflection length properties") {
    auto rs = build_root_system("A3");
    auto all = generate_group(*rs);
    std::mt19937 rng(20260815);
    std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
    for (int trial = 0; trial < 200; ++trial) {
        const GroupElement& u = all[pick(rng)];
        const GroupElement& v = all[pick(rng)];
        CHECK(absolute_length(u) == absolute_length(inverse(u)));
        CHECK(absolute_length(compose(u, v)) <= absolute_length(u) + absolute_length(v));
        // Conjugation preserves reflection length.
        CHECK(absolute_length(conjugate(u, v)) == absolute_length(v));
        // Conjugates of reflections are reflections, with a well-defined root.
        GroupElement t = reflection_element(*rs, static_cast<int>(pick(rng)) % rs->num_positive);
        CHECK(root_of_reflection(conjugate(u, t)) >= 0);
    }
}

TEST_CASE("root_of_reflection identifies reflections and only reflections") {
    auto rs = build_root_system("B3");
    for (int p = 0; p < rs->num_positive; ++p)
        CHECK(root_of_reflection(reflection_element(*rs, p)) == p);
    CHECK(root_of_reflection(identity_element(*rs)) == -1);
    CHECK(root_of_reflection(bipartite_coxeter(*rs)) == -1);
    // -1 in B2 negates every root but is not a reflection.
    auto rsB = build_root_system("B2");
    GroupElement g = bipartite_coxeter(*rsB);
    CHECK(root_of_reflection(compose(g, g)) == -1);
}

TEST_CASE("absolute order is a partial order refined by length") {
    auto rs = build_root_system("B2");
    auto all = sorted_by_length_then_perm(generate_group(*rs));
    GroupElement id = identity_element(*rs);
    for (const auto& u : all) {
        CHECK(absolute_leq(id, u));
        CHECK(absolute_leq(u, u));
        for (const auto& v : all) {
            if (absolute_leq(u, v) && absolute_leq(v, u)) CHECK(u == v);
            if (absolute_leq(u, v) && u != v) CHECK(absolute_length(u) < absolute_length(v));
            for (const auto& w : all)
                if (absolute_leq(u, v) && absolute_leq(v, w)) CHECK(absolute_leq(u, w));
        }
    }
}

TEST_CASE("interval below the Coxeter element has the expected size") {
    const std::pair<const char*, size_t> expected[] = {
        {"A1", 2},  {"A2", 5},  {"B2", 6},  {"G2", 8},
        {"A3", 14}, {"B3", 20}, {"D4", 50}, {"A1xA2", 10},
    };
    for (auto [spec, count] : expected) {
        INFO("system " << spec);
        auto rs = build_root_system(spec);
        AbsOrderCache cache(*rs);
        auto below = cache.below_interval(bipartite_coxeter(*rs));
        CHECK(below.size() == count);
    }
}

TEST_CASE("below_interval matches a brute-force filter of the whole group") {
    for (const char* spec : {"A2", "B2", "G2", "A3", "B3", "D4"}) {
        INFO("system " << spec);
        auto rs = build_root_system(spec);
        GroupElement g = bipartite_coxeter(*rs);
        std::vector<GroupElement> brute;
        for (const auto& w : generate_group(*rs))
            if (absolute_leq(w, g)) brute.push_back(w);
        brute = sorted_by_length_then_perm(std::move(brute));
        AbsOrderCache cache(*rs);
        CHECK(cache.below_interval(g) == brute);
    }
}

TEST_CASE("below_interval is sorted and closed downward") {
    auto rs = build_root_system("A3");
    AbsOrderCache cache(*rs);
    GroupElement g = bipartite_coxeter(*rs);
    auto below = cache.below_interval(g);
    for (size_t i = 0; i + 1 < below.size(); ++i) {
        int la = cache.length(below[i]), lb = cache.length(below[i + 1]);
        CHECK((la < lb || (la == lb && below[i].perm < below[i + 1].perm)));
    }
    std::set<std::vector<int>> members;
    for (const auto& w : below) members.insert(w.perm);
    for (const auto& u : below)
        for (const auto& v : generate_group(*rs))
            if (absolute_leq(v, u)) CHECK(members.count(v.perm) == 1);
}

TEST_CASE("minimal factorizations of the Coxeter element are counted classically") {
    // Reduced reflection factorizations of a Coxeter element number
    // n! h^n / |W|; here both sides are computed from scratch.
    for (const char* spec : {"A2", "B2", "G2"}) {
        INFO("system " << spec);
        auto rs = build_root_system(spec);
        GroupElement g = bipartite_coxeter(*rs);
        size_t count = 0;
        for (int p = 0; p < rs->num_positive; ++p)
            for (int q = 0; q < rs->num_positive; ++q) {
                std::vector<GroupElement> f{reflection_element(*rs, p),
                                            reflection_element(*rs, q)};
                if (is_minimal_factorization(f, g)) ++count;
            }
        size_t order = generate_group(*rs).size();
        size_t h = static_cast<size_t>(rs->components[0].coxeter_number);
        CHECK(count == 2 * h * h / order);
    }
    {
        auto rs = build_root_system("A3");
        GroupElement g = bipartite_coxeter(*rs);
        size_t count = 0;
        for (int p = 0; p < rs->num_positive; ++p)
            for (int q = 0; q < rs->num_positive; ++q)
                for (int r = 0; r < rs->num_positive; ++r) {
                    std::vector<GroupElement> f{reflection_element(*rs, p),
                                                reflection_element(*rs, q),
                                                reflection_element(*rs, r)};
                    if (is_minimal_factorization(f, g)) ++count;
                }
        CHECK(count == 16);  // 3! * 4^3 / 24
    }
}

TEST_CASE("minimal factorization predicate") {
    auto rs = build_root_system("A2");
    GroupElement g = bipartite_coxeter(*rs);
    GroupElement s1 = reflection_element(*rs, rs->simple_ids[0]);
    GroupElement s2 = reflection_element(*rs, rs->simple_ids[1]);
    CHECK(is_minimal_factorization({g}, g));
    CHECK(is_minimal_factorization({s1, s2}, g));
    CHECK_FALSE(is_minimal_factorization({s2, s1}, g));  // wrong product
    CHECK_FALSE(is_minimal_factorization({s1, s1}, identity_element(*rs)));
    CHECK(is_minimal_factorization({}, identity_element(*rs)));
    CHECK(is_minimal_factorization({identity_element(*rs), g}, g));
}

TEST_CASE("intervals transport: [u, w] is as large as [1, u^{-1}w]") {
    for (const char* spec : {"A2", "B2", "A3"}) {
        INFO("system " << spec);
        auto rs = build_root_system(spec);
        AbsOrderCache cache(*rs);
        GroupElement g = bipartite_coxeter(*rs);
        auto below = cache.below_interval(g);
        for (const auto& u : below) {
            size_t direct = 0;
            for (const auto& v : below)
                if (cache.leq(u, v)) ++direct;
            GroupElement rest = compose(inverse(u), g);
            CHECK(direct == cache.below_interval(rest).size());
        }
    }
}

TEST_CASE("cache agrees with the uncached entry points") {
    auto rs = build_root_system("B2");
    AbsOrderCache cache(*rs);
    GroupElement g = bipartite_coxeter(*rs);
    CHECK(cache.length(g) == absolute_length(g));
    CHECK(cache.below_interval(g) == below_interval(g));
    auto rsA = build_root_system("A2");
    CHECK_THROWS_AS(cache.length(identity_element(*rsA)), mixed_system_error);
    CHECK_THROWS_AS(cache.below_interval(identity_element(*rsA)), mixed_system_error);
}
