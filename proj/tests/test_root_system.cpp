#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "coxcat/root_system.hpp"

using namespace coxcat;

namespace {

int root_of(const RootSystem& rs, std::vector<long> coords) {
    Vec v(coords.size());
    for (size_t i = 0; i < coords.size(); ++i) v[i] = coords[i];
    return find_root(rs, v);
}

// Simple indices in bipartite order (+ class ascending, then - class).
std::vector<int> bipartite_order(const RootSystem& rs) {
    std::vector<int> b;
    for (int i = 0; i < rs.rank; ++i)
        if (rs.plus_class[i]) b.push_back(i);
    for (int i = 0; i < rs.rank; ++i)
        if (!rs.plus_class[i]) b.push_back(i);
    return b;
}

}  // namespace

TEST_CASE("system spec parsing and canonicalization") {
    CHECK(canonical_system_name("A2") == "A2");
    CHECK(canonical_system_name("b3") == "B3");
    CHECK(canonical_system_name("a1Xa2") == "A1xA2");
    CHECK(canonical_system_name(" g2 ") == "G2");
    CHECK_THROWS_AS(canonical_system_name("Q9"), invalid_spec_error);
    CHECK_THROWS_AS(canonical_system_name("A0"), invalid_spec_error);
    CHECK_THROWS_AS(canonical_system_name("B1"), invalid_spec_error);
    CHECK_THROWS_AS(canonical_system_name("C2"), invalid_spec_error);
    CHECK_THROWS_AS(canonical_system_name("D3"), invalid_spec_error);
    CHECK_THROWS_AS(canonical_system_name("E9"), invalid_spec_error);
    CHECK_THROWS_AS(canonical_system_name("F5"), invalid_spec_error);
    CHECK_THROWS_AS(canonical_system_name(""), invalid_spec_error);
    CHECK_THROWS_AS(canonical_system_name("A1x"), invalid_spec_error);
    CHECK_THROWS_AS(canonical_system_name("xA1"), invalid_spec_error);
    CHECK_THROWS_AS(canonical_system_name("A2.5"), invalid_spec_error);
}

TEST_CASE("root counts, Coxeter numbers, exponents match the classical tables") {
    struct Row {
        const char* spec;
        int num_positive;
        int h;
        std::vector<int> exponents;
    };
    const std::vector<Row> table = {
        {"A1", 1, 2, {1}},
        {"A2", 3, 3, {1, 2}},
        {"A3", 6, 4, {1, 2, 3}},
        {"B2", 4, 4, {1, 3}},
        {"B3", 9, 6, {1, 3, 5}},
        {"C3", 9, 6, {1, 3, 5}},
        {"D4", 12, 6, {1, 3, 3, 5}},
        {"G2", 6, 6, {1, 5}},
        {"F4", 24, 12, {1, 5, 7, 11}},
        {"E6", 36, 12, {1, 4, 5, 7, 8, 11}},
    };
    for (const auto& row : table) {
        auto rs = build_root_system(row.spec);
        INFO(row.spec);
        CHECK(rs->num_positive == row.num_positive);
        CHECK(rs->components.size() == 1);
        CHECK(rs->components[0].coxeter_number == row.h);
        CHECK(rs->components[0].exponents == row.exponents);
        CHECK(rs->coxeter_order == row.h);
        // N = n h / 2, exponent symmetry e_i + e_{n+1-i} = h.
        CHECK(2 * rs->num_positive == rs->rank * row.h);
        for (int i = 0; i < rs->rank; ++i)
            CHECK(row.exponents[i] + row.exponents[rs->rank - 1 - i] == row.h);
    }
}

TEST_CASE("rank-2 system with unequal root lengths: B2 geometry") {
    auto rs = build_root_system("B2");
    CHECK(rs->form.at(0, 0) == 2);
    CHECK(rs->form.at(1, 1) == 1);   // short simple root
    CHECK(rs->form.at(0, 1) == -1);
    int long_root = root_of(*rs, {1, 2});
    CHECK(inner(rs->roots[long_root], rs->roots[long_root], rs->form) == 2);
    int short_root = root_of(*rs, {1, 1});
    CHECK(inner(rs->roots[short_root], rs->roots[short_root], rs->form) == 1);
}

TEST_CASE("bipartition: classes are orthogonal sets, lowest simple in +") {
    for (const char* spec : {"A2", "A3", "B3", "D4", "G2", "F4", "E6", "A1xA2"}) {
        auto rs = build_root_system(spec);
        INFO(spec);
        CHECK(rs->plus_class[0]);
        for (int i = 0; i < rs->rank; ++i)
            for (int j = i + 1; j < rs->rank; ++j)
                if (rs->plus_class[i] == rs->plus_class[j]) CHECK(rs->form.at(i, j) == 0);
    }
    // A2: adjacent simples take opposite classes.
    auto a2 = build_root_system("A2");
    CHECK(a2->r_plus == 1);
    CHECK(a2->plus_class[0]);
    CHECK_FALSE(a2->plus_class[1]);
}

TEST_CASE("A2: gamma, rho order, total order, rotation, degree (pinned)") {
    auto rsp = build_root_system("A2");
    const RootSystem& rs = *rsp;
    int s1 = root_of(rs, {1, 0}), s2 = root_of(rs, {0, 1}), al = root_of(rs, {1, 1});
    int ns1 = rs.neg[s1], ns2 = rs.neg[s2], nal = rs.neg[al];

    // gamma acts as a 3-cycle on the coordinate model: s1 -> s2 -> -alpha.
    CHECK(rs.gamma_perm[s1] == s2);
    CHECK(rs.gamma_perm[s2] == nal);
    CHECK(rs.gamma_perm[al] == ns1);
    CHECK(rs.coxeter_order == 3);

    // rho enumeration: s1, alpha, s2, then the negatives in the same pattern.
    CHECK(rho_at(rs, 1) == s1);
    CHECK(rho_at(rs, 2) == al);
    CHECK(rho_at(rs, 3) == s2);
    CHECK(rho_at(rs, 4) == ns1);
    CHECK(rho_at(rs, 5) == nal);
    CHECK(rho_at(rs, 6) == ns2);
    CHECK(rho_at(rs, 0) == ns2);   // cyclic: rho_0 = rho_{2N}
    CHECK(rho_at(rs, 7) == s1);    // cyclic wraparound
    CHECK(rho_at(rs, -1) == nal);  // rho_{-1} = rho_{2N-1}

    // Total order: -s2 < s1 < alpha < s2 < -s1.
    CHECK(rs.ap_order == std::vector<int>{ns2, s1, al, s2, ns1});
    CHECK(total_order_position(rs, ns2) < total_order_position(rs, s1));
    CHECK_THROWS_AS(total_order_position(rs, nal), not_almost_positive_error);

    // Rotation (pinned, including the inverse-direction trap on -s1: the
    // rotation of -s1 is alpha = s1+s2, not s1).
    CHECK(rotation_R(rs, s1) == ns1);
    CHECK(rotation_R(rs, al) == ns2);
    CHECK(rotation_R(rs, s2) == s1);
    CHECK(rotation_R(rs, ns1) == al);
    CHECK(rotation_R(rs, ns2) == s2);
    CHECK_THROWS_AS(rotation_R(rs, nal), not_almost_positive_error);

    CHECK(degree(rs, s1) == 1);
    CHECK(degree(rs, al) == 1);
    CHECK(degree(rs, s2) == 2);
    CHECK(degree(rs, ns1) == 0);
    CHECK(degree(rs, ns2) == 0);
}

TEST_CASE("B2: rho order and degrees (pinned)") {
    auto rsp = build_root_system("B2");
    const RootSystem& rs = *rsp;
    int s1 = root_of(rs, {1, 0}), s2 = root_of(rs, {0, 1});
    int a = root_of(rs, {1, 1}), b = root_of(rs, {1, 2});
    CHECK(rho_at(rs, 1) == s1);
    CHECK(rho_at(rs, 2) == a);
    CHECK(rho_at(rs, 3) == b);
    CHECK(rho_at(rs, 4) == s2);
    CHECK(rho_at(rs, 5) == rs.neg[s1]);
    CHECK(rs.ap_order == std::vector<int>{rs.neg[s2], s1, a, b, s2, rs.neg[s1]});
    CHECK(degree(rs, s1) == 1);
    CHECK(degree(rs, a) == 1);
    CHECK(degree(rs, b) == 2);
    CHECK(degree(rs, s2) == 2);
}

TEST_CASE("rho recurrences hold verbatim on irreducible systems") {
    for (const char* spec : {"A1", "A2", "A3", "B2", "B3", "G2", "D4"}) {
        auto rsp = build_root_system(spec);
        const RootSystem& rs = *rsp;
        INFO(spec);
        auto bip = bipartite_order(rs);
        const int n = rs.rank, N = rs.num_positive, r = rs.r_plus;
        for (int i = 1; i <= 2 * N; ++i) {
            int sigma = rs.simple_ids[bip[(i - 1) % n]];
            if (i <= r) {
                CHECK(rho_at(rs, i) == sigma);
            } else if (i <= n) {
                CHECK(rho_at(rs, i) == rs.neg[rs.gamma_perm[sigma]]);
            } else {
                CHECK(rho_at(rs, i) == rs.gamma_perm[rho_at(rs, i - n)]);
            }
        }
        // Second half enumerates the negative roots as a set.
        std::set<int> second_half, negatives;
        for (int i = 1; i <= N; ++i) {
            second_half.insert(rho_at(rs, N + i));
            negatives.insert(rs.neg[rho_at(rs, i)]);
        }
        CHECK(second_half == negatives);
        // Elementwise antipodal symmetry rho_{N+i} = -rho_i holds exactly when
        // the longest element acts as -1 (plus the accidental A2 case); A3's
        // rho_7 = -sigma_3 != -rho_1 shows it is not general.
        bool antipodal = std::string(spec) != "A3";
        bool observed = true;
        for (int i = 1; i <= N; ++i) observed = observed && rho_at(rs, N + i) == rs.neg[rho_at(rs, i)];
        CHECK(observed == antipodal);
        // The last n-r positive rho terms are the - class simples...
        std::set<int> tail, minus_simples, neg_minus, head_negs;
        for (int i = 0; i < n - r; ++i) {
            tail.insert(rho_at(rs, N - i));
            head_negs.insert(rho_at(rs, -i));
        }
        for (int s = 0; s < n; ++s)
            if (!rs.plus_class[s]) {
                minus_simples.insert(rs.simple_ids[s]);
                neg_minus.insert(rs.neg[rs.simple_ids[s]]);
            }
        CHECK(tail == minus_simples);
        // ...while rho_0, rho_{-1}, ... are their negatives (the two sets
        // differ by sign; equating them would be wrong).
        CHECK(head_negs == neg_minus);
    }
}

TEST_CASE("total order blocks: -(minus class), positives by rho, -(plus class)") {
    for (const char* spec : {"A2", "A3", "B3", "D4", "G2"}) {
        auto rsp = build_root_system(spec);
        const RootSystem& rs = *rsp;
        INFO(spec);
        const int n = rs.rank, N = rs.num_positive, r = rs.r_plus;
        REQUIRE(static_cast<int>(rs.ap_order.size()) == N + n);
        for (int k = 0; k < n - r; ++k) {
            int id = rs.ap_order[k];
            CHECK(rs.is_negative_simple(id));
            CHECK_FALSE(rs.plus_class[rs.simple_of_root[rs.neg[id]]]);
        }
        for (int k = n - r; k < n - r + N; ++k) {
            CHECK(rs.is_positive(rs.ap_order[k]));
            CHECK(rs.rho_index_of[rs.ap_order[k]] == k - (n - r) + 1);
        }
        for (int k = n - r + N; k < N + n; ++k) {
            int id = rs.ap_order[k];
            CHECK(rs.is_negative_simple(id));
            CHECK(rs.plus_class[rs.simple_of_root[rs.neg[id]]]);
        }
    }
}

TEST_CASE("rotation is a bijection of the almost positive roots") {
    for (const char* spec : {"A2", "B2", "B3", "G2", "D4", "A1xA2"}) {
        auto rsp = build_root_system(spec);
        const RootSystem& rs = *rsp;
        INFO(spec);
        std::set<int> images;
        for (int id : rs.ap_order) images.insert(rotation_R(rs, id));
        CHECK(images == std::set<int>(rs.ap_order.begin(), rs.ap_order.end()));
        // Plus-class simples and negated minus-class simples just flip sign.
        for (int s = 0; s < rs.rank; ++s) {
            int sid = rs.simple_ids[s];
            if (rs.plus_class[s])
                CHECK(rotation_R(rs, sid) == rs.neg[sid]);
            else
                CHECK(rotation_R(rs, rs.neg[sid]) == sid);
        }
    }
}

TEST_CASE("mu map: defining identities") {
    for (const char* spec : {"A1", "A2", "B2", "G2", "A1xA2"}) {
        auto rsp = build_root_system(spec);
        const RootSystem& rs = *rsp;
        INFO(spec);
        // mu = 2 (I - gamma)^{-1} exists and (mu(x), x) = (x, x) for every root.
        Mat check = mat_mul(mat_sub(identity_matrix(rs.rank), rs.gamma_matrix), rs.mu);
        CHECK(check == mat_scale(Rational(2), identity_matrix(rs.rank)));
        for (size_t x = 0; x < rs.roots.size(); ++x)
            CHECK(mu_pair(rs, static_cast<int>(x), static_cast<int>(x)) ==
                  inner(rs.roots[x], rs.roots[x], rs.form));
    }
    // Pinned: A2 in simple-root coordinates, mu = (1/3) [[4,-2],[2,2]].
    auto a2 = build_root_system("A2");
    CHECK(a2->mu.at(0, 0) == make_rational(4, 3));
    CHECK(a2->mu.at(0, 1) == make_rational(-2, 3));
    CHECK(a2->mu.at(1, 0) == make_rational(2, 3));
    CHECK(a2->mu.at(1, 1) == make_rational(2, 3));
}

TEST_CASE("mu antisymmetry across the rho indexing") {
    for (const char* spec : {"A2", "B2", "G2"}) {
        auto rsp = build_root_system(spec);
        const RootSystem& rs = *rsp;
        INFO(spec);
        const int n = rs.rank, twoN = 2 * rs.num_positive;
        for (int i = 1; i <= twoN; ++i)
            for (int j = 1; j <= twoN; ++j)
                CHECK(mu_pair(rs, rho_at(rs, j), rho_at(rs, i - n)) ==
                      -mu_pair(rs, rho_at(rs, i), rho_at(rs, j)));
    }
}

TEST_CASE("colored rotation on A2 with two colors (pinned)") {
    auto rsp = build_root_system("A2");
    const RootSystem& rs = *rsp;
    int s1 = root_of(rs, {1, 0}), s2 = root_of(rs, {0, 1}), al = root_of(rs, {1, 1});
    const int m = 2;
    CHECK(rotation_Rm(rs, m, {s1, 1}) == ColoredRoot{s1, 2});
    CHECK(rotation_Rm(rs, m, {s1, 2}) == ColoredRoot{rs.neg[s1], 1});
    // The trap case: rotating the negative simple -s1 yields alpha (color 1),
    // independent of m.
    CHECK(rotation_Rm(rs, m, {rs.neg[s1], 1}) == ColoredRoot{al, 1});
    CHECK(rotation_Rm(rs, 5, {rs.neg[s1], 1}) == ColoredRoot{al, 1});
    CHECK(rotation_Rm(rs, m, {s2, 2}) == ColoredRoot{s1, 1});
    CHECK(rotation_Rm(rs, 1, {al, 1}) == ColoredRoot{rs.neg[s2], 1});

    CHECK_THROWS_AS(rotation_Rm(rs, 0, {s1, 1}), invalid_m_error);
    CHECK_THROWS_AS(rotation_Rm(rs, m, {s1, 3}), color_range_error);
    CHECK_THROWS_AS(rotation_Rm(rs, m, {s1, 0}), color_range_error);
    CHECK_THROWS_AS(rotation_Rm(rs, m, {rs.neg[s1], 2}), color_range_error);
    CHECK_THROWS_AS(rotation_Rm(rs, m, {rs.neg[al], 1}), not_almost_positive_error);
}

TEST_CASE("colored rotation is a bijection of the colored vertex set") {
    for (const char* spec : {"A2", "B2", "G2"}) {
        auto rsp = build_root_system(spec);
        const RootSystem& rs = *rsp;
        for (int m = 1; m <= 3; ++m) {
            INFO(spec << " m=" << m);
            std::vector<ColoredRoot> verts;
            for (int id : rs.ap_order) {
                if (rs.is_positive(id))
                    for (int c = 1; c <= m; ++c) verts.push_back({id, c});
                else
                    verts.push_back({id, 1});
            }
            std::set<std::pair<int, int>> images;
            for (const auto& v : verts) {
                ColoredRoot img = rotation_Rm(rs, m, v);
                check_colored(rs, m, img);
                images.insert({img.root, img.color});
            }
            CHECK(images.size() == verts.size());
        }
    }
}

TEST_CASE("reducible systems concatenate componentwise") {
    auto rsp = build_root_system("A1xA2");
    const RootSystem& rs = *rsp;
    CHECK(rs.rank == 3);
    CHECK(rs.num_positive == 4);
    REQUIRE(rs.components.size() == 2);
    CHECK(rs.components[0].family == "A");
    CHECK(rs.components[0].rank == 1);
    CHECK(rs.components[1].family == "A");
    CHECK(rs.components[1].rank == 2);
    CHECK(rs.coxeter_order == 6);  // lcm of the component Coxeter numbers 2, 3
    // rho and the total order list component 1 before component 2.
    for (int i = 1; i <= rs.num_positive; ++i) {
        int expected_comp = i == 1 ? 0 : 1;
        CHECK(rs.component_of_root[rho_at(rs, i)] == expected_comp);
        CHECK(rho_at(rs, rs.num_positive + i) == rs.neg[rho_at(rs, i)]);
    }
    std::vector<int> comps;
    for (int id : rs.ap_order) comps.push_back(rs.component_of_root[id]);
    CHECK(std::is_sorted(comps.begin(), comps.end()));
    // Both A1 x A1-style classes: every component colors its own lowest + .
    CHECK(rs.plus_class[0]);
    CHECK(rs.plus_class[1]);
    CHECK_FALSE(rs.plus_class[2]);
}

TEST_CASE("parabolic subsystems") {
    auto a2 = build_root_system("A2");
    auto p = parabolic_subsystem(*a2, 0);
    CHECK(p.system->rank == 1);
    CHECK(p.system->num_positive == 1);
    CHECK(p.system->components[0].coxeter_number == 2);
    CHECK(p.parent_simple == std::vector<int>{1});
    CHECK(to_parent_coords(*a2, p, 0) == Vec{0, 1});

    auto a3 = build_root_system("A3");
    auto mid = parabolic_subsystem(*a3, 1);
    CHECK(mid.system->rank == 2);
    CHECK(mid.system->components.size() == 2);
    CHECK(mid.system->components[0].rank == 1);
    CHECK(mid.system->components[1].rank == 1);
    CHECK(mid.parent_simple == std::vector<int>{0, 2});

    auto b2 = build_root_system("B2");
    auto q = parabolic_subsystem(*b2, 0);
    CHECK(q.system->rank == 1);
    CHECK(q.system->form.at(0, 0) == 1);  // the short simple survives with its length
    CHECK(q.parent_simple == std::vector<int>{1});

    CHECK_THROWS_AS(parabolic_subsystem(*a2, 2), invalid_spec_error);
    CHECK_THROWS_AS(parabolic_subsystem(*a2, -1), invalid_spec_error);
}

TEST_CASE("interleaved parabolic components keep the parent map straight") {
    // Deleting the central node of A5 leaves A2 x A2 with parent simples
    // {0,1} and {3,4}; deleting a branch-adjacent node of E6 interleaves.
    auto a5 = build_root_system("A5");
    auto p = parabolic_subsystem(*a5, 2);
    CHECK(p.system->components.size() == 2);
    CHECK(p.parent_simple == std::vector<int>{0, 1, 3, 4});

    auto e6 = build_root_system("E6");
    auto q = parabolic_subsystem(*e6, 3);  // remove the degree-3 node
    CHECK(q.system->rank == 5);
    CHECK(q.system->components.size() == 3);
    // Component grouping: {0,2}, {1}, {4,5} in parent labels.
    CHECK(q.parent_simple == std::vector<int>{0, 2, 1, 4, 5});
    int total_pos = 0;
    for (const auto& c : q.system->components) total_pos += c.num_positive;
    CHECK(q.system->num_positive == total_pos);
    CHECK(q.system->num_positive == 3 + 1 + 3);  // A2 x A1 x A2
}

TEST_CASE("find_root accepts every root and rejects non-roots") {
    auto rsp = build_root_system("B2");
    const RootSystem& rs = *rsp;
    for (size_t i = 0; i < rs.roots.size(); ++i) CHECK(find_root(rs, rs.roots[i]) == static_cast<int>(i));
    CHECK_THROWS_AS(find_root(rs, Vec{2, 2}), not_a_root_error);
    CHECK_THROWS_AS(find_root(rs, Vec{0, 0}), not_a_root_error);
}
