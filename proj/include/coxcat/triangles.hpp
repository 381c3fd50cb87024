#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "coxcat/cluster.hpp"
#include "coxcat/noncrossing.hpp"
#include "coxcat/rational.hpp"

namespace coxcat {

// ---------------------------------------------------------------------------
// Bivariate polynomials with exact integer coefficients, sparse and
// zero-pruned.  Keys are (x-degree, y-degree).
// ---------------------------------------------------------------------------

struct BiPoly {
    std::map<std::pair<int, int>, Int> c;

    static BiPoly constant(Int v) {
        BiPoly p;
        p.add_term(0, 0, std::move(v));
        return p;
    }
    static BiPoly monomial(int dx, int dy, Int v = 1) {
        BiPoly p;
        p.add_term(dx, dy, std::move(v));
        return p;
    }

    void add_term(int dx, int dy, Int v) {
        if (v == 0) return;
        auto [it, fresh] = c.emplace(std::make_pair(dx, dy), v);
        if (!fresh) {
            it->second += v;
            if (it->second == 0) c.erase(it);
        }
    }
    Int coeff(int dx, int dy) const {
        auto it = c.find({dx, dy});
        return it == c.end() ? Int(0) : it->second;
    }

    bool operator==(const BiPoly& o) const { return c == o.c; }
    bool operator!=(const BiPoly& o) const { return !(*this == o); }

    BiPoly& operator+=(const BiPoly& o) {
        for (const auto& [k, v] : o.c) add_term(k.first, k.second, v);
        return *this;
    }
    BiPoly& operator-=(const BiPoly& o) {
        for (const auto& [k, v] : o.c) add_term(k.first, k.second, -v);
        return *this;
    }
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        BiPoly out;
        for (const auto& [ka, va] : a.c)
            for (const auto& [kb, vb] : b.c)
                out.add_term(ka.first + kb.first, ka.second + kb.second, va * vb);
        return out;
    }

    Rational eval(const Rational& x, const Rational& y) const {
        Rational acc = 0;
        for (const auto& [k, v] : c) {
            Rational term(v);
            for (int i = 0; i < k.first; ++i) term *= x;
            for (int i = 0; i < k.second; ++i) term *= y;
            acc += term;
        }
        return acc;
    }

    // Terms ordered by total degree, then by x-degree descending.
    std::string to_string() const {
        if (c.empty()) return "0";
        std::vector<std::pair<std::pair<int, int>, Int>> terms(c.begin(), c.end());
        std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
            int ta = a.first.first + a.first.second, tb = b.first.first + b.first.second;
            if (ta != tb) return ta < tb;
            return a.first.first > b.first.first;
        });
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, v] : terms) {
            Int a = v;
            if (first) {
                if (a < 0) {
                    os << "-";
                    a = -a;
                }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            bool has_var = k.first > 0 || k.second > 0;
            if (a != 1 || !has_var) os << a.get_str();
            if (a != 1 && has_var) os << "*";
            if (k.first > 0) {
                os << "x";
                if (k.first > 1) os << "^" << k.first;
            }
            if (k.first > 0 && k.second > 0) os << "*";
            if (k.second > 0) {
                os << "y";
                if (k.second > 1) os << "^" << k.second;
            }
        }
        return os.str();
    }
};

inline BiPoly poly_pow(const BiPoly& p, int k) {
    BiPoly out = BiPoly::constant(1);
    for (int i = 0; i < k; ++i) out = out * p;
    return out;
}

// ---------------------------------------------------------------------------
// The two triangles and their transforms.
// ---------------------------------------------------------------------------

// Face generating polynomial: coefficient of x^k y^l counts the faces with k
// colored positive roots and l negative simple roots.
inline BiPoly f_triangle(const FaceEnumeration& fe) {
    BiPoly f;
    for (const auto& [kl, cnt] : fe.f_counts) f.add_term(kl.first, kl.second, Int(cnt));
    return f;
}

enum class MTriangleConvention {
    kRankPair,        // x^{rk(b)} y^{rk(a)}; makes the transform identity exact
    kRankDifference,  // x^{rk(b)-rk(a)} y^{rk(a)}; traditional printed form
};

inline BiPoly m_triangle(const NcmPoset& p,
                         MTriangleConvention conv = MTriangleConvention::kRankPair) {
    MobiusTable mt(p);
    BiPoly out;
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b) {
            if (!p.leq(a, b)) continue;
            int dx = conv == MTriangleConvention::kRankPair ? p.rank_of[b]
                                                            : p.rank_of[b] - p.rank_of[a];
            out.add_term(dx, p.rank_of[a], mt.mu(a, b));
        }
    return out;
}

// Left side of the transform identity:
// sum_{k,l} f_{k,l} (x+y)^k y^l (1-y)^{n-k-l}, which is
// (1-y)^n F((x+y)/(1-y), y/(1-y)) cleared of denominators.
inline BiPoly lhs_transform(const BiPoly& f, int n) {
    const BiPoly xy = BiPoly::monomial(1, 0) + BiPoly::monomial(0, 1);
    const BiPoly one_minus_y = BiPoly::constant(1) - BiPoly::monomial(0, 1);
    BiPoly out;
    for (const auto& [kl, v] : f.c) {
        int k = kl.first, l = kl.second;
        if (k + l > n)
            throw degree_overflow_error("lhs_transform: face degree exceeds the rank");
        BiPoly term = BiPoly::constant(v) * poly_pow(xy, k) *
                      poly_pow(BiPoly::monomial(0, 1), l) * poly_pow(one_minus_y, n - k - l);
        out += term;
    }
    return out;
}

// Right side of the transform identity, assembled directly from the Moebius
// data: sum over comparable pairs of mu(a,b) (-1)^d x^d y^{rk(a)} with
// d = rk(b) - rk(a).  Equals the rank-pair M-triangle evaluated at
// (-x, -y/x) with denominators cleared.
inline BiPoly rhs_transform(const NcmPoset& p) {
    MobiusTable mt(p);
    BiPoly out;
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b) {
            if (!p.leq(a, b)) continue;
            int d = p.rank_of[b] - p.rank_of[a];
            Int v = mt.mu(a, b);
            out.add_term(d, p.rank_of[a], d % 2 == 0 ? v : -v);
        }
    return out;
}

// ---------------------------------------------------------------------------
// h-polynomials and rank generating functions.
// ---------------------------------------------------------------------------

// h-polynomial of a complex of dimension n-1 given its face counts by size:
// sum_i f_i y^i (1-y)^{n-i}.
inline BiPoly h_polynomial(const std::vector<long>& size_counts, int n) {
    if (static_cast<int>(size_counts.size()) > n + 1)
        throw degree_overflow_error("h_polynomial: more face sizes than the dimension allows");
    const BiPoly one_minus_y = BiPoly::constant(1) - BiPoly::monomial(0, 1);
    BiPoly out;
    for (size_t i = 0; i < size_counts.size(); ++i)
        out += BiPoly::constant(Int(size_counts[i])) *
               poly_pow(BiPoly::monomial(0, 1), static_cast<int>(i)) *
               poly_pow(one_minus_y, n - static_cast<int>(i));
    return out;
}

inline BiPoly rank_generating(const NcmPoset& p) {
    BiPoly out;
    for (int r : p.rank_of) out.add_term(0, r, 1);
    return out;
}

// Right side of the link identity: sum over the positive faces of
// x^{|face|} h(link, y).
inline BiPoly link_sum(const RootSystem& rs, const FaceEnumeration& fe) {
    BiPoly out;
    for (const auto& f : fe.faces) {
        bool positive = true;
        for (int v : f) positive = positive && !rs.is_negative_simple(fe.vertices[v].root);
        if (!positive) continue;
        BiPoly h = h_polynomial(link_size_counts(fe, f), rs.rank - static_cast<int>(f.size()));
        out += BiPoly::monomial(static_cast<int>(f.size()), 0) * h;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Counting formula and the packaged identity checks.
// ---------------------------------------------------------------------------

inline Int catalan_number(const RootSystem& rs, int m) {
    if (m < 0) throw invalid_m_error("catalan_number: need m >= 0");
    Int num = 1, den = 1;
    for (const auto& comp : rs.components)
        for (int e : comp.exponents) {
            num *= Int(e + m * comp.coxeter_number + 1);
            den *= Int(e + 1);
        }
    return exact_div(num, den, "catalan_number");
}

struct FmCheck {
    BiPoly f;     // F-triangle
    BiPoly lhs;   // transformed F
    BiPoly rhs;   // Moebius side
    bool holds = false;
};

inline FmCheck verify_fm(RootSystemPtr rs, int m) {
    FmCheck out;
    out.f = f_triangle(enumerate_faces(*rs, m));
    out.lhs = lhs_transform(out.f, rs->rank);
    out.rhs = rhs_transform(build_ncm(rs, m));
    out.holds = out.lhs == out.rhs;
    return out;
}

inline bool link_decomposition_holds(RootSystemPtr rs, int m) {
    auto fe = enumerate_faces(*rs, m);
    return lhs_transform(f_triangle(fe), rs->rank) == link_sum(*rs, fe);
}

}  // namespace coxcat
