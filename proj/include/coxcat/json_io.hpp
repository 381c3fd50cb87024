#pragma once

// Serialization helpers shared by the command-line interface and anything
// else that wants a stable textual form of the library's objects: face
// tokens ("+3@2" / "-1"), coordinate vectors, group-element permutations,
// and bivariate polynomials.  All emitters are deterministic so repeated
// runs produce identical bytes.

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "triangles.hpp"

namespace coxcat {

// ---------------------------------------------------------------------------
// Small numeric helpers
// ---------------------------------------------------------------------------

inline long coord_int(const Rational& c) {
    if (c.get_den() != 1) throw internal_error("coord_int: coordinate is not an integer");
    if (!c.get_num().fits_slong_p()) throw internal_error("coord_int: coordinate out of range");
    return c.get_num().get_si();
}

inline nlohmann::json coords_json(const Vec& v) {
    auto a = nlohmann::json::array();
    for (const auto& c : v) a.push_back(coord_int(c));
    return a;
}

inline std::string coords_text(const Vec& v) {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ' ';
        os << coord_int(v[i]);
    }
    os << ']';
    return os.str();
}

// ---------------------------------------------------------------------------
// Root and face tokens.
//
//   "+i"    almost-positive token: the positive root with 1-based rho index i
//   "-j"    the negated simple root sigma_j (1-based j)
//   "+i@c"  colored: the positive root rho_i carrying color c
//
// A face is a comma-separated list of colored tokens; the empty string is
// the empty face.
// ---------------------------------------------------------------------------

inline std::string root_token(const RootSystem& rs, int root_id) {
    if (root_id < 0 || root_id >= 2 * rs.num_positive)
        throw not_a_root_error("root_token: root id out of range");
    if (rs.is_positive(root_id)) return "+" + std::to_string(rs.rho_index_of[root_id]);
    return "-" + std::to_string(rs.rho_index_of[rs.neg[root_id]]);
}

// Token for an almost positive root in the face dialect, without a color:
// "+i" for the positive root rho_i, "-j" for the negated simple sigma_j.
inline std::string ap_token(const RootSystem& rs, int root_id) {
    if (rs.is_negative_simple(root_id))
        return "-" + std::to_string(rs.simple_of_root[rs.neg[root_id]] + 1);
    if (!rs.is_positive(root_id))
        throw not_almost_positive_error("ap_token: root is not almost positive");
    return "+" + std::to_string(rs.rho_index_of[root_id]);
}

inline std::string face_token(const RootSystem& rs, const ColoredRoot& cr) {
    if (rs.is_negative_simple(cr.root))
        return "-" + std::to_string(rs.simple_of_root[rs.neg[cr.root]] + 1);
    if (!rs.is_positive(cr.root))
        throw not_almost_positive_error("face_token: root is not almost positive");
    return "+" + std::to_string(rs.rho_index_of[cr.root]) + "@" + std::to_string(cr.color);
}

inline std::string face_string(const RootSystem& rs, std::vector<ColoredRoot> face) {
    std::sort(face.begin(), face.end(), [&rs](const ColoredRoot& a, const ColoredRoot& b) {
        return colored_less(rs, a, b);
    });
    std::string out;
    for (size_t i = 0; i < face.size(); ++i) {
        if (i) out += ',';
        out += face_token(rs, face[i]);
    }
    return out;
}

namespace detail {

inline std::string trim_copy(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

inline int parse_positive_int(const std::string& s, const std::string& what) {
    if (s.empty() || s.size() > 9)
        throw invalid_spec_error("face token: bad " + what + " '" + s + "'");
    long v = 0;
    for (char ch : s) {
        if (ch < '0' || ch > '9')
            throw invalid_spec_error("face token: bad " + what + " '" + s + "'");
        v = v * 10 + (ch - '0');
    }
    if (v < 1) throw invalid_spec_error("face token: " + what + " must be positive");
    return static_cast<int>(v);
}

}  // namespace detail

inline ColoredRoot parse_face_token(const RootSystem& rs, int m, const std::string& raw) {
    std::string tok = detail::trim_copy(raw);
    if (tok.size() < 2 || (tok[0] != '+' && tok[0] != '-'))
        throw invalid_spec_error("face token '" + raw + "': expected '+i@c' or '-j'");
    if (tok[0] == '-') {
        int j = detail::parse_positive_int(tok.substr(1), "simple index");
        if (j > rs.rank)
            throw invalid_spec_error("face token '" + raw + "': simple index exceeds the rank");
        return ColoredRoot{rs.neg[rs.simple_ids[j - 1]], 1};
    }
    size_t at = tok.find('@');
    if (at == std::string::npos)
        throw invalid_spec_error("face token '" + raw + "': positive roots need a color, '+i@c'");
    int i = detail::parse_positive_int(tok.substr(1, at - 1), "rho index");
    int c = detail::parse_positive_int(tok.substr(at + 1), "color");
    if (i > rs.num_positive)
        throw invalid_spec_error("face token '" + raw +
                                 "': rho index exceeds the number of positive roots");
    ColoredRoot cr{rs.rho_seq[i - 1], c};
    check_colored(rs, m, cr);  // validates the color range
    return cr;
}

inline std::vector<ColoredRoot> parse_face_string(const RootSystem& rs, int m,
                                                  const std::string& text) {
    std::vector<ColoredRoot> face;
    if (detail::trim_copy(text).empty()) return face;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) face.push_back(parse_face_token(rs, m, piece));
    if (!text.empty() && text.back() == ',')
        throw invalid_spec_error("face list ends with a trailing comma");
    for (size_t i = 0; i < face.size(); ++i)
        for (size_t j = i + 1; j < face.size(); ++j)
            if (face[i] == face[j])
                throw invalid_spec_error("face list repeats the token '" +
                                         face_token(rs, face[i]) + "'");
    return face;
}

// ---------------------------------------------------------------------------
// Group elements and polynomials
// ---------------------------------------------------------------------------

inline nlohmann::json perm_json(const GroupElement& w) {
    auto a = nlohmann::json::array();
    for (int x : w.perm) a.push_back(x);
    return a;
}

// Compact text form of a group element: the image of each simple root as a
// signed rho token.
inline std::string simple_images_text(const GroupElement& w) {
    const RootSystem& rs = *w.rs;
    std::string out = "[";
    for (int i = 0; i < rs.rank; ++i) {
        if (i) out += ' ';
        out += root_token(rs, w.perm[rs.simple_ids[i]]);
    }
    out += ']';
    return out;
}

// Polynomial as a sorted array of [xdeg, ydeg, "coeff"] triples.  The
// coefficient travels as a string so arbitrarily large integers survive.
inline nlohmann::json poly_json(const BiPoly& p) {
    auto a = nlohmann::json::array();
    for (const auto& [deg, coef] : p.c)
        a.push_back(nlohmann::json::array({deg.first, deg.second, coef.get_str()}));
    return a;
}

inline void poly_csv_rows(std::ostream& out, const std::string& series, const BiPoly& p) {
    for (const auto& [deg, coef] : p.c)
        out << series << ',' << deg.first << ',' << deg.second << ',' << coef.get_str() << '\n';
}

}  // namespace coxcat
