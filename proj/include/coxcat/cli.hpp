#pragma once

// Command-line front end.  Every subcommand is a thin formatter over the
// library: it builds the requested objects, serializes them, and maps
// exceptions to exit codes.  No combinatorial decisions are made here.
//
// Exit codes:
//   0  success (for verify-fm: the identity holds)
//   1  verification failure (verify-fm only)
//   2  usage or input error (bad flags, unknown system, malformed face, m < 1)
//   3  broken internal invariant
//
// Output is deterministic: the same invocation always produces the same
// bytes.

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "json_io.hpp"

namespace coxcat::cli {

namespace detail {

inline void require_positive_m(int m) {
    if (m < 1) throw invalid_m_error("m must be a positive integer");
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

inline const char* yes_no(bool b) { return b ? "yes" : "no"; }
inline const char* true_false(bool b) { return b ? "true" : "false"; }

// ---- roots ---------------------------------------------------------------

inline int cmd_roots(const RootSystem& rs, const std::string& format, std::ostream& out) {
    const int N = rs.num_positive;
    if (format == "json") {
        nlohmann::json j;
        j["system"] = rs.name;
        j["rank"] = rs.rank;
        j["num_positive"] = N;
        j["coxeter_order"] = rs.coxeter_order;
        auto comps = nlohmann::json::array();
        for (const auto& comp : rs.components) {
            nlohmann::json c;
            c["family"] = comp.family;
            c["rank"] = comp.rank;
            c["num_positive"] = comp.num_positive;
            c["coxeter_number"] = comp.coxeter_number;
            c["exponents"] = comp.exponents;
            auto simples = nlohmann::json::array();
            for (int s : comp.simples) simples.push_back(s + 1);
            c["simples"] = simples;
            comps.push_back(c);
        }
        j["components"] = comps;
        auto plus = nlohmann::json::array(), minus = nlohmann::json::array();
        for (int i = 0; i < rs.rank; ++i)
            (rs.plus_class[i] ? plus : minus).push_back(i + 1);
        j["plus_simples"] = plus;
        j["minus_simples"] = minus;
        auto roots = nlohmann::json::array();
        for (int i = 1; i <= N; ++i) {
            int id = rs.rho_seq[i - 1];
            nlohmann::json r;
            r["rho_index"] = i;
            r["coords"] = coords_json(rs.roots[id]);
            r["height"] = rs.height[id];
            r["simple"] = rs.simple_of_root[id] >= 0
                              ? nlohmann::json(rs.simple_of_root[id] + 1)
                              : nlohmann::json(nullptr);
            roots.push_back(r);
        }
        j["positive_roots"] = roots;
        auto order = nlohmann::json::array();
        for (int id : rs.ap_order) order.push_back(ap_token(rs, id));
        j["order"] = order;
        out << j.dump(2) << "\n";
        return 0;
    }
    if (format == "csv") {
        out << "rho_index,height,simple,coords\n";
        for (int i = 1; i <= N; ++i) {
            int id = rs.rho_seq[i - 1];
            out << i << ',' << rs.height[id] << ',';
            if (rs.simple_of_root[id] >= 0) out << rs.simple_of_root[id] + 1;
            out << ',';
            const Vec& v = rs.roots[id];
            for (size_t k = 0; k < v.size(); ++k) {
                if (k) out << ' ';
                out << coord_int(v[k]);
            }
            out << '\n';
        }
        return 0;
    }
    out << "system: " << rs.name << "\n";
    out << "rank: " << rs.rank << "\n";
    out << "positive roots: " << N << "\n";
    for (size_t c = 0; c < rs.components.size(); ++c) {
        const auto& comp = rs.components[c];
        out << "component " << c + 1 << ": " << comp.family << comp.rank
            << " (coxeter number " << comp.coxeter_number << ", exponents [";
        for (size_t k = 0; k < comp.exponents.size(); ++k) {
            if (k) out << ' ';
            out << comp.exponents[k];
        }
        out << "], simples [";
        for (size_t k = 0; k < comp.simples.size(); ++k) {
            if (k) out << ' ';
            out << comp.simples[k] + 1;
        }
        out << "])\n";
    }
    out << "plus simples: [";
    {
        bool first = true;
        for (int i = 0; i < rs.rank; ++i)
            if (rs.plus_class[i]) {
                if (!first) out << ' ';
                out << i + 1;
                first = false;
            }
        out << "]\nminus simples: [";
        first = true;
        for (int i = 0; i < rs.rank; ++i)
            if (!rs.plus_class[i]) {
                if (!first) out << ' ';
                out << i + 1;
                first = false;
            }
        out << "]\n";
    }
    for (int i = 1; i <= N; ++i) {
        int id = rs.rho_seq[i - 1];
        out << "rho " << i << ": coords " << coords_text(rs.roots[id]) << " height "
            << rs.height[id];
        if (rs.simple_of_root[id] >= 0) out << " simple " << rs.simple_of_root[id] + 1;
        out << "\n";
    }
    out << "order:";
    for (int id : rs.ap_order) out << ' ' << ap_token(rs, id);
    out << "\n";
    return 0;
}

// ---- f-triangle / m-triangle ----------------------------------------------

inline int cmd_f_triangle(const RootSystem& rs, int m, const std::string& format,
                          std::ostream& out) {
    BiPoly f = f_triangle(enumerate_faces(rs, m));
    if (format == "json") {
        nlohmann::json j;
        j["system"] = rs.name;
        j["m"] = m;
        j["f_triangle"] = poly_json(f);
        out << j.dump(2) << "\n";
    } else if (format == "csv") {
        out << "xdeg,ydeg,coeff\n";
        for (const auto& [deg, coef] : f.c)
            out << deg.first << ',' << deg.second << ',' << coef.get_str() << '\n';
    } else {
        out << "system: " << rs.name << "\n";
        out << "m: " << m << "\n";
        out << "F(x,y) = " << f.to_string() << "\n";
    }
    return 0;
}

inline int cmd_m_triangle(RootSystemPtr rs, int m, const std::string& convention,
                          const std::string& format, std::ostream& out) {
    auto conv = convention == "rank-difference" ? MTriangleConvention::kRankDifference
                                                : MTriangleConvention::kRankPair;
    BiPoly M = m_triangle(build_ncm(rs, m), conv);
    if (format == "json") {
        nlohmann::json j;
        j["system"] = rs->name;
        j["m"] = m;
        j["convention"] = convention;
        j["m_triangle"] = poly_json(M);
        out << j.dump(2) << "\n";
    } else if (format == "csv") {
        out << "xdeg,ydeg,coeff\n";
        for (const auto& [deg, coef] : M.c)
            out << deg.first << ',' << deg.second << ',' << coef.get_str() << '\n';
    } else {
        out << "system: " << rs->name << "\n";
        out << "m: " << m << "\n";
        out << "convention: " << convention << "\n";
        out << "M(x,y) = " << M.to_string() << "\n";
    }
    return 0;
}

// ---- verify-fm -------------------------------------------------------------

inline int cmd_verify_fm(RootSystemPtr rs, int m, const std::string& format, std::ostream& out) {
    FmCheck chk = verify_fm(rs, m);
    if (format == "json") {
        nlohmann::json j;
        j["system"] = rs->name;
        j["m"] = m;
        j["f_triangle"] = poly_json(chk.f);
        j["lhs"] = poly_json(chk.lhs);
        j["rhs"] = poly_json(chk.rhs);
        j["holds"] = chk.holds;
        out << j.dump(2) << "\n";
    } else if (format == "csv") {
        out << "series,xdeg,ydeg,coeff\n";
        poly_csv_rows(out, "f", chk.f);
        poly_csv_rows(out, "lhs", chk.lhs);
        poly_csv_rows(out, "rhs", chk.rhs);
        out << "holds,,," << true_false(chk.holds) << "\n";
    } else {
        out << "system: " << rs->name << "\n";
        out << "m: " << m << "\n";
        out << "F(x,y) = " << chk.f.to_string() << "\n";
        out << "lhs(x,y) = " << chk.lhs.to_string() << "\n";
        out << "rhs(x,y) = " << chk.rhs.to_string() << "\n";
        out << "identity holds: " << yes_no(chk.holds) << "\n";
    }
    return chk.holds ? 0 : 1;
}

// ---- check-face -------------------------------------------------------------

inline int cmd_check_face(const RootSystem& rs, int m, const std::string& face_text,
                          const std::string& format, std::ostream& out) {
    require_positive_m(m);
    std::vector<ColoredRoot> face = parse_face_string(rs, m, face_text);

    bool criterion = face_by_membership_tuple(rs, m, face);
    bool pairwise = true;
    for (size_t i = 0; i < face.size() && pairwise; ++i)
        for (size_t j = i + 1; j < face.size() && pairwise; ++j)
            pairwise = m_compatible(rs, m, face[i], face[j]);
    if (criterion != pairwise)
        throw internal_error("membership criterion and pairwise compatibility disagree");

    auto tuple = membership_tuple(rs, m, face);
    std::vector<int> slot_lengths;
    GroupElement prod = identity_element(rs);
    int total = 0;
    for (const auto& w : tuple) {
        int l = absolute_length(w);
        slot_lengths.push_back(l);
        total += l;
        prod = compose(prod, w);
    }
    int prod_length = absolute_length(prod);
    bool below = absolute_leq(prod, bipartite_coxeter(rs));
    std::string canon = face_string(rs, face);

    if (format == "json") {
        nlohmann::json j;
        j["system"] = rs.name;
        j["m"] = m;
        j["face"] = canon;
        j["face_size"] = face.size();
        j["slot_lengths"] = slot_lengths;
        j["sum_slot_lengths"] = total;
        j["product_length"] = prod_length;
        j["product_below_coxeter"] = below;
        j["criterion"] = criterion;
        j["pairwise_compatible"] = pairwise;
        j["is_face"] = criterion;
        out << j.dump(2) << "\n";
    } else if (format == "csv") {
        out << "key,value\n";
        out << "system," << csv_escape(rs.name) << "\n";
        out << "m," << m << "\n";
        out << "face," << csv_escape(canon) << "\n";
        out << "face_size," << face.size() << "\n";
        out << "sum_slot_lengths," << total << "\n";
        out << "product_length," << prod_length << "\n";
        out << "product_below_coxeter," << true_false(below) << "\n";
        out << "criterion," << true_false(criterion) << "\n";
        out << "pairwise_compatible," << true_false(pairwise) << "\n";
        out << "is_face," << true_false(criterion) << "\n";
    } else {
        out << "system: " << rs.name << "\n";
        out << "m: " << m << "\n";
        out << "face: " << (canon.empty() ? "(empty)" : canon) << "\n";
        out << "face size: " << face.size() << "\n";
        out << "slot lengths: [";
        for (size_t i = 0; i < slot_lengths.size(); ++i) {
            if (i) out << ' ';
            out << slot_lengths[i];
        }
        out << "]\n";
        out << "product length: " << prod_length << "\n";
        out << "product below coxeter element: " << yes_no(below) << "\n";
        out << "membership criterion: " << true_false(criterion) << "\n";
        out << "pairwise compatible: " << true_false(pairwise) << "\n";
        out << "is face: " << true_false(criterion) << "\n";
    }
    return 0;
}

// ---- falling-chains ----------------------------------------------------------

inline int cmd_falling_chains(RootSystemPtr rs, int m, const std::string& format,
                              std::ostream& out) {
    NcmPoset p = build_ncm(rs, m);
    struct Row {
        std::vector<std::array<int, 2>> labels;  // (slot, rho index)
        std::string facet;
        std::vector<int> top_slots;
    };
    std::vector<Row> rows;
    for (int e = 0; e < p.size(); ++e) {
        if (!p.covers_up[e].empty()) continue;  // not maximal
        for (const auto& chain : falling_chains(p, p.bottom(), e)) {
            Row r;
            for (int cid : chain) {
                const EdgeLabel& lab = p.covers[cid].label;
                r.labels.push_back({lab.slot, rs->rho_index_of[lab.root]});
            }
            r.facet = face_string(*rs, chain_to_facet(p, chain));
            r.top_slots = p.elements[e];
            rows.push_back(std::move(r));
        }
    }
    std::sort(rows.begin(), rows.end(),
              [](const Row& a, const Row& b) { return a.labels < b.labels; });

    if (format == "json") {
        nlohmann::json j;
        j["system"] = rs->name;
        j["m"] = m;
        j["count"] = rows.size();
        auto chains = nlohmann::json::array();
        for (const auto& r : rows) {
            nlohmann::json c;
            auto labels = nlohmann::json::array();
            for (const auto& l : r.labels) labels.push_back(nlohmann::json::array({l[0], l[1]}));
            c["labels"] = labels;
            c["facet"] = r.facet;
            c["top_slots"] = r.top_slots;
            chains.push_back(c);
        }
        j["chains"] = chains;
        out << j.dump(2) << "\n";
    } else if (format == "csv") {
        out << "chain,step,slot,rho_index,facet\n";
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t s = 0; s < rows[i].labels.size(); ++s)
                out << i + 1 << ',' << s + 1 << ',' << rows[i].labels[s][0] << ','
                    << rows[i].labels[s][1] << ',' << csv_escape(rows[i].facet) << '\n';
    } else {
        out << "system: " << rs->name << "\n";
        out << "m: " << m << "\n";
        out << "falling chains: " << rows.size() << "\n";
        for (size_t i = 0; i < rows.size(); ++i) {
            out << "chain " << i + 1 << ": labels";
            for (const auto& l : rows[i].labels) out << " (" << l[0] << ",+" << l[1] << ")";
            out << " facet " << (rows[i].facet.empty() ? "(empty)" : rows[i].facet) << "\n";
        }
    }
    return 0;
}

// ---- nc / ncm ----------------------------------------------------------------

inline int cmd_nc(RootSystemPtr rs, const std::string& format, bool count_only,
                  std::ostream& out) {
    NcLatticePtr nc = build_nc(rs);
    if (count_only) {
        if (format == "json") {
            nlohmann::json j;
            j["system"] = rs->name;
            j["count"] = nc->size();
            out << j.dump(2) << "\n";
        } else if (format == "csv") {
            out << "count\n" << nc->size() << "\n";
        } else {
            out << nc->size() << "\n";
        }
        return 0;
    }
    if (format == "json") {
        nlohmann::json j;
        j["system"] = rs->name;
        j["count"] = nc->size();
        auto els = nlohmann::json::array();
        for (int i = 0; i < nc->size(); ++i) {
            nlohmann::json e;
            e["id"] = i;
            e["length"] = nc->length_of[i];
            e["perm"] = perm_json(nc->elements[i]);
            els.push_back(e);
        }
        j["elements"] = els;
        auto covers = nlohmann::json::array();
        for (const auto& c : nc->covers) {
            nlohmann::json cj;
            cj["lower"] = c.lower;
            cj["upper"] = c.upper;
            cj["root"] = rs->rho_index_of[c.root];
            covers.push_back(cj);
        }
        j["covers"] = covers;
        out << j.dump(2) << "\n";
    } else if (format == "csv") {
        out << "id,length,simples\n";
        for (int i = 0; i < nc->size(); ++i) {
            out << i << ',' << nc->length_of[i] << ',';
            const GroupElement& w = nc->elements[i];
            for (int k = 0; k < rs->rank; ++k) {
                if (k) out << ' ';
                out << root_token(*rs, w.perm[rs->simple_ids[k]]);
            }
            out << '\n';
        }
    } else {
        out << "system: " << rs->name << "\n";
        out << "elements: " << nc->size() << "\n";
        for (int i = 0; i < nc->size(); ++i)
            out << "id " << i << ": length " << nc->length_of[i] << ", simples -> "
                << simple_images_text(nc->elements[i]) << "\n";
        for (const auto& c : nc->covers)
            out << "cover: " << c.lower << " < " << c.upper << " (+"
                << rs->rho_index_of[c.root] << ")\n";
    }
    return 0;
}

inline int cmd_ncm(RootSystemPtr rs, int m, const std::string& format, bool count_only,
                   std::ostream& out) {
    NcLatticePtr nc = build_nc(rs);
    NcmPoset p = build_ncm(nc, nc->top_id(), m);
    if (count_only) {
        if (format == "json") {
            nlohmann::json j;
            j["system"] = rs->name;
            j["m"] = m;
            j["count"] = p.size();
            out << j.dump(2) << "\n";
        } else if (format == "csv") {
            out << "count\n" << p.size() << "\n";
        } else {
            out << p.size() << "\n";
        }
        return 0;
    }
    if (format == "json") {
        nlohmann::json j;
        j["system"] = rs->name;
        j["m"] = m;
        j["count"] = p.size();
        auto nce = nlohmann::json::array();
        for (int i = 0; i < nc->size(); ++i) {
            nlohmann::json e;
            e["id"] = i;
            e["length"] = nc->length_of[i];
            e["perm"] = perm_json(nc->elements[i]);
            nce.push_back(e);
        }
        j["nc_elements"] = nce;
        auto els = nlohmann::json::array();
        for (int i = 0; i < p.size(); ++i) {
            nlohmann::json e;
            e["id"] = i;
            e["rank"] = p.rank_of[i];
            e["slots"] = p.elements[i];
            els.push_back(e);
        }
        j["elements"] = els;
        auto covers = nlohmann::json::array();
        for (const auto& c : p.covers) {
            nlohmann::json cj;
            cj["lower"] = c.lower;
            cj["upper"] = c.upper;
            cj["slot"] = c.label.slot;
            cj["root"] = rs->rho_index_of[c.label.root];
            covers.push_back(cj);
        }
        j["covers"] = covers;
        out << j.dump(2) << "\n";
    } else if (format == "csv") {
        out << "id,rank,slots\n";
        for (int i = 0; i < p.size(); ++i) {
            out << i << ',' << p.rank_of[i] << ',';
            for (size_t k = 0; k < p.elements[i].size(); ++k) {
                if (k) out << ' ';
                out << p.elements[i][k];
            }
            out << '\n';
        }
    } else {
        out << "system: " << rs->name << "\n";
        out << "m: " << m << "\n";
        out << "elements: " << p.size() << "\n";
        for (int i = 0; i < p.size(); ++i) {
            out << "id " << i << ": rank " << p.rank_of[i] << " slots [";
            for (size_t k = 0; k < p.elements[i].size(); ++k) {
                if (k) out << ' ';
                out << p.elements[i][k];
            }
            out << "]\n";
        }
        for (const auto& c : p.covers)
            out << "cover: " << c.lower << " < " << c.upper << " (slot " << c.label.slot
                << ", +" << rs->rho_index_of[c.label.root] << ")\n";
    }
    return 0;
}

}  // namespace detail

// Parses `args` (without the program name) and runs the selected subcommand,
// writing results to `out` and diagnostics to `err`.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact-arithmetic toolkit for generalized cluster complexes and "
                 "m-divisible noncrossing partition posets",
                 "coxcat"};
    app.require_subcommand(1);

    std::string system;
    std::string format = "text";
    std::string face_text;
    std::string convention = "rank-pair";
    int m = 1;
    bool count_only = false;

    auto add_system = [&](CLI::App* sub) {
        sub->add_option("--system", system, "root system, e.g. A2, B3, A1xA2")->required();
    };
    auto add_m = [&](CLI::App* sub) {
        sub->add_option("--m", m, "number of colors (positive integer, default 1)");
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "output format (default text)")
            ->check(CLI::IsMember({"json", "csv", "text"}));
    };

    int rc = 0;

    CLI::App* roots = app.add_subcommand(
        "roots", "list the positive roots in rho order and the almost-positive total order");
    add_system(roots);
    add_format(roots);
    roots->callback([&] { rc = detail::cmd_roots(*build_root_system(system), format, out); });

    CLI::App* fm = app.add_subcommand(
        "verify-fm", "check the face-count / Moebius transform identity for one system");
    add_system(fm);
    add_m(fm);
    add_format(fm);
    fm->callback([&] { rc = detail::cmd_verify_fm(build_root_system(system), m, format, out); });

    CLI::App* cf = app.add_subcommand(
        "check-face",
        "test whether a colored root set is a face, by the group-theoretic membership "
        "criterion and by pairwise compatibility");
    add_system(cf);
    add_m(cf);
    add_format(cf);
    cf->add_option("--face", face_text,
                   "comma-separated tokens: +i@c (positive root rho_i, color c) or -j "
                   "(negated simple sigma_j); empty for the empty face");
    cf->callback([&] {
        rc = detail::cmd_check_face(*build_root_system(system), m, face_text, format, out);
    });

    CLI::App* fc = app.add_subcommand(
        "falling-chains",
        "list the falling maximal chains of the m-divisible poset with their label "
        "sequences and the facets they map to");
    add_system(fc);
    add_m(fc);
    add_format(fc);
    fc->callback(
        [&] { rc = detail::cmd_falling_chains(build_root_system(system), m, format, out); });

    CLI::App* ft = app.add_subcommand(
        "f-triangle", "bivariate face count of the generalized cluster complex");
    add_system(ft);
    add_m(ft);
    add_format(ft);
    ft->callback(
        [&] { rc = detail::cmd_f_triangle(*build_root_system(system), m, format, out); });

    CLI::App* mt = app.add_subcommand(
        "m-triangle", "bivariate Moebius series of the m-divisible poset");
    add_system(mt);
    add_m(mt);
    add_format(mt);
    mt->add_option("--convention", convention,
                   "x-exponent convention: rank-pair (x^rk(b) y^rk(a), default) or "
                   "rank-difference (x^(rk(b)-rk(a)) y^rk(a))")
        ->check(CLI::IsMember({"rank-pair", "rank-difference"}));
    mt->callback([&] {
        rc = detail::cmd_m_triangle(build_root_system(system), m, convention, format, out);
    });

    CLI::App* nc = app.add_subcommand(
        "nc", "the noncrossing partition lattice: elements, lengths, covers");
    add_system(nc);
    add_format(nc);
    nc->add_flag("--count", count_only, "print only the number of elements");
    nc->callback([&] { rc = detail::cmd_nc(build_root_system(system), format, count_only, out); });

    CLI::App* ncm = app.add_subcommand(
        "ncm", "the m-divisible noncrossing partition poset: elements, ranks, covers");
    add_system(ncm);
    add_m(ncm);
    add_format(ncm);
    ncm->add_flag("--count", count_only, "print only the number of elements");
    ncm->callback(
        [&] { rc = detail::cmd_ncm(build_root_system(system), m, format, count_only, out); });

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const internal_error& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
    return rc;
}

}  // namespace coxcat::cli
