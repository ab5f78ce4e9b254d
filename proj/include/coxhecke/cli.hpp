#pragma once

// Command-line front end. dispatch() is the whole program minus main(), so
// tests can drive it in-process.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coxhecke/cells.hpp"
#include "coxhecke/coxeter.hpp"
#include "coxhecke/errors.hpp"
#include "coxhecke/fourier.hpp"
#include "coxhecke/hecke.hpp"
#include "coxhecke/laurent.hpp"
#include "coxhecke/sl2.hpp"

namespace coxhecke::cli {

using Json = nlohmann::ordered_json;

enum class Format { json, csv, plain };

namespace detail {

struct Common {
    std::string out;
    std::string format = "json";
};

struct GroupArgs {
    std::string preset;
    std::string matrix;
    std::size_t cap = kDefaultEnumerationCap;
};

inline void add_common(CLI::App* app, Common& c) {
    app->add_option("--out", c.out, "Write output to this file instead of stdout");
    app->add_option("--format", c.format, "json (default), plain or csv")->check(CLI::IsMember({"json", "plain", "csv"}));
}

inline void add_group(CLI::App* app, GroupArgs& g) {
    auto* p = app->add_option("--preset", g.preset, "A1..A8, B2.., D4.., E6-E8, F4, H3, H4, I2(m)");
    auto* m = app->add_option("--matrix", g.matrix, "Coxeter matrix as JSON {\"rank\":n,\"m\":[[...]]} or a path to such a file");
    p->excludes(m);
    app->add_option("--cap", g.cap, "Abort enumeration past this many elements")->check(CLI::PositiveNumber);
}

inline Format parse_format(const Common& c) {
    if (c.format == "plain") return Format::plain;
    if (c.format == "csv") return Format::csv;
    return Format::json;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline CoxeterMatrix resolve_matrix(const GroupArgs& g) {
    if (!g.preset.empty()) return coxeter_preset(g.preset);
    if (g.matrix.empty()) throw InvalidArgument("one of --preset or --matrix is required");
    std::string text = g.matrix;
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') text = read_file(g.matrix);
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InvalidMatrix("matrix is not valid JSON");
    return coxeter_matrix_from_json(j);
}

inline void emit(const Common& c, const std::string& body, std::ostream& out) {
    if (c.out.empty()) {
        out << body;
        out.flush();
        if (!out) throw IoFailure("write to standard output failed");
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw IoFailure("cannot open '" + c.out + "' for writing");
    f << body;
    f.flush();
    if (!f) throw IoFailure("write to '" + c.out + "' failed");
}

inline std::string dump(const Json& j) { return j.dump() + "\n"; }

inline void require(Format f, std::initializer_list<Format> allowed, const char* command) {
    for (Format a : allowed)
        if (a == f) return;
    throw InvalidArgument(std::string("output format not supported by '") + command + "'");
}

inline Json q_coeffs(const LaurentPolynomial& p) {
    if (p.is_zero()) return Json::array();
    return to_q_coefficients(p);
}

inline Json ids(const std::vector<Element>& v) {
    Json a = Json::array();
    for (Element e : v) a.push_back(e.id);
    return a;
}

inline Json id_lists(const std::vector<std::vector<Element>>& v) {
    Json a = Json::array();
    for (const auto& c : v) a.push_back(ids(c));
    return a;
}

inline Json hecke_terms(const GroupContext& g, const HeckeElement& h, const char* key) {
    Json rows = Json::array();
    for (const auto& [y, p] : h.terms()) {
        Json r;
        r["y"] = format_element(g, y);
        r[key] = to_json(p);
        rows.push_back(std::move(r));
    }
    return rows;
}

inline std::string hecke_plain(const GroupContext& g, const HeckeElement& h) {
    std::string s;
    for (const auto& [y, p] : h.terms()) {
        std::string w = format_element(g, y);
        s += (w.empty() ? std::string("e") : w) + "\t" + to_string(p) + "\n";
    }
    return s;
}

/// 12 decimals; negative zero printed as zero.
inline std::string fixed12(double x) {
    if (std::abs(x) < 5e-13) x = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", x);
    return buf;
}

inline double rounded12(double x) {
    double r = std::round(x * 1e12) / 1e12;
    return r == 0.0 ? 0.0 : r;
}

inline std::string complex_text(Complex z) {
    std::string s = fixed12(z.real());
    if (std::abs(z.imag()) >= 5e-13) {
        std::string im = fixed12(z.imag());
        s += (im[0] == '-' ? "" : "+") + im + "i";
    }
    return s;
}

inline std::unique_ptr<GroupContext> make_group(const GroupArgs& a) {
    return std::make_unique<GroupContext>(build_group(resolve_matrix(a), a.cap));
}

} // namespace detail

/// Runs one command line (args excludes the program name). Returns the exit
/// code: 0 ok, 2 invalid input, 3 size limit, 4 failed validation.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace detail;
    CLI::App app{"Coxeter groups, Hecke algebras, KL cells, Fourier matrices and SL2 mirror recursion",
                 "coxhecke"};
    app.require_subcommand(1);

    // enumerate
    Common c_enum;
    GroupArgs g_enum;
    bool enum_count = false, enum_poincare = false, enum_involutions = false;
    auto* enumerate = app.add_subcommand("enumerate", "List group elements with length and descents");
    add_group(enumerate, g_enum);
    add_common(enumerate, c_enum);
    enumerate->add_flag("--count", enum_count, "Print only the group order");
    enumerate->add_flag("--poincare", enum_poincare, "Print the Poincare polynomial");
    enumerate->add_flag("--involutions", enum_involutions, "List only involutions");

    // kl
    Common c_kl;
    GroupArgs g_kl;
    std::string kl_w;
    std::optional<std::string> kl_y;
    auto* kl = app.add_subcommand("kl", "KL polynomials P_{y,w}");
    add_group(kl, g_kl);
    add_common(kl, c_kl);
    kl->add_option("--w", kl_w, "Element w as a word, e.g. 2,3,1,2")->required();
    kl->add_option("--y", kl_y, "Single element y (\"\" is the identity)");

    // cstar
    Common c_cs;
    GroupArgs g_cs;
    std::string cs_w;
    bool cs_times_w0 = false, cs_identity = false;
    auto* cstar = app.add_subcommand("cstar", "Canonical basis element c*_w in the T basis");
    add_group(cstar, g_cs);
    add_common(cstar, c_cs);
    cstar->add_option("--w", cs_w, "Element w")->required();
    auto* tw0 = cstar->add_flag("--times-w0", cs_times_w0, "Print c*_w T_w0 instead");
    auto* ident = cstar->add_flag("--identity", cs_identity, "Verify the c*_w T_w0 identity and print P'_{y,w}");
    tw0->excludes(ident);

    // inversion
    Common c_inv;
    GroupArgs g_inv;
    auto* inversion = app.add_subcommand("inversion", "Check the KL matrix inversion formula");
    add_group(inversion, g_inv);
    add_common(inversion, c_inv);

    // bitrace
    Common c_bt;
    GroupArgs g_bt;
    std::string bt_w, bt_w2;
    auto* bt = app.add_subcommand("bitrace", "Trace of h -> T_w h T_{w2^-1}");
    add_group(bt, g_bt);
    add_common(bt, c_bt);
    bt->add_option("--w", bt_w, "Element w")->required();
    bt->add_option("--w2", bt_w2, "Element w2")->required();

    // cells
    Common c_cells;
    GroupArgs g_cells;
    bool cells_gamma = false;
    auto* cells = app.add_subcommand("cells", "Left and two-sided cells, a-function, distinguished involutions");
    add_group(cells, g_cells);
    add_common(cells, c_cells);
    cells->add_flag("--gamma", cells_gamma, "Include the J-ring structure constants");

    // afun
    Common c_af;
    GroupArgs g_af;
    bool af_sets = false;
    auto* afun = app.add_subcommand("afun", "The a-function");
    add_group(afun, g_af);
    add_common(afun, c_af);
    afun->add_flag("--sets", af_sets, "Also report W_* = {a = N} and W_!");

    // jring
    Common c_j;
    GroupArgs g_j;
    std::optional<std::string> j_x, j_y;
    auto* jring = app.add_subcommand("jring", "Asymptotic ring J: structure constants, unit, products");
    add_group(jring, g_j);
    add_common(jring, c_j);
    auto* jx = jring->add_option("--x", j_x, "Left factor t_x");
    auto* jy = jring->add_option("--y", j_y, "Right factor t_y");
    jx->needs(jy);
    jy->needs(jx);

    // commute
    Common c_com;
    GroupArgs g_com;
    auto* commute = app.add_subcommand("commute", "Two-parameter left/right commutation on each two-sided cell");
    add_group(commute, g_com);
    add_common(commute, c_com);

    // fourier
    Common c_f;
    std::string f_group;
    bool f_pairs = false;
    auto* fourier = app.add_subcommand("fourier", "Nonabelian Fourier matrix on M(G)");
    add_common(fourier, c_f);
    fourier->add_option("--group", f_group, "preset:NAME (trivial, Z<n>, Z<m>xZ<n>, S<n>) or perm:(1 2),(1 2 3)")
        ->required();
    fourier->add_flag("--pairs", f_pairs, "List M(G) only");

    // sl2
    Common c_sl;
    std::uint64_t sl_p = 0;
    std::optional<unsigned> sl_stage;
    std::uint64_t sl_max = 0;
    bool sl_dims = false, sl_inf = false;
    auto* sl2 = app.add_subcommand("sl2", "SL2 mirror recursion E^k_lambda");
    add_common(sl2, c_sl);
    sl2->add_option("--p", sl_p, "p >= 2")->required();
    auto* st = sl2->add_option("--stage", sl_stage, "Stage k");
    auto* inf = sl2->add_flag("--infinity", sl_inf, "Stable value E^inf");
    st->excludes(inf);
    sl2->add_option("--max-weight", sl_max, "Largest weight")->required();
    sl2->add_flag("--dims", sl_dims, "Print dimensions only");

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
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*enumerate) {
            auto g = make_group(g_enum);
            Format f = parse_format(c_enum);
            require(f, {Format::json, Format::plain}, "enumerate");
            std::string body;
            if (enum_count) {
                body = f == Format::json ? dump(Json{{"order", g->order()}}) : std::to_string(g->order()) + "\n";
            } else if (enum_poincare) {
                LaurentPolynomial p = poincare_polynomial(*g);
                body = f == Format::json ? dump(Json{{"poincare", q_coeffs(p)}}) : to_q_string(p) + "\n";
            } else {
                std::vector<Element> els = enum_involutions ? involutions(*g) : g->elements();
                if (f == Format::plain) {
                    for (Element w : els) {
                        std::string word = format_element(*g, w);
                        body += std::to_string(w.id) + "\t" + (word.empty() ? "e" : word) + "\t" +
                                std::to_string(g->length(w)) + "\n";
                    }
                } else {
                    Json j;
                    j["order"] = g->order();
                    j["N"] = g->num_positive_roots();
                    j["w0"] = format_element(*g, g->longest());
                    Json rows = Json::array();
                    for (Element w : els) {
                        Json r;
                        r["id"] = w.id;
                        r["word"] = format_element(*g, w);
                        r["length"] = g->length(w);
                        Json ld = Json::array(), rd = Json::array();
                        for (Generator s = 0; s < g->rank(); ++s) {
                            if (g->is_left_descent(s, w)) ld.push_back(s + 1);
                            if (g->is_right_descent(w, s)) rd.push_back(s + 1);
                        }
                        r["leftDescents"] = ld;
                        r["rightDescents"] = rd;
                        rows.push_back(std::move(r));
                    }
                    j["elements"] = rows;
                    body = dump(j);
                }
            }
            emit(c_enum, body, out);
        } else if (*kl) {
            auto g = make_group(g_kl);
            Format f = parse_format(c_kl);
            require(f, {Format::json, Format::plain}, "kl");
            Element w = parse_element(*g, kl_w);
            auto t = KLTable::build(*g);
            std::string body;
            if (kl_y) {
                Element y = parse_element(*g, *kl_y);
                const auto& p = t.at(y, w);
                body = f == Format::json ? dump(Json{{"P", q_coeffs(p)}}) : to_q_string(p) + "\n";
            } else {
                Json rows = Json::array();
                for (Element y : g->elements()) {
                    if (!t.leq(y, w)) continue;
                    if (f == Format::plain) {
                        std::string word = format_element(*g, y);
                        body += (word.empty() ? std::string("e") : word) + "\t" + to_q_string(t.at(y, w)) + "\n";
                    } else {
                        Json r;
                        r["y"] = format_element(*g, y);
                        r["P"] = q_coeffs(t.at(y, w));
                        rows.push_back(std::move(r));
                    }
                }
                if (f == Format::json) body = dump(Json{{"w", format_element(*g, w)}, {"rows", rows}});
            }
            emit(c_kl, body, out);
        } else if (*cstar) {
            auto g = make_group(g_cs);
            Format f = parse_format(c_cs);
            require(f, {Format::json, Format::plain}, "cstar");
            Element w = parse_element(*g, cs_w);
            auto t = KLTable::build(*g);
            HeckeAlgebra h(*g);
            std::string body;
            if (cs_identity) {
                auto pp = verify_cstar_identity(h, t, w);
                if (f == Format::plain) {
                    for (const auto& [y, p] : pp) {
                        std::string word = format_element(*g, y);
                        body += (word.empty() ? std::string("e") : word) + "\t" + to_q_string(p) + "\n";
                    }
                } else {
                    Json rows = Json::array();
                    for (const auto& [y, p] : pp) {
                        Json r;
                        r["y"] = format_element(*g, y);
                        r["Pprime"] = q_coeffs(p);
                        rows.push_back(std::move(r));
                    }
                    body = dump(Json{{"w", format_element(*g, w)}, {"holds", true}, {"rows", rows}});
                }
            } else {
                HeckeElement e = c_star(t, w);
                if (cs_times_w0) e = t_multiply(h, e, h.T(g->longest()));
                body = f == Format::plain ? hecke_plain(*g, e)
                                          : dump(Json{{"w", format_element(*g, w)}, {"terms", hecke_terms(*g, e, "coeff")}});
            }
            emit(c_cs, body, out);
        } else if (*inversion) {
            auto g = make_group(g_inv);
            Format f = parse_format(c_inv);
            require(f, {Format::json, Format::plain}, "inversion");
            auto t = KLTable::build(*g);
            auto r = verify_inversion(t);
            std::string body;
            if (f == Format::plain) {
                body = std::string(r.holds ? "holds" : "fails") + " " + std::to_string(r.pairs_checked) + "\n";
            } else {
                Json j;
                j["holds"] = r.holds;
                j["pairs"] = r.pairs_checked;
                if (r.first_failure)
                    j["firstFailure"] = {format_element(*g, r.first_failure->first),
                                         format_element(*g, r.first_failure->second)};
                body = dump(j);
            }
            emit(c_inv, body, out);
            if (!r.holds) {
                err << "error: inversion formula fails\n";
                return 4;
            }
        } else if (*bt) {
            auto g = make_group(g_bt);
            Format f = parse_format(c_bt);
            require(f, {Format::json, Format::plain}, "bitrace");
            HeckeAlgebra h(*g);
            auto p = bitrace(h, parse_element(*g, bt_w), parse_element(*g, bt_w2));
            emit(c_bt, f == Format::plain ? to_q_string(p) + "\n" : dump(Json{{"trace", q_coeffs(p)}}), out);
        } else if (*cells) {
            auto g = make_group(g_cells);
            require(parse_format(c_cells), {Format::json}, "cells");
            auto t = KLTable::build(*g);
            StructureConstants sc(t);
            auto cd = cell_partition(sc);
            auto a = a_function(sc);
            auto d = distinguished_involutions(t, a, cd);
            Json j;
            j["cells"] = {{"left", id_lists(cd.left_cells)}, {"twoSided", id_lists(cd.two_sided_cells)}};
            j["a"] = a;
            j["D"] = ids(d);
            if (cells_gamma) {
                Json gm = Json::array();
                for (const auto& [k, v] : j_structure_constants(sc, a))
                    gm.push_back(Json{{"x", k[0]}, {"y", k[1]}, {"z", k[2]}, {"v", v}});
                j["gamma"] = gm;
            }
            emit(c_cells, dump(j), out);
        } else if (*afun) {
            auto g = make_group(g_af);
            Format f = parse_format(c_af);
            require(f, {Format::json, Format::plain}, "afun");
            auto t = KLTable::build(*g);
            auto a = a_function(t);
            std::string body;
            if (f == Format::plain) {
                for (std::size_t i = 0; i < a.size(); ++i) body += (i ? " " : "") + std::to_string(a[i]);
                body += "\n";
            } else {
                Json j;
                j["a"] = a;
                if (af_sets) {
                    j["N"] = g->num_positive_roots();
                    j["Wstar"] = ids(w_star(*g, a));
                    j["Wshriek"] = ids(w_shriek(*g));
                }
                body = dump(j);
            }
            emit(c_af, body, out);
        } else if (*jring) {
            auto g = make_group(g_j);
            require(parse_format(c_j), {Format::json}, "jring");
            auto t = KLTable::build(*g);
            StructureConstants sc(t);
            auto a = a_function(sc);
            auto gamma = j_structure_constants(sc, a);
            JRing ring(*g, gamma);
            Json j;
            if (j_x) {
                Element x = parse_element(*g, *j_x), y = parse_element(*g, *j_y);
                Json terms = Json::array();
                for (const auto& [z, c] : ring.multiply(JRing::basis(x), JRing::basis(y)))
                    terms.push_back(Json{{"z", format_element(*g, z)}, {"c", c}});
                j["x"] = format_element(*g, x);
                j["y"] = format_element(*g, y);
                j["product"] = terms;
            } else {
                auto cd = cell_partition(sc);
                auto d = distinguished_involutions(t, a, cd);
                JRing::Vector unit;
                for (Element e : d) unit[e] = 1;
                bool is_unit = ring.is_unit(unit);
                Json gm = Json::array();
                for (const auto& [k, v] : gamma) gm.push_back(Json{{"x", k[0]}, {"y", k[1]}, {"z", k[2]}, {"v", v}});
                j["D"] = ids(d);
                j["unit"] = is_unit;
                j["gamma"] = gm;
                if (!is_unit) {
                    emit(c_j, dump(j), out);
                    err << "error: sum of t_d over D is not a unit\n";
                    return 4;
                }
            }
            emit(c_j, dump(j), out);
        } else if (*commute) {
            auto g = make_group(g_com);
            require(parse_format(c_com), {Format::json}, "commute");
            auto t = KLTable::build(*g);
            StructureConstants sc(t);
            auto cd = cell_partition(sc);
            Json rows = Json::array();
            bool all = true;
            for (std::size_t i = 0; i < cd.two_sided_cells.size(); ++i) {
                bool ok = bimodule_commutation_check(sc, cd.two_sided_cells[i]);
                all = all && ok;
                rows.push_back(Json{{"cell", i}, {"size", cd.two_sided_cells[i].size()}, {"commutes", ok}});
            }
            emit(c_com, dump(Json{{"cells", rows}, {"allCommute", all}}), out);
            if (!all) {
                err << "error: left and right actions fail to commute\n";
                return 4;
            }
        } else if (*fourier) {
            Format f = parse_format(c_f);
            FiniteGroup grp = parse_group_spec(f_group);
            MSet ms = m_set(grp);
            std::vector<std::string> labels;
            for (const auto& p : ms.pairs) labels.push_back(ms.label(p));
            if (f_pairs) {
                require(f, {Format::json, Format::plain}, "fourier --pairs");
                std::string body;
                if (f == Format::plain) {
                    for (const auto& l : labels) body += l + "\n";
                } else {
                    body = dump(Json{{"order", grp.order()}, {"pairs", labels}});
                }
                emit(c_f, body, out);
                return 0;
            }
            FourierMatrix fm = fourier_matrix(grp, ms);
            const auto k = fm.entries.rows();
            std::string body;
            if (f == Format::json) {
                Json re = Json::array(), im = Json::array();
                for (Eigen::Index i = 0; i < k; ++i) {
                    Json rr = Json::array(), ri = Json::array();
                    for (Eigen::Index jx2 = 0; jx2 < k; ++jx2) {
                        rr.push_back(rounded12(fm.entries(i, jx2).real()));
                        ri.push_back(rounded12(fm.entries(i, jx2).imag()));
                    }
                    re.push_back(rr);
                    im.push_back(ri);
                }
                body = dump(Json{{"order", grp.order()}, {"pairs", labels}, {"re", re}, {"im", im}});
            } else {
                for (std::size_t i = 0; i < labels.size(); ++i) body += (i ? "," : "") + labels[i];
                body += "\n";
                for (Eigen::Index i = 0; i < k; ++i) {
                    for (Eigen::Index jx2 = 0; jx2 < k; ++jx2) body += (jx2 ? "," : "") + complex_text(fm.entries(i, jx2));
                    body += "\n";
                }
            }
            emit(c_f, body, out);
        } else if (*sl2) {
            if (!sl_stage && !sl_inf) throw InvalidArgument("one of --stage or --infinity is required");
            Format f = parse_format(c_sl);
            require(f, {Format::json, Format::plain}, "sl2");
            if (sl_p >= 2 && !is_prime(sl_p))
                err << "warning: p = " << sl_p << " is not prime; the recursion is still computed\n";
            MirrorRecursion rec(sl_p);
            std::vector<CharCombo> combos;
            for (std::uint64_t l = 0; l <= sl_max; ++l)
                combos.push_back(sl_inf ? rec.infinity(l) : rec.stage(*sl_stage, l));
            std::string body;
            if (sl_dims || f == Format::plain) {
                for (std::size_t i = 0; i < combos.size(); ++i) body += (i ? " " : "") + std::to_string(combos[i].dimension());
                body += "\n";
            } else {
                Json rows = Json::array();
                for (std::size_t l = 0; l < combos.size(); ++l) {
                    Json co = Json::object();
                    for (const auto& [wt, c] : combos[l].coeffs) co[std::to_string(wt)] = c;
                    rows.push_back(Json{{"lambda", l}, {"coeffs", co}, {"dim", combos[l].dimension()}});
                }
                Json j;
                j["p"] = sl_p;
                if (sl_inf)
                    j["k"] = "inf";
                else
                    j["k"] = *sl_stage;
                j["rows"] = rows;
                body = dump(j);
            }
            emit(c_sl, body, out);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const LimitError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace coxhecke::cli
