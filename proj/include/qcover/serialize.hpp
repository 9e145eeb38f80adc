#pragma once

// JSON interchange for every domain type. Output is canonical: alphabetical
// keys (nlohmann's default object order), two-space indent, trailing newline,
// so save/load round-trips are byte-identical.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcover/blocking.hpp"
#include "qcover/errors.hpp"
#include "qcover/fqlin.hpp"
#include "qcover/gf.hpp"
#include "qcover/groupcover.hpp"
#include "qcover/projgeom.hpp"

namespace qcover {

using json = nlohmann::json;

inline std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

inline json parse_json_text(const std::string& text, const std::string& where) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw input_error(where + ": " + e.what());
    }
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

inline void save_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write " + path);
    out << text;
}

namespace detail {

inline const json& require_key(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw input_error(std::string("missing key \"") + key + "\"");
    return *it;
}

inline int require_int(const json& j, const char* key) {
    const json& v = require_key(j, key);
    if (!v.is_number_integer()) throw input_error(std::string("key \"") + key + "\" must be an integer");
    return v.get<int>();
}

inline std::vector<int> int_list(const json& v, const char* what) {
    if (!v.is_array()) throw input_error(std::string(what) + " must be an array of integers");
    std::vector<int> out;
    for (const auto& x : v) {
        if (!x.is_number_integer()) throw input_error(std::string(what) + " must be an array of integers");
        out.push_back(x.get<int>());
    }
    return out;
}

// Factor q = p^e with p prime; the shape every supported field order has.
inline std::pair<int, int> factor_prime_power(long q) {
    if (q < 2) throw input_error("field order must be at least 2");
    long p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (q % p != 0) p = q;
    int e = 0;
    long rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    if (rest != 1) throw input_error("field order " + std::to_string(q) + " is not a prime power");
    return {static_cast<int>(p), e};
}

inline FieldPtr field_from_q_modulus(const json& j) {
    const long q = require_int(j, "q");
    auto [p, e] = factor_prime_power(q);
    if (auto it = j.find("modulus"); it != j.end()) {
        auto coeffs = int_list(*it, "modulus");
        return Field::make(p, e, coeffs);
    }
    return Field::make(p, e);
}

}  // namespace detail

inline json field_to_json(const Field& f) {
    return json{{"e", f.ext_degree()}, {"modulus", f.modulus()}, {"p", f.p()}};
}

inline FieldPtr field_from_json(const json& j) {
    const int p = detail::require_int(j, "p");
    const int e = detail::require_int(j, "e");
    if (auto it = j.find("modulus"); it != j.end())
        return Field::make(p, e, detail::int_list(*it, "modulus"));
    return Field::make(p, e);
}

// --- blocking sets and hyperplane covers -------------------------------------

inline json blocking_set_to_json(const BlockingSet& b) {
    json points = json::array();
    for (const auto& p : b.points()) points.push_back(format_point(p));
    return json{{"modulus", b.space().field->modulus()},
                {"n", b.space().n},
                {"points", std::move(points)},
                {"q", b.space().field->order()}};
}

inline BlockingSet blocking_set_from_json(const json& j) {
    FieldPtr field = detail::field_from_q_modulus(j);
    const int n = detail::require_int(j, "n");
    ProjSpace space = make_proj_space(field, n);
    const json& pts = detail::require_key(j, "points");
    if (!pts.is_array()) throw input_error("\"points\" must be an array of strings");
    std::vector<ProjPoint> points;
    for (const auto& s : pts) {
        if (!s.is_string()) throw input_error("\"points\" must be an array of strings");
        points.push_back(parse_point(space, s.get<std::string>()));
    }
    return BlockingSet(std::move(space), std::move(points));
}

inline json subspace_to_json(const Subspace& s) {
    json basis = json::array();
    for (const auto& v : s.basis()) basis.push_back(format_vector(v));
    return json{{"basis", std::move(basis)}, {"dim", s.ambient_dim()}};
}

inline Subspace subspace_from_json(const FieldPtr& field, const json& j) {
    const int dim = detail::require_int(j, "dim");
    if (dim < 1) throw input_error("subspace ambient dimension must be >= 1");
    const json& rows = detail::require_key(j, "basis");
    if (!rows.is_array()) throw input_error("\"basis\" must be an array of strings");
    std::vector<Vector> basis;
    for (const auto& s : rows) {
        if (!s.is_string()) throw input_error("\"basis\" must be an array of strings");
        Vector v = parse_vector(field, s.get<std::string>());
        if (v.dim() != static_cast<size_t>(dim))
            throw input_error("basis row has " + std::to_string(v.dim()) + " entries, expected " +
                              std::to_string(dim));
        basis.push_back(std::move(v));
    }
    return rref(field, static_cast<size_t>(dim), basis);
}

inline json hyperplane_cover_to_json(const HyperplaneCover& c) {
    json members = json::array();
    for (const auto& m : c.members()) members.push_back(subspace_to_json(m));
    return json{{"dim", c.ambient_dim()},
                {"members", std::move(members)},
                {"modulus", c.field()->modulus()},
                {"q", c.field()->order()}};
}

inline HyperplaneCover hyperplane_cover_from_json(const json& j) {
    FieldPtr field = detail::field_from_q_modulus(j);
    const int dim = detail::require_int(j, "dim");
    if (dim < 1) throw input_error("\"dim\" must be >= 1");
    const json& rows = detail::require_key(j, "members");
    if (!rows.is_array()) throw input_error("\"members\" must be an array");
    std::vector<Subspace> members;
    for (const auto& m : rows) {
        Subspace s = subspace_from_json(field, m);
        if (s.ambient_dim() != static_cast<size_t>(dim))
            throw input_error("member ambient dimension mismatch");
        members.push_back(std::move(s));
    }
    return HyperplaneCover(field, static_cast<size_t>(dim), std::move(members));
}

inline json blocking_report_to_json(const BlockingCheck& blocking,
                                    const std::optional<MinimalityCheck>& minimality) {
    json witnesses = json::array();
    if (minimality)
        for (const auto& w : minimality->witnesses)
            witnesses.push_back(json{{"hyperplane", format_hyperplane(w.hyperplane)},
                                     {"point", format_point(w.point)}});
    json failure;
    if (blocking.unblocked) failure = format_hyperplane(*blocking.unblocked);
    json inessential;
    if (minimality && minimality->inessential) inessential = format_point(*minimality->inessential);
    return json{{"blocking", blocking.blocking},
                {"failure", std::move(failure)},
                {"inessential", std::move(inessential)},
                {"minimal", minimality ? minimality->minimal : false},
                {"witnesses", std::move(witnesses)}};
}

// --- groups and covers --------------------------------------------------------

namespace detail {

inline int parse_int_str(const std::string& s) {
    size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        throw input_error("expected an integer, got \"" + s + "\"");
    }
    if (used != s.size()) throw input_error("expected an integer, got \"" + s + "\"");
    return v;
}

inline GroupPtr group_atom(const std::string& text) {
    if (text.size() >= 2 && text[0] == 'S') return symmetric_group(parse_int_str(text.substr(1)));
    if (text.size() >= 4 && text[1] == '(' && text.back() == ')') {
        std::string args = text.substr(2, text.size() - 3);
        if (text[0] == 'C') return cyclic_group(parse_int_str(args));
        if (text[0] == 'D') return dihedral_group(parse_int_str(args));
        if (text[0] == 'E') {
            size_t comma = args.find(',');
            if (comma != std::string::npos)
                return elementary_abelian_group(parse_int_str(args.substr(0, comma)),
                                                parse_int_str(args.substr(comma + 1)));
        }
    }
    throw input_error("unrecognized group constructor \"" + text + "\"");
}

}  // namespace detail

// Grammar: atom ('x' atom)* with atom = S<n> | C(n) | D(n) | E(p,k).
inline GroupPtr group_from_constructor(const std::string& text) {
    GroupPtr acc;
    size_t start = 0;
    while (start <= text.size()) {
        size_t cut = text.find('x', start);
        std::string part = text.substr(start, cut == std::string::npos ? cut : cut - start);
        GroupPtr g = detail::group_atom(part);
        acc = acc ? product_group(acc, g) : g;
        if (cut == std::string::npos) break;
        start = cut + 1;
    }
    return acc;
}

inline json group_to_json(const GroupPtr& g) {
    if (!g->name().empty()) return json{{"constructor", g->name()}};
    return json{{"order", g->order()}, {"table", g->table()}};
}

inline GroupPtr group_from_json(const json& j) {
    if (auto it = j.find("constructor"); it != j.end()) {
        if (!it->is_string()) throw input_error("\"constructor\" must be a string");
        return group_from_constructor(it->get<std::string>());
    }
    const json& table = detail::require_key(j, "table");
    if (!table.is_array()) throw input_error("\"table\" must be an array of arrays");
    std::vector<std::vector<int>> rows;
    for (const auto& r : table) rows.push_back(detail::int_list(r, "table row"));
    const int order = detail::require_int(j, "order");
    if (order != static_cast<int>(rows.size()))
        throw input_error("\"order\" does not match the table size");
    return std::make_shared<FiniteGroup>(std::move(rows));
}

inline json group_cover_to_json(const GroupCover& c) {
    json members = json::array();
    for (const auto& m : c.members()) members.push_back(m.elements());
    return json{{"group", group_to_json(c.group())}, {"members", std::move(members)}};
}

inline GroupCover group_cover_from_json(const json& j) {
    GroupPtr g = group_from_json(detail::require_key(j, "group"));
    const json& rows = detail::require_key(j, "members");
    if (!rows.is_array()) throw input_error("\"members\" must be an array of index arrays");
    std::vector<Subgroup> members;
    for (const auto& r : rows) members.emplace_back(g, detail::int_list(r, "member"));
    return GroupCover(std::move(g), std::move(members));
}

inline json verdict_to_json(const CoverVerdict& v) {
    json witnesses = json::array();
    for (const auto& w : v.witnesses)
        witnesses.push_back(json{{"element", w.element}, {"member", w.member}});
    json j{{"classification", nullptr},
           {"core", v.core.elements()},
           {"core_free", v.core_free},
           {"intersection", v.intersection.elements()},
           {"irredundant", v.irredundant},
           {"is_cover", v.is_cover},
           {"maximal", v.maximal},
           {"non_maximal_member", nullptr},
           {"redundant_member", nullptr},
           {"uncovered", nullptr},
           {"witnesses", std::move(witnesses)}};
    if (v.classification) j["classification"] = *v.classification;
    if (v.non_maximal_member) j["non_maximal_member"] = *v.non_maximal_member;
    if (v.redundant_member) j["redundant_member"] = *v.redundant_member;
    if (v.uncovered) j["uncovered"] = *v.uncovered;
    return j;
}

// --- file kind dispatch ---------------------------------------------------------

enum class FileKind { blocking_set, hyperplane_cover, group_cover };

inline FileKind detect_kind(const json& j) {
    if (!j.is_object()) throw input_error("expected a JSON object");
    if (j.contains("points")) return FileKind::blocking_set;
    if (j.contains("group")) return FileKind::group_cover;
    if (j.contains("members")) return FileKind::hyperplane_cover;
    throw input_error("unrecognized file kind: need \"points\", \"group\" or \"members\"");
}

}  // namespace qcover
