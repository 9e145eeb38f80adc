#pragma once

// Command-line front end. Exit codes: 0 = every asserted property holds,
// 1 = a verification was refuted (witness in the report), 2 = input error,
// 3 = resource guard tripped.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcover/blocking.hpp"
#include "qcover/groupcover.hpp"
#include "qcover/serialize.hpp"

namespace qcover {

struct Config {
    long bound = kDefaultEnumerationBound;
    int workers = 1;
    std::string format = "json";
};

namespace climpl {

inline std::pair<size_t, size_t> parse_range(const std::string& text) {
    size_t comma = text.find(',');
    if (comma == std::string::npos) {
        int k = detail::parse_int_str(text);
        if (k < 1) throw input_error("size range bounds must be >= 1");
        return {static_cast<size_t>(k), static_cast<size_t>(k)};
    }
    int lo = detail::parse_int_str(text.substr(0, comma));
    int hi = detail::parse_int_str(text.substr(comma + 1));
    if (lo < 1 || hi < lo) throw input_error("invalid size range \"" + text + "\"");
    return {static_cast<size_t>(lo), static_cast<size_t>(hi)};
}

inline std::vector<int> parse_modulus(const std::string& text) {
    std::vector<int> out;
    size_t start = 0;
    while (start <= text.size()) {
        size_t cut = text.find(',', start);
        out.push_back(detail::parse_int_str(
            text.substr(start, cut == std::string::npos ? cut : cut - start)));
        if (cut == std::string::npos) break;
        start = cut + 1;
    }
    return out;
}

inline FieldPtr field_from_flags(long q, const std::string& modulus) {
    auto [p, e] = detail::factor_prime_power(q);
    if (modulus.empty()) return Field::make(p, e);
    return Field::make(p, e, parse_modulus(modulus));
}

inline void emit(std::ostream& dest, const Config& cfg, const json& j,
                 const std::vector<std::string>& text_lines) {
    if (cfg.format == "json") {
        dest << canonical_dump(j);
    } else {
        for (const auto& line : text_lines) dest << line << "\n";
    }
}

inline void write_object(const std::string& out_path, std::ostream& out, const json& j) {
    if (out_path.empty())
        out << canonical_dump(j);
    else
        save_text_file(out_path, canonical_dump(j));
}

inline std::string join_ints(const std::vector<int>& v) {
    std::string s = "{";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + "}";
}

inline std::vector<std::string> blocking_report_text(const BlockingCheck& chk,
                                                     const std::optional<MinimalityCheck>& m) {
    std::vector<std::string> lines;
    lines.push_back(std::string("blocking: ") + (chk.blocking ? "yes" : "no"));
    if (chk.unblocked) lines.push_back("unblocked hyperplane: " + format_hyperplane(*chk.unblocked));
    lines.push_back(std::string("minimal: ") + (m && m->minimal ? "yes" : "no"));
    if (m && m->inessential) lines.push_back("inessential point: " + format_point(*m->inessential));
    if (m)
        for (const auto& w : m->witnesses)
            lines.push_back("witness: " + format_point(w.point) + " alone on " +
                            format_hyperplane(w.hyperplane));
    return lines;
}

inline std::vector<std::string> verdict_text(const CoverVerdict& v) {
    std::vector<std::string> lines;
    lines.push_back(std::string("cover: ") + (v.is_cover ? "yes" : "no"));
    if (v.uncovered) lines.push_back("uncovered element: " + std::to_string(*v.uncovered));
    lines.push_back(std::string("irredundant: ") + (v.irredundant ? "yes" : "no"));
    if (v.redundant_member) lines.push_back("redundant member: " + std::to_string(*v.redundant_member));
    for (const auto& w : v.witnesses)
        lines.push_back("witness: element " + std::to_string(w.element) + " only in member " +
                        std::to_string(w.member));
    lines.push_back(std::string("maximal: ") + (v.maximal ? "yes" : "no"));
    if (v.non_maximal_member)
        lines.push_back("non-maximal member: " + std::to_string(*v.non_maximal_member));
    lines.push_back("intersection: " + join_ints(v.intersection.elements()));
    lines.push_back(std::string("core_free: ") + (v.core_free ? "yes" : "no"));
    if (v.classification) lines.push_back("classification: " + *v.classification);
    return lines;
}

inline int cmd_verify(const Config& cfg, const std::string& file, std::ostream& out) {
    json j = load_json_file(file);
    switch (detect_kind(j)) {
        case FileKind::blocking_set: {
            BlockingSet b = blocking_set_from_json(j);
            BlockingCheck chk = is_blocking(b, cfg.bound);
            std::optional<MinimalityCheck> m;
            if (chk.blocking) m = is_minimal(b, cfg.bound);
            emit(out, cfg, blocking_report_to_json(chk, m), blocking_report_text(chk, m));
            return chk.blocking && m->minimal ? 0 : 1;
        }
        case FileKind::group_cover: {
            CoverVerdict v = verify_cover(group_cover_from_json(j));
            emit(out, cfg, verdict_to_json(v), verdict_text(v));
            return v.is_cover && v.irredundant ? 0 : 1;
        }
        case FileKind::hyperplane_cover:
            throw input_error("verify expects a blocking-set or group-cover file; "
                              "run dualize on hyperplane covers first");
    }
    return 2;
}

inline int cmd_dualize(const Config& cfg, const std::string& file, const std::string& out_path,
                       std::ostream& out, std::ostream& err) {
    json j = load_json_file(file);
    BlockingSet b = [&] {
        switch (detect_kind(j)) {
            case FileKind::blocking_set:
                return blocking_set_from_json(j);
            case FileKind::hyperplane_cover:
                return undualize(hyperplane_cover_from_json(j));
            default:
                throw input_error("dualize expects a blocking-set or hyperplane-cover file");
        }
    }();
    HyperplaneCover dual = dualize(b);
    if (detect_kind(j) == FileKind::blocking_set)
        write_object(out_path, out, hyperplane_cover_to_json(dual));
    else
        write_object(out_path, out, blocking_set_to_json(b));

    // Both sides of the duality, computed independently; the command asserts
    // that the verdicts transfer.
    BlockingCheck chk = is_blocking(b, cfg.bound);
    std::optional<MinimalityCheck> m;
    if (chk.blocking) m = is_minimal(b, cfg.bound);
    SpaceCoverCheck sc = cover_covers_space(dual, cfg.bound);
    CoverIrredundancy ir = cover_irredundant(dual, cfg.bound);
    const bool minimal = chk.blocking && m->minimal;
    const bool equivalent =
        chk.blocking == sc.covers && (!chk.blocking || minimal == ir.irredundant);
    json report{{"blocking", chk.blocking},
                {"covers_space", sc.covers},
                {"equivalent", equivalent},
                {"irredundant", ir.irredundant},
                {"minimal", minimal}};
    std::vector<std::string> lines{
        std::string("blocking: ") + (chk.blocking ? "yes" : "no"),
        std::string("covers_space: ") + (sc.covers ? "yes" : "no"),
        std::string("minimal: ") + (minimal ? "yes" : "no"),
        std::string("irredundant: ") + (ir.irredundant ? "yes" : "no"),
        std::string("equivalent: ") + (equivalent ? "yes" : "no")};
    emit(err, cfg, report, lines);
    return equivalent ? 0 : 1;
}

inline int cmd_compose(const Config& cfg, const std::string& file1, const std::string& file2,
                       size_t i1, size_t i2, const std::string& a, const std::string& b,
                       const std::string& out_path, std::ostream& out, std::ostream& err) {
    json j1 = load_json_file(file1);
    json j2 = load_json_file(file2);
    FileKind k1 = detect_kind(j1), k2 = detect_kind(j2);
    if (k1 != k2) throw input_error("cannot compose files of different kinds");
    if (k1 == FileKind::blocking_set) {
        BlockingSet b1 = blocking_set_from_json(j1);
        BlockingSet b2 = blocking_set_from_json(j2);
        BlockingComposeOptions opt;
        opt.i1 = i1;
        opt.i2 = i2;
        opt.bound = cfg.bound;
        if (!a.empty()) opt.a = parse_vector(b1.space().field, a);
        if (!b.empty()) opt.b = parse_vector(b2.space().field, b);
        BlockingSet composed = compose_blocking_sets(b1, b2, opt);
        write_object(out_path, out, blocking_set_to_json(composed));
        if (composed.space().vector_count() <= cfg.bound) {
            BlockingCheck chk = is_blocking(composed, cfg.bound);
            std::optional<MinimalityCheck> m;
            if (chk.blocking) m = is_minimal(composed, cfg.bound);
            emit(err, cfg, blocking_report_to_json(chk, m), blocking_report_text(chk, m));
            return chk.blocking && m->minimal ? 0 : 1;
        }
        emit(err, cfg, json{{"skipped", "result exceeds the enumeration bound"}},
             {"verification skipped: result exceeds the enumeration bound"});
        return 0;
    }
    if (k1 == FileKind::group_cover) {
        GroupCover c1 = group_cover_from_json(j1);
        GroupCover c2 = group_cover_from_json(j2);
        GroupComposeOptions opt;
        opt.i1 = i1;
        opt.i2 = i2;
        if (!a.empty()) opt.a = detail::parse_int_str(a);
        if (!b.empty()) opt.b = detail::parse_int_str(b);
        GroupCover composed = compose_covers(c1, c2, opt);
        write_object(out_path, out, group_cover_to_json(composed));
        CoverVerdict v = verify_cover(composed);
        emit(err, cfg, verdict_to_json(v), verdict_text(v));
        return v.is_cover && v.irredundant ? 0 : 1;
    }
    throw input_error("cannot compose hyperplane-cover files; dualize them first");
}

inline int cmd_search(const Config& cfg, long q, int n, const std::string& modulus,
                      const std::string& range, std::ostream& out) {
    FieldPtr field = field_from_flags(q, modulus);
    ProjSpace space = make_proj_space(field, n);
    auto [kmin, kmax] = parse_range(range);
    SearchResult r = search_minimal(space, kmin, kmax, cfg.workers, cfg.bound);
    json sizes = json::object();
    std::vector<std::string> lines;
    for (const auto& [k, entry] : r.by_size) {
        json first = json::array();
        std::string first_text;
        for (const auto& p : entry.first->points()) {
            first.push_back(format_point(p));
            if (!first_text.empty()) first_text += " ";
            first_text += format_point(p);
        }
        sizes[std::to_string(k)] = json{{"count", entry.count}, {"first", std::move(first)}};
        lines.push_back("size " + std::to_string(k) + ": count " + std::to_string(entry.count) +
                        ", first " + first_text);
    }
    if (lines.empty()) lines.push_back("no minimal blocking sets in range");
    json report{{"modulus", field->modulus()},
                {"n", n},
                {"q", q},
                {"range", json::array({kmin, kmax})},
                {"sizes", std::move(sizes)}};
    emit(out, cfg, report, lines);
    return 0;
}

inline int cmd_enumerate(const Config& cfg, long q, int n, const std::string& modulus,
                         std::ostream& out) {
    FieldPtr field = field_from_flags(q, modulus);
    ProjSpace space = make_proj_space(field, n);
    auto pts = enumerate_points(space, cfg.bound);
    json points = json::array();
    std::vector<std::string> lines;
    for (const auto& p : pts) {
        points.push_back(format_point(p));
        lines.push_back(format_point(p));
    }
    json report{{"count", pts.size()},
                {"modulus", field->modulus()},
                {"n", n},
                {"points", std::move(points)},
                {"q", q}};
    emit(out, cfg, report, lines);
    return 0;
}

}  // namespace climpl

// args excludes the program name. Everything observable goes through the two
// streams, so tests can drive the full command surface in-process.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"blocking sets of PG(n,q) and irredundant subgroup covers", "qcover"};
    app.require_subcommand(1);

    Config cfg;
    app.add_option("--bound", cfg.bound, "max q^(n+1) accepted by enumerations")
        ->envname("QCOVER_BOUND")
        ->check(CLI::Range(2L, std::numeric_limits<long>::max()));
    app.add_option("--workers", cfg.workers, "parallel workers for search")
        ->envname("QCOVER_WORKERS")
        ->check(CLI::Range(1, 1 << 16));
    app.add_option("--format", cfg.format, "output format")
        ->envname("QCOVER_FORMAT")
        ->check(CLI::IsMember({"json", "text"}));

    std::string file1, file2, out_path, a_str, b_str, modulus, range = "1,1";
    size_t i1 = 0, i2 = 0;
    long q = 2;
    int n = 2;

    CLI::App* verify = app.add_subcommand("verify", "verify a blocking set or group cover file");
    verify->fallthrough();
    verify->add_option("file", file1, "input JSON file")->required();

    CLI::App* compose = app.add_subcommand("compose", "compose two blocking sets or two covers");
    compose->fallthrough();
    compose->add_option("file1", file1, "first input")->required();
    compose->add_option("file2", file2, "second input")->required();
    compose->add_option("--i1", i1, "distinguished index into the first input");
    compose->add_option("--i2", i2, "distinguished index into the second input");
    compose->add_option("--a", a_str, "element of G1 / vector over the first space");
    compose->add_option("--b", b_str, "element of G2 / vector over the second space");
    compose->add_option("-o,--output", out_path, "write the composed object here");

    CLI::App* search = app.add_subcommand("search", "exhaustive minimal blocking set search");
    search->fallthrough();
    search->add_option("--q", q, "field order")->required();
    search->add_option("--n", n, "projective dimension")->required();
    search->add_option("--modulus", modulus, "field modulus coefficients, constant first");
    search->add_option("--range", range, "size range kmin,kmax")->required();

    CLI::App* dualize = app.add_subcommand("dualize", "flip between point sets and hyperplane covers");
    dualize->fallthrough();
    dualize->add_option("file", file1, "input JSON file")->required();
    dualize->add_option("-o,--output", out_path, "write the dual object here");

    CLI::App* enumerate = app.add_subcommand("enumerate", "list the points of PG(n,q)");
    enumerate->fallthrough();
    enumerate->add_option("--q", q, "field order")->required();
    enumerate->add_option("--n", n, "projective dimension")->required();
    enumerate->add_option("--modulus", modulus, "field modulus coefficients, constant first");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify) return climpl::cmd_verify(cfg, file1, out);
        if (*compose)
            return climpl::cmd_compose(cfg, file1, file2, i1, i2, a_str, b_str, out_path, out, err);
        if (*search) return climpl::cmd_search(cfg, q, n, modulus, range, out);
        if (*dualize) return climpl::cmd_dualize(cfg, file1, out_path, out, err);
        if (*enumerate) return climpl::cmd_enumerate(cfg, q, n, modulus, out);
    } catch (const resource_limit_error& e) {
        err << "resource guard: " << e.what() << "\n";
        return 3;
    } catch (const input_error& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace qcover
