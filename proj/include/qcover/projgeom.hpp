#pragma once

// The projective space PG(n,q): canonical points (first nonzero coordinate
// scaled to 1), hyperplanes stored by normal vector, incidence via the
// standard dot product, and guarded full enumeration.

#include <string>
#include <string_view>
#include <vector>

#include "qcover/errors.hpp"
#include "qcover/fqlin.hpp"
#include "qcover/gf.hpp"

namespace qcover {

struct ProjSpace {
    FieldPtr field;
    int n = 1;  // projective dimension

    // (q^{n+1} - 1) / (q - 1); also the hyperplane count.
    long point_count() const {
        long total = 1;
        for (int i = 0; i <= n; ++i) total *= field->order();
        return (total - 1) / (field->order() - 1);
    }
    long vector_count() const {
        long total = 1;
        for (int i = 0; i <= n; ++i) total *= field->order();
        return total;
    }

    friend bool operator==(const ProjSpace& a, const ProjSpace& b) {
        return a.n == b.n && same_field(a.field, b.field);
    }
};

inline ProjSpace make_proj_space(FieldPtr field, int n) {
    if (n < 1) throw input_error("projective dimension must be >= 1");
    return ProjSpace{std::move(field), n};
}

// Canonical representative of a scalar class: first nonzero coordinate is 1.
struct ProjPoint {
    Vector coords;

    friend bool operator==(const ProjPoint& a, const ProjPoint& b) = default;
    friend bool operator<(const ProjPoint& a, const ProjPoint& b) { return a.coords < b.coords; }
};

// The hyperplane {x : normal . x = 0}; the normal carries the same
// normalization as a point.
struct Hyperplane {
    Vector normal;

    friend bool operator==(const Hyperplane& a, const Hyperplane& b) = default;
    friend bool operator<(const Hyperplane& a, const Hyperplane& b) { return a.normal < b.normal; }
};

inline Vector normalized_rep(const Vector& v) {
    const auto& field = v.field;
    size_t lead = 0;
    while (lead < v.dim() && field->is_zero(v.entries[lead])) ++lead;
    if (lead == v.dim()) throw input_error("the zero vector has no projective class");
    if (v.entries[lead] == field->one()) return v;
    return vec_scale(field->inv(v.entries[lead]), v);
}

inline ProjPoint normalize(const Vector& v) { return ProjPoint{normalized_rep(v)}; }
inline Hyperplane normalize_hyperplane(const Vector& v) { return Hyperplane{normalized_rep(v)}; }

inline void guard_enumeration(const ProjSpace& s, long bound) {
    if (s.vector_count() > bound)
        throw resource_limit_error("enumeration of PG(" + std::to_string(s.n) + "," +
                                   std::to_string(s.field->order()) + ") needs q^(n+1) = " +
                                   std::to_string(s.vector_count()) + " > bound " +
                                   std::to_string(bound));
}

// All nonzero vectors of F_q^{n+1} in lexicographic order, keeping the
// canonical class representatives; yields each point once, in order.
inline std::vector<ProjPoint> enumerate_points(const ProjSpace& s, long bound = kDefaultEnumerationBound) {
    guard_enumeration(s, bound);
    const auto& field = s.field;
    const auto scalars = field->elements();
    const size_t dim = static_cast<size_t>(s.n) + 1;
    std::vector<ProjPoint> out;
    out.reserve(static_cast<size_t>(s.point_count()));
    std::vector<size_t> idx(dim, 0);
    bool done = false;
    while (!done) {
        size_t lead = 0;
        while (lead < dim && idx[lead] == 0) ++lead;
        if (lead < dim && scalars[idx[lead]] == field->one()) {
            std::vector<FieldElem> entries;
            entries.reserve(dim);
            for (size_t i = 0; i < dim; ++i) entries.push_back(scalars[idx[i]]);
            out.push_back(ProjPoint{Vector{field, std::move(entries)}});
        }
        done = true;
        for (size_t i = dim; i-- > 0;) {
            if (++idx[i] < scalars.size()) {
                done = false;
                break;
            }
            idx[i] = 0;
        }
    }
    return out;
}

// Same list reinterpreted as normals.
inline std::vector<Hyperplane> enumerate_hyperplanes(const ProjSpace& s, long bound = kDefaultEnumerationBound) {
    std::vector<Hyperplane> out;
    for (auto& p : enumerate_points(s, bound)) out.push_back(Hyperplane{std::move(p.coords)});
    return out;
}

inline bool incident(const ProjPoint& p, const Hyperplane& h) {
    return p.coords.field->is_zero(dot(p.coords, h.normal));
}

// The rank-n subspace of F_q^{n+1} a hyperplane stands for.
inline Subspace hyperplane_subspace(const Hyperplane& h) {
    const auto& field = h.normal.field;
    return orth_complement(rref(field, h.normal.dim(), {h.normal}));
}

// Text form "(c0:c1:...:cn)" with comma-separated coefficients per entry.
inline std::string format_point(const ProjPoint& p) {
    std::string s = "(";
    for (size_t i = 0; i < p.coords.dim(); ++i) {
        if (i) s += ':';
        s += p.coords.field->format(p.coords.entries[i]);
    }
    s += ')';
    return s;
}

inline std::string format_hyperplane(const Hyperplane& h) { return format_point(ProjPoint{h.normal}); }

inline ProjPoint parse_point(const ProjSpace& s, std::string_view text) {
    if (text.size() < 2 || text.front() != '(' || text.back() != ')')
        throw input_error("point must look like (c0:c1:...), got '" + std::string(text) + "'");
    Vector v = parse_vector(s.field, text.substr(1, text.size() - 2), ':');
    if (v.dim() != static_cast<size_t>(s.n) + 1)
        throw input_error("point has " + std::to_string(v.dim()) + " coordinates, expected " +
                          std::to_string(s.n + 1));
    return normalize(v);
}

}  // namespace qcover
