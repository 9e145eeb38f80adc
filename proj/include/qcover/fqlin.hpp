#pragma once

// Linear algebra over GF(q): vectors, subspaces as canonical reduced
// row-echelon bases, orthogonal complements under the standard dot product,
// and the block/product/span constructions the cover composition needs.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qcover/errors.hpp"
#include "qcover/gf.hpp"

namespace qcover {

inline constexpr long kDefaultEnumerationBound = 1L << 24;

struct Vector {
    FieldPtr field;
    std::vector<FieldElem> entries;

    size_t dim() const { return entries.size(); }

    friend bool operator==(const Vector& a, const Vector& b) {
        return same_field(a.field, b.field) && a.entries == b.entries;
    }
    // Entry-wise lexicographic, entry 0 first. Callers compare vectors of the
    // same field and dimension only.
    friend bool operator<(const Vector& a, const Vector& b) { return a.entries < b.entries; }
};

inline Vector make_vector(FieldPtr field, std::vector<FieldElem> entries) {
    for (const auto& x : entries) field->check(x);
    return Vector{std::move(field), std::move(entries)};
}

inline Vector zero_vector(const FieldPtr& field, size_t dim) {
    return Vector{field, std::vector<FieldElem>(dim, field->zero())};
}

inline bool is_zero(const Vector& v) {
    return std::all_of(v.entries.begin(), v.entries.end(),
                       [&](const FieldElem& x) { return v.field->is_zero(x); });
}

inline void require_same_space(const Vector& a, const Vector& b) {
    if (!same_field(a.field, b.field)) throw input_error("vectors lie over different fields");
    if (a.dim() != b.dim())
        throw input_error("dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
}

inline Vector vec_add(const Vector& a, const Vector& b) {
    require_same_space(a, b);
    Vector r = a;
    for (size_t i = 0; i < r.dim(); ++i) r.entries[i] = a.field->add(a.entries[i], b.entries[i]);
    return r;
}

inline Vector vec_scale(const FieldElem& c, const Vector& v) {
    Vector r = v;
    for (auto& x : r.entries) x = v.field->mul(c, x);
    return r;
}

inline FieldElem dot(const Vector& a, const Vector& b) {
    require_same_space(a, b);
    FieldElem acc = a.field->zero();
    for (size_t i = 0; i < a.dim(); ++i)
        acc = a.field->add(acc, a.field->mul(a.entries[i], b.entries[i]));
    return acc;
}

// Text form "e0;e1;...;ek" with the field's comma syntax per entry.
inline std::string format_vector(const Vector& v) {
    std::string s;
    for (size_t i = 0; i < v.dim(); ++i) {
        if (i) s += ';';
        s += v.field->format(v.entries[i]);
    }
    return s;
}

inline Vector parse_vector(const FieldPtr& field, std::string_view text, char sep = ';') {
    std::vector<FieldElem> entries;
    size_t start = 0;
    while (true) {
        size_t cut = text.find(sep, start);
        std::string_view tok = text.substr(start, cut == std::string_view::npos ? cut : cut - start);
        entries.push_back(field->parse(tok));
        if (cut == std::string_view::npos) break;
        start = cut + 1;
    }
    return Vector{field, std::move(entries)};
}

// An F_q-subspace held as its unique reduced row-echelon basis: pivot columns
// strictly increase, pivots are 1, pivot columns are zero elsewhere. Equal
// subspaces therefore have equal bases.
class Subspace {
public:
    Subspace(FieldPtr field, size_t ambient_dim, std::vector<Vector> rref_basis)
        : field_(std::move(field)), dim_(ambient_dim), basis_(std::move(rref_basis)) {}

    const FieldPtr& field() const { return field_; }
    size_t ambient_dim() const { return dim_; }
    size_t rank() const { return basis_.size(); }
    const std::vector<Vector>& basis() const { return basis_; }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return same_field(a.field_, b.field_) && a.dim_ == b.dim_ && a.basis_ == b.basis_;
    }

private:
    FieldPtr field_;
    size_t dim_;
    std::vector<Vector> basis_;
};

// Canonical span of arbitrary rows; Gauss-Jordan elimination.
inline Subspace rref(const FieldPtr& field, size_t dim, const std::vector<Vector>& rows) {
    for (const auto& r : rows) {
        if (!same_field(r.field, field)) throw input_error("row over a different field");
        if (r.dim() != dim) throw input_error("dimension mismatch among spanning rows");
    }
    std::vector<Vector> m = rows;
    size_t pivot_row = 0;
    for (size_t col = 0; col < dim && pivot_row < m.size(); ++col) {
        size_t sel = m.size();
        for (size_t r = pivot_row; r < m.size(); ++r)
            if (!field->is_zero(m[r].entries[col])) {
                sel = r;
                break;
            }
        if (sel == m.size()) continue;
        std::swap(m[pivot_row], m[sel]);
        const FieldElem scale = field->inv(m[pivot_row].entries[col]);
        m[pivot_row] = vec_scale(scale, m[pivot_row]);
        for (size_t r = 0; r < m.size(); ++r) {
            if (r == pivot_row || field->is_zero(m[r].entries[col])) continue;
            const FieldElem factor = field->neg(m[r].entries[col]);
            m[r] = vec_add(m[r], vec_scale(factor, m[pivot_row]));
        }
        ++pivot_row;
    }
    m.resize(pivot_row);
    return Subspace(field, dim, std::move(m));
}

inline Subspace zero_subspace(const FieldPtr& field, size_t dim) { return Subspace(field, dim, {}); }

inline Subspace full_space(const FieldPtr& field, size_t dim) {
    std::vector<Vector> rows;
    for (size_t i = 0; i < dim; ++i) {
        std::vector<FieldElem> e(dim, field->zero());
        e[i] = field->one();
        rows.push_back(Vector{field, std::move(e)});
    }
    return Subspace(field, dim, std::move(rows));
}

// Membership by elimination against the RREF basis.
inline bool contains(const Subspace& s, const Vector& v) {
    if (!same_field(s.field(), v.field)) throw input_error("vector over a different field");
    if (v.dim() != s.ambient_dim()) throw input_error("dimension mismatch");
    const auto& field = s.field();
    Vector residue = v;
    for (const auto& row : s.basis()) {
        size_t pivot = 0;
        while (pivot < row.dim() && field->is_zero(row.entries[pivot])) ++pivot;
        if (!field->is_zero(residue.entries[pivot]))
            residue = vec_add(residue, vec_scale(field->neg(residue.entries[pivot]), row));
    }
    return is_zero(residue);
}

// {w : w . v = 0 for every v in S} under the standard dot product.
inline Subspace orth_complement(const Subspace& s) {
    const auto& field = s.field();
    const size_t dim = s.ambient_dim();
    std::vector<size_t> pivots;
    for (const auto& row : s.basis()) {
        size_t pivot = 0;
        while (pivot < dim && field->is_zero(row.entries[pivot])) ++pivot;
        pivots.push_back(pivot);
    }
    std::vector<Vector> kernel;
    for (size_t col = 0; col < dim; ++col) {
        if (std::find(pivots.begin(), pivots.end(), col) != pivots.end()) continue;
        std::vector<FieldElem> w(dim, field->zero());
        w[col] = field->one();
        for (size_t r = 0; r < pivots.size(); ++r)
            w[pivots[r]] = field->neg(s.basis()[r].entries[col]);
        kernel.push_back(Vector{field, std::move(w)});
    }
    return rref(field, dim, kernel);
}

// A x B embedded block-wise in the (dim A + dim B)-dimensional space.
inline Subspace product_subspace(const Subspace& a, const Subspace& b) {
    if (!same_field(a.field(), b.field())) throw input_error("product of subspaces over different fields");
    const auto& field = a.field();
    const size_t dim = a.ambient_dim() + b.ambient_dim();
    std::vector<Vector> rows;
    for (const auto& r : a.basis()) {
        std::vector<FieldElem> e = r.entries;
        e.resize(dim, field->zero());
        rows.push_back(Vector{field, std::move(e)});
    }
    for (const auto& r : b.basis()) {
        std::vector<FieldElem> e(a.ambient_dim(), field->zero());
        e.insert(e.end(), r.entries.begin(), r.entries.end());
        rows.push_back(Vector{field, std::move(e)});
    }
    return rref(field, dim, rows);
}

// W extended by the full F_q-span of v; always an F_q-subspace.
inline Subspace extend_linear(const Subspace& w, const Vector& v) {
    if (v.dim() != w.ambient_dim()) throw input_error("dimension mismatch");
    std::vector<Vector> rows = w.basis();
    rows.push_back(v);
    return rref(w.field(), w.ambient_dim(), rows);
}

// All q^rank elements of a subspace, sorted. Guarded: refuses above `bound`.
inline std::vector<Vector> subspace_elements(const Subspace& s, long bound = kDefaultEnumerationBound) {
    const auto& field = s.field();
    long count = 1;
    for (size_t i = 0; i < s.rank(); ++i) {
        count *= field->order();
        if (count > bound)
            throw resource_limit_error("subspace has q^" + std::to_string(s.rank()) +
                                       " elements, above the bound " + std::to_string(bound));
    }
    const auto scalars = field->elements();
    std::vector<Vector> out;
    out.reserve(static_cast<size_t>(count));
    std::vector<size_t> idx(s.rank(), 0);
    bool done = false;
    while (!done) {
        Vector acc = zero_vector(field, s.ambient_dim());
        for (size_t i = 0; i < s.rank(); ++i)
            acc = vec_add(acc, vec_scale(scalars[idx[i]], s.basis()[i]));
        out.push_back(std::move(acc));
        done = true;
        for (size_t i = idx.size(); i-- > 0;) {
            if (++idx[i] < scalars.size()) {
                done = false;
                break;
            }
            idx[i] = 0;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Result of the additive (cyclic) extension W + {0, v, 2v, ..., (p-1)v}.
// This is an F_p-subgroup; for non-prime q it is generally not an
// F_q-subspace, so the element set is the primary representation and
// `subspace` is only present when F_q-closure actually holds.
struct AdditiveSpan {
    bool fq_subspace = false;
    std::vector<Vector> elements;       // sorted, duplicate-free
    std::optional<Subspace> subspace;   // set iff fq_subspace
};

inline AdditiveSpan extend_cyclic(const Subspace& w, const Vector& v,
                                  long bound = kDefaultEnumerationBound) {
    if (v.dim() != w.ambient_dim()) throw input_error("dimension mismatch");
    const auto& field = w.field();
    const int p = field->p();
    const auto base = subspace_elements(w, bound);
    std::set<Vector> closure(base.begin(), base.end());
    Vector step = v;
    for (int k = 1; k < p; ++k) {
        for (const auto& x : base) closure.insert(vec_add(x, step));
        step = vec_add(step, v);
    }
    AdditiveSpan out;
    out.elements.assign(closure.begin(), closure.end());
    // F_q-closure test: stable under every scalar.
    out.fq_subspace = true;
    for (const auto& c : field->elements()) {
        for (const auto& x : out.elements) {
            if (!closure.count(vec_scale(c, x))) {
                out.fq_subspace = false;
                break;
            }
        }
        if (!out.fq_subspace) break;
    }
    if (out.fq_subspace) out.subspace = extend_linear(w, v);
    return out;
}

}  // namespace qcover
