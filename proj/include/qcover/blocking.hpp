#pragma once

// Blocking sets of PG(n,q): verification with witnesses, the duality with
// hyperplane covers of F_q^{n+1}, size-(k1+k2-1) composition, and exhaustive
// minimal-blocking-set search.

#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qcover/errors.hpp"
#include "qcover/fqlin.hpp"
#include "qcover/gf.hpp"
#include "qcover/projgeom.hpp"

namespace qcover {

class BlockingSet {
public:
    BlockingSet(ProjSpace space, std::vector<ProjPoint> points)
        : space_(std::move(space)), points_(std::move(points)) {
        for (const auto& p : points_) {
            if (!same_field(p.coords.field, space_.field) ||
                p.coords.dim() != static_cast<size_t>(space_.n) + 1)
                throw input_error("point does not lie in PG(" + std::to_string(space_.n) + "," +
                                  std::to_string(space_.field->order()) + ")");
        }
        std::sort(points_.begin(), points_.end());
        points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    }

    const ProjSpace& space() const { return space_; }
    const std::vector<ProjPoint>& points() const { return points_; }
    size_t size() const { return points_.size(); }

    friend bool operator==(const BlockingSet& a, const BlockingSet& b) {
        return a.space_ == b.space_ && a.points_ == b.points_;
    }

private:
    ProjSpace space_;
    std::vector<ProjPoint> points_;
};

struct BlockingCheck {
    bool blocking = false;
    std::optional<Hyperplane> unblocked;  // lexicographically first miss
};

// A hyperplane the set meets only in `point`; proof the point is essential.
struct EssentialityWitness {
    ProjPoint point;
    Hyperplane hyperplane;
};

struct MinimalityCheck {
    bool minimal = false;
    std::vector<EssentialityWitness> witnesses;  // one per point when minimal
    std::optional<ProjPoint> inessential;        // first point with no witness
};

inline BlockingCheck is_blocking(const BlockingSet& b, long bound = kDefaultEnumerationBound) {
    for (const auto& h : enumerate_hyperplanes(b.space(), bound)) {
        bool hit = false;
        for (const auto& p : b.points())
            if (incident(p, h)) {
                hit = true;
                break;
            }
        if (!hit) return {false, h};
    }
    return {true, std::nullopt};
}

// One essentiality witness per point, or the first inessential point.
// Removing a single point is the only case to test: blocking is monotone, so
// a proper subset that blocks everything implies some one-point deletion does.
inline MinimalityCheck is_minimal(const BlockingSet& b, long bound = kDefaultEnumerationBound) {
    if (auto chk = is_blocking(b, bound); !chk.blocking)
        throw input_error("not a blocking set: hyperplane " + format_hyperplane(*chk.unblocked) +
                          " is unblocked");
    const auto hyperplanes = enumerate_hyperplanes(b.space(), bound);
    MinimalityCheck out;
    out.minimal = true;
    for (const auto& p : b.points()) {
        bool found = false;
        for (const auto& h : hyperplanes) {
            if (!incident(p, h)) continue;
            bool alone = true;
            for (const auto& other : b.points()) {
                if (other == p) continue;
                if (incident(other, h)) {
                    alone = false;
                    break;
                }
            }
            if (alone) {
                out.witnesses.push_back({p, h});
                found = true;
                break;
            }
        }
        if (!found) {
            out.minimal = false;
            out.inessential = p;
            out.witnesses.clear();
            return out;
        }
    }
    return out;
}

// A list of rank-(dim-1) subspaces of F_q^dim, the dual object of a point set.
class HyperplaneCover {
public:
    HyperplaneCover(FieldPtr field, size_t dim, std::vector<Subspace> members)
        : field_(std::move(field)), dim_(dim), members_(std::move(members)) {
        for (const auto& m : members_) {
            if (!same_field(m.field(), field_) || m.ambient_dim() != dim_)
                throw input_error("cover member in the wrong ambient space");
            if (m.rank() + 1 != dim_)
                throw input_error("cover member has rank " + std::to_string(m.rank()) +
                                  ", expected " + std::to_string(dim_ - 1));
        }
        for (size_t i = 0; i < members_.size(); ++i)
            for (size_t j = i + 1; j < members_.size(); ++j)
                if (members_[i] == members_[j]) throw input_error("duplicate cover member");
    }

    const FieldPtr& field() const { return field_; }
    size_t ambient_dim() const { return dim_; }
    const std::vector<Subspace>& members() const { return members_; }

private:
    FieldPtr field_;
    size_t dim_;
    std::vector<Subspace> members_;
};

// Point b -> the rank-n subspace b^perp. The verdicts transfer both ways.
inline HyperplaneCover dualize(const BlockingSet& b) {
    std::vector<Subspace> members;
    members.reserve(b.size());
    for (const auto& p : b.points()) members.push_back(hyperplane_subspace(Hyperplane{p.coords}));
    return HyperplaneCover(b.space().field, static_cast<size_t>(b.space().n) + 1, std::move(members));
}

inline BlockingSet undualize(const HyperplaneCover& c) {
    ProjSpace space = make_proj_space(c.field(), static_cast<int>(c.ambient_dim()) - 1);
    std::vector<ProjPoint> points;
    for (const auto& m : c.members()) {
        Subspace line = orth_complement(m);
        if (line.rank() != 1) throw input_error("cover member is not a hyperplane");
        points.push_back(normalize(line.basis()[0]));
    }
    return BlockingSet(std::move(space), std::move(points));
}

// All q^dim vectors in lexicographic order.
inline std::vector<Vector> all_vectors(const FieldPtr& field, size_t dim,
                                       long bound = kDefaultEnumerationBound) {
    long count = 1;
    for (size_t i = 0; i < dim; ++i) {
        count *= field->order();
        if (count > bound)
            throw resource_limit_error("vector enumeration needs q^" + std::to_string(dim) +
                                       " > bound " + std::to_string(bound));
    }
    const auto scalars = field->elements();
    std::vector<Vector> out;
    out.reserve(static_cast<size_t>(count));
    std::vector<size_t> idx(dim, 0);
    bool done = false;
    while (!done) {
        std::vector<FieldElem> entries;
        entries.reserve(dim);
        for (size_t i = 0; i < dim; ++i) entries.push_back(scalars[idx[i]]);
        out.push_back(Vector{field, std::move(entries)});
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

struct SpaceCoverCheck {
    bool covers = false;
    std::optional<Vector> uncovered;
};

// Union-of-members test, computed on the vector-space side via subspace
// membership; deliberately a different route than the incidence checks.
inline SpaceCoverCheck cover_covers_space(const HyperplaneCover& c,
                                          long bound = kDefaultEnumerationBound) {
    for (const auto& v : all_vectors(c.field(), c.ambient_dim(), bound)) {
        bool inside = false;
        for (const auto& m : c.members())
            if (contains(m, v)) {
                inside = true;
                break;
            }
        if (!inside) return {false, v};
    }
    return {true, std::nullopt};
}

struct CoverMemberWitness {
    size_t member = 0;
    Vector element;  // lies in this member and no other
};

struct CoverIrredundancy {
    bool irredundant = false;
    std::vector<CoverMemberWitness> witnesses;
    std::optional<size_t> redundant_member;
};

inline CoverIrredundancy cover_irredundant(const HyperplaneCover& c,
                                           long bound = kDefaultEnumerationBound) {
    CoverIrredundancy out;
    out.irredundant = true;
    for (size_t i = 0; i < c.members().size(); ++i) {
        std::optional<Vector> priv;
        for (const auto& v : subspace_elements(c.members()[i], bound)) {
            if (is_zero(v)) continue;
            bool elsewhere = false;
            for (size_t j = 0; j < c.members().size(); ++j) {
                if (j == i) continue;
                if (contains(c.members()[j], v)) {
                    elsewhere = true;
                    break;
                }
            }
            if (!elsewhere) {
                priv = v;
                break;
            }
        }
        if (!priv) {
            out.irredundant = false;
            out.redundant_member = i;
            out.witnesses.clear();
            return out;
        }
        out.witnesses.push_back({i, *priv});
    }
    return out;
}

struct BlockingComposeOptions {
    size_t i1 = 0;
    size_t i2 = 0;
    std::optional<Vector> a;  // default: lexicographically first with a . B1[i1] != 0
    std::optional<Vector> b;
    long bound = kDefaultEnumerationBound;
};

namespace detail {

inline Vector first_transversal_vector(const ProjPoint& p, long bound) {
    for (const auto& v : all_vectors(p.coords.field, p.coords.dim(), bound))
        if (!p.coords.field->is_zero(dot(v, p.coords))) return v;
    throw error("no transversal vector exists");  // unreachable: p != 0
}

}  // namespace detail

// Composes two minimal blocking sets of PG(n1,q), PG(n2,q) into one of
// PG(n1+n2+1,q) with k1+k2-1 points: dualize both, keep the product members
// M_i x V2 and V1 x N_j away from the distinguished indices, replace the
// distinguished pair by (M1 x N1) + F_q (a,b), and map every member back to
// its dual point.
inline BlockingSet compose_blocking_sets(const BlockingSet& b1, const BlockingSet& b2,
                                         const BlockingComposeOptions& opt = {}) {
    if (!same_field(b1.space().field, b2.space().field))
        throw input_error("field mismatch: q=" + std::to_string(b1.space().field->order()) +
                          " vs q=" + std::to_string(b2.space().field->order()));
    const FieldPtr field = b1.space().field;
    if (opt.i1 >= b1.size() || opt.i2 >= b2.size())
        throw input_error("distinguished index out of range");

    auto require_minimal = [&](const BlockingSet& b, const char* which) {
        auto m = is_minimal(b, opt.bound);  // throws if not blocking
        if (!m.minimal)
            throw input_error(std::string(which) + " is not minimal: point " +
                              format_point(*m.inessential) + " is inessential");
    };
    require_minimal(b1, "first input");
    require_minimal(b2, "second input");

    const ProjPoint& p1 = b1.points()[opt.i1];
    const ProjPoint& p2 = b2.points()[opt.i2];
    const Vector a = opt.a ? *opt.a : detail::first_transversal_vector(p1, opt.bound);
    const Vector b = opt.b ? *opt.b : detail::first_transversal_vector(p2, opt.bound);
    if (a.dim() != p1.coords.dim() || b.dim() != p2.coords.dim())
        throw input_error("transversal vector has the wrong dimension");
    if (field->is_zero(dot(a, p1.coords)))
        throw input_error("hypothesis violated: a lies in the dual hyperplane of B1[i1]");
    if (field->is_zero(dot(b, p2.coords)))
        throw input_error("hypothesis violated: b lies in the dual hyperplane of B2[i2]");

    const size_t d1 = p1.coords.dim();
    const size_t d2 = p2.coords.dim();
    const Subspace m1 = hyperplane_subspace(Hyperplane{p1.coords});
    const Subspace n1 = hyperplane_subspace(Hyperplane{p2.coords});
    const Subspace v1 = full_space(field, d1);
    const Subspace v2 = full_space(field, d2);

    std::vector<FieldElem> ab = a.entries;
    ab.insert(ab.end(), b.entries.begin(), b.entries.end());
    std::vector<Subspace> members;
    members.push_back(extend_linear(product_subspace(m1, n1), Vector{field, std::move(ab)}));
    for (size_t i = 0; i < b1.size(); ++i)
        if (i != opt.i1)
            members.push_back(product_subspace(hyperplane_subspace(Hyperplane{b1.points()[i].coords}), v2));
    for (size_t j = 0; j < b2.size(); ++j)
        if (j != opt.i2)
            members.push_back(product_subspace(v1, hyperplane_subspace(Hyperplane{b2.points()[j].coords})));

    HyperplaneCover cover(field, d1 + d2, std::move(members));
    BlockingSet out = undualize(cover);
    if (out.size() != b1.size() + b2.size() - 1)
        throw error("composition produced " + std::to_string(out.size()) + " points, expected k1+k2-1");
    if (out.space().vector_count() <= opt.bound) {
        auto m = is_minimal(out, opt.bound);
        if (!m.minimal) throw error("composition postcondition failed: result is not minimal");
    }
    return out;
}

// --- exhaustive minimal-blocking-set search ---------------------------------

struct SpectrumEntry {
    long count = 0;
    std::optional<BlockingSet> first;  // lexicographically first of this size
};

struct SearchResult {
    std::map<size_t, SpectrumEntry> by_size;
};

namespace detail {

struct Bits {
    std::vector<uint64_t> w;
    explicit Bits(size_t n = 0) : w((n + 63) / 64, 0) {}
    void set(size_t i) { w[i / 64] |= uint64_t(1) << (i % 64); }
    bool test(size_t i) const { return (w[i / 64] >> (i % 64)) & 1; }
    void operator|=(const Bits& o) {
        for (size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
    }
    bool intersects(const Bits& o) const {
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i] & o.w[i]) return true;
        return false;
    }
    bool covers_with(const Bits& o, const Bits& all) const {
        for (size_t i = 0; i < w.size(); ++i)
            if ((w[i] | o.w[i]) != all.w[i]) return false;
        return true;
    }
    friend bool operator==(const Bits&, const Bits&) = default;
};

// Incidence tables plus suffix reachability, shared read-only by workers.
struct SearchTables {
    size_t num_points = 0;
    size_t num_hyperplanes = 0;
    std::vector<Bits> point_mask;               // hyperplanes through each point
    std::vector<std::vector<uint32_t>> point_list;  // same, as index lists
    std::vector<Bits> reach;                    // union of point_mask[j], j >= i
    Bits all;
};

inline SearchTables build_search_tables(const std::vector<ProjPoint>& pts,
                                        const std::vector<Hyperplane>& hps) {
    SearchTables t;
    t.num_points = pts.size();
    t.num_hyperplanes = hps.size();
    t.all = Bits(hps.size());
    for (size_t h = 0; h < hps.size(); ++h) t.all.set(h);
    t.point_mask.assign(pts.size(), Bits(hps.size()));
    t.point_list.resize(pts.size());
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t h = 0; h < hps.size(); ++h)
            if (incident(pts[i], hps[h])) {
                t.point_mask[i].set(h);
                t.point_list[i].push_back(static_cast<uint32_t>(h));
            }
    t.reach.assign(pts.size() + 1, Bits(hps.size()));
    for (size_t i = pts.size(); i-- > 0;) {
        t.reach[i] = t.reach[i + 1];
        t.reach[i] |= t.point_mask[i];
    }
    return t;
}

struct SubtreeResult {
    std::map<size_t, std::pair<long, std::vector<uint32_t>>> by_size;  // count, first index set
};

class SubsetSearcher {
public:
    SubsetSearcher(const SearchTables& t, size_t kmin, size_t kmax)
        : t_(t), kmin_(kmin), kmax_(kmax), hit_count_(t.num_hyperplanes, 0),
          exactly_once_(t.num_hyperplanes), blocked_(t.num_hyperplanes) {}

    SubtreeResult run(size_t root) {
        add(root);
        if (every_point_essential()) recurse();
        remove(root);
        return std::move(result_);
    }

private:
    void add(size_t p) {
        chosen_.push_back(static_cast<uint32_t>(p));
        for (uint32_t h : t_.point_list[p]) {
            if (hit_count_[h] == 0) {
                exactly_once_.set_bit(h);
                blocked_.set_bit(h);
            } else if (hit_count_[h] == 1) {
                exactly_once_.clear_bit(h);
            }
            ++hit_count_[h];
        }
    }

    void remove(size_t p) {
        chosen_.pop_back();
        for (uint32_t h : t_.point_list[p]) {
            --hit_count_[h];
            if (hit_count_[h] == 0) {
                exactly_once_.clear_bit(h);
                blocked_.clear_bit(h);
            } else if (hit_count_[h] == 1) {
                exactly_once_.set_bit(h);
            }
        }
    }

    // Every chosen point must still own a hyperplane hit exactly once; a point
    // that has lost all private hyperplanes can never regain one.
    bool every_point_essential() const {
        for (uint32_t p : chosen_)
            if (!t_.point_mask[p].intersects(exactly_once_.bits)) return false;
        return true;
    }

    void recurse() {
        if (blocked_.bits == t_.all) {
            // A blocking set; supersets have a proper blocking subset, stop.
            const size_t k = chosen_.size();
            if (k >= kmin_ && k <= kmax_) {
                auto& entry = result_.by_size[k];
                if (entry.first == 0) entry.second = chosen_;
                ++entry.first;
            }
            return;
        }
        if (chosen_.size() >= kmax_) return;
        for (size_t next = chosen_.back() + 1; next < t_.num_points; ++next) {
            // No later point can block what is still open: the whole tail dies.
            if (!blocked_.bits.covers_with(t_.reach[next], t_.all)) break;
            add(next);
            if (every_point_essential()) recurse();
            remove(next);
        }
    }

    struct TrackedBits {
        Bits bits;
        explicit TrackedBits(size_t n) : bits(n) {}
        void set_bit(size_t i) { bits.set(i); }
        void clear_bit(size_t i) { bits.w[i / 64] &= ~(uint64_t(1) << (i % 64)); }
    };

    const SearchTables& t_;
    size_t kmin_;
    size_t kmax_;
    std::vector<uint32_t> chosen_;
    std::vector<uint32_t> hit_count_;
    TrackedBits exactly_once_;  // hyperplanes hit by exactly one chosen point
    TrackedBits blocked_;       // hyperplanes hit at least once
    SubtreeResult result_;
};

}  // namespace detail

// Exhaustive lexicographic subset search; returns, per size in range, the
// number of minimal blocking sets and the lexicographically first one.
// The result is identical for every worker count.
inline SearchResult search_minimal(const ProjSpace& s, size_t kmin, size_t kmax, int workers = 1,
                                   long bound = kDefaultEnumerationBound) {
    if (kmin < 1 || kmin > kmax) throw input_error("invalid size range");
    const auto points = enumerate_points(s, bound);
    const auto hyperplanes = enumerate_hyperplanes(s, bound);
    if (kmax > points.size()) kmax = points.size();
    const auto tables = detail::build_search_tables(points, hyperplanes);

    std::vector<detail::SubtreeResult> per_root(points.size());
    auto run_root = [&](size_t r) {
        detail::SubsetSearcher searcher(tables, kmin, kmax);
        per_root[r] = searcher.run(r);
    };
    if (workers <= 1) {
        for (size_t r = 0; r < points.size(); ++r) run_root(r);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        const size_t nthreads = std::min<size_t>(static_cast<size_t>(workers), points.size());
        for (size_t t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (size_t r = next.fetch_add(1); r < points.size(); r = next.fetch_add(1)) run_root(r);
            });
        for (auto& th : pool) th.join();
    }

    SearchResult out;
    for (size_t r = 0; r < points.size(); ++r) {
        for (const auto& [k, payload] : per_root[r].by_size) {
            auto& entry = out.by_size[k];
            if (!entry.first) {
                std::vector<ProjPoint> pts;
                for (uint32_t idx : payload.second) pts.push_back(points[idx]);
                entry.first = BlockingSet(s, std::move(pts));
            }
            entry.count += payload.first;
        }
    }
    return out;
}

}  // namespace qcover
