#pragma once

// Finite groups as validated Cayley tables, subgroup covers with the full
// taxonomy (irredundant / maximal / core-free), and the (n+m-1)-cover
// composition on direct products.

#include <algorithm>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qcover/errors.hpp"

namespace qcover {

class FiniteGroup {
public:
    explicit FiniteGroup(std::vector<std::vector<int>> table, std::string name = "")
        : table_(std::move(table)), name_(std::move(name)) {
        const size_t n = table_.size();
        if (n == 0) throw input_error("empty Cayley table");
        for (const auto& row : table_) {
            if (row.size() != n) throw input_error("Cayley table is not square");
            for (int e : row)
                if (e < 0 || static_cast<size_t>(e) >= n)
                    throw input_error("Cayley table entry out of range");
        }
        for (size_t j = 0; j < n; ++j)
            if (table_[0][j] != static_cast<int>(j) || table_[j][0] != static_cast<int>(j))
                throw input_error("element 0 is not a two-sided identity");
        std::vector<char> seen(n);
        for (size_t i = 0; i < n; ++i) {
            std::fill(seen.begin(), seen.end(), 0);
            for (size_t j = 0; j < n; ++j) {
                if (seen[table_[i][j]]) throw input_error("row " + std::to_string(i) + " is not a permutation");
                seen[table_[i][j]] = 1;
            }
            std::fill(seen.begin(), seen.end(), 0);
            for (size_t j = 0; j < n; ++j) {
                if (seen[table_[j][i]]) throw input_error("column " + std::to_string(i) + " is not a permutation");
                seen[table_[j][i]] = 1;
            }
        }
        inv_.resize(n);
        for (size_t i = 0; i < n; ++i) {
            int j = 0;
            while (table_[i][j] != 0) ++j;
            if (table_[j][i] != 0) throw input_error("element " + std::to_string(i) + " has no two-sided inverse");
            inv_[i] = j;
        }
        check_associativity();
    }

    int order() const { return static_cast<int>(table_.size()); }
    int mul(int a, int b) const { return table_[a][b]; }
    int inv(int a) const { return inv_[a]; }
    const std::vector<std::vector<int>>& table() const { return table_; }
    const std::string& name() const { return name_; }

    int element_order(int a) const {
        int t = 1;
        int x = a;
        while (x != 0) {
            x = mul(x, a);
            ++t;
        }
        return t;
    }

private:
    void check_associativity() const {
        const int n = order();
        if (n <= 64) {
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int c = 0; c < n; ++c)
                        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                            throw input_error("associativity fails at (" + std::to_string(a) + "," +
                                              std::to_string(b) + "," + std::to_string(c) + ")");
            return;
        }
        std::mt19937_64 rng(1);
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int s = 0; s < 20000; ++s) {
            int a = pick(rng), b = pick(rng), c = pick(rng);
            if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                throw input_error("associativity fails at (" + std::to_string(a) + "," +
                                  std::to_string(b) + "," + std::to_string(c) + ")");
        }
    }

    std::vector<std::vector<int>> table_;
    std::vector<int> inv_;
    std::string name_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline bool same_group(const GroupPtr& a, const GroupPtr& b) {
    return a == b || (a && b && a->table() == b->table());
}

// --- constructors ------------------------------------------------------------

inline GroupPtr cyclic_group(int n) {
    if (n < 1) throw input_error("cyclic group order must be >= 1");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    return std::make_shared<FiniteGroup>(std::move(t), "C(" + std::to_string(n) + ")");
}

// (Z_p)^k with index = base-p digits, least significant digit first.
inline GroupPtr elementary_abelian_group(int p, int k) {
    if (p < 2 || k < 1) throw input_error("elementary abelian group needs p >= 2, k >= 1");
    long n = 1;
    for (int i = 0; i < k; ++i) {
        n *= p;
        if (n > 4096) throw input_error("elementary abelian group too large");
    }
    const int order = static_cast<int>(n);
    std::vector<std::vector<int>> t(order, std::vector<int>(order));
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) {
            int x = i, y = j, s = 0, w = 1;
            for (int d = 0; d < k; ++d) {
                s += ((x % p + y % p) % p) * w;
                x /= p;
                y /= p;
                w *= p;
            }
            t[i][j] = s;
        }
    return std::make_shared<FiniteGroup>(std::move(t),
                                         "E(" + std::to_string(p) + "," + std::to_string(k) + ")");
}

// Order 2n; element s*n + r stands for rot^r when s = 0, rot^r * flip when s = 1.
inline GroupPtr dihedral_group(int n) {
    if (n < 1) throw input_error("dihedral parameter must be >= 1");
    const int order = 2 * n;
    auto enc = [n](int r, int s) { return s * n + ((r % n) + n) % n; };
    std::vector<std::vector<int>> t(order, std::vector<int>(order));
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) {
            int r1 = i % n, s1 = i / n, r2 = j % n, s2 = j / n;
            // (rot^r1 flip^s1)(rot^r2 flip^s2) = rot^(r1 + r2*(-1)^s1) flip^(s1+s2)
            int r = s1 == 0 ? r1 + r2 : r1 - r2;
            t[i][j] = enc(r, (s1 + s2) % 2);
        }
    return std::make_shared<FiniteGroup>(std::move(t), "D(" + std::to_string(n) + ")");
}

// Permutations of {0..n-1} in lexicographic order; composition (fg)(x) = f(g(x)).
inline GroupPtr symmetric_group(int n) {
    if (n < 1 || n > 5) throw input_error("symmetric group supported for 1 <= n <= 5");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    auto index_of = [&](const std::vector<int>& q) {
        return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
    };
    const int order = static_cast<int>(perms.size());
    std::vector<std::vector<int>> t(order, std::vector<int>(order));
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) {
            std::vector<int> q(n);
            for (int x = 0; x < n; ++x) q[x] = perms[i][perms[j][x]];
            t[i][j] = index_of(q);
        }
    return std::make_shared<FiniteGroup>(std::move(t), "S" + std::to_string(n));
}

inline int product_index(int x, int y, int order2) { return x * order2 + y; }

inline GroupPtr product_group(const GroupPtr& g1, const GroupPtr& g2) {
    const int o1 = g1->order(), o2 = g2->order();
    std::vector<std::vector<int>> t(static_cast<size_t>(o1) * o2,
                                    std::vector<int>(static_cast<size_t>(o1) * o2));
    for (int x1 = 0; x1 < o1; ++x1)
        for (int y1 = 0; y1 < o2; ++y1)
            for (int x2 = 0; x2 < o1; ++x2)
                for (int y2 = 0; y2 < o2; ++y2)
                    t[product_index(x1, y1, o2)][product_index(x2, y2, o2)] =
                        product_index(g1->mul(x1, x2), g2->mul(y1, y2), o2);
    std::string name;
    if (!g1->name().empty() && !g2->name().empty()) name = g1->name() + "x" + g2->name();
    return std::make_shared<FiniteGroup>(std::move(t), std::move(name));
}

// --- subgroups ---------------------------------------------------------------

class Subgroup {
public:
    Subgroup(GroupPtr group, std::vector<int> elements)
        : group_(std::move(group)), elements_(std::move(elements)) {
        std::sort(elements_.begin(), elements_.end());
        elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
        for (int e : elements_)
            if (e < 0 || e >= group_->order()) throw input_error("subgroup element out of range");
        if (elements_.empty() || elements_[0] != 0) throw input_error("subgroup must contain the identity");
        for (int x : elements_) {
            if (!contains(group_->inv(x))) throw input_error("subgroup not closed under inverses");
            for (int y : elements_)
                if (!contains(group_->mul(x, y))) throw input_error("subgroup not closed under products");
        }
        if (group_->order() % static_cast<int>(elements_.size()) != 0)
            throw error("Lagrange violation in a validated subgroup");
    }

    const GroupPtr& group() const { return group_; }
    const std::vector<int>& elements() const { return elements_; }
    size_t size() const { return elements_.size(); }
    bool contains(int e) const {
        return std::binary_search(elements_.begin(), elements_.end(), e);
    }

    friend bool operator==(const Subgroup& a, const Subgroup& b) {
        return same_group(a.group_, b.group_) && a.elements_ == b.elements_;
    }

private:
    GroupPtr group_;
    std::vector<int> elements_;
};

inline Subgroup subgroup_closure(const GroupPtr& g, const std::vector<int>& seed) {
    std::vector<char> in(g->order(), 0);
    std::vector<int> elems;
    auto push = [&](int e) {
        if (e < 0 || e >= g->order()) throw input_error("generator index out of range");
        if (!in[e]) {
            in[e] = 1;
            elems.push_back(e);
        }
    };
    push(0);
    for (int s : seed) push(s);
    for (size_t i = 0; i < elems.size(); ++i) {
        push(g->inv(elems[i]));
        for (size_t j = 0; j <= i; ++j) {
            push(g->mul(elems[i], elems[j]));
            push(g->mul(elems[j], elems[i]));
        }
    }
    return Subgroup(g, std::move(elems));
}

inline bool is_normal(const Subgroup& m) {
    const GroupPtr& g = m.group();
    for (int x = 0; x < g->order(); ++x)
        for (int h : m.elements())
            if (!m.contains(g->mul(g->mul(x, h), g->inv(x)))) return false;
    return true;
}

inline Subgroup intersect_subgroups(const Subgroup& a, const Subgroup& b) {
    if (!same_group(a.group(), b.group())) throw input_error("subgroups of different groups");
    std::vector<int> out;
    std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(),
                          b.elements().end(), std::back_inserter(out));
    return Subgroup(a.group(), std::move(out));
}

inline Subgroup whole_group(const GroupPtr& g) {
    std::vector<int> all(g->order());
    for (int i = 0; i < g->order(); ++i) all[i] = i;
    return Subgroup(g, std::move(all));
}

// Every subgroup is reached by extending known subgroups one generator at a time.
inline std::vector<Subgroup> all_subgroups(const GroupPtr& g) {
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> work;
    auto add = [&](const Subgroup& s) {
        if (seen.insert(s.elements()).second) work.push_back(s.elements());
    };
    add(subgroup_closure(g, {}));
    while (!work.empty()) {
        std::vector<int> base = std::move(work.back());
        work.pop_back();
        for (int x = 0; x < g->order(); ++x) {
            if (std::binary_search(base.begin(), base.end(), x)) continue;
            std::vector<int> seed = base;
            seed.push_back(x);
            add(subgroup_closure(g, seed));
        }
    }
    std::vector<Subgroup> out;
    for (const auto& elems : seen) out.emplace_back(g, elems);
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.elements() < b.elements();
    });
    return out;
}

// --- covers ------------------------------------------------------------------

class GroupCover {
public:
    GroupCover(GroupPtr group, std::vector<Subgroup> members)
        : group_(std::move(group)), members_(std::move(members)) {
        for (const auto& m : members_) {
            if (!same_group(m.group(), group_)) throw input_error("cover member from a different group");
            if (m.size() == static_cast<size_t>(group_->order()))
                throw input_error("cover member is not a proper subgroup");
        }
        for (size_t i = 0; i < members_.size(); ++i)
            for (size_t j = i + 1; j < members_.size(); ++j)
                if (members_[i].elements() == members_[j].elements())
                    throw input_error("duplicate cover member");
    }

    const GroupPtr& group() const { return group_; }
    const std::vector<Subgroup>& members() const { return members_; }

private:
    GroupPtr group_;
    std::vector<Subgroup> members_;
};

struct MemberElementWitness {
    size_t member = 0;
    int element = 0;  // lies in this member and in no other
};

struct CoverVerdict {
    CoverVerdict(Subgroup intersection_, Subgroup core_)
        : intersection(std::move(intersection_)), core(std::move(core_)) {}

    bool is_cover = false;
    std::optional<int> uncovered;
    bool irredundant = false;
    std::vector<MemberElementWitness> witnesses;
    std::optional<size_t> redundant_member;
    bool maximal = false;
    std::optional<size_t> non_maximal_member;
    Subgroup intersection;
    Subgroup core;
    bool core_free = false;
    std::optional<std::string> classification;
};

inline Subgroup cover_intersection(const GroupCover& c) {
    Subgroup d = whole_group(c.group());
    for (const auto& m : c.members()) d = intersect_subgroups(d, m);
    return d;
}

inline Subgroup drop_one_intersection(const GroupCover& c, size_t j) {
    if (j >= c.members().size()) throw input_error("member index out of range");
    Subgroup d = whole_group(c.group());
    for (size_t i = 0; i < c.members().size(); ++i)
        if (i != j) d = intersect_subgroups(d, c.members()[i]);
    return d;
}

namespace detail {

inline std::optional<int> first_uncovered(const GroupCover& c) {
    for (int e = 0; e < c.group()->order(); ++e) {
        bool hit = false;
        for (const auto& m : c.members())
            if (m.contains(e)) {
                hit = true;
                break;
            }
        if (!hit) return e;
    }
    return std::nullopt;
}

struct PrivateElements {
    std::vector<MemberElementWitness> witnesses;
    std::optional<size_t> redundant_member;
};

inline PrivateElements private_elements(const GroupCover& c) {
    PrivateElements out;
    for (size_t i = 0; i < c.members().size(); ++i) {
        std::optional<int> priv;
        for (int e : c.members()[i].elements()) {
            bool elsewhere = false;
            for (size_t j = 0; j < c.members().size(); ++j) {
                if (j == i) continue;
                if (c.members()[j].contains(e)) {
                    elsewhere = true;
                    break;
                }
            }
            if (!elsewhere) {
                priv = e;
                break;
            }
        }
        if (!priv) {
            out.redundant_member = i;
            out.witnesses.clear();
            return out;
        }
        out.witnesses.push_back({i, *priv});
    }
    return out;
}

}  // namespace detail

// A member M is maximal iff adjoining any outside element generates the group.
inline bool is_maximal_subgroup(const Subgroup& m) {
    const GroupPtr& g = m.group();
    if (m.size() == static_cast<size_t>(g->order())) return false;
    for (int x = 0; x < g->order(); ++x) {
        if (m.contains(x)) continue;
        std::vector<int> seed = m.elements();
        seed.push_back(x);
        if (subgroup_closure(g, seed).size() != static_cast<size_t>(g->order())) return false;
    }
    return true;
}

inline Subgroup normal_core(const Subgroup& d) {
    const GroupPtr& g = d.group();
    Subgroup core = d;
    for (int x = 0; x < g->order(); ++x) {
        std::vector<int> conj;
        conj.reserve(d.size());
        for (int h : d.elements()) conj.push_back(g->mul(g->mul(g->inv(x), h), x));
        core = intersect_subgroups(core, Subgroup(g, std::move(conj)));
        if (core.size() == 1) break;
    }
    return core;
}

inline CoverVerdict verify_cover(const GroupCover& c) {
    Subgroup d = cover_intersection(c);
    Subgroup core = normal_core(d);
    CoverVerdict v(std::move(d), std::move(core));
    v.uncovered = detail::first_uncovered(c);
    v.is_cover = !v.uncovered.has_value();
    auto priv = detail::private_elements(c);
    v.irredundant = !priv.redundant_member.has_value();
    v.witnesses = std::move(priv.witnesses);
    v.redundant_member = priv.redundant_member;
    v.maximal = true;
    for (size_t i = 0; i < c.members().size(); ++i)
        if (!is_maximal_subgroup(c.members()[i])) {
            v.maximal = false;
            v.non_maximal_member = i;
            break;
        }
    v.core_free = v.core.size() == 1;
    if (v.is_cover && v.irredundant && v.maximal && v.core_free)
        v.classification = "C_" + std::to_string(c.members().size());
    return v;
}

// Order of the coset Ma in G/M; M must be normal and a outside M.
inline int coset_order(const GroupPtr& g, const Subgroup& m, int a) {
    if (!same_group(m.group(), g)) throw input_error("subgroup of a different group");
    if (a < 0 || a >= g->order()) throw input_error("element index out of range");
    if (!is_normal(m)) throw input_error("subgroup is not normal");
    if (m.contains(a))
        throw input_error("element lies in the subgroup: coset order 1 is degenerate here");
    int t = 1;
    int x = a;
    while (!m.contains(x)) {
        x = g->mul(x, a);
        ++t;
    }
    return t;
}

struct GroupComposeOptions {
    size_t i1 = 0;
    size_t i2 = 0;
    std::optional<int> a;  // default: first valid element outside C1[i1]
    std::optional<int> b;
};

namespace detail {

inline bool is_prime_int(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline void require_irredundant_cover(const GroupCover& c, const char* which) {
    if (auto u = first_uncovered(c))
        throw input_error(std::string(which) + " is not a cover: element " + std::to_string(*u) +
                          " is uncovered");
    if (auto p = private_elements(c); p.redundant_member)
        throw input_error(std::string(which) + " is not irredundant: member " +
                          std::to_string(*p.redundant_member) + " has no private element");
}

}  // namespace detail

// Theorem composition: replaces the distinguished pair (M1, N1) by the single
// member (M1 x N1)<(a,b)> and keeps all other members as M_i x G2, G1 x N_j.
inline GroupCover compose_covers(const GroupCover& c1, const GroupCover& c2,
                                 const GroupComposeOptions& opt = {}) {
    const GroupPtr& g1 = c1.group();
    const GroupPtr& g2 = c2.group();
    if (opt.i1 >= c1.members().size() || opt.i2 >= c2.members().size())
        throw input_error("distinguished index out of range");
    detail::require_irredundant_cover(c1, "first input");
    detail::require_irredundant_cover(c2, "second input");
    const Subgroup& m1 = c1.members()[opt.i1];
    const Subgroup& n1 = c2.members()[opt.i2];
    if (!is_normal(m1)) throw input_error("hypothesis violated: C1[i1] is not normal in G1");
    if (!is_normal(n1)) throw input_error("hypothesis violated: C2[i2] is not normal in G2");

    auto validate_a = [&](int a) {
        if (a < 0 || a >= g1->order()) throw input_error("element a out of range");
        if (m1.contains(a)) throw input_error("hypothesis violated: a lies in C1[i1]");
        return coset_order(g1, m1, a);
    };
    auto validate_b = [&](int b) {
        if (b < 0 || b >= g2->order()) throw input_error("element b out of range");
        if (n1.contains(b)) throw input_error("hypothesis violated: b lies in C2[i2]");
        return coset_order(g2, n1, b);
    };
    auto first_b_of_order = [&](int p) -> std::optional<int> {
        for (int b = 0; b < g2->order(); ++b)
            if (!n1.contains(b) && coset_order(g2, n1, b) == p) return b;
        return std::nullopt;
    };

    int a, b, p;
    if (opt.a && opt.b) {
        a = *opt.a;
        b = *opt.b;
        p = validate_a(a);
        int pb = validate_b(b);
        if (p != pb)
            throw input_error("hypothesis violated: coset orders differ (" + std::to_string(p) +
                              " vs " + std::to_string(pb) + ")");
        if (!detail::is_prime_int(p))
            throw input_error("hypothesis violated: coset order " + std::to_string(p) +
                              " is composite");
    } else if (opt.a) {
        a = *opt.a;
        p = validate_a(a);
        if (!detail::is_prime_int(p))
            throw input_error("hypothesis violated: coset order " + std::to_string(p) +
                              " is composite");
        auto found = first_b_of_order(p);
        if (!found)
            throw input_error("no element of G2 has coset order " + std::to_string(p) +
                              " modulo C2[i2]");
        b = *found;
    } else {
        std::optional<int> fixed_b_order;
        if (opt.b) {
            fixed_b_order = validate_b(*opt.b);
            if (!detail::is_prime_int(*fixed_b_order))
                throw input_error("hypothesis violated: coset order " +
                                  std::to_string(*fixed_b_order) + " is composite");
        }
        std::optional<int> chosen_a, chosen_b;
        for (int ca = 0; ca < g1->order() && !chosen_a; ++ca) {
            if (m1.contains(ca)) continue;
            int cp = coset_order(g1, m1, ca);
            if (!detail::is_prime_int(cp)) continue;
            if (fixed_b_order) {
                if (cp != *fixed_b_order) continue;
                chosen_a = ca;
                chosen_b = *opt.b;
            } else if (auto cb = first_b_of_order(cp)) {
                chosen_a = ca;
                chosen_b = cb;
            }
        }
        if (!chosen_a) throw input_error("no valid (a, b) pair with equal prime coset orders exists");
        a = *chosen_a;
        b = *chosen_b;
        p = coset_order(g1, m1, a);
    }
    (void)p;

    GroupPtr prod = product_group(g1, g2);
    const int o2 = g2->order();
    std::vector<Subgroup> members;
    std::vector<int> seed;
    for (int x : m1.elements())
        for (int y : n1.elements()) seed.push_back(product_index(x, y, o2));
    seed.push_back(product_index(a, b, o2));
    members.push_back(subgroup_closure(prod, seed));
    for (size_t i = 0; i < c1.members().size(); ++i) {
        if (i == opt.i1) continue;
        std::vector<int> elems;
        for (int x : c1.members()[i].elements())
            for (int y = 0; y < o2; ++y) elems.push_back(product_index(x, y, o2));
        members.emplace_back(prod, std::move(elems));
    }
    for (size_t j = 0; j < c2.members().size(); ++j) {
        if (j == opt.i2) continue;
        std::vector<int> elems;
        for (int x = 0; x < g1->order(); ++x)
            for (int y : c2.members()[j].elements()) elems.push_back(product_index(x, y, o2));
        members.emplace_back(prod, std::move(elems));
    }
    GroupCover out(prod, std::move(members));

    // The theorem gives D1 two ways (all members vs all but the distinguished
    // one); compute both and insist they agree instead of assuming the lemma.
    const Subgroup d1 = cover_intersection(c1);
    const Subgroup d2 = cover_intersection(c2);
    if (!(d1 == drop_one_intersection(c1, opt.i1)) || !(d2 == drop_one_intersection(c2, opt.i2)))
        throw error("drop-one intersection identity failed on an irredundant input");

    if (detail::first_uncovered(out))
        throw error("composition postcondition failed: output is not a cover");
    if (detail::private_elements(out).redundant_member)
        throw error("composition postcondition failed: output is not irredundant");
    std::vector<int> expected;
    for (int x : d1.elements())
        for (int y : d2.elements()) expected.push_back(product_index(x, y, o2));
    std::sort(expected.begin(), expected.end());
    if (cover_intersection(out).elements() != expected)
        throw error("composition postcondition failed: intersection is not D1 x D2");
    return out;
}

}  // namespace qcover
