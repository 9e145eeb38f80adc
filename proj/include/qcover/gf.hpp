#pragma once

// Exact arithmetic in GF(p^e). Elements are coefficient vectors over GF(p),
// constant term first; extension fields reduce modulo a monic irreducible
// modulus polynomial.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qcover/errors.hpp"

namespace qcover {

// A field element: exactly e residues mod p, coefficient of x^0 first.
// Comparison is lexicographic from the constant term, which is the canonical
// element order used everywhere (enumeration, normal forms, search).
struct FieldElem {
    std::vector<int> coeffs;

    friend bool operator==(const FieldElem&, const FieldElem&) = default;
    friend auto operator<=>(const FieldElem& a, const FieldElem& b) {
        return std::lexicographical_compare_three_way(
            a.coeffs.begin(), a.coeffs.end(), b.coeffs.begin(), b.coeffs.end());
    }
};

namespace detail {

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Dense polynomials over GF(p), constant term first, not necessarily trimmed.
inline int poly_degree(const std::vector<int>& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[static_cast<size_t>(i)] != 0) return i;
    return -1;
}

inline std::vector<int> poly_mul(const std::vector<int>& f, const std::vector<int>& g, int p) {
    std::vector<int> r(f.size() + g.size() - 1, 0);
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (size_t j = 0; j < g.size(); ++j)
            r[i + j] = static_cast<int>((r[i + j] + static_cast<long>(f[i]) * g[j]) % p);
    }
    return r;
}

// Remainder of f modulo a monic divisor g.
inline std::vector<int> poly_mod(std::vector<int> f, const std::vector<int>& g, int p) {
    const int dg = poly_degree(g);
    for (int i = poly_degree(f); i >= dg; --i) {
        const int c = f[static_cast<size_t>(i)];
        if (c == 0) continue;
        for (int j = 0; j <= dg; ++j) {
            auto& fi = f[static_cast<size_t>(i - dg + j)];
            fi = static_cast<int>(((fi - static_cast<long>(c) * g[static_cast<size_t>(j)]) % p + p) % p);
        }
    }
    f.resize(static_cast<size_t>(dg) > f.size() ? f.size() : static_cast<size_t>(dg));
    return f;
}

// Advances a base-p digit tuple in lexicographic order (last digit fastest).
inline bool next_tuple(std::vector<int>& t, int p) {
    for (size_t i = t.size(); i-- > 0;) {
        if (++t[i] < p) return true;
        t[i] = 0;
    }
    return false;
}

}  // namespace detail

// True iff the monic polynomial f (constant first) of degree >= 1 has no
// monic divisor of degree in [1, deg(f)/2].
inline bool is_irreducible(const std::vector<int>& f, int p) {
    const int deg = detail::poly_degree(f);
    if (deg < 1) return false;
    for (int d = 1; 2 * d <= deg; ++d) {
        std::vector<int> g(static_cast<size_t>(d) + 1, 0);
        g[static_cast<size_t>(d)] = 1;
        std::vector<int> low(static_cast<size_t>(d), 0);
        do {
            std::copy(low.begin(), low.end(), g.begin());
            if (detail::poly_degree(detail::poly_mod(f, g, p)) < 0) return false;
        } while (detail::next_tuple(low, p));
    }
    return true;
}

// Lexicographically smallest monic irreducible of degree e over GF(p),
// coefficients compared from the constant term upward. For e = 1 this is
// the polynomial x, the convention used for prime fields.
inline std::vector<int> find_irreducible(int p, int e) {
    if (!detail::is_prime(p)) throw input_error("characteristic must be prime, got " + std::to_string(p));
    if (e < 1) throw input_error("extension degree must be >= 1");
    if (e == 1) return {0, 1};
    std::vector<int> f(static_cast<size_t>(e) + 1, 0);
    f[static_cast<size_t>(e)] = 1;
    std::vector<int> low(static_cast<size_t>(e), 0);
    do {
        std::copy(low.begin(), low.end(), f.begin());
        if (is_irreducible(f, p)) return f;
    } while (detail::next_tuple(low, p));
    throw error("no irreducible polynomial found");  // unreachable
}

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// GF(p^e) with a fixed modulus. Immutable; all operations are pure.
class Field {
public:
    Field(int p, int e, std::vector<int> modulus) : p_(p), e_(e), modulus_(std::move(modulus)) {
        if (!detail::is_prime(p_)) throw input_error("characteristic must be prime, got " + std::to_string(p_));
        if (e_ < 1) throw input_error("extension degree must be >= 1");
        q_ = 1;
        for (int i = 0; i < e_; ++i) {
            q_ *= p_;
            if (q_ > 65536) throw input_error("field order p^e exceeds the supported limit 2^16");
        }
        if (modulus_.size() != static_cast<size_t>(e_) + 1)
            throw input_error("modulus must have degree e = " + std::to_string(e_));
        for (int c : modulus_)
            if (c < 0 || c >= p_) throw input_error("modulus coefficient out of range [0, p)");
        if (modulus_.back() != 1) throw input_error("modulus must be monic");
        if (e_ == 1) {
            if (modulus_ != std::vector<int>{0, 1})
                throw input_error("prime fields use the modulus x");
        } else if (!is_irreducible(modulus_, p_)) {
            throw input_error("modulus is reducible over GF(" + std::to_string(p_) + ")");
        }
    }

    static FieldPtr make(int p, int e, std::vector<int> modulus) {
        return std::make_shared<const Field>(p, e, std::move(modulus));
    }
    static FieldPtr make(int p, int e) { return make(p, e, find_irreducible(p, e)); }

    // Splits q into p^e. The modulus, if absent, is the default irreducible.
    static FieldPtr of_order(long q, const std::vector<int>* modulus = nullptr) {
        if (q < 2) throw input_error("field order must be a prime power >= 2");
        long p = 2;
        while (q % p != 0) {
            ++p;
            if (p * p > q) { p = q; break; }
        }
        int e = 0;
        long m = q;
        while (m > 1) {
            if (m % p != 0) throw input_error(std::to_string(q) + " is not a prime power");
            m /= p;
            ++e;
        }
        if (modulus) return make(static_cast<int>(p), e, *modulus);
        return make(static_cast<int>(p), e);
    }

    int p() const { return p_; }
    int ext_degree() const { return e_; }
    long order() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    friend bool operator==(const Field& a, const Field& b) {
        return a.p_ == b.p_ && a.e_ == b.e_ && a.modulus_ == b.modulus_;
    }

    FieldElem zero() const { return {std::vector<int>(static_cast<size_t>(e_), 0)}; }
    FieldElem one() const {
        auto z = zero();
        z.coeffs[0] = 1;
        return z;
    }
    bool is_zero(const FieldElem& x) const {
        return std::all_of(x.coeffs.begin(), x.coeffs.end(), [](int c) { return c == 0; });
    }

    void check(const FieldElem& x) const {
        if (x.coeffs.size() != static_cast<size_t>(e_))
            throw input_error("malformed element: expected " + std::to_string(e_) + " coefficients");
        for (int c : x.coeffs)
            if (c < 0 || c >= p_) throw input_error("malformed element: coefficient out of range [0, p)");
    }

    FieldElem element(std::vector<int> coeffs) const {
        FieldElem x{std::move(coeffs)};
        check(x);
        return x;
    }

    FieldElem add(const FieldElem& x, const FieldElem& y) const {
        check(x);
        check(y);
        FieldElem r = x;
        for (int i = 0; i < e_; ++i) r.coeffs[static_cast<size_t>(i)] = (r.coeffs[static_cast<size_t>(i)] + y.coeffs[static_cast<size_t>(i)]) % p_;
        return r;
    }
    FieldElem neg(const FieldElem& x) const {
        check(x);
        FieldElem r = x;
        for (auto& c : r.coeffs) c = (p_ - c) % p_;
        return r;
    }
    FieldElem sub(const FieldElem& x, const FieldElem& y) const { return add(x, neg(y)); }

    FieldElem mul(const FieldElem& x, const FieldElem& y) const {
        check(x);
        check(y);
        auto prod = detail::poly_mul(x.coeffs, y.coeffs, p_);
        auto red = detail::poly_mod(std::move(prod), modulus_, p_);
        red.resize(static_cast<size_t>(e_), 0);
        return {std::move(red)};
    }

    FieldElem scale(int k, const FieldElem& x) const {
        check(x);
        k %= p_;
        if (k < 0) k += p_;
        FieldElem r = x;
        for (auto& c : r.coeffs) c = static_cast<int>((static_cast<long>(c) * k) % p_);
        return r;
    }

    // x^(q-2); the unique y with mul(x, y) = 1.
    FieldElem inv(const FieldElem& x) const {
        check(x);
        if (is_zero(x)) throw input_error("division by zero in GF(" + std::to_string(q_) + ")");
        FieldElem result = one();
        FieldElem base = x;
        long n = q_ - 2;
        while (n > 0) {
            if (n & 1) result = mul(result, base);
            base = mul(base, base);
            n >>= 1;
        }
        return result;
    }

    // All q elements exactly once, lexicographic on coefficient lists
    // (constant term first), zero first.
    std::vector<FieldElem> elements() const {
        std::vector<FieldElem> out;
        out.reserve(static_cast<size_t>(q_));
        std::vector<int> t(static_cast<size_t>(e_), 0);
        do {
            out.push_back({t});
        } while (detail::next_tuple(t, p_));
        return out;
    }

    std::string format(const FieldElem& x) const {
        check(x);
        std::string s;
        for (int i = 0; i < e_; ++i) {
            if (i) s += ',';
            s += std::to_string(x.coeffs[static_cast<size_t>(i)]);
        }
        return s;
    }

    FieldElem parse(std::string_view text) const {
        std::vector<int> coeffs;
        size_t start = 0;
        while (true) {
            size_t comma = text.find(',', start);
            std::string_view tok = text.substr(start, comma == std::string_view::npos ? comma : comma - start);
            if (tok.empty()) throw input_error("malformed element '" + std::string(text) + "'");
            int value = 0;
            for (char ch : tok) {
                if (ch < '0' || ch > '9') throw input_error("malformed element '" + std::string(text) + "'");
                value = value * 10 + (ch - '0');
                if (value >= 65536) throw input_error("malformed element '" + std::string(text) + "'");
            }
            coeffs.push_back(value);
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        return element(std::move(coeffs));
    }

private:
    int p_;
    int e_;
    long q_;
    std::vector<int> modulus_;
};

inline bool same_field(const FieldPtr& a, const FieldPtr& b) {
    return a == b || (a && b && *a == *b);
}

}  // namespace qcover
