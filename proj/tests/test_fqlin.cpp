#include <catch2/catch_amalgamated.hpp>

#include "qcover/fqlin.hpp"

using namespace qcover;

namespace {

Vector vec(const FieldPtr& f, std::initializer_list<int> scalars) {
    std::vector<FieldElem> e;
    for (int c : scalars) e.push_back(f->element({c}));
    return make_vector(f, std::move(e));
}

}  // namespace

TEST_CASE("vector arithmetic over GF(3)") {
    auto f = Field::make(3, 1);
    CHECK(vec_add(vec(f, {1, 2, 0}), vec(f, {2, 2, 1})) == vec(f, {0, 1, 1}));
    CHECK(vec_scale(f->element({2}), vec(f, {1, 2, 0})) == vec(f, {2, 1, 0}));
    CHECK(dot(vec(f, {1, 2}), vec(f, {2, 2})) == f->zero());
    CHECK(dot(vec(f, {1, 2}), vec(f, {1, 2})) == f->element({2}));
}

TEST_CASE("zero vector and mismatch guards") {
    auto f = Field::make(3, 1);
    auto g = Field::make(2, 1);
    CHECK(is_zero(zero_vector(f, 4)));
    CHECK_FALSE(is_zero(vec(f, {0, 0, 1})));
    CHECK_THROWS_AS(vec_add(vec(f, {1, 2}), vec(f, {1, 2, 0})), input_error);
    CHECK_THROWS_AS(dot(vec(f, {1, 0}), vec(g, {1, 0})), input_error);
    CHECK_THROWS_AS(make_vector(f, {f->element({1}), FieldElem{{7}}}), input_error);
}

TEST_CASE("vector text form round-trips") {
    auto f = Field::make(2, 2);
    Vector v = make_vector(f, {f->element({1, 0}), f->element({0, 1})});
    CHECK(format_vector(v) == "1,0;0,1");
    CHECK(parse_vector(f, "1,0;0,1") == v);
    CHECK(parse_vector(f, "1,0:0,1", ':') == v);
    CHECK_THROWS_AS(parse_vector(f, "1,0;;0,1"), input_error);
    CHECK_THROWS_AS(parse_vector(f, ""), input_error);

    auto g = Field::make(5, 1);
    Vector w = vec(g, {4, 0, 3});
    CHECK(parse_vector(g, format_vector(w)) == w);
}

TEST_CASE("rref produces the canonical basis") {
    auto f = Field::make(2, 1);
    auto s = rref(f, 3, {vec(f, {1, 1, 0}), vec(f, {0, 1, 1}), vec(f, {1, 0, 1})});
    REQUIRE(s.rank() == 2);
    CHECK(s.basis()[0] == vec(f, {1, 0, 1}));
    CHECK(s.basis()[1] == vec(f, {0, 1, 1}));
    CHECK(s.ambient_dim() == 3);

    // span invariance: scaled generators give the identical basis
    auto g = Field::make(3, 1);
    CHECK(rref(g, 3, {vec(g, {1, 2, 0})}) == rref(g, 3, {vec(g, {2, 1, 0})}));

    // duplicates and zero rows collapse
    auto t = rref(f, 3, {vec(f, {1, 1, 0}), vec(f, {1, 1, 0}), vec(f, {0, 0, 0})});
    CHECK(t.rank() == 1);
    CHECK(t.basis()[0] == vec(f, {1, 1, 0}));

    CHECK(rref(f, 3, {}).rank() == 0);
    CHECK_THROWS_AS(rref(f, 3, {vec(f, {1, 1})}), input_error);
}

TEST_CASE("membership by elimination") {
    auto f = Field::make(2, 1);
    auto s = rref(f, 3, {vec(f, {1, 0, 1}), vec(f, {0, 1, 1})});
    CHECK(contains(s, vec(f, {1, 0, 1})));
    CHECK(contains(s, vec(f, {1, 1, 0})));
    CHECK(contains(s, vec(f, {0, 0, 0})));
    CHECK_FALSE(contains(s, vec(f, {0, 0, 1})));
    CHECK_FALSE(contains(s, vec(f, {1, 1, 1})));
    CHECK_THROWS_AS(contains(s, vec(f, {1, 1})), input_error);

    CHECK(contains(full_space(f, 3), vec(f, {1, 0, 1})));
    CHECK_FALSE(contains(zero_subspace(f, 3), vec(f, {1, 0, 1})));
    CHECK(contains(zero_subspace(f, 3), vec(f, {0, 0, 0})));
}

TEST_CASE("orthogonal complement under the standard dot product") {
    auto f = Field::make(2, 1);
    auto s = rref(f, 3, {vec(f, {1, 1, 0})});
    auto c = orth_complement(s);
    CHECK(c == rref(f, 3, {vec(f, {1, 1, 0}), vec(f, {0, 0, 1})}));
    CHECK(c.rank() == 2);

    // every pair is orthogonal
    for (const auto& a : s.basis())
        for (const auto& b : c.basis()) CHECK(f->is_zero(dot(a, b)));

    // characteristic 2 allows self-orthogonal lines
    auto line = rref(f, 2, {vec(f, {1, 1})});
    CHECK(orth_complement(line) == line);

    CHECK(orth_complement(zero_subspace(f, 3)) == full_space(f, 3));
    CHECK(orth_complement(full_space(f, 3)) == zero_subspace(f, 3));
}

TEST_CASE("complement is an involution and ranks add up") {
    for (long q : {2L, 3L, 4L}) {
        auto f = Field::of_order(q);
        const size_t dim = 3;
        std::vector<Subspace> samples = {
            zero_subspace(f, dim),
            full_space(f, dim),
            rref(f, dim, {make_vector(f, {f->one(), f->one(), f->zero()})}),
            rref(f, dim, {make_vector(f, {f->one(), f->zero(), f->one()}),
                          make_vector(f, {f->zero(), f->one(), f->one()})}),
        };
        for (const auto& s : samples) {
            auto c = orth_complement(s);
            CHECK(s.rank() + c.rank() == dim);
            CHECK(orth_complement(c) == s);
        }
    }
}

TEST_CASE("block product of subspaces") {
    auto f = Field::make(2, 1);
    auto a = rref(f, 2, {vec(f, {1, 0})});
    auto b = rref(f, 2, {vec(f, {1, 1})});
    auto p = product_subspace(a, b);
    CHECK(p.ambient_dim() == 4);
    CHECK(p.rank() == 2);
    CHECK(p.basis()[0] == vec(f, {1, 0, 0, 0}));
    CHECK(p.basis()[1] == vec(f, {0, 0, 1, 1}));

    // elements are exactly the concatenated pairs
    auto elems = subspace_elements(p);
    REQUIRE(elems.size() == 4);
    for (const auto& x : subspace_elements(a))
        for (const auto& y : subspace_elements(b)) {
            std::vector<FieldElem> e = x.entries;
            e.insert(e.end(), y.entries.begin(), y.entries.end());
            CHECK(std::binary_search(elems.begin(), elems.end(), make_vector(f, std::move(e))));
        }
}

TEST_CASE("linear extension") {
    auto f = Field::make(2, 1);
    auto w = rref(f, 3, {vec(f, {1, 0, 0})});
    auto e = extend_linear(w, vec(f, {0, 1, 0}));
    CHECK(e.rank() == 2);
    CHECK(e == rref(f, 3, {vec(f, {1, 0, 0}), vec(f, {0, 1, 0})}));
    CHECK(extend_linear(w, vec(f, {1, 0, 0})) == w);
    CHECK_THROWS_AS(extend_linear(w, vec(f, {1, 0})), input_error);
}

TEST_CASE("subspace element enumeration is sorted and guarded") {
    auto f = Field::make(3, 1);
    auto s = rref(f, 2, {vec(f, {1, 2})});
    auto elems = subspace_elements(s);
    REQUIRE(elems.size() == 3);
    CHECK(elems[0] == vec(f, {0, 0}));
    CHECK(elems[1] == vec(f, {1, 2}));
    CHECK(elems[2] == vec(f, {2, 1}));
    CHECK(std::is_sorted(elems.begin(), elems.end()));

    CHECK(subspace_elements(full_space(f, 2)).size() == 9);
    CHECK_THROWS_AS(subspace_elements(full_space(f, 2), 8), resource_limit_error);
}

TEST_CASE("cyclic extension over a prime field is the linear one") {
    auto f = Field::make(3, 1);
    auto w = rref(f, 3, {vec(f, {1, 0, 2})});
    auto span = extend_cyclic(w, vec(f, {0, 1, 1}));
    CHECK(span.fq_subspace);
    REQUIRE(span.subspace.has_value());
    CHECK(*span.subspace == extend_linear(w, vec(f, {0, 1, 1})));
    CHECK(span.elements.size() == 9);
    CHECK(std::is_sorted(span.elements.begin(), span.elements.end()));
}

TEST_CASE("cyclic extension over GF(4) is additive only") {
    auto f = Field::make(2, 2);
    const FieldElem x = f->element({0, 1});

    // p copies of v on top of W: 2 * |W| elements, not scalar stable
    auto w0 = zero_subspace(f, 1);
    Vector one = make_vector(f, {f->one()});
    auto span = extend_cyclic(w0, one);
    CHECK_FALSE(span.fq_subspace);
    CHECK_FALSE(span.subspace.has_value());
    REQUIRE(span.elements.size() == 2);
    CHECK(span.elements[0] == zero_vector(f, 1));
    CHECK(span.elements[1] == one);
    // the linear extension is strictly bigger
    CHECK(subspace_elements(extend_linear(w0, one)).size() == 4);

    auto w = rref(f, 2, {make_vector(f, {f->one(), f->zero()})});
    auto s2 = extend_cyclic(w, make_vector(f, {f->zero(), f->one()}));
    CHECK_FALSE(s2.fq_subspace);
    CHECK(s2.elements.size() == 8);  // p * |W|

    // a vector already inside W keeps the subspace structure
    auto s3 = extend_cyclic(w, make_vector(f, {x, f->zero()}));
    CHECK(s3.fq_subspace);
    REQUIRE(s3.subspace.has_value());
    CHECK(*s3.subspace == w);
    CHECK(s3.elements.size() == 4);
}
