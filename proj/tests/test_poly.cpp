/*
   Copyright 2026 The pqdigits authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pqdigits/poly.hpp"
#include "pqdigits/rational.hpp"

using namespace pqdigits;

namespace {

Poly random_poly(const FieldSpecPtr& f, int max_deg, std::mt19937& rng) {
    std::uniform_int_distribution<int> ddist(-1, max_deg);
    int d = ddist(rng);
    if (d < 0) return Poly::zero(f);
    std::vector<FieldElement> c;
    std::uniform_int_distribution<std::uint64_t> cdist(0, f->size() - 1);
    for (int i = 0; i < d; ++i) c.push_back(f->from_order_index(cdist(rng)));
    std::uniform_int_distribution<std::uint64_t> lead(1, f->size() - 1);
    c.push_back(f->from_order_index(lead(rng)));
    return Poly::from_coeffs(f, c);
}

}  // namespace

TEST_CASE("degree and basic arithmetic") {
    auto f = FieldSpec::make_prime(2);
    Poly x = Poly::x(f);
    CHECK(Poly::zero(f).degree() == kNegInfDeg);
    CHECK(Poly::one(f).degree() == 0);
    CHECK((x * x + x).degree() == 2);
    CHECK((x + x).is_zero());
    CHECK(Poly::x_pow(f, 5) == poly_pow(x, 5));
    CHECK(x.shifted_up(3) == Poly::x_pow(f, 4));
}

TEST_CASE("parse and format round trip") {
    auto f2 = FieldSpec::make_prime(2);
    auto f3 = FieldSpec::make_prime(3);
    for (const char* s : {"0", "1", "X", "X+1", "X^2+X+1", "X^5+X^2"}) {
        CHECK(format_poly(parse_poly(f2, s)) == s);
    }
    for (const char* s : {"2*X^3+X+2", "2", "X^2+2*X"}) {
        CHECK(format_poly(parse_poly(f3, s)) == s);
    }
    auto f4 = parse_field_spec("2^2:X^2+X+1");
    for (const char* s : {"[1,1]*X+[1,0]", "X^2+[1,1]", "[0,1]"}) {
        CHECK(format_poly(parse_poly(f4, s)) == s);
    }
}

TEST_CASE("parse accepts whitespace and repeated terms") {
    auto f3 = FieldSpec::make_prime(3);
    CHECK(parse_poly(f3, " X^2 + 2*X + 1 ") == parse_poly(f3, "X^2+2*X+1"));
    CHECK(parse_poly(f3, "X+X") == parse_poly(f3, "2*X"));
    CHECK(parse_poly(f3, "X+X+X").is_zero());
    CHECK(parse_poly(f3, "2*X^0") == Poly::constant(f3, f3->from_order_index(2)));
}

TEST_CASE("parse rejects malformed input") {
    auto f2 = FieldSpec::make_prime(2);
    CHECK_THROWS_AS(parse_poly(f2, ""), ParseError);
    CHECK_THROWS_AS(parse_poly(f2, "X^"), ParseError);
    CHECK_THROWS_AS(parse_poly(f2, "2*X"), ParseError);  // coefficient 2 out of range mod 2
    CHECK_THROWS_AS(parse_poly(f2, "X+"), ParseError);
    CHECK_THROWS_AS(parse_poly(f2, "Y"), ParseError);
    CHECK_THROWS_AS(parse_poly(f2, "X^9999"), ParseError);  // exponent cap
    try {
        parse_poly(f2, "X+Y");
    } catch (const ParseError& e) {
        CHECK(e.position() == 2);
    }
}

TEST_CASE("division reconstructs the dividend") {
    std::mt19937 rng(987);
    for (const char* fs : {"2", "3", "5", "2^2:X^2+X+1"}) {
        auto f = parse_field_spec(fs);
        for (int iter = 0; iter < 200; ++iter) {
            Poly a = random_poly(f, 8, rng);
            Poly b = random_poly(f, 4, rng);
            if (b.is_zero()) continue;
            auto [q, r] = poly_divrem(a, b);
            CHECK(q * b + r == a);
            CHECK(r.degree() < b.degree());
        }
    }
    auto f2 = FieldSpec::make_prime(2);
    CHECK_THROWS_AS(poly_divrem(Poly::one(f2), Poly::zero(f2)), std::domain_error);
}

TEST_CASE("gcd is monic and divides both inputs") {
    auto f2 = FieldSpec::make_prime(2);
    Poly xp1 = parse_poly(f2, "X+1");
    Poly a = xp1 * xp1 * parse_poly(f2, "X^2+X+1");
    Poly b = xp1 * Poly::x(f2);
    CHECK(poly_gcd(a, b) == xp1);
    std::mt19937 rng(11);
    auto f3 = FieldSpec::make_prime(3);
    for (int iter = 0; iter < 100; ++iter) {
        Poly u = random_poly(f3, 5, rng), v = random_poly(f3, 5, rng);
        if (u.is_zero() && v.is_zero()) continue;
        Poly g = poly_gcd(u, v);
        CHECK(g.leading() == f3->one());
        if (!u.is_zero()) CHECK(poly_mod(u, g).is_zero());
        if (!v.is_zero()) CHECK(poly_mod(v, g).is_zero());
    }
}

TEST_CASE("index enumeration is a bijection on an initial segment") {
    for (const char* fs : {"2", "3"}) {
        auto f = parse_field_spec(fs);
        Poly prev = Poly::zero(f);
        for (std::uint64_t n = 0; n < 10000; ++n) {
            Poly w = index_to_poly(f, n);
            CHECK(poly_to_index(w) == n);
            if (n > 0) {
                CHECK(poly_less(prev, w));
                prev = w;
            }
        }
    }
}

TEST_CASE("ordering ranks by degree then lexicographically from the top") {
    auto f2 = FieldSpec::make_prime(2);
    std::vector<Poly> expect = {parse_poly(f2, "0"), parse_poly(f2, "1"), parse_poly(f2, "X"),
                                parse_poly(f2, "X+1"), parse_poly(f2, "X^2")};
    for (std::size_t i = 0; i + 1 < expect.size(); ++i) {
        CHECK(poly_less(expect[i], expect[i + 1]));
        CHECK_FALSE(poly_less(expect[i + 1], expect[i]));
    }
    CHECK_FALSE(poly_less(expect[2], expect[2]));
}

TEST_CASE("rational functions reduce to lowest terms with monic denominator") {
    auto f3 = FieldSpec::make_prime(3);
    Poly num = parse_poly(f3, "X^2+2*X"), den = parse_poly(f3, "2*X");
    RationalFunction r(num, den);
    CHECK(r.den() == Poly::one(f3));
    CHECK(r.num() == parse_poly(f3, "2*X+1"));
    CHECK(r.is_polynomial());
    RationalFunction s(parse_poly(f3, "1"), parse_poly(f3, "X"));
    CHECK_FALSE(s.is_polynomial());
    CHECK((s * RationalFunction(parse_poly(f3, "X"))) == RationalFunction(Poly::one(f3)));
    CHECK_THROWS_AS(RationalFunction(num, Poly::zero(f3)), std::domain_error);
}

TEST_CASE("rational arithmetic and powers") {
    auto f2 = FieldSpec::make_prime(2);
    RationalFunction base(parse_poly(f2, "X^2+1"), parse_poly(f2, "X"));
    RationalFunction one(Poly::one(f2));
    CHECK(base.times_pow(base, -1) == one);
    CHECK(one.times_pow(base, 3) == base * base * base);
    CHECK((base - base).is_zero());
    CHECK(base / base == one);
    CHECK((base + base).is_zero());
    CHECK(base.inverse() * base == one);
    CHECK_THROWS_AS(base / RationalFunction(Poly::zero(f2)), std::domain_error);
}
