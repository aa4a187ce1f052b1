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

#include <optional>
#include <string>
#include <vector>

#include "pqdigits/cone.hpp"
#include "pqdigits/digit_system.hpp"
#include "pqdigits/laurent.hpp"

using namespace pqdigits;

namespace {

DigitSystem f2_system() {
    auto f = FieldSpec::make_prime(2);
    return DigitSystem(parse_poly(f, "X^2+1"), parse_poly(f, "X"));
}

DigitSystem f3_system() {
    auto f = FieldSpec::make_prime(3);
    return DigitSystem(parse_poly(f, "X^2+2*X"), parse_poly(f, "X+1"));
}

}  // namespace

TEST_CASE("f embeds with its two anchors") {
    DigitSystem ds = f2_system();
    ConeSeries f1 = cone_f(ds, Cone::A1);
    CHECK(f1.anchor() == std::pair<int, int>{0, 2});
    CHECK(f1.supported_in_declared_cone());
    CHECK(f1.exact());
    ConeSeries f2 = cone_f(ds, Cone::A2);
    CHECK(f2.anchor() == std::pair<int, int>{1, 1});
    CHECK(f2.supported_in_declared_cone());

    // Qb - P over F_2 with P = X^2+1, Q = X: terms (1,1), (0,2), (0,0).
    auto one = ds.spec()->one();
    CHECK(f1.coeff(1, 1) == one);
    CHECK(f1.coeff(0, 2) == one);
    CHECK(f1.coeff(0, 0) == one);
    CHECK(f1.terms().size() == 3);

    // The b-floor keeps every nonnegative b-exponent, so all of f = Qb - P
    // (supported at columns 0 and 1) lands in the floor part.
    auto [fl, fr] = floor_frac_b(f2);
    CHECK(fl.same_terms(f2));
    CHECK(fr.terms().empty());
    // The Q-anchored inverse lives strictly at negative columns.
    auto [il, ir] = floor_frac_b(inv_f(ds, Cone::A2, 10));
    CHECK(il.terms().empty());
    CHECK(ir.same_terms(inv_f(ds, Cone::A2, 10)));
}

TEST_CASE("grading functionals match the cone generators") {
    DigitSystem ds = f3_system();  // r = 1
    ConeSeries a1 = cone_f(ds, Cone::A1);
    ConeSeries a2 = cone_f(ds, Cone::A2);
    // A1 generators (0,-1) and (1,-r) both grade to 1.
    CHECK(a1.ord_of(0, -1) == 1);
    CHECK(a1.ord_of(1, -1) == 1);
    // A2 generators (0,-1) and (-1,r) both grade to 1.
    CHECK(a2.ord_of(0, -1) == 1);
    CHECK(a2.ord_of(-1, 1) == 1);
    CHECK(a1.ord_of(0, 0) == 0);
    CHECK(a2.ord_of(0, 0) == 0);
}

TEST_CASE("geometric inverses of f are one-sided units") {
    for (const DigitSystem& ds : {f2_system(), f3_system()}) {
        auto f = ds.spec();
        int m = ds.deg_p(), n = ds.deg_q(), r = ds.r_exp();

        ConeSeries invp = inv_f(ds, Cone::A1, 40);
        CHECK(invp.order() == 40);
        CHECK(invp.supported_in_declared_cone());
        CHECK(invp.anchor() == std::pair<int, int>{0, -m});
        CHECK(invp.coeff(0, -m) == -(ds.P().leading().inverse()));
        ConeSeries prod_p = cone_f(ds, Cone::A1) * invp;
        CHECK(equal_up_to(prod_p, ConeSeries::one(f, Cone::A1, r), 30));

        ConeSeries invq = inv_f(ds, Cone::A2, 40);
        CHECK(invq.order() == 40);
        CHECK(invq.supported_in_declared_cone());
        CHECK(invq.anchor() == std::pair<int, int>{-1, -n});
        CHECK(invq.coeff(-1, -n) == ds.Q().leading().inverse());
        ConeSeries prod_q = cone_f(ds, Cone::A2) * invq;
        CHECK(equal_up_to(prod_q, ConeSeries::one(f, Cone::A2, r), 30));
    }
}

TEST_CASE("coefficients beyond the truncation order are refused") {
    DigitSystem ds = f2_system();
    ConeSeries invq = inv_f(ds, Cone::A2, 12);
    CHECK(invq.order() == 12);
    CHECK_NOTHROW(invq.coeff(-1, -9));                      // grading 11 < 12
    CHECK_THROWS_AS(invq.coeff(-1, -10), PrecisionError);  // grading 12
    ConeSeries t = invq.truncated(5);
    CHECK(t.order() == 5);
    CHECK_THROWS_AS(t.coeff(-1, -4), PrecisionError);  // grading 6
    CHECK(t.coeff(-1, -1) == ds.spec()->one());        // grading 3
}

TEST_CASE("floor and fractional splits partition the support") {
    DigitSystem ds = f2_system();
    ConeSeries invq = inv_f(ds, Cone::A2, 15);
    auto [bfl, bfr] = floor_frac_b(invq);
    for (const auto& [k, v] : bfl.terms()) CHECK(k.first >= 0);
    for (const auto& [k, v] : bfr.terms()) CHECK(k.first < 0);
    CHECK(bfl.terms().size() + bfr.terms().size() == invq.terms().size());

    auto [xfl, xfr] = floor_frac_X(invq);
    for (const auto& [k, v] : xfl.terms()) CHECK(k.second >= 0);
    for (const auto& [k, v] : xfr.terms()) CHECK(k.second < 0);
    CHECK(xfl.terms().size() + xfr.terms().size() == invq.terms().size());

    // A polynomial embedded at column 0 is its own X-floor.
    ConeSeries w = ConeSeries::embed_poly(Cone::A1, ds.r_exp(), parse_poly(ds.spec(), "X^3+X"));
    auto [wf, wr] = floor_frac_X(w);
    CHECK(wf.same_terms(w));
    CHECK(wr.terms().empty());
}

TEST_CASE("polynomial expansion by the closed formula") {
    DigitSystem ds = f2_system();
    auto f = ds.spec();

    // pdb(X) = X^{-1} + b for P = X^2+1, Q = X: the expansion of X is (X, 1)
    // and both digits divide by Q exactly.
    ConeSeries y = pdb_formula(ds, Poly::x(f));
    CHECK(y.exact());
    CHECK(y.terms().size() == 2);
    CHECK(y.coeff(0, -1) == f->one());
    CHECK(y.coeff(1, 0) == f->one());

    CHECK(pdb_formula(ds, Poly::zero(f)).is_known_zero());
    DigitString zero_digits = cone_expand_poly(ds, Poly::zero(f));
    CHECK(zero_digits.digits.size() == 1);
    CHECK(zero_digits.digits[0].is_zero());
}

TEST_CASE("formula digits match the division algorithm exhaustively") {
    DigitSystem ds2 = f2_system();
    for (std::uint64_t idx = 0; idx < 128; ++idx) {  // every w of degree < 7
        Poly w = index_to_poly(ds2.spec(), idx);
        DigitString by_formula = cone_expand_poly(ds2, w);
        DigitString by_division = expand_poly(ds2, w);
        CHECK(by_formula.digits == by_division.digits);
    }
    DigitSystem ds3 = f3_system();
    for (std::uint64_t idx = 0; idx < 81; ++idx) {  // every w of degree < 4
        Poly w = index_to_poly(ds3.spec(), idx);
        DigitString by_formula = cone_expand_poly(ds3, w);
        DigitString by_division = expand_poly(ds3, w);
        CHECK(by_formula.digits == by_division.digits);
    }
}

TEST_CASE("expansions in b evaluate back to the polynomial") {
    for (const DigitSystem& ds : {f2_system(), f3_system()}) {
        for (std::uint64_t idx = 0; idx < 64; ++idx) {
            Poly w = index_to_poly(ds.spec(), idx);
            CHECK(eval_back_poly(ds, pdb_formula(ds, w)) == w);
        }
    }

    DigitSystem ds = f2_system();
    auto f = ds.spec();
    int r = ds.r_exp();
    // Hand-built expansion of X: X^{-1} + b.
    ConeSeries y = ConeSeries::monomial(f, Cone::A2, r, 0, -1, f->one()) +
                   ConeSeries::monomial(f, Cone::A2, r, 1, 0, f->one());
    CHECK(eval_back_poly(ds, y) == Poly::x(f));
    CHECK(eval_back_poly(ds, ConeSeries::zero(f, Cone::A2, r)).is_zero());
}

TEST_CASE("evaluation rejects inputs outside the expansion shape") {
    DigitSystem ds = f2_system();
    auto f = ds.spec();
    int r = ds.r_exp();
    ConeSeries neg_col = ConeSeries::monomial(f, Cone::A2, r, -1, -1, f->one());
    CHECK_THROWS_AS(eval_back_poly(ds, neg_col), ShapeError);
    ConeSeries deep = ConeSeries::monomial(f, Cone::A2, r, 0, -2, f->one());
    CHECK_THROWS_AS(eval_back_poly(ds, deep), ShapeError);
}

TEST_CASE("two-sided expansion of the running periodic example") {
    DigitSystem ds = f2_system();
    SeriesInput in = parse_series_input(ds.spec(), "X+1 ; periodic(|1,1,0)");

    ConeExpansion ce = cone_digit_expansion(ds, in, 10);
    CHECK(ce.shift == 2);
    CHECK(format_digit_string(ce.digits) == "X,X+1.X+1,0,X+1,X,X+1,X+1,1,0,1,1");

    // Deeper prefixes agree with the step-by-step expansion.
    ConeExpansion ce12 = cone_digit_expansion(ds, in, 12);
    DigitString alg = series_expand(ds, in, 12);
    CHECK(ce12.digits.digits == alg.digits);
    CHECK(ce12.digits.radix_point == alg.radix_point);
}

TEST_CASE("vertex polynomials are the prefix values") {
    DigitSystem ds = f2_system();
    SeriesInput in = parse_series_input(ds.spec(), "X+1 ; periodic(|1,1,0)");
    ConeExpansion ce = cone_digit_expansion(ds, in, 8);
    REQUIRE(ce.vertices.size() >= 9);
    CHECK(ce.vertices[0].is_zero());
    for (std::size_t t = 1; t <= 8; ++t) {
        DigitString prefix;
        prefix.digits.assign(ce.digits.digits.begin(),
                             ce.digits.digits.begin() + static_cast<std::ptrdiff_t>(t));
        RationalFunction value = evaluate(ds, prefix);
        REQUIRE(value.is_polynomial());
        CHECK(value.num() == ce.vertices[t]);
    }
}

TEST_CASE("two-sided expansion oracles for rational series") {
    DigitSystem ds2 = f2_system();
    SeriesInput a = parse_series_input(ds2.spec(), "rational(X/X^2+1)");
    CHECK(format_digit_string(cone_digit_expansion(ds2, a, 12).digits) ==
          ".X,1,X,0,X,0,0,0,X,0,0,0");

    DigitSystem ds3 = f3_system();
    SeriesInput b = parse_series_input(ds3.spec(), "X ; rational(2/X+2)");
    CHECK(format_digit_string(cone_digit_expansion(ds3, b, 8).digits) ==
          "X+1,2*X.2*X+1,2*X,2*X+2,X,2*X+2,X,X+1,2*X");
}

TEST_CASE("formula and algorithm agree on rational series") {
    DigitSystem ds2 = f2_system();
    for (const char* text :
         {"rational(X/X^2+1)", "rational(X^3+X+1/X^2+X+1)", "X ; rational(1/X^3+X)",
          "rational(X^4+X/X^2+1)", "rational(1/X^5+X^2+1)"}) {
        SeriesInput in = parse_series_input(ds2.spec(), text);
        DigitString lhs = cone_digit_expansion(ds2, in, 10).digits;
        DigitString rhs = series_expand(ds2, in, 10);
        INFO(text);
        CHECK(lhs.digits == rhs.digits);
        CHECK(lhs.radix_point == rhs.radix_point);
    }
    DigitSystem ds3 = f3_system();
    for (const char* text :
         {"rational(2/X+2)", "rational(X+1/X^2+2*X+2)", "X^2 ; rational(2*X/X^2+1)",
          "rational(2*X^3+1/X^2+1)", "rational(X^2/X^3+2*X+1)"}) {
        SeriesInput in = parse_series_input(ds3.spec(), text);
        DigitString lhs = cone_digit_expansion(ds3, in, 10).digits;
        DigitString rhs = series_expand(ds3, in, 10);
        INFO(text);
        CHECK(lhs.digits == rhs.digits);
        CHECK(lhs.radix_point == rhs.radix_point);
    }
}

TEST_CASE("expansion of the zero series") {
    DigitSystem ds = f2_system();
    ConeExpansion ce = cone_digit_expansion(ds, LaurentSeries::zero(ds.spec()), 5);
    CHECK(ce.shift == 0);
    CHECK(ce.digits.digits.size() == 5);
    for (const Poly& d : ce.digits.digits) CHECK(d.is_zero());
    CHECK(db_formula(ds, LaurentSeries::zero(ds.spec()), 20).is_known_zero());
}

TEST_CASE("expansion-in-b carries the digits over Q") {
    DigitSystem ds = f2_system();
    SeriesInput in = parse_series_input(ds.spec(), "X+1 ; periodic(|1,1,0)");
    int order = 30;
    ConeSeries psi = db_formula(ds, in, order);
    CHECK(psi.order() == order);
    CHECK(psi.cone() == Cone::A2);
    CHECK(psi.supported_in_declared_cone());

    ConeExpansion ce = cone_digit_expansion(ds, in, 12);
    ConeSeries qpsi = psi * ConeSeries::embed_poly(Cone::A2, ds.r_exp(), ds.Q());
    for (std::size_t t = 0; t < 8; ++t) {
        int p = ce.shift - 1 - static_cast<int>(t);
        LaurentSeries col = qpsi.column_series(p);
        CHECK(col.floor_part() == ce.digits.digits[t]);
        CHECK(col.frac_part().window_all_zero());
    }
}

TEST_CASE("series expansions evaluate back to the series") {
    DigitSystem ds = f2_system();
    auto f = ds.spec();

    SECTION("rational input") {
        LaurentSeries alpha =
            LaurentSeries::from_rational(Poly::x(f), parse_poly(f, "X^2+1"), -90);
        ConeSeries psi = db_formula(ds, alpha, 45);
        LaurentSeries back = eval_back_series(ds, psi, 12);
        REQUIRE(back.floor_exp() <= -12);
        LaurentSeries truth = LaurentSeries::from_rational(Poly::x(f), parse_poly(f, "X^2+1"), -14);
        for (int j = -1; j >= -12; --j) CHECK(back.coeff(j) == truth.coeff(j));
        CHECK(back.coeff(-1).is_zero() == truth.coeff(-1).is_zero());
    }

    SECTION("periodic two-sided input") {
        SeriesInput in = parse_series_input(f, "X+1 ; periodic(|1,1,0)");
        ConeSeries psi = db_formula(ds, in, 45);
        LaurentSeries back = eval_back_series(ds, psi, 12);
        REQUIRE(back.floor_exp() <= -12);
        LaurentSeries truth = in.materialize(-20);
        for (int j = 1; j >= -12; --j) CHECK(back.coeff(j) == truth.coeff(j));
    }

    SECTION("polynomial expansions pass through the integer columns") {
        Poly w = parse_poly(f, "X^3+X+1");
        LaurentSeries back = eval_back_series(ds, pdb_formula(ds, w), 8);
        for (int j = 3; j >= -8; --j)
            CHECK(back.coeff(j) == (j >= 0 ? w.coeff(j) : f->zero()));
    }

    SECTION("zero expansion") {
        CHECK(eval_back_series(ds, ConeSeries::zero(f, Cone::A2, ds.r_exp()), 6).is_exact_zero());
    }
}

TEST_CASE("series evaluation rejects malformed integer columns") {
    DigitSystem ds = f2_system();
    auto f = ds.spec();
    int r = ds.r_exp();
    // Column 0 holding X^{-2} is not of the form digit / Q (= s X^{-1}).
    ConeSeries bad = ConeSeries::monomial(f, Cone::A2, r, 0, -2, f->one());
    CHECK_THROWS_AS(eval_back_series(ds, bad, 6), ShapeError);
    // Column 1 holding X^3 / Q would need a digit of degree 4 >= deg P.
    ConeSeries wide = ConeSeries::monomial(f, Cone::A2, r, 1, 3, f->one());
    CHECK_THROWS_AS(eval_back_series(ds, wide, 6), ShapeError);
}

TEST_CASE("dump lists the header and sorted terms") {
    DigitSystem ds = f2_system();
    ConeSeries y = pdb_formula(ds, Poly::x(ds.spec()));
    std::string text = y.dump();
    CHECK(text.find("cone=A2") != std::string::npos);
    CHECK(text.find("order=exact") != std::string::npos);
    CHECK(text.find("(0,-1,1)") != std::string::npos);
    CHECK(text.find("(1,0,1)") != std::string::npos);
}
