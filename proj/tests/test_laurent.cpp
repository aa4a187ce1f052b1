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

#include <string>
#include <vector>

#include "pqdigits/laurent.hpp"

using namespace pqdigits;

namespace {

DigitSystem f2_system() {
    auto f = FieldSpec::make_prime(2);
    return DigitSystem(parse_poly(f, "X^2+1"), parse_poly(f, "X"));
}

int ci(const LaurentSeries& s, int k) { return static_cast<int>(s.coeff(k).order_index()); }

}  // namespace

TEST_CASE("polynomials embed exactly") {
    auto f = FieldSpec::make_prime(2);
    LaurentSeries s = LaurentSeries::from_poly(parse_poly(f, "X^3+X"));
    CHECK(s.exact());
    CHECK(s.top() == 3);
    CHECK(ci(s, 3) == 1);
    CHECK(ci(s, 2) == 0);
    CHECK(ci(s, -5) == 0);  // exact: known zero arbitrarily far down
    CHECK(LaurentSeries::zero(f).is_exact_zero());
}

TEST_CASE("window reads below the floor fail for inexact series") {
    auto f = FieldSpec::make_prime(2);
    LaurentSeries s = LaurentSeries::from_window(f, -3, {f->one(), f->zero(), f->one()}, false);
    CHECK(s.top() == -1);
    CHECK(ci(s, -1) == 1);
    CHECK(ci(s, -3) == 1);
    CHECK(ci(s, 4) == 0);
    CHECK_THROWS_AS(s.coeff(-4), PrecisionError);
}

TEST_CASE("rational series terminate exactly or carry a window") {
    auto f = FieldSpec::make_prime(2);
    LaurentSeries inv_x = LaurentSeries::from_rational(Poly::one(f), Poly::x(f), -5);
    CHECK(inv_x.exact());
    CHECK(ci(inv_x, -1) == 1);
    CHECK(ci(inv_x, -2) == 0);
    CHECK(ci(inv_x, -9) == 0);

    LaurentSeries geo = LaurentSeries::from_rational(Poly::one(f), parse_poly(f, "X+1"), -4);
    CHECK_FALSE(geo.exact());
    CHECK(geo.floor_exp() == -4);
    for (int k = -1; k >= -4; --k) CHECK(ci(geo, k) == 1);
    CHECK_THROWS_AS(geo.coeff(-5), PrecisionError);

    LaurentSeries whole = LaurentSeries::from_rational(parse_poly(f, "X^2"), Poly::x(f), -2);
    CHECK(whole.exact());
    CHECK(ci(whole, 1) == 1);
}

TEST_CASE("addition and multiplication track the known window") {
    auto f = FieldSpec::make_prime(3);
    LaurentSeries a = LaurentSeries::from_window(f, -2, {f->one(), f->one()}, false);       // [-2, -1]
    LaurentSeries b = LaurentSeries::from_window(f, -5, {f->one(), f->zero(), f->one()}, false);  // [-5, -3]
    CHECK((a + b).floor_exp() == -2);
    LaurentSeries p = LaurentSeries::from_poly(parse_poly(f, "X^2+1"));
    CHECK((a + p).floor_exp() == -2);
    CHECK((a * p).floor_exp() == -2 + 2);
    CHECK((a * p).top() <= 1);
    CHECK((a * b).floor_exp() == std::max(-2 + -3, -5 + -1));
    CHECK((p * p).exact());
}

TEST_CASE("multiplying a quotient by its denominator recovers the numerator") {
    auto f = FieldSpec::make_prime(3);
    Poly num = parse_poly(f, "X^3+2*X+1"), den = parse_poly(f, "2*X^2+X+1");
    LaurentSeries s = LaurentSeries::from_rational(num, den, -8);
    LaurentSeries back = s * den;
    for (int k = back.top(); k >= back.floor_exp(); --k) {
        CHECK(back.coeff(k) == num.coeff(k));
    }
    CHECK(back.floor_exp() <= -5);
}

TEST_CASE("series division by a polynomial matches the rational expansion") {
    auto f = FieldSpec::make_prime(2);
    Poly num = parse_poly(f, "X^2+X"), den = parse_poly(f, "X^3+X+1");
    LaurentSeries direct = LaurentSeries::from_rational(num, den, -7);
    LaurentSeries divided = divide_by_poly(LaurentSeries::from_poly(num), den, -7);
    for (int k = -1; k >= -7; --k) CHECK(direct.coeff(k) == divided.coeff(k));
    CHECK_THROWS_AS(divide_by_poly(direct, den, -11), PrecisionError);  // window too shallow
    CHECK_THROWS_AS(divide_by_poly(direct, Poly::zero(f), -3), std::domain_error);
}

TEST_CASE("series inverse") {
    auto f2 = FieldSpec::make_prime(2);
    LaurentSeries inv = inverse_series(LaurentSeries::from_poly(parse_poly(f2, "X+1")));
    CHECK(inv.top() <= -1);
    CHECK(ci(inv, -1) == 1);
    CHECK(ci(inv, -2) == 1);
    auto f3 = FieldSpec::make_prime(3);
    LaurentSeries inv3 = inverse_series(LaurentSeries::from_poly(parse_poly(f3, "2*X")));
    CHECK(ci(inv3, -1) == 2);
    // Inverting a deep truncation of 1/(X+1) gives back X+1 on the window.
    LaurentSeries geo = LaurentSeries::from_rational(Poly::one(f2), parse_poly(f2, "X+1"), -9);
    LaurentSeries back = inverse_series(geo);
    CHECK(ci(back, 1) == 1);
    CHECK(ci(back, 0) == 1);
    CHECK_THROWS_AS(inverse_series(LaurentSeries::zero(f2)), std::domain_error);
}

TEST_CASE("integer and fractional parts") {
    auto f = FieldSpec::make_prime(2);
    LaurentSeries s = LaurentSeries::from_rational(parse_poly(f, "X^3+X^2+1"), parse_poly(f, "X^2+X"), -6);
    Poly ip = s.floor_part();
    LaurentSeries fp = s.frac_part();
    CHECK(ip.degree() == 1);
    CHECK(fp.top() <= -1);
    // floor + frac reassembles the series on its window.
    LaurentSeries sum = LaurentSeries::from_poly(ip) + fp;
    for (int k = s.top(); k >= s.floor_exp(); --k) CHECK(sum.coeff(k) == s.coeff(k));
    LaurentSeries shallow = LaurentSeries::from_window(f, 1, {f->one()}, false);
    CHECK_THROWS_AS(shallow.floor_part(), PrecisionError);
}

TEST_CASE("series input parsing") {
    auto f = FieldSpec::make_prime(2);
    SeriesInput periodic = parse_series_input(f, "X+1 ; periodic(|1,1,0)");
    CHECK(periodic.kind == SeriesInput::Kind::Periodic);
    CHECK(format_poly(periodic.integer_part) == "X+1");
    LaurentSeries mp = periodic.materialize(-7);
    CHECK(ci(mp, 1) == 1);
    CHECK(ci(mp, -1) == 1);
    CHECK(ci(mp, -2) == 1);
    CHECK(ci(mp, -3) == 0);
    CHECK(ci(mp, -4) == 1);
    CHECK(ci(mp, -6) == 0);
    CHECK(ci(mp, -7) == 1);

    SeriesInput pow2 = parse_series_input(f, "lacunary(2^i)");
    LaurentSeries m2 = pow2.materialize(-9);
    CHECK(ci(m2, -1) == 1);
    CHECK(ci(m2, -2) == 1);
    CHECK(ci(m2, -3) == 0);
    CHECK(ci(m2, -4) == 1);
    CHECK(ci(m2, -8) == 1);
    CHECK(ci(m2, -9) == 0);

    SeriesInput sq = parse_series_input(f, "lacunary(i^2)");
    LaurentSeries ms = sq.materialize(-10);
    CHECK(ci(ms, -1) == 1);
    CHECK(ci(ms, -2) == 0);
    CHECK(ci(ms, -4) == 1);
    CHECK(ci(ms, -9) == 1);

    SeriesInput rat = parse_series_input(f, "rational(X/X^2+1)");
    LaurentSeries mr = rat.materialize(-6);
    CHECK(ci(mr, -1) == 1);
    CHECK(ci(mr, -2) == 0);
    CHECK(ci(mr, -3) == 1);
    CHECK(ci(mr, -5) == 1);

    SeriesInput ex = parse_series_input(f, "explicit(1,0,1|-5)");
    LaurentSeries me = ex.materialize(-20);  // cannot deepen past its floor
    CHECK_FALSE(ex.deepens());
    CHECK(me.floor_exp() == -5);
    CHECK(ci(me, -1) == 1);
    CHECK(ci(me, -3) == 1);
    CHECK(ci(me, -4) == 0);

    SeriesInput poly_only = parse_series_input(f, "X^2+X");
    CHECK(poly_only.kind == SeriesInput::Kind::PolyOnly);
    CHECK(poly_only.materialize(-3).exact());
}

TEST_CASE("series input parse errors") {
    auto f = FieldSpec::make_prime(2);
    CHECK_THROWS_AS(parse_series_input(f, "periodic(1,1,0)"), ParseError);   // missing '|'
    CHECK_THROWS_AS(parse_series_input(f, "lacunary(i^3)"), ParseError);
    CHECK_THROWS_AS(parse_series_input(f, "explicit(1,0|-1)"), ParseError);  // floor above coefficients
    CHECK_THROWS_AS(parse_series_input(f, "rational(X/0)"), ParseError);
    CHECK_THROWS_AS(parse_series_input(f, "periodic(|)"), ParseError);
    CHECK_THROWS_AS(parse_series_input(f, "Y+1"), ParseError);
    CHECK_THROWS_AS(parse_series_input(f, "wavelet(1)"), ParseError);
}

TEST_CASE("series expansion of a worked example") {
    DigitSystem ds = f2_system();
    auto f = ds.spec();
    SeriesInput alpha = parse_series_input(f, "X+1 ; periodic(|1,1,0)");
    CHECK(format_digit_string(series_expand(ds, alpha, 10)) == "X,X+1.X+1,0,X+1,X,X+1,X+1,1,0,1,1");
    SeriesInput ip = parse_series_input(f, "X+1");
    CHECK(format_digit_string(series_expand(ds, ip, 10)) == "X,X+1.1,X+1,X,X+1,0,0,X,X+1,0,0");
    SeriesInput fp = parse_series_input(f, "periodic(|1,1,0)");
    CHECK(format_digit_string(series_expand(ds, fp, 10)) == ".X,X+1,1,1,X+1,X+1,X+1,X+1,1,1");
}

TEST_CASE("expansion flags and shapes") {
    DigitSystem ds = f2_system();
    DigitString s = series_expand(ds, parse_series_input(ds.spec(), "X+1 ; periodic(|1,1,0)"), 4);
    CHECK(s.truncated);
    CHECK(s.radix_point.has_value());
    CHECK(*s.radix_point == 2);
    CHECK(s.fractional_digit_count() == 4);
    DigitString z = series_expand(ds, parse_series_input(ds.spec(), "0"), 3);
    CHECK(format_digit_string(z) == ".0,0,0");
}

TEST_CASE("expanded digit prefixes are admissible graph paths") {
    DigitSystem ds = f2_system();
    for (const char* text : {"X+1 ; periodic(|1,1,0)", "X^2 ; rational(1/X+1)", "rational(X/X^2+1)", "X^3+X"}) {
        DigitString s = series_expand(ds, parse_series_input(ds.spec(), text), 8);
        DigitString plain;
        plain.digits = s.digits;
        if (plain.digits.empty() || *s.radix_point == 0) {
            plain.digits.insert(plain.digits.begin(), Poly::zero(ds.spec()));
        }
        CHECK(is_canonical_string(ds, normalize_digits(plain)));
        for (const Poly& d : s.digits) CHECK(ds.is_digit(d));
    }
}

TEST_CASE("expansion digits reconstruct the integer parts of scaled values") {
    DigitSystem ds = f2_system();
    auto f = ds.spec();
    // alpha = X + 1/(X+1) = (X^2+X+1)/(X+1); after k digits the plain string is floor(alpha (P/Q)^k).
    Poly num = parse_poly(f, "X^2+X+1"), den = parse_poly(f, "X+1");
    SeriesInput alpha = parse_series_input(f, "X ; rational(1/X+1)");
    for (int k = 1; k <= 6; ++k) {
        DigitString s = series_expand(ds, alpha, k);
        DigitString plain;
        plain.digits = s.digits;
        RationalFunction value = evaluate(ds, normalize_digits(plain));
        REQUIRE(value.is_polynomial());
        Poly scaled_num = num * poly_pow(ds.P(), k);
        Poly scaled_den = den * poly_pow(ds.Q(), k);
        Poly expect = LaurentSeries::from_rational(scaled_num, scaled_den, -2).floor_part();
        CHECK(value.num() == expect);
    }
}

TEST_CASE("expansion depth is limited by the window") {
    DigitSystem ds = f2_system();
    SeriesInput alpha = parse_series_input(ds.spec(), "X+1 ; periodic(|1,1,0)");
    LaurentSeries shallow = alpha.materialize(-5);
    CHECK_THROWS_AS(series_expand(ds, shallow, 10), PrecisionError);
    CHECK_NOTHROW(series_expand(ds, shallow, 3));
}

TEST_CASE("fractional degree sequence of a simple tail") {
    DigitSystem ds = f2_system();
    LaurentSeries alpha = LaurentSeries::from_rational(Poly::one(ds.spec()), Poly::x(ds.spec()), -3);
    auto degs = fractional_degree_sequence(ds, alpha, 5);
    REQUIRE(degs.size() == 6);
    // frac((X+1)^{2i} / X^{i+1}) over F_2; tops come from the odd binomials.
    std::vector<int> expect{-1, -2, -3, -2, -5, -4};
    for (int i = 0; i <= 5; ++i) {
        REQUIRE(degs[static_cast<std::size_t>(i)].has_value());
        CHECK(*degs[static_cast<std::size_t>(i)] == expect[static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("allowed value degrees form bands") {
    DigitSystem ds = f2_system();   // r = 1, n = 1: everything at degree <= -2 is allowed
    CHECK_FALSE(minimal_tail_degree(ds, -1));
    CHECK(minimal_tail_degree(ds, -2));
    CHECK(minimal_tail_degree(ds, -7));
    auto f = FieldSpec::make_prime(2);
    DigitSystem wide(parse_poly(f, "X^3+X+1"), parse_poly(f, "X"));  // r = 2, n = 1: isolated degrees
    CHECK_FALSE(minimal_tail_degree(wide, -1));
    CHECK_FALSE(minimal_tail_degree(wide, -2));
    CHECK(minimal_tail_degree(wide, -3));
    CHECK_FALSE(minimal_tail_degree(wide, -4));
    CHECK(minimal_tail_degree(wide, -5));
    DigitSystem gappy(parse_poly(f, "X^3+X+1"), Poly::one(f));  // constant Q: a minimal tail is zero
    CHECK_FALSE(minimal_tail_degree(gappy, -3));
    CHECK_FALSE(minimal_tail_degree(gappy, -4));
    CHECK_FALSE(minimal_tail_degree(gappy, -6));
}

TEST_CASE("minimality classification of the worked example") {
    DigitSystem ds = f2_system();
    SeriesInput alpha = parse_series_input(ds.spec(), "X+1 ; periodic(|1,1,0)");
    MahlerReport rep = mahler_classify(ds, alpha, 10);
    CHECK(rep.depth == 10);
    CHECK(rep.bad_positions == std::vector<int>{1, 3, 4, 5, 6});
    CHECK(rep.eventually_minimal);
    CHECK(rep.minimal_from == 6);
    // The value degrees agree: disallowed exactly at indices before the tail
    // that correspond to bad digits.
    LaurentSeries deep = alpha.materialize(-60);
    auto degs = fractional_degree_sequence(ds, deep, 9);
    for (int i = 0; i <= 9; ++i) {
        bool bad_digit = std::find(rep.bad_positions.begin(), rep.bad_positions.end(), i + 1) !=
                         rep.bad_positions.end();
        if (bad_digit) {
            REQUIRE(degs[static_cast<std::size_t>(i)].has_value());
            CHECK_FALSE(minimal_tail_degree(ds, *degs[static_cast<std::size_t>(i)]));
        } else if (degs[static_cast<std::size_t>(i)].has_value()) {
            CHECK(minimal_tail_degree(ds, *degs[static_cast<std::size_t>(i)]));
        }
    }
}

TEST_CASE("minimality verdicts at the depth boundary") {
    DigitSystem ds = f2_system();
    SeriesInput ip = parse_series_input(ds.spec(), "X+1");
    // Digits 1,X+1,X,X+1,0,0,X,X+1: the last inspected digit is still bad.
    MahlerReport at8 = mahler_classify(ds, ip, 8);
    CHECK_FALSE(at8.eventually_minimal);
    MahlerReport at10 = mahler_classify(ds, ip, 10);
    CHECK(at10.eventually_minimal);
    CHECK(at10.minimal_from == 8);
    MahlerReport zero = mahler_classify(ds, parse_series_input(ds.spec(), "0"), 6);
    CHECK(zero.eventually_minimal);
    CHECK(zero.minimal_from == 0);
    CHECK(zero.bad_positions.empty());
}
