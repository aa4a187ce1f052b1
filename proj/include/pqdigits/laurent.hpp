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

#ifndef PQDIGITS_LAURENT_HPP
#define PQDIGITS_LAURENT_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "digit_system.hpp"

namespace pqdigits {

/**
 * A formal Laurent series in descending powers of X, stored on a finite
 * window of exponents [floor_exp(), top()].  Coefficients above the window
 * are zero.  Below the window they are zero when the series is exact and
 * unknown otherwise; reading one then reports a precision failure.  Windows
 * shrink under arithmetic by the usual rules (a product is known down to the
 * worst pairing of one factor's floor with the other's top), so a chain of
 * operations says precisely how far its result can be trusted.
 */
class LaurentSeries {
  public:
    static LaurentSeries zero(FieldSpecPtr f) { return LaurentSeries(std::move(f), 0, {}, true); }

    static LaurentSeries from_poly(const Poly& p) {
        return LaurentSeries(p.spec(), 0, std::vector<FieldElement>(p.coeffs()), true);
    }

    /* coeffs[i] is the coefficient of X^{floor + i}. */
    static LaurentSeries from_window(FieldSpecPtr f, int floor, std::vector<FieldElement> coeffs, bool exact) {
        return LaurentSeries(std::move(f), floor, std::move(coeffs), exact);
    }

    /* Expansion of num/den at infinity, computed down to `floor`; exact when it terminates there. */
    static LaurentSeries from_rational(const Poly& num, const Poly& den, int floor) {
        if (den.is_zero()) throw std::domain_error("series division by the zero polynomial");
        if (num.is_zero()) return zero(num.spec());
        int shift = std::max(0, -floor);
        auto [quo, rem] = poly_divrem(num.shifted_up(shift), den);
        int top = num.degree() - den.degree();
        std::vector<FieldElement> c;
        for (int k = floor; k <= top; ++k) c.push_back(quo.coeff(k + shift));
        // Exact only when the computed window demonstrably covers all support.
        bool exact = rem.is_zero() && floor <= std::min(0, top);
        return LaurentSeries(num.spec(), std::min(floor, top + 1), std::move(c), exact);
    }

    /* Series with coeff(k) given by a callback for floor <= k <= top; not exact below. */
    static LaurentSeries from_coeff_fn(FieldSpecPtr f, int top, int floor,
                                       const std::function<FieldElement(int)>& fn) {
        std::vector<FieldElement> c;
        for (int k = floor; k <= top; ++k) c.push_back(fn(k));
        return LaurentSeries(std::move(f), floor, std::move(c), false);
    }

    const FieldSpecPtr& spec() const noexcept { return spec_; }
    int floor_exp() const noexcept { return floor_; }
    int top() const noexcept { return floor_ + static_cast<int>(c_.size()) - 1; }
    bool exact() const noexcept { return exact_; }

    FieldElement coeff(int k) const {
        if (k > top()) return spec_->zero();
        if (k >= floor_) return c_[static_cast<std::size_t>(k - floor_)];
        if (exact_) return spec_->zero();
        throw PrecisionError("series coefficient below the known window");
    }

    /* Highest exponent with a nonzero known coefficient, if any. */
    std::optional<int> top_nonzero() const {
        for (int k = top(); k >= floor_; --k) {
            if (!c_[static_cast<std::size_t>(k - floor_)].is_zero()) return k;
        }
        return std::nullopt;
    }

    bool window_all_zero() const { return !top_nonzero().has_value(); }
    bool is_exact_zero() const { return exact_ && window_all_zero(); }

    LaurentSeries operator-() const {
        LaurentSeries out = *this;
        for (FieldElement& e : out.c_) e = -e;
        return out;
    }

    LaurentSeries operator+(const LaurentSeries& o) const {
        check(o);
        bool exact = exact_ && o.exact_;
        int floor;
        if (exact) {
            floor = std::min(floor_, o.floor_);
        } else if (exact_) {
            floor = o.floor_;
        } else if (o.exact_) {
            floor = floor_;
        } else {
            floor = std::max(floor_, o.floor_);
        }
        int t = std::max(top(), o.top());
        std::vector<FieldElement> c;
        for (int k = floor; k <= t; ++k) c.push_back(coeff(k) + o.coeff(k));
        return LaurentSeries(spec_, floor, std::move(c), exact);
    }

    LaurentSeries operator-(const LaurentSeries& o) const { return *this + (-o); }

    LaurentSeries operator*(const LaurentSeries& o) const {
        check(o);
        if (is_exact_zero() || o.is_exact_zero()) return zero(spec_);
        bool exact = exact_ && o.exact_;
        int t = top() + o.top();
        int floor;
        if (exact) {
            floor = floor_ + o.floor_;
        } else {
            floor = kNegInfDeg;
            if (!exact_) floor = std::max(floor, floor_ + o.top());
            if (!o.exact_) floor = std::max(floor, o.floor_ + top());
        }
        if (floor > t) return LaurentSeries(spec_, floor, {}, exact);
        std::vector<FieldElement> c(static_cast<std::size_t>(t - floor + 1), spec_->zero());
        for (int i = std::max(floor_, floor - o.top()); i <= top(); ++i) {
            FieldElement a = coeff(i);
            if (a.is_zero()) continue;
            for (int j = std::max(o.floor_, floor - i); j <= o.top() && i + j <= t; ++j) {
                std::size_t at = static_cast<std::size_t>(i + j - floor);
                c[at] += a * o.coeff(j);
            }
        }
        return LaurentSeries(spec_, floor, std::move(c), exact);
    }

    LaurentSeries operator*(const Poly& p) const { return *this * from_poly(p); }
    LaurentSeries operator*(FieldElement e) const {
        LaurentSeries out = *this;
        for (FieldElement& x : out.c_) x = x * e;
        return out;
    }

    /* Multiply by X^k. */
    LaurentSeries shifted(int k) const {
        LaurentSeries out = *this;
        out.floor_ += k;
        return out;
    }

    /* Forget below `floor`; the result is never exact. */
    LaurentSeries truncated_to(int floor) const {
        if (floor <= floor_ && !exact_) {
            LaurentSeries out = *this;
            return out;
        }
        std::vector<FieldElement> c;
        for (int k = floor; k <= top(); ++k) c.push_back(coeff(k));
        return LaurentSeries(spec_, std::min(floor, top() + 1), std::move(c), false);
    }

    /* Terms of nonnegative exponent, as a polynomial. */
    Poly floor_part() const {
        if (!exact_ && floor_ > 0) throw PrecisionError("integer part needs the window to reach exponent 0");
        std::vector<FieldElement> c;
        for (int k = 0; k <= top(); ++k) c.push_back(coeff(k));
        return Poly::from_coeffs(spec_, std::move(c));
    }

    /* Terms of negative exponent. */
    LaurentSeries frac_part() const {
        if (!exact_ && floor_ > 0) throw PrecisionError("fractional part needs the window to reach exponent 0");
        int t = std::min(top(), -1);
        std::vector<FieldElement> c;
        for (int k = floor_; k <= t; ++k) c.push_back(coeff(k));
        return LaurentSeries(spec_, std::min(floor_, t + 1), std::move(c), exact_);
    }

    /* Equal when exactness, windows and all known coefficients agree. */
    bool operator==(const LaurentSeries& o) const {
        check(o);
        if (exact_ != o.exact_) return false;
        if (!exact_ && floor_ != o.floor_) return false;
        for (int k = std::min(floor_, o.floor_); k <= std::max(top(), o.top()); ++k) {
            if (k < std::max(floor_, o.floor_) && !exact_) continue;
            if (coeff(k) != o.coeff(k)) return false;
        }
        return true;
    }
    bool operator!=(const LaurentSeries& o) const { return !(*this == o); }

  private:
    LaurentSeries(FieldSpecPtr f, int floor, std::vector<FieldElement> c, bool exact)
        : spec_(std::move(f)), floor_(floor), exact_(exact), c_(std::move(c)) {
        trim();
    }

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
        if (exact_) {
            std::size_t lead = 0;
            while (lead < c_.size() && c_[lead].is_zero()) ++lead;
            c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
            floor_ += static_cast<int>(lead);
            if (c_.empty()) floor_ = 0;
        }
    }

    void check([[maybe_unused]] const LaurentSeries& o) const { assert(spec_.get() == o.spec_.get()); }

    FieldSpecPtr spec_;
    int floor_;
    bool exact_;
    std::vector<FieldElement> c_;
};

/**
 * Quotient of a series by a polynomial, computed down to `result_floor` by
 * long division from the top.  Needs the dividend known down to result_floor
 * + deg p.  The result is reported inexact: the division does not terminate
 * in general, and the window says how far it was carried.
 */
inline LaurentSeries divide_by_poly(const LaurentSeries& s, const Poly& p, int result_floor) {
    if (p.is_zero()) throw std::domain_error("series division by the zero polynomial");
    int d = p.degree();
    if (!s.exact() && s.floor_exp() > result_floor + d)
        throw PrecisionError("series window too shallow for the requested quotient depth");
    int top = s.top() - d;
    if (top < result_floor) {
        return LaurentSeries::from_window(s.spec(), result_floor, {}, false);
    }
    // work[k - (result_floor + d)] mirrors the running remainder at exponent k.
    int lo = result_floor + d;
    std::vector<FieldElement> work;
    for (int k = lo; k <= s.top(); ++k) work.push_back(s.coeff(k));
    FieldElement lead = p.leading();
    std::vector<FieldElement> q(static_cast<std::size_t>(top - result_floor + 1), s.spec()->zero());
    for (int k = top; k >= result_floor; --k) {
        FieldElement qk = work[static_cast<std::size_t>(k + d - lo)] / lead;
        q[static_cast<std::size_t>(k - result_floor)] = qk;
        if (qk.is_zero()) continue;
        for (int i = std::max(0, lo - k); i <= d; ++i) {
            work[static_cast<std::size_t>(k + i - lo)] -= qk * p.coeff(i);
        }
    }
    return LaurentSeries::from_window(s.spec(), result_floor, std::move(q), false);
}

/**
 * Multiplicative inverse as a series.  With window [e, h] and a nonzero
 * leading coefficient at h, the inverse is known on [e - 2h, -h].
 */
inline LaurentSeries inverse_series(const LaurentSeries& s) {
    std::optional<int> hn = s.top_nonzero();
    if (!hn) {
        if (s.is_exact_zero()) throw std::domain_error("series inverse of zero");
        throw PrecisionError("series inverse needs a nonzero coefficient in the window");
    }
    int h = *hn;
    int floor = s.floor_exp() - 2 * h;
    std::vector<FieldElement> q(static_cast<std::size_t>(-h - floor + 1), s.spec()->zero());
    FieldElement lead = s.coeff(h);
    // (q s) has coefficient delta_{t,0}; solving at t = k + h isolates q_k s_h.
    for (int k = -h; k >= floor; --k) {
        FieldElement acc = k == -h ? s.spec()->one() : s.spec()->zero();
        for (int j = k + 1; j <= -h; ++j) {
            acc -= q[static_cast<std::size_t>(j - floor)] * s.coeff(k + h - j);
        }
        q[static_cast<std::size_t>(k - floor)] = acc / lead;
    }
    return LaurentSeries::from_window(s.spec(), floor, std::move(q), false);
}

/* -------------------------------------------------------------------------- */

/**
 * Textual description of a Laurent series: an optional polynomial part and a
 * rule for the fractional coefficients at exponents -1, -2, ... in that
 * order.  Rules that extend arbitrarily far down (everything except
 * `explicit`) can be rematerialized at any depth.
 *
 *   input    := poly | poly ';' pattern | pattern
 *   pattern  := 'explicit(' coeffs '|' int ')'     fixed window, floor given
 *             | 'periodic(' coeffs? '|' coeffs ')' prefix, then repeating block
 *             | 'lacunary(2^i)'                    ones at exponents -2^i, i >= 0
 *             | 'lacunary(i^2)'                    ones at exponents -i^2, i >= 1
 *             | 'rational(' poly '/' poly ')'      series of the quotient
 */
struct SeriesInput {
    enum class Kind { PolyOnly, Explicit, Periodic, LacunaryPow2, LacunarySquare, Rational };

    FieldSpecPtr spec;
    Poly integer_part = Poly::zero(nullptr);  // replaced at construction
    Kind kind = Kind::PolyOnly;
    std::vector<FieldElement> head;    // explicit coefficients, or the periodic prefix
    std::vector<FieldElement> block;   // periodic repeating block
    int explicit_floor = 0;
    Poly num = Poly::zero(nullptr), den = Poly::zero(nullptr);

    bool deepens() const noexcept { return kind != Kind::Explicit; }

    /* The series, known down to `floor` where the rule allows. */
    LaurentSeries materialize(int floor) const {
        LaurentSeries head_part = LaurentSeries::from_poly(integer_part);
        switch (kind) {
            case Kind::PolyOnly:
                return head_part;
            case Kind::Explicit: {
                assert(head.size() <= static_cast<std::size_t>(-explicit_floor));
                std::vector<FieldElement> c(static_cast<std::size_t>(-explicit_floor), spec->zero());
                for (std::size_t i = 0; i < head.size(); ++i) c[c.size() - 1 - i] = head[i];
                return head_part + LaurentSeries::from_window(spec, explicit_floor, std::move(c), false);
            }
            case Kind::Periodic: {
                std::vector<FieldElement> c;
                for (int k = -1; k >= floor; --k) {
                    std::size_t at = static_cast<std::size_t>(-k - 1);
                    c.push_back(at < head.size() ? head[at]
                                                 : block[(at - head.size()) % block.size()]);
                }
                std::reverse(c.begin(), c.end());
                return head_part + LaurentSeries::from_window(spec, std::min(floor, 0), std::move(c), false);
            }
            case Kind::LacunaryPow2:
            case Kind::LacunarySquare: {
                std::vector<FieldElement> c(static_cast<std::size_t>(std::max(0, -floor)), spec->zero());
                for (std::int64_t i = kind == Kind::LacunaryPow2 ? 0 : 1;; ++i) {
                    std::int64_t e = kind == Kind::LacunaryPow2 ? -(std::int64_t(1) << i) : -(i * i);
                    if (e < floor) break;
                    c[static_cast<std::size_t>(e - floor)] = spec->one();
                }
                return head_part + LaurentSeries::from_window(spec, std::min(floor, 0), std::move(c), false);
            }
            case Kind::Rational:
                return head_part + LaurentSeries::from_rational(num, den, floor);
        }
        throw std::logic_error("unreachable");
    }
};

namespace detail {

inline std::vector<FieldElement> parse_coeff_list(const FieldSpecPtr& f, std::string_view s, std::size_t base) {
    std::vector<FieldElement> out;
    std::size_t i = 0;
    while (true) {
        skip_ws(s, i);
        if (i >= s.size()) throw ParseError("expected a coefficient", base + i);
        out.push_back(parse_coeff(f, s, i));
        skip_ws(s, i);
        if (i == s.size()) return out;
        if (s[i] != ',') throw ParseError("expected ',' in coefficient list", base + i);
        ++i;
    }
}

}  // namespace detail

inline SeriesInput parse_series_pattern(const FieldSpecPtr& f, std::string_view text, std::size_t base) {
    auto strip = [](std::string_view v, std::size_t& off) {
        while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1), ++off;
        while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
        return v;
    };
    std::size_t off = base;
    text = strip(text, off);
    SeriesInput in;
    in.spec = f;
    in.integer_part = Poly::zero(f);
    in.num = in.den = Poly::zero(f);
    auto body_of = [&](std::string_view keyword) -> std::optional<std::string_view> {
        if (text.size() < keyword.size() || text.substr(0, keyword.size()) != keyword) return std::nullopt;
        std::string_view rest = text.substr(keyword.size());
        if (rest.empty() || rest.front() != '(' || rest.back() != ')')
            throw ParseError("pattern arguments must be parenthesized", off + keyword.size());
        return rest.substr(1, rest.size() - 2);
    };
    if (auto body = body_of("explicit")) {
        std::size_t bar = body->find('|');
        if (bar == std::string_view::npos) throw ParseError("explicit pattern needs '|floor'", off);
        in.kind = SeriesInput::Kind::Explicit;
        in.head = detail::parse_coeff_list(f, body->substr(0, bar), off + 9);
        std::string_view tail = body->substr(bar + 1);
        std::size_t i = 0;
        detail::skip_ws(tail, i);
        bool neg = i < tail.size() && tail[i] == '-';
        if (neg) ++i;
        std::uint64_t mag = detail::parse_uint(tail, i, "floor");
        detail::skip_ws(tail, i);
        if (i != tail.size() || mag > 1000000) throw ParseError("bad explicit floor", off + 9 + bar + 1);
        in.explicit_floor = neg ? -static_cast<int>(mag) : static_cast<int>(mag);
        if (in.explicit_floor > -static_cast<int>(in.head.size()))
            throw ParseError("explicit floor above the listed coefficients", off + 9 + bar + 1);
        return in;
    }
    if (auto body = body_of("periodic")) {
        std::size_t bar = body->find('|');
        if (bar == std::string_view::npos) throw ParseError("periodic pattern needs '|'", off);
        in.kind = SeriesInput::Kind::Periodic;
        std::string_view prefix = body->substr(0, bar), rep = body->substr(bar + 1);
        if (!prefix.empty()) in.head = detail::parse_coeff_list(f, prefix, off + 9);
        in.block = detail::parse_coeff_list(f, rep, off + 9 + bar + 1);
        if (in.block.empty()) throw ParseError("periodic block must be nonempty", off + 9 + bar + 1);
        return in;
    }
    if (auto body = body_of("lacunary")) {
        std::size_t i = 0;
        detail::skip_ws(*body, i);
        std::string_view b = body->substr(i);
        while (!b.empty() && (b.back() == ' ' || b.back() == '\t')) b.remove_suffix(1);
        if (b == "2^i") {
            in.kind = SeriesInput::Kind::LacunaryPow2;
        } else if (b == "i^2") {
            in.kind = SeriesInput::Kind::LacunarySquare;
        } else {
            throw ParseError("lacunary pattern must be 2^i or i^2", off + 9);
        }
        return in;
    }
    if (auto body = body_of("rational")) {
        std::size_t slash = body->find('/');
        if (slash == std::string_view::npos) throw ParseError("rational pattern needs num/den", off);
        in.kind = SeriesInput::Kind::Rational;
        try {
            in.num = parse_poly(f, body->substr(0, slash));
            in.den = parse_poly(f, body->substr(slash + 1));
        } catch (const ParseError& e) {
            throw ParseError("bad polynomial in rational pattern", off + 9 + e.position());
        }
        if (in.den.is_zero()) throw ParseError("rational pattern denominator is zero", off + 9 + slash + 1);
        return in;
    }
    throw ParseError("unknown series pattern", off);
}

inline SeriesInput parse_series_input(const FieldSpecPtr& f, std::string_view text) {
    std::size_t semi = text.find(';');
    if (semi == std::string_view::npos) {
        // A bare pattern keyword, or a plain polynomial.
        for (const char* kw : {"explicit", "periodic", "lacunary", "rational"}) {
            std::size_t at = text.find(kw);
            if (at != std::string_view::npos && text.find('(') != std::string_view::npos)
                return parse_series_pattern(f, text, 0);
        }
        SeriesInput in;
        in.spec = f;
        in.integer_part = parse_poly(f, text);
        in.num = in.den = Poly::zero(f);
        in.kind = SeriesInput::Kind::PolyOnly;
        return in;
    }
    SeriesInput in = parse_series_pattern(f, text.substr(semi + 1), semi + 1);
    std::string_view head = text.substr(0, semi);
    bool blank = true;
    for (char ch : head) {
        if (ch != ' ' && ch != '\t') blank = false;
    }
    in.integer_part = blank ? Poly::zero(f) : parse_poly(f, head);
    return in;
}

/* -------------------------------------------------------------------------- */

/**
 * Digit expansion of a Laurent series: integer digits are the expansion of
 * the polynomial part, and fractional digits come from the residual
 * recurrence.  With v the integer part and g = P * frac(alpha) the initial
 * residual, each step selects a digit matching both the residual's window
 * [deg Q, deg P) and the admissibility congruence mod Q, then updates
 *
 *     g <- (g - s) * P / Q,   v <- (P v + s) / Q.
 *
 * Windows shrink by deg P - deg Q per digit, so the input must be known down
 * to -(count + 1)(deg P - deg Q) - deg Q; otherwise a precision failure is
 * reported.  The integer digit list of a zero polynomial part is empty: the
 * string starts at its radix point.
 */
inline DigitString series_expand(const DigitSystem& ds, const LaurentSeries& alpha, int count) {
    assert(count >= 0);
    int m = ds.deg_p(), n = ds.deg_q(), r = ds.r_exp();
    int required = -(count + 1) * r - n;
    if (!alpha.exact() && alpha.floor_exp() > required)
        throw PrecisionError("series window too shallow for the requested digit count");
    int sched = (alpha.exact() ? required : alpha.floor_exp()) + m;

    DigitString out;
    Poly v = alpha.floor_part();
    if (!v.is_zero()) out = expand_poly(ds, v);
    out.radix_point = out.size();
    out.truncated = true;

    LaurentSeries g = alpha.frac_part() * ds.P();
    for (int j = 1; j <= count; ++j) {
        std::vector<FieldElement> band;
        for (int i = n; i < m; ++i) band.push_back(g.coeff(i));
        Poly t = Poly::from_coeffs(ds.spec(), std::move(band)).shifted_up(n);
        Poly s = t + poly_mod(-(ds.P() * v) - t, ds.Q());
        out.digits.push_back(s);
        LaurentSeries residual = g - LaurentSeries::from_poly(s);
        if (residual.top_nonzero().value_or(n - 1) >= n)
            throw ShapeError("digit selection left residual terms at or above deg Q");
        sched += r;
        g = divide_by_poly(residual * ds.P(), ds.Q(), sched);
        v = poly_exact_div(ds.P() * v + s, ds.Q());
    }
    return out;
}

/* Convenience: materialize a described series deep enough, then expand. */
inline DigitString series_expand(const DigitSystem& ds, const SeriesInput& input, int count) {
    int floor = -(count + 1) * ds.r_exp() - ds.deg_q();
    return series_expand(ds, input.materialize(floor), count);
}

/* -------------------------------------------------------------------------- */

/**
 * Degree of the fractional part of alpha * (P/Q)^i for i = 0..imax, where
 * the degree of zero is reported as absent.  The valuation of these values
 * is what the minimality classification below inspects.
 */
inline std::vector<std::optional<int>> fractional_degree_sequence(const DigitSystem& ds,
                                                                  const LaurentSeries& alpha, int imax) {
    std::vector<std::optional<int>> out;
    LaurentSeries beta = alpha;
    if (beta.exact()) {
        // Flatten to a window deep enough for the whole run; it shrinks by
        // deg P - deg Q per step.
        int floor = std::min(beta.floor_exp(), 0) - (imax + 2) * ds.r_exp() - ds.deg_q() - ds.deg_p();
        beta = beta.truncated_to(floor);
    }
    for (int i = 0; i <= imax; ++i) {
        out.push_back(beta.frac_part().top_nonzero());
        if (i == imax) break;
        beta = divide_by_poly(beta * ds.P(), ds.Q(), beta.floor_exp() + ds.r_exp());
    }
    return out;
}

/**
 * Whether q^d may be the absolute value of a fractional part along a minimal
 * tail: d must fall in [-j(deg P - deg Q) - deg Q, -j(deg P - deg Q)) for
 * some j >= 1.  For deg P <= 2 deg Q the bands tile everything below the
 * first one.
 */
inline bool minimal_tail_degree(const DigitSystem& ds, int d) {
    int r = ds.r_exp(), n = ds.deg_q();
    for (int j = 1; -j * r >= d; ++j) {
        if (-j * r - n <= d && d <= -j * r - 1) return true;
    }
    return false;
}

/**
 * Depth-bounded minimality classification of a series expansion.  A digit of
 * degree >= deg Q at fractional position j certifies that the value at index
 * j - 1 escapes the allowed bands; the verdict looks at the last such digit
 * within the inspected depth.  `eventually_minimal` false means only that
 * the final inspected digit still violates minimality.
 */
struct MahlerReport {
    int depth = 0;
    std::vector<int> digit_degrees;  // deg s_{-j}, j = 1..depth
    std::vector<int> bad_positions;  // 1-based j with deg s_{-j} >= deg Q
    bool eventually_minimal = false;
    int minimal_from = 0;  // value index i0: fractional values allowed for all inspected i >= i0
};

inline MahlerReport mahler_classify(const DigitSystem& ds, const LaurentSeries& alpha, int depth) {
    MahlerReport rep;
    rep.depth = depth;
    DigitString s = series_expand(ds, alpha, depth);
    int frac = s.fractional_digit_count();
    for (int j = 1; j <= frac; ++j) {
        const Poly& d = s.digits[static_cast<std::size_t>(*s.radix_point + j - 1)];
        rep.digit_degrees.push_back(d.degree());
        if (d.degree() >= ds.deg_q()) rep.bad_positions.push_back(j);
    }
    if (rep.bad_positions.empty()) {
        rep.eventually_minimal = true;
        rep.minimal_from = 0;
    } else if (rep.bad_positions.back() == depth) {
        rep.eventually_minimal = false;
        rep.minimal_from = depth;  // no minimal tail observed within this depth
    } else {
        rep.eventually_minimal = true;
        // Digit position j witnesses value index j - 1; the tail starts just after.
        rep.minimal_from = rep.bad_positions.back();
    }
    return rep;
}

inline MahlerReport mahler_classify(const DigitSystem& ds, const SeriesInput& input, int depth) {
    int floor = -(depth + 1) * ds.r_exp() - ds.deg_q();
    return mahler_classify(ds, input.materialize(floor), depth);
}

}  // namespace pqdigits

#endif
