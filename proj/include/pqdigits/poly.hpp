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

#ifndef PQDIGITS_POLY_HPP
#define PQDIGITS_POLY_HPP

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace pqdigits {

/* Degree of the zero polynomial: a sentinel strictly below every honest degree,
   so degree comparisons need no special-casing. */
inline constexpr int kNegInfDeg = std::numeric_limits<int>::min() / 2;

/** Dense univariate polynomial over a finite field, coefficients stored low degree first. */
class Poly {
  public:
    Poly() = default;

    static Poly zero(FieldSpecPtr f) { return Poly(std::move(f), {}); }
    static Poly one(FieldSpecPtr f) {
        auto e = f->one();
        return Poly(std::move(f), {e});
    }
    static Poly x(FieldSpecPtr f) {
        std::vector<FieldElement> c{f->zero(), f->one()};
        return Poly(std::move(f), std::move(c));
    }
    static Poly x_pow(FieldSpecPtr f, int k) {
        assert(k >= 0);
        std::vector<FieldElement> c(static_cast<std::size_t>(k) + 1, f->zero());
        c.back() = f->one();
        return Poly(std::move(f), std::move(c));
    }
    static Poly constant(FieldSpecPtr f, FieldElement e) {
        if (e.is_zero()) return zero(std::move(f));
        return Poly(std::move(f), {e});
    }
    static Poly from_coeffs(FieldSpecPtr f, std::vector<FieldElement> low_first) {
        return Poly(std::move(f), std::move(low_first));
    }
    static Poly from_packed(const FieldSpecPtr& f, const std::vector<std::uint32_t>& low_first) {
        std::vector<FieldElement> c;
        c.reserve(low_first.size());
        for (auto v : low_first) c.push_back(f->from_packed(v));
        return Poly(f, std::move(c));
    }

    const FieldSpecPtr& spec() const noexcept { return spec_; }
    const FieldSpec* field() const noexcept { return spec_.get(); }

    int degree() const noexcept { return c_.empty() ? kNegInfDeg : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0].is_one(); }

    FieldElement coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return spec_->zero();
        return c_[static_cast<std::size_t>(i)];
    }
    FieldElement leading() const {
        assert(!c_.empty());
        return c_.back();
    }
    const std::vector<FieldElement>& coeffs() const noexcept { return c_; }

    Poly operator+(const Poly& o) const {
        check(o);
        std::vector<FieldElement> c(std::max(c_.size(), o.c_.size()), spec_->zero());
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i < c_.size()) c[i] += c_[i];
            if (i < o.c_.size()) c[i] += o.c_[i];
        }
        return Poly(spec_, std::move(c));
    }
    Poly operator-(const Poly& o) const {
        check(o);
        std::vector<FieldElement> c(std::max(c_.size(), o.c_.size()), spec_->zero());
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i < c_.size()) c[i] += c_[i];
            if (i < o.c_.size()) c[i] -= o.c_[i];
        }
        return Poly(spec_, std::move(c));
    }
    Poly operator-() const {
        std::vector<FieldElement> c(c_);
        for (auto& e : c) e = -e;
        return Poly(spec_, std::move(c));
    }
    Poly operator*(const Poly& o) const {
        check(o);
        if (is_zero() || o.is_zero()) return zero(spec_);
        std::vector<FieldElement> c(c_.size() + o.c_.size() - 1, spec_->zero());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
        }
        return Poly(spec_, std::move(c));
    }
    Poly operator*(FieldElement e) const {
        if (e.is_zero()) return zero(spec_);
        std::vector<FieldElement> c(c_);
        for (auto& x : c) x *= e;
        return Poly(spec_, std::move(c));
    }
    /* Multiply by X^k (k >= 0). */
    Poly shifted_up(int k) const {
        assert(k >= 0);
        if (is_zero()) return *this;
        std::vector<FieldElement> c(c_.size() + static_cast<std::size_t>(k), spec_->zero());
        std::copy(c_.begin(), c_.end(), c.begin() + k);
        return Poly(spec_, std::move(c));
    }

    bool operator==(const Poly& o) const {
        check(o);
        if (c_.size() != o.c_.size()) return false;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != o.c_[i]) return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

  private:
    Poly(FieldSpecPtr f, std::vector<FieldElement> c) : spec_(std::move(f)), c_(std::move(c)) { prune(); }

    void prune() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    void check([[maybe_unused]] const Poly& o) const { assert(spec_.get() == o.spec_.get()); }

    FieldSpecPtr spec_;
    std::vector<FieldElement> c_;
};

/* Quotient and remainder with deg r < deg b.  Throws on division by zero. */
inline std::pair<Poly, Poly> poly_divrem(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const auto& f = a.spec();
    if (a.degree() < b.degree()) return {Poly::zero(f), a};
    auto inv_lead = b.leading().inverse();
    std::vector<FieldElement> rem(a.coeffs());
    std::vector<FieldElement> quo(static_cast<std::size_t>(a.degree() - b.degree()) + 1, f->zero());
    for (int d = a.degree(); d >= b.degree(); --d) {
        FieldElement c = rem[static_cast<std::size_t>(d)];
        if (c.is_zero()) continue;
        FieldElement qc = c * inv_lead;
        quo[static_cast<std::size_t>(d - b.degree())] = qc;
        for (int i = 0; i <= b.degree(); ++i)
            rem[static_cast<std::size_t>(d - b.degree() + i)] -= qc * b.coeff(i);
    }
    return {Poly::from_coeffs(f, std::move(quo)), Poly::from_coeffs(f, std::move(rem))};
}

inline Poly poly_mod(const Poly& a, const Poly& b) { return poly_divrem(a, b).second; }

/* Exact division; throws ShapeError when the remainder is nonzero. */
inline Poly poly_exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = poly_divrem(a, b);
    if (!r.is_zero()) throw ShapeError("polynomial division is not exact");
    return q;
}

/* Monic gcd.  gcd(0, 0) is undefined. */
inline Poly poly_gcd(Poly a, Poly b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd(0, 0) is undefined");
    while (!b.is_zero()) {
        Poly r = poly_mod(a, b);
        a = b;
        b = r;
    }
    return a * a.leading().inverse();
}

inline Poly poly_pow(const Poly& base, unsigned e) {
    Poly acc = Poly::one(base.spec());
    Poly b = base;
    while (e) {
        if (e & 1) acc = acc * b;
        b = b * b;
        e >>= 1;
    }
    return acc;
}

/**
 * The total order on F_q[X] induced by the field's element order: compare by
 * degree first, then coefficients from the highest degree down.  Equivalent to
 * comparing the values of poly_to_index.
 */
inline bool poly_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        std::uint32_t x = a.coeff(i).order_index(), y = b.coeff(i).order_index();
        if (x != y) return x < y;
    }
    return false;
}

struct PolyLess {
    bool operator()(const Poly& a, const Poly& b) const { return poly_less(a, b); }
};

/**
 * Enumeration of F_q[X] compatible with the element order: the polynomial at
 * index q*m + r is X * (polynomial at m) + (element at r).  Index 0 is the zero
 * polynomial, and the first q^k indices are exactly the polynomials of degree
 * below k.
 */
inline Poly index_to_poly(const FieldSpecPtr& f, std::uint64_t n) {
    std::vector<FieldElement> c;
    std::uint64_t q = f->size();
    while (n) {
        c.push_back(f->from_order_index(n % q));
        n /= q;
    }
    return Poly::from_coeffs(f, std::move(c));
}

inline std::uint64_t poly_to_index(const Poly& w) {
    std::uint64_t q = w.spec()->size(), n = 0;
    for (int i = w.degree(); i >= 0; --i) {
        if (n > (std::numeric_limits<std::uint64_t>::max() - q) / q)
            throw std::overflow_error("polynomial index does not fit in 64 bits");
        n = n * q + w.coeff(i).order_index();
    }
    return n;
}

/* ------------------------------------------------------------------ text I/O */

namespace detail {

inline void skip_ws(std::string_view s, std::size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

inline std::uint64_t parse_uint(std::string_view s, std::size_t& i, const char* what) {
    skip_ws(s, i);
    std::uint64_t v = 0;
    auto first = s.data() + i;
    auto res = std::from_chars(first, s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr == first) throw ParseError(std::string("expected ") + what, i);
    i += static_cast<std::size_t>(res.ptr - first);
    return v;
}

/* coeff := int | '[' int (',' int)* ']' ; bracket entries are listed most significant first. */
inline FieldElement parse_coeff(const FieldSpecPtr& f, std::string_view s, std::size_t& i) {
    skip_ws(s, i);
    if (i < s.size() && s[i] == '[') {
        ++i;
        std::vector<std::uint32_t> rev;
        while (true) {
            std::uint64_t v = parse_uint(s, i, "coefficient digit");
            if (v >= f->characteristic()) throw ParseError("coefficient digit out of range", i);
            rev.push_back(static_cast<std::uint32_t>(v));
            skip_ws(s, i);
            if (i < s.size() && s[i] == ',') {
                ++i;
                continue;
            }
            break;
        }
        if (i >= s.size() || s[i] != ']') throw ParseError("expected ']' in coefficient", i);
        ++i;
        if (rev.size() != f->extension_degree()) throw ParseError("coefficient vector has wrong length", i);
        std::vector<std::uint32_t> c(rev.rbegin(), rev.rend());
        return f->from_coeffs(c);
    }
    std::uint64_t v = parse_uint(s, i, "coefficient");
    if (v >= f->characteristic()) throw ParseError("coefficient out of range", i);
    return f->from_packed(static_cast<std::uint32_t>(v));
}

}  // namespace detail

/**
 * Parse `poly := term ('+' term)*` with
 * `term := coeff '*' 'X' ('^' int)? | 'X' ('^' int)? | coeff`.
 * Repeated degrees accumulate.  Throws ParseError with an input position.
 */
inline Poly parse_poly(const FieldSpecPtr& f, std::string_view s) {
    std::size_t i = 0;
    detail::skip_ws(s, i);
    if (i >= s.size()) throw ParseError("empty polynomial", i);
    Poly acc = Poly::zero(f);
    while (true) {
        detail::skip_ws(s, i);
        FieldElement c = f->one();
        bool have_coeff = false;
        if (i >= s.size()) throw ParseError("expected term", i);
        if (s[i] != 'X') {
            c = detail::parse_coeff(f, s, i);
            have_coeff = true;
            detail::skip_ws(s, i);
            if (i < s.size() && s[i] == '*') {
                ++i;
                detail::skip_ws(s, i);
                if (i >= s.size() || s[i] != 'X') throw ParseError("expected 'X' after '*'", i);
            }
        }
        int deg = 0;
        if (i < s.size() && s[i] == 'X') {
            ++i;
            deg = 1;
            detail::skip_ws(s, i);
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::uint64_t d = detail::parse_uint(s, i, "exponent");
                if (d > 4096) throw ParseError("exponent too large", i);
                deg = static_cast<int>(d);
            }
        } else if (!have_coeff) {
            throw ParseError("expected term", i);
        }
        acc = acc + Poly::constant(f, c).shifted_up(deg);
        detail::skip_ws(s, i);
        if (i < s.size() && s[i] == '+') {
            ++i;
            continue;
        }
        break;
    }
    detail::skip_ws(s, i);
    if (i != s.size()) throw ParseError("trailing characters after polynomial", i);
    return acc;
}

inline std::string format_poly(const Poly& w) {
    if (w.is_zero()) return "0";
    std::string out;
    for (int d = w.degree(); d >= 0; --d) {
        FieldElement c = w.coeff(d);
        if (c.is_zero()) continue;
        if (!out.empty()) out += "+";
        if (d == 0) {
            out += c.text();
        } else {
            if (!c.is_one()) {
                out += c.text();
                out += "*";
            }
            out += "X";
            if (d > 1) {
                out += "^";
                out += std::to_string(d);
            }
        }
    }
    return out;
}

/**
 * Field flag format: "p" for a prime field, "p^s:modulus" for F_{p^s} with a
 * monic irreducible modulus of degree s written as a polynomial over F_p.
 */
inline FieldSpecPtr parse_field_spec(std::string_view s) {
    std::size_t i = 0;
    std::uint64_t p = detail::parse_uint(s, i, "field characteristic");
    detail::skip_ws(s, i);
    try {
        if (i == s.size()) return FieldSpec::make_prime(static_cast<std::uint32_t>(p));
        if (s[i] != '^') throw ParseError("expected '^' or end of field spec", i);
        ++i;
        std::uint64_t deg = detail::parse_uint(s, i, "extension degree");
        detail::skip_ws(s, i);
        if (i >= s.size() || s[i] != ':') throw ParseError("expected ':modulus' in field spec", i);
        ++i;
        auto fp = FieldSpec::make_prime(static_cast<std::uint32_t>(p));
        Poly mod = parse_poly(fp, s.substr(i));
        if (mod.degree() != static_cast<int>(deg)) throw ParseError("modulus degree does not match field spec", i);
        std::vector<std::uint32_t> coeffs;
        for (int d = 0; d <= mod.degree(); ++d) coeffs.push_back(mod.coeff(d).packed());
        return FieldSpec::make_extension(static_cast<std::uint32_t>(p), coeffs);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("invalid field spec: ") + e.what(), i);
    }
}

inline std::string field_spec_text(const FieldSpec& f) {
    if (f.extension_degree() == 1) return std::to_string(f.characteristic());
    auto fp = FieldSpec::make_prime(f.characteristic());
    std::string mod = format_poly(Poly::from_packed(fp, f.modulus()));
    return std::to_string(f.characteristic()) + "^" + std::to_string(f.extension_degree()) + ":" + mod;
}

}  // namespace pqdigits

#endif
