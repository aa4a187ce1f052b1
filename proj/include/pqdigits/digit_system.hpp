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

#ifndef PQDIGITS_DIGIT_SYSTEM_HPP
#define PQDIGITS_DIGIT_SYSTEM_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"
#include "rational.hpp"

namespace pqdigits {

inline constexpr std::uint64_t kDefaultEnumBudget = 1ull << 20;

/**
 * A digit string s_k ... s_0 (most significant digit first), optionally with a
 * radix point.  radix_point, when present, is the number of digits before the
 * point, so the digits after it carry negative indices -1, -2, ...
 * Pre-radix-free strings ("." first) are how fractional series expansions with
 * zero integer part are represented.  `truncated` marks series expansions,
 * which are always finite cuts of an infinite string.
 */
struct DigitString {
    std::vector<Poly> digits;
    std::optional<int> radix_point;
    bool truncated = false;

    int size() const noexcept { return static_cast<int>(digits.size()); }
    int integer_digit_count() const noexcept { return radix_point.value_or(size()); }
    int fractional_digit_count() const noexcept { return size() - integer_digit_count(); }

    bool operator==(const DigitString& o) const { return digits == o.digits && radix_point == o.radix_point; }
    bool operator!=(const DigitString& o) const { return !(*this == o); }
};

inline std::string format_digit_string(const DigitString& s) {
    std::string out;
    for (int i = 0; i < s.size(); ++i) {
        if (s.radix_point && *s.radix_point == i) out += ".";
        else if (i != 0) out += ",";
        out += format_poly(s.digits[static_cast<std::size_t>(i)]);
    }
    if (s.radix_point && *s.radix_point == s.size()) out += ".";
    return out;
}

inline DigitString parse_digit_string(const FieldSpecPtr& f, std::string_view text) {
    DigitString out;
    std::size_t dot = text.find('.');
    if (dot != std::string_view::npos && text.find('.', dot + 1) != std::string_view::npos)
        throw ParseError("more than one radix point in digit string", dot);
    auto parse_part = [&](std::string_view part, std::size_t base_pos) {
        std::size_t start = 0;
        while (start <= part.size()) {
            std::size_t comma = part.find(',', start);
            std::string_view tok = part.substr(start, comma == std::string_view::npos ? part.size() - start : comma - start);
            try {
                out.digits.push_back(parse_poly(f, tok));
            } catch (const ParseError& e) {
                throw ParseError("bad digit in digit string", base_pos + start + e.position());
            }
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
    };
    if (dot == std::string_view::npos) {
        if (text.empty()) throw ParseError("empty digit string", 0);
        parse_part(text, 0);
    } else {
        std::string_view head = text.substr(0, dot), tail = text.substr(dot + 1);
        if (head.empty() && tail.empty()) throw ParseError("empty digit string", 0);
        if (!head.empty()) parse_part(head, 0);
        out.radix_point = static_cast<int>(out.digits.size());
        if (!tail.empty()) parse_part(tail, dot + 1);
    }
    return out;
}

/* Strip leading zero digits of a plain (un-pointed) string, keeping at least one digit. */
inline DigitString normalize_digits(DigitString s) {
    assert(!s.radix_point);
    std::size_t lead = 0;
    while (lead + 1 < s.digits.size() && s.digits[lead].is_zero()) ++lead;
    s.digits.erase(s.digits.begin(), s.digits.begin() + static_cast<std::ptrdiff_t>(lead));
    return s;
}

/**
 * A digit system with base P/Q over F_q: P, Q nonzero coprime polynomials with
 * deg P > deg Q >= 0.  The digit set D is every polynomial of degree below
 * deg P, so |D| = q^{deg P}; every vertex of the expansion graph has
 * branching() = q^{deg P - deg Q} outgoing edges.
 */
class DigitSystem {
  public:
    DigitSystem(Poly p, Poly q) : p_(std::move(p)), q_(std::move(q)) {
        assert(p_.spec().get() == q_.spec().get());
        if (p_.is_zero() || q_.is_zero()) throw InvalidSystemError("digit system requires nonzero P and Q");
        if (p_.degree() <= q_.degree())
            throw InvalidSystemError("digit system requires deg P > deg Q");
        if (poly_gcd(p_, q_).degree() > 0)
            throw InvalidSystemError("digit system requires P and Q to be coprime");
    }

    const FieldSpecPtr& spec() const noexcept { return p_.spec(); }
    const FieldSpec* field() const noexcept { return p_.field(); }
    const Poly& P() const noexcept { return p_; }
    const Poly& Q() const noexcept { return q_; }

    int deg_p() const noexcept { return p_.degree(); }
    int deg_q() const noexcept { return q_.degree(); }
    /* Degree drop per digit: deg P - deg Q. */
    int r_exp() const noexcept { return p_.degree() - q_.degree(); }

    /* Number of outgoing edges of every expansion-graph vertex, q^{r_exp}. */
    std::uint64_t branching() const { return checked_pow(static_cast<std::uint64_t>(r_exp())); }
    /* |D| = q^{deg P}. */
    std::uint64_t digit_count() const { return checked_pow(static_cast<std::uint64_t>(deg_p())); }

    bool is_digit(const Poly& w) const noexcept { return w.degree() < deg_p(); }
    Poly digit_by_index(std::uint64_t i) const { return index_to_poly(spec(), i); }

    RationalFunction base() const { return RationalFunction(p_, q_); }

  private:
    std::uint64_t checked_pow(std::uint64_t e) const {
        std::uint64_t q = spec()->size(), acc = 1;
        for (std::uint64_t i = 0; i < e; ++i) {
            if (acc > (1ull << 62) / q) throw BudgetError("digit set too large to enumerate");
            acc *= q;
        }
        return acc;
    }

    Poly p_, q_;
};

/**
 * Canonical expansion of a polynomial: the unique digit string s_k ... s_0 with
 * w = sum (s_i/Q) (P/Q)^i.  Each step divides Q*w by P; the digit is the
 * remainder and the quotient strictly drops in degree.  The expansion of 0 is
 * the single-digit string (0).
 */
inline DigitString expand_poly(const DigitSystem& ds, const Poly& w) {
    DigitString out;
    if (w.is_zero()) {
        out.digits.push_back(Poly::zero(ds.spec()));
        return out;
    }
    Poly cur = w;
    while (!cur.is_zero()) {
        auto [quo, rem] = poly_divrem(ds.Q() * cur, ds.P());
        out.digits.push_back(rem);
        cur = quo;
    }
    std::reverse(out.digits.begin(), out.digits.end());
    return out;
}

/**
 * Value of a digit string: sum over digit positions i of (s_i/Q) (P/Q)^i,
 * where positions count down from the most significant digit and turn negative
 * after the radix point.  Returns a reduced rational function.
 */
inline RationalFunction evaluate(const DigitSystem& ds, const DigitString& s) {
    if (s.digits.empty()) throw std::invalid_argument("cannot evaluate an empty digit string");
    RationalFunction base = ds.base();
    RationalFunction acc(Poly::zero(ds.spec()));
    for (const Poly& d : s.digits) acc = acc * base + RationalFunction(d, ds.Q());
    int frac = s.fractional_digit_count();
    if (frac > 0) acc = acc.times_pow(base, -frac);
    return acc;
}

/* One step of the backward-division map: w -> floor of (Q/P) * w, i.e. the quotient of Q*w by P. */
inline Poly step_T(const DigitSystem& ds, const Poly& w) { return poly_divrem(ds.Q() * w, ds.P()).first; }

/* m-th digit of the expansion of w (zero beyond the expansion's length). */
inline Poly digit_function(const DigitSystem& ds, int m, const Poly& w) {
    assert(m >= 0);
    Poly cur = w;
    for (int i = 0; i < m; ++i) cur = step_T(ds, cur);
    return poly_mod(ds.Q() * cur, ds.P());
}

/* True iff s is exactly the canonical expansion of its own value. */
inline bool is_canonical_string(const DigitSystem& ds, const DigitString& s) {
    if (s.digits.empty() || s.radix_point) return false;
    RationalFunction v = evaluate(ds, s);
    if (!v.is_polynomial()) return false;
    return expand_poly(ds, v.num()) == s;
}

/**
 * All length-k digit suffixes s such that the expansion of v extended by s is
 * again a valid expansion prefix (equivalently: a path of the expansion graph
 * continues from v with labels s).  Leading zeros of the combined string are
 * ignored when testing canonicity, which only matters for v = 0.  Candidates
 * are enumerated exhaustively, q^{k deg P} of them, guarded by `budget`.
 */
inline std::vector<DigitString> right_extensions(const DigitSystem& ds, const Poly& v, int k,
                                                 std::uint64_t budget = kDefaultEnumBudget) {
    assert(k >= 1);
    std::uint64_t digit_count = ds.digit_count(), total = 1;
    for (int i = 0; i < k; ++i) {
        if (total > budget / digit_count) throw BudgetError("right_extensions candidate count exceeds budget");
        total *= digit_count;
    }
    DigitString base = expand_poly(ds, v);
    std::vector<DigitString> found;
    std::vector<std::uint64_t> odo(static_cast<std::size_t>(k), 0);
    for (std::uint64_t t = 0; t < total; ++t) {
        DigitString cand = base;
        for (auto idx : odo) cand.digits.push_back(ds.digit_by_index(idx));
        if (is_canonical_string(ds, normalize_digits(cand))) {
            DigitString suffix;
            suffix.digits.assign(cand.digits.end() - k, cand.digits.end());
            found.push_back(std::move(suffix));
        }
        for (int i = k; i-- > 0;) {
            if (++odo[static_cast<std::size_t>(i)] < digit_count) break;
            odo[static_cast<std::size_t>(i)] = 0;
        }
    }
    std::sort(found.begin(), found.end(), [](const DigitString& a, const DigitString& b) {
        for (std::size_t i = 0; i < a.digits.size(); ++i) {
            if (a.digits[i] != b.digits[i]) return poly_less(a.digits[i], b.digits[i]);
        }
        return false;
    });
    return found;
}

/* Digitwise sum of two plain expansions; expansions add without carries. */
inline DigitString digitwise_add(const DigitSystem& ds, const DigitString& a, const DigitString& b) {
    assert(!a.radix_point && !b.radix_point);
    std::size_t len = std::max(a.digits.size(), b.digits.size());
    DigitString out;
    out.digits.assign(len, Poly::zero(ds.spec()));
    for (std::size_t i = 0; i < len; ++i) {
        std::size_t pos = len - 1 - i;
        Poly sum = Poly::zero(ds.spec());
        if (i < a.digits.size()) sum = sum + a.digits[a.digits.size() - 1 - i];
        if (i < b.digits.size()) sum = sum + b.digits[b.digits.size() - 1 - i];
        out.digits[pos] = sum;
    }
    return normalize_digits(out);
}

/* Digitwise scalar multiple of an expansion. */
inline DigitString digitwise_scale(const DigitSystem& ds, const DigitString& a, FieldElement c) {
    assert(!a.radix_point);
    (void)ds;
    DigitString out;
    out.digits.reserve(a.digits.size());
    for (const Poly& d : a.digits) out.digits.push_back(d * c);
    return normalize_digits(out);
}

}  // namespace pqdigits

#endif
