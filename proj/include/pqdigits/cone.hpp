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

#ifndef PQDIGITS_CONE_HPP
#define PQDIGITS_CONE_HPP

// Bivariate series in a base indeterminate b and the variable X whose
// supports live in translates of one of two lattice cones.  The linear
// polynomial f = Q*b - P is a unit in both cone rings, with geometric-series
// inverses anchored at its P term and at its Q term.  Floor/fractional
// splits of products with these inverses give closed formulas for digit
// expansions of polynomials and of Laurent series, plus the reverse maps
// that evaluate an expansion back at b = P/Q.

#include <algorithm>
#include <cassert>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pqdigits/digit_system.hpp"
#include "pqdigits/errors.hpp"
#include "pqdigits/field.hpp"
#include "pqdigits/laurent.hpp"
#include "pqdigits/poly.hpp"

namespace pqdigits {

// A1 is spanned by (0,-1) and (1,-r); A2 by (0,-1) and (-1,r), where
// r = deg P - deg Q.  Both cones are bounded above by a line of slope -r in
// the (b-exponent, X-exponent) plane and extend to the right (A1) or to the
// left (A2).
enum class Cone { A1, A2 };

inline constexpr int kConeExactOrder = std::numeric_limits<int>::max() / 4;

class ConeSeries {
public:
    using Key = std::pair<int, int>;  // (b-exponent, X-exponent)
    using TermMap = std::map<Key, FieldElement>;

    static ConeSeries zero(FieldSpecPtr f, Cone c, int r) { return ConeSeries(std::move(f), c, r); }

    static ConeSeries monomial(FieldSpecPtr f, Cone c, int r, int i, int j, FieldElement coeff) {
        ConeSeries out(f, c, r);
        if (coeff.is_zero()) return out;
        out.terms_.emplace(Key{i, j}, coeff);
        out.anchor_i_ = i;
        out.anchor_j_ = j;
        out.max_x_ = j;
        return out;
    }

    static ConeSeries one(FieldSpecPtr f, Cone c, int r) {
        auto e = f->one();
        return monomial(std::move(f), c, r, 0, 0, e);
    }

    static ConeSeries embed_poly(Cone c, int r, const Poly& w, int column = 0) {
        ConeSeries out(w.spec(), c, r);
        if (w.is_zero()) return out;
        for (int j = 0; j <= w.degree(); ++j) {
            FieldElement e = w.coeff(j);
            if (!e.is_zero()) out.terms_.emplace(Key{column, j}, e);
        }
        out.anchor_i_ = column;
        out.anchor_j_ = w.degree();
        out.max_x_ = w.degree();
        return out;
    }

    // Places a one-variable Laurent series at a fixed b-column.  A window
    // series yields a truncation: coefficients below the window floor are
    // beyond the recorded order.
    static ConeSeries embed_series(Cone c, int r, const LaurentSeries& s, int column = 0) {
        ConeSeries out(s.spec(), c, r);
        if (s.is_exact_zero()) return out;
        for (int j = s.floor_exp(); j <= s.top(); ++j) {
            FieldElement e = s.coeff(j);
            if (!e.is_zero()) out.terms_.emplace(Key{column, j}, e);
        }
        out.anchor_i_ = column;
        out.anchor_j_ = std::max(s.top(), s.floor_exp());
        out.max_x_ = out.anchor_j_;
        if (!s.exact()) out.order_ = out.ord_of(column, s.floor_exp()) + 1;
        out.prune();
        return out;
    }

    // Empty truncation frame: nothing stored, everything below `order` known
    // to vanish, support (if any exists beyond the order) confined to the
    // declared cone translate and X-degree bound.
    static ConeSeries unknown_window(FieldSpecPtr f, Cone c, int r, int order, int anchor_i,
                                     int anchor_j, int max_x) {
        ConeSeries out(std::move(f), c, r);
        out.order_ = order;
        out.anchor_i_ = anchor_i;
        out.anchor_j_ = anchor_j;
        out.max_x_ = max_x;
        return out;
    }

    // Rehomes an exact series in the other cone, recomputing the declared
    // anchor from the stored support.
    static ConeSeries retag_exact(const ConeSeries& s, Cone c) {
        if (!s.exact()) throw std::invalid_argument("only exact cone series can be retagged");
        ConeSeries out(s.spec_, c, s.r_);
        out.terms_ = s.terms_;
        out.recompute_anchor_from_terms();
        return out;
    }

    FieldSpecPtr spec() const { return spec_; }
    Cone cone() const noexcept { return cone_; }
    int r() const noexcept { return r_; }
    int order() const noexcept { return order_; }
    bool exact() const noexcept { return order_ >= kConeExactOrder; }
    bool is_known_zero() const noexcept { return terms_.empty() && exact(); }
    std::pair<int, int> anchor() const noexcept { return {anchor_i_, anchor_j_}; }
    int max_x() const noexcept { return max_x_; }
    const TermMap& terms() const noexcept { return terms_; }

    // The grading functional: nonnegative on the cone, each generator step
    // counts one.  A1: (1-r)i - j.  A2: -(r+1)i - j.
    int ord_of(int i, int j) const noexcept {
        return (cone_ == Cone::A1) ? (1 - r_) * i - j : -(r_ + 1) * i - j;
    }

    // Lower bound of the grading over the full (possibly unknown) support.
    int ord_lower_bound() const noexcept {
        if (is_known_zero()) return kConeExactOrder;
        return ord_of(anchor_i_, anchor_j_);
    }

    bool member(int i, int j) const noexcept {
        int di = i - anchor_i_;
        if (cone_ == Cone::A1 ? di < 0 : di > 0) return false;
        return j - anchor_j_ <= -r_ * di;
    }

    bool supported_in_declared_cone() const noexcept {
        for (const auto& [k, v] : terms_) {
            (void)v;
            if (!member(k.first, k.second)) return false;
        }
        return true;
    }

    FieldElement coeff(int i, int j) const {
        auto it = terms_.find(Key{i, j});
        if (it != terms_.end()) return it->second;
        if (ord_of(i, j) >= order_)
            throw PrecisionError("cone series coefficient lies beyond the truncation order");
        return spec_->zero();
    }

    int stored_min_col() const noexcept {
        return terms_.empty() ? 0 : terms_.begin()->first.first;
    }
    int stored_max_col() const noexcept {
        return terms_.empty() ? 0 : terms_.rbegin()->first.first;
    }

    // Best X-degree bound for column i over the true support; nullopt when
    // the column lies outside the anchored cone and is therefore zero.
    std::optional<int> column_top_bound(int i) const {
        if (is_known_zero()) return std::nullopt;
        int di = i - anchor_i_;
        if (cone_ == Cone::A1 ? di < 0 : di > 0) return std::nullopt;
        return std::min(max_x_, anchor_j_ - r_ * di);
    }

    // The column as a one-variable series with an honest window: exact when
    // this series is exact, otherwise floored where the grading crosses the
    // truncation order.
    LaurentSeries column_series(int i) const {
        if (!column_top_bound(i).has_value()) return LaurentSeries::zero(spec_);
        auto lo = terms_.lower_bound(Key{i, std::numeric_limits<int>::min()});
        auto hi = terms_.lower_bound(Key{i + 1, std::numeric_limits<int>::min()});
        if (exact()) {
            if (lo == hi) return LaurentSeries::zero(spec_);
            int floor = lo->first.second;
            int top = std::prev(hi)->first.second;
            std::vector<FieldElement> cs(static_cast<std::size_t>(top - floor + 1), spec_->zero());
            for (auto it = lo; it != hi; ++it)
                cs[static_cast<std::size_t>(it->first.second - floor)] = it->second;
            return LaurentSeries::from_window(spec_, floor, std::move(cs), true);
        }
        int cut = ((cone_ == Cone::A1) ? (1 - r_) * i : -(r_ + 1) * i) - order_;
        int floor = cut + 1;
        int top = (lo == hi) ? floor - 1 : std::prev(hi)->first.second;
        std::vector<FieldElement> cs;
        if (top >= floor) {
            cs.assign(static_cast<std::size_t>(top - floor + 1), spec_->zero());
            for (auto it = lo; it != hi; ++it) {
                assert(it->first.second >= floor);
                cs[static_cast<std::size_t>(it->first.second - floor)] = it->second;
            }
        }
        return LaurentSeries::from_window(spec_, floor, std::move(cs), false);
    }

    ConeSeries operator-() const {
        ConeSeries out = *this;
        for (auto& [k, v] : out.terms_) {
            (void)k;
            v = -v;
        }
        return out;
    }

    ConeSeries operator+(const ConeSeries& o) const {
        check_compatible(o);
        if (is_known_zero()) return o;
        if (o.is_known_zero()) return *this;
        ConeSeries out = *this;
        out.order_ = std::min(order_, o.order_);
        int c1 = anchor_j_ + r_ * anchor_i_;
        int c2 = o.anchor_j_ + r_ * o.anchor_i_;
        out.anchor_i_ = (cone_ == Cone::A1) ? std::min(anchor_i_, o.anchor_i_)
                                            : std::max(anchor_i_, o.anchor_i_);
        out.anchor_j_ = std::max(c1, c2) - r_ * out.anchor_i_;
        out.max_x_ = std::max(max_x_, o.max_x_);
        for (const auto& [k, v] : o.terms_) {
            auto it = out.terms_.find(k);
            if (it == out.terms_.end())
                out.terms_.emplace(k, v);
            else
                it->second = it->second + v;
        }
        out.prune();
        return out;
    }

    ConeSeries operator-(const ConeSeries& o) const { return *this + (-o); }

    ConeSeries operator*(const ConeSeries& o) const {
        check_compatible(o);
        if (is_known_zero() || o.is_known_zero()) return zero(spec_, cone_, r_);
        ConeSeries out(spec_, cone_, r_);
        out.order_ = std::min(sat_order(order_, o.ord_lower_bound()),
                              sat_order(o.order_, ord_lower_bound()));
        out.anchor_i_ = anchor_i_ + o.anchor_i_;
        out.anchor_j_ = anchor_j_ + o.anchor_j_;
        out.max_x_ = max_x_ + o.max_x_;
        for (const auto& [ka, va] : terms_) {
            for (const auto& [kb, vb] : o.terms_) {
                Key k{ka.first + kb.first, ka.second + kb.second};
                FieldElement p = va * vb;
                auto it = out.terms_.find(k);
                if (it == out.terms_.end())
                    out.terms_.emplace(k, p);
                else
                    it->second = it->second + p;
            }
        }
        out.prune();
        return out;
    }

    ConeSeries operator*(FieldElement e) const {
        if (e.is_zero()) return zero(spec_, cone_, r_);
        ConeSeries out = *this;
        for (auto& [k, v] : out.terms_) {
            (void)k;
            v = v * e;
        }
        return out;
    }

    ConeSeries truncated(int order) const {
        ConeSeries out = *this;
        out.order_ = std::min(out.order_, order);
        out.prune();
        return out;
    }

    // Marks the series exact.  Callers use this where a support argument
    // proves that every term beyond the recorded order vanishes.
    ConeSeries promoted_exact() const {
        ConeSeries out = *this;
        out.order_ = kConeExactOrder;
        return out;
    }

    bool same_terms(const ConeSeries& o) const {
        return terms_.size() == o.terms_.size() &&
               std::equal(terms_.begin(), terms_.end(), o.terms_.begin(),
                          [](const auto& a, const auto& b) {
                              return a.first == b.first && a.second == b.second;
                          });
    }

    std::string dump() const {
        std::ostringstream os;
        os << "cone=" << (cone_ == Cone::A1 ? "A1" : "A2") << " r=" << r_ << " anchor=("
           << anchor_i_ << "," << anchor_j_ << ")";
        if (exact())
            os << " order=exact";
        else
            os << " order=" << order_;
        os << " max_x=" << max_x_ << "\n";
        for (const auto& [k, v] : terms_)
            os << "(" << k.first << "," << k.second << "," << v.text() << ")\n";
        return os.str();
    }

    // Splits along the sign of the b-exponent (first: >= 0) or of the
    // X-exponent.  Order, anchor and degree bounds remain valid for subsets
    // of the support.
    std::pair<ConeSeries, ConeSeries> split_by_b() const {
        ConeSeries fl = *this, fr = *this;
        for (auto it = fl.terms_.begin(); it != fl.terms_.end();)
            it = (it->first.first < 0) ? fl.terms_.erase(it) : std::next(it);
        for (auto it = fr.terms_.begin(); it != fr.terms_.end();)
            it = (it->first.first >= 0) ? fr.terms_.erase(it) : std::next(it);
        return {fl, fr};
    }

    std::pair<ConeSeries, ConeSeries> split_by_X() const {
        ConeSeries fl = *this, fr = *this;
        for (auto it = fl.terms_.begin(); it != fl.terms_.end();)
            it = (it->first.second < 0) ? fl.terms_.erase(it) : std::next(it);
        for (auto it = fr.terms_.begin(); it != fr.terms_.end();)
            it = (it->first.second >= 0) ? fr.terms_.erase(it) : std::next(it);
        return {fl, fr};
    }

private:
    ConeSeries(FieldSpecPtr f, Cone c, int r) : spec_(std::move(f)), cone_(c), r_(r) {
        assert(r_ >= 1);
    }

    void check_compatible(const ConeSeries& o) const {
        if (cone_ != o.cone_ || r_ != o.r_)
            throw std::invalid_argument("cone series operands use different cones");
    }

    // Knowledge threshold of a product term: an exact factor contributes no
    // uncertainty, otherwise its order shifts by the other factor's least
    // possible grading.
    static int sat_order(int order, int pmin) {
        if (order >= kConeExactOrder) return kConeExactOrder;
        long long s = static_cast<long long>(order) + pmin;
        if (s >= kConeExactOrder) return kConeExactOrder;
        if (s <= -kConeExactOrder) return -kConeExactOrder;
        return static_cast<int>(s);
    }

    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second.is_zero() ||
                (!exact() && ord_of(it->first.first, it->first.second) >= order_))
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    void recompute_anchor_from_terms() {
        if (terms_.empty()) {
            anchor_i_ = anchor_j_ = 0;
            max_x_ = 0;
            return;
        }
        int ai = terms_.begin()->first.first;
        int c = std::numeric_limits<int>::min();
        int mx = std::numeric_limits<int>::min();
        for (const auto& [k, v] : terms_) {
            (void)v;
            ai = (cone_ == Cone::A1) ? std::min(ai, k.first) : std::max(ai, k.first);
            c = std::max(c, k.second + r_ * k.first);
            mx = std::max(mx, k.second);
        }
        anchor_i_ = ai;
        anchor_j_ = c - r_ * ai;
        max_x_ = mx;
    }

    FieldSpecPtr spec_;
    Cone cone_;
    int r_;
    TermMap terms_;
    int order_ = kConeExactOrder;
    int anchor_i_ = 0;
    int anchor_j_ = 0;
    int max_x_ = 0;
};

inline bool equal_up_to(const ConeSeries& a, const ConeSeries& b, int order) {
    if (a.order() < order || b.order() < order)
        throw PrecisionError("cone series not known to the comparison order");
    for (const auto& [k, v] : a.terms())
        if (a.ord_of(k.first, k.second) < order && !(b.coeff(k.first, k.second) == v)) return false;
    for (const auto& [k, v] : b.terms())
        if (b.ord_of(k.first, k.second) < order && !(a.coeff(k.first, k.second) == v)) return false;
    return true;
}

inline std::pair<ConeSeries, ConeSeries> floor_frac_b(const ConeSeries& s) {
    return s.split_by_b();
}

inline std::pair<ConeSeries, ConeSeries> floor_frac_X(const ConeSeries& s) {
    return s.split_by_X();
}

// f = Q*b - P as an element of either cone ring.  Its anchor is (0, deg P)
// in A1 and (1, deg Q) in A2.
inline ConeSeries cone_f(const DigitSystem& ds, Cone c) {
    int r = ds.r_exp();
    ConeSeries qb = ConeSeries::embed_poly(c, r, ds.Q(), 1);
    ConeSeries p = ConeSeries::embed_poly(c, r, ds.P(), 0);
    return qb - p;
}

/**
 * Truncated multiplicative inverse of f = Q*b - P.  In A1 the inverse is
 * anchored at the P term: (-X^{-m}/p_m) * sum_i (1 + f X^{-m}/p_m)^i.  In A2
 * it is anchored at the Q term: (X^{-n} b^{-1}/q_n) * sum_i
 * (1 - f X^{-n} b^{-1}/q_n)^i.  The geometric sum is iterated until every
 * term of grading below `order` is stable.
 */
inline ConeSeries inv_f(const DigitSystem& ds, Cone which, int order) {
    if (order < 1) throw std::invalid_argument("inverse truncation order must be positive");
    if (order > 20000) throw BudgetError("inverse truncation order too large");
    auto f = ds.spec();
    int r = ds.r_exp(), m = ds.deg_p(), n = ds.deg_q();
    ConeSeries F = cone_f(ds, which);
    ConeSeries pref = (which == Cone::A1)
                          ? ConeSeries::monomial(f, which, r, 0, -m, -(ds.P().leading().inverse()))
                          : ConeSeries::monomial(f, which, r, -1, -n, ds.Q().leading().inverse());
    ConeSeries ratio = (which == Cone::A1)
                           ? ConeSeries::one(f, which, r) +
                                 F * ConeSeries::monomial(f, which, r, 0, -m,
                                                          ds.P().leading().inverse())
                           : ConeSeries::one(f, which, r) - F * pref;
    int krel = order - ((which == Cone::A1) ? m : r + 1 + n);
    ConeSeries sum = ConeSeries::one(f, which, r);
    for (int t = 0; t < krel; ++t) {
        ConeSeries next = (ConeSeries::one(f, which, r) + ratio * sum).truncated(krel);
        if (next.same_terms(sum)) {
            sum = next;
            break;
        }
        sum = next;
    }
    return (pref * sum).truncated(order);
}

namespace detail {

// The digit polynomial of w: sum_i s_i b^i where s_k ... s_0 is the digit
// string of w.  Computed exactly as Qw - f * floor_X(f^{-1}_{A1} * Qw); the
// X-floor is provably complete because the product is anchored at
// nonnegative b-exponents and known below grading 2, while every term at
// nonnegative exponents in both variables has grading at most 0.
inline ConeSeries pdb_base(const DigitSystem& ds, const Poly& w) {
    assert(!w.is_zero());
    int r = ds.r_exp(), m = ds.deg_p();
    Poly qw = ds.Q() * w;
    int order_p = std::max(qw.degree(), m) + 2;
    ConeSeries g = inv_f(ds, Cone::A1, order_p) * ConeSeries::embed_poly(Cone::A1, r, qw, 0);
    assert(g.order() >= 1 && g.anchor().first >= 0);
    ConeSeries h = floor_frac_X(g).first.promoted_exact();
    ConeSeries e = ConeSeries::embed_poly(Cone::A1, r, qw, 0) - cone_f(ds, Cone::A1) * h;
    if (!e.exact()) throw ShapeError("digit polynomial computation lost exactness");
    for (const auto& [key, val] : e.terms()) {
        (void)val;
        if (key.first < 0 || key.second < 0 || key.second >= m)
            throw ShapeError("digit polynomial computation left the expected support");
    }
    return e;
}

inline int cone_input_floor(const DigitSystem& ds, int shift, int columns) {
    int r = ds.r_exp();
    return -((r + 1) * (columns + 2) + ds.deg_p() + ds.deg_q() + 6) - shift * r;
}

}  // namespace detail

/**
 * Digit string of a polynomial computed by the closed formula rather than
 * the division algorithm.
 */
inline DigitString cone_expand_poly(const DigitSystem& ds, const Poly& w) {
    DigitString out;
    if (w.is_zero()) {
        out.digits.push_back(Poly::zero(ds.spec()));
        return out;
    }
    ConeSeries e = detail::pdb_base(ds, w);
    for (int i = e.stored_max_col(); i >= 0; --i) {
        LaurentSeries col = e.column_series(i);
        if (!col.frac_part().is_exact_zero())
            throw ShapeError("digit polynomial has a column with negative exponents");
        Poly d = col.floor_part();
        if (!ds.is_digit(d)) throw ShapeError("digit polynomial column is not a digit");
        out.digits.push_back(d);
    }
    return out;
}

/**
 * The expansion of w as a polynomial in b with coefficients s_i / Q, i.e.
 * the object that evaluates to w when b is replaced by P/Q.  Exact when Q
 * divides every digit (in particular for monomial Q up to scaling);
 * otherwise truncated at `order` (chosen automatically when negative).
 */
inline ConeSeries pdb_formula(const DigitSystem& ds, const Poly& w, int order = -1) {
    auto f = ds.spec();
    int r = ds.r_exp();
    if (w.is_zero()) return ConeSeries::zero(f, Cone::A2, r);
    ConeSeries e = ConeSeries::retag_exact(detail::pdb_base(ds, w), Cone::A2);
    if (order < 0)
        order = (r + 1) * (e.stored_max_col() + 2) + 2 * (ds.deg_p() + ds.deg_q()) + 8;
    int pmin = std::min(e.ord_lower_bound(), 0);
    LaurentSeries invq =
        LaurentSeries::from_rational(Poly::one(f), ds.Q(), -(order - pmin + 1));
    return e * ConeSeries::embed_series(Cone::A2, r, invq, 0);
}

/**
 * Recovers the polynomial from its expansion-in-b by evaluating at b = P/Q
 * through the Q-anchored inverse: w = y - f * floor_b(f^{-1}_{A2} * y).
 * Throws ShapeError when y is not shaped like a polynomial expansion.
 */
inline Poly eval_back_poly(const DigitSystem& ds, const ConeSeries& y) {
    auto f = ds.spec();
    if (y.cone() != Cone::A2)
        throw std::invalid_argument("polynomial expansions are expected in the left cone");
    if (y.is_known_zero()) return Poly::zero(f);
    if (y.stored_min_col() < 0)
        throw ShapeError("expansion has negative base exponents");
    int r = ds.r_exp();
    int k = std::max(y.stored_max_col(), 0);
    int order_q = (r + 1) * (k + 2) + 2 * (ds.deg_p() + ds.deg_q()) + 8;
    for (int attempt = 0;; ++attempt) {
        try {
            ConeSeries z = inv_f(ds, Cone::A2, order_q);
            std::vector<LaurentSeries> zc;  // columns 0 .. k-1 of f^{-1} * y
            for (int c = 0; c < k; ++c) {
                LaurentSeries acc = LaurentSeries::zero(f);
                for (int a = c - k; a <= -1; ++a)
                    acc = acc + z.column_series(a) * y.column_series(c - a);
                zc.push_back(acc);
            }
            std::optional<Poly> result;
            for (int c = 0; c <= k; ++c) {
                LaurentSeries wc = y.column_series(c);
                if (c - 1 >= 0 && c - 1 < k) wc = wc - zc[static_cast<std::size_t>(c - 1)] * ds.Q();
                if (c < k) wc = wc + zc[static_cast<std::size_t>(c)] * ds.P();
                if (c == 0) {
                    Poly p = wc.floor_part();
                    if (!wc.frac_part().window_all_zero())
                        throw ShapeError("expansion does not evaluate to a polynomial");
                    result = p;
                } else if (!wc.window_all_zero()) {
                    throw ShapeError("expansion leaves residue at a positive base exponent");
                }
            }
            return *result;
        } catch (const PrecisionError&) {
            if (attempt >= 2) throw;
            order_q *= 2;
        }
    }
}

/**
 * Two-sided digit expansion of a Laurent series computed by the closed
 * formula: the columns of floor_X(f^{-1}_{A2} * Q * alpha) are the vertex
 * polynomials v_{-1} = 0, v_{-2}, ..., and the digits follow as
 * s_{-i} = Q v_{-i-1} - P v_{-i}.  Inputs with nonnegative degree are first
 * scaled down by (P/Q)^k, which shifts the expansion by b^k and turns the
 * leading k digits into the integer part.
 */
struct ConeExpansion {
    int shift = 0;               // the b^k normalization exponent
    std::vector<Poly> vertices;  // vertices[t] = v_{-(t+1)} of the scaled series
    DigitString digits;          // radix point after `shift` digits
};

inline ConeExpansion cone_digit_expansion(const DigitSystem& ds, const LaurentSeries& alpha,
                                          int frac_count) {
    if (frac_count < 0) throw std::invalid_argument("digit count must be nonnegative");
    auto f = ds.spec();
    int r = ds.r_exp(), m = ds.deg_p(), n = ds.deg_q();
    std::optional<int> d = alpha.top_nonzero();
    if (!d.has_value() && !alpha.exact() && alpha.floor_exp() > 0)
        throw PrecisionError("series window cannot separate the integer part");
    int k = (d.has_value() && *d >= 0) ? *d / r + 1 : 0;
    int columns = frac_count + k;
    int order2 = (r + 1) * (columns + 2) + m + n + 6;

    LaurentSeries prop = alpha;
    if (k > 0) {
        Poly qk = poly_pow(ds.Q(), static_cast<unsigned>(k));
        Poly pk = poly_pow(ds.P(), static_cast<unsigned>(k));
        int target = alpha.exact() ? detail::cone_input_floor(ds, 0, columns)
                                   : alpha.floor_exp() - k * r;
        prop = divide_by_poly(prop * qk, pk, target);
    }

    ConeSeries finv = inv_f(ds, Cone::A2, order2);
    LaurentSeries qa = prop * ds.Q();
    ConeExpansion out;
    out.shift = k;
    for (int i = 1; i <= columns + 1; ++i)
        out.vertices.push_back((finv.column_series(-i) * qa).floor_part());
    if (!out.vertices.front().is_zero())
        throw ShapeError("leading vertex of the inverse product must vanish");
    for (int i = 1; i <= columns; ++i) {
        Poly s = ds.Q() * out.vertices[static_cast<std::size_t>(i)] -
                 ds.P() * out.vertices[static_cast<std::size_t>(i - 1)];
        if (!ds.is_digit(s)) throw ShapeError("formula produced a non-digit column");
        out.digits.digits.push_back(s);
    }
    out.digits.radix_point = k;
    out.digits.truncated = true;
    return out;
}

inline ConeExpansion cone_digit_expansion(const DigitSystem& ds, const SeriesInput& input,
                                          int frac_count) {
    int r = ds.r_exp();
    int d = input.integer_part.degree();
    int k = (d >= 0) ? d / r + 1 : 0;
    return cone_digit_expansion(ds, input.materialize(detail::cone_input_floor(ds, k, frac_count + k)),
                                frac_count);
}

/**
 * The expansion-in-b of a Laurent series: sum over digit positions of
 * (s_i / Q) b^i, truncated at `order` in the A2 grading.
 */
inline ConeSeries db_formula(const DigitSystem& ds, const LaurentSeries& alpha, int order) {
    auto f = ds.spec();
    int r = ds.r_exp(), m = ds.deg_p(), n = ds.deg_q();
    if (order < 1) throw std::invalid_argument("expansion truncation order must be positive");
    if (alpha.is_exact_zero()) return ConeSeries::zero(f, Cone::A2, r);
    int strip = std::max(m - 1 - n, 0);
    int frac = std::max(1, (order + strip) / (r + 1) + 1);
    ConeExpansion ce = cone_digit_expansion(ds, alpha, frac);
    int k = ce.shift;
    ConeSeries acc =
        ConeSeries::unknown_window(f, Cone::A2, r, order, k - 1, strip, strip);
    for (std::size_t t = 0; t < ce.digits.digits.size(); ++t) {
        const Poly& s = ce.digits.digits[t];
        if (s.is_zero()) continue;
        int p = k - 1 - static_cast<int>(t);
        int floor_p = -(r + 1) * p - order + 1;
        LaurentSeries col = LaurentSeries::from_rational(s, ds.Q(), floor_p);
        acc = acc + ConeSeries::embed_series(Cone::A2, r, col, p);
    }
    return acc;
}

inline ConeSeries db_formula(const DigitSystem& ds, const SeriesInput& input, int order) {
    int r = ds.r_exp(), m = ds.deg_p(), n = ds.deg_q();
    int strip = std::max(m - 1 - n, 0);
    int frac = std::max(1, (order + strip) / (r + 1) + 1);
    int d = input.integer_part.degree();
    int k = (d >= 0) ? d / r + 1 : 0;
    return db_formula(ds, input.materialize(detail::cone_input_floor(ds, k, frac + k)), order);
}

/**
 * Evaluates an expansion-in-b back to the Laurent series it represents.
 * Integer columns contribute psi_c * (P/Q)^c directly; the fractional
 * columns form an expansion of a norm-below-one value and are inverted
 * through the P-anchored unit as -P * column_0(floor_b(f^{-1} * psi_frac)).
 * The result is returned on a window reaching down to X-exponent -depth
 * when the truncation of psi supports it.
 */
inline LaurentSeries eval_back_series(const DigitSystem& ds, const ConeSeries& psi, int depth) {
    auto f = ds.spec();
    if (psi.cone() != Cone::A2)
        throw std::invalid_argument("series expansions are expected in the left cone");
    if (depth < 0) throw std::invalid_argument("recovery depth must be nonnegative");
    if (psi.is_known_zero()) return LaurentSeries::zero(f);
    int m = ds.deg_p();
    int k_top = psi.anchor().first;
    int mx = std::max(psi.max_x(), 0);
    int order_p = depth + mx + m + ds.r_exp() + 4;
    ConeSeries w = inv_f(ds, Cone::A1, order_p);

    LaurentSeries alpha = LaurentSeries::zero(f);
    for (int c = 0; c <= k_top; ++c) {
        LaurentSeries col = psi.column_series(c);
        if (col.is_exact_zero()) continue;
        LaurentSeries over_q = col * ds.Q();
        if (!over_q.frac_part().window_all_zero())
            throw ShapeError("integer column is not a polynomial over Q");
        if (over_q.floor_part().degree() >= m)
            throw ShapeError("integer column exceeds the digit degree bound");
        if (c == 0) {
            alpha = alpha + col;
            continue;
        }
        Poly pc = poly_pow(ds.P(), static_cast<unsigned>(c));
        Poly qc = poly_pow(ds.Q(), static_cast<unsigned>(c));
        LaurentSeries scaled = col * pc;
        int rf = scaled.exact() ? -(depth + 2) : scaled.floor_exp() - qc.degree();
        alpha = alpha + divide_by_poly(scaled, qc, rf);
    }

    // Column sums terminate once the X-degree bound of the addends falls
    // below the requested depth; dropping those addends may hide content of
    // an exact psi, in which case the result is demoted to a window.
    int frac_top = std::min(k_top, -1);
    bool dropped_stored = false;
    auto v_column = [&](int c) {
        LaurentSeries acc = LaurentSeries::zero(f);
        constexpr int kColumnCap = 1 << 20;
        for (int a = std::max(c - frac_top, c + 1); a <= kColumnCap; ++a) {
            auto wt = w.column_top_bound(a);
            auto pt = psi.column_top_bound(c - a);
            if (!wt.has_value() || !pt.has_value()) return acc;
            // Margin m: the dropped content is still multiplied by P below.
            if (*wt + *pt < -(depth + m + 2)) {
                if (!psi.terms().empty() && psi.stored_min_col() <= c - a) dropped_stored = true;
                return acc;
            }
            acc = acc + w.column_series(a) * psi.column_series(c - a);
        }
        throw BudgetError("fractional column evaluation did not terminate");
    };
    // Clamp the column sums to the region the skip bound guarantees.
    auto clamp = [&](const LaurentSeries& s) {
        int safe = -(depth + m + 2);
        if (dropped_stored || (!s.exact() && s.floor_exp() < safe)) return s.truncated_to(safe);
        return s;
    };
    LaurentSeries v0 = v_column(0);
    LaurentSeries v1 = v_column(1);
    v0 = clamp(v0);
    v1 = clamp(v1);
    if (!(v0 * ds.Q() - v1 * ds.P()).window_all_zero())
        throw ShapeError("fractional columns are inconsistent with an expansion");
    alpha = alpha - v0 * ds.P();
    if (!alpha.exact() && alpha.floor_exp() < -depth) alpha = alpha.truncated_to(-depth);
    return alpha;
}

}  // namespace pqdigits

#endif  // PQDIGITS_CONE_HPP
