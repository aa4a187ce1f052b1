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

#ifndef PQDIGITS_FIELD_HPP
#define PQDIGITS_FIELD_HPP

#include <cassert>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "errors.hpp"

namespace pqdigits {

class FieldSpec;
class FieldElement;
using FieldSpecPtr = std::shared_ptr<const FieldSpec>;

/**
 * Runtime description of a finite field F_q with q = p^s.
 *
 * Prime fields are F_p = Z/pZ.  Extension fields are F_p[x]/(modulus) for a
 * user-supplied monic irreducible modulus of degree s; the library never
 * searches for a modulus itself.  Elements are coefficient vectors
 * (c_0, ..., c_{s-1}) over F_p, packed as the integer c_0 + c_1 p + ... +
 * c_{s-1} p^{s-1}.
 *
 * Every field carries a total order on its elements.  The default order is
 * base-p lexicographic on coefficient vectors with the most significant
 * coordinate last, i.e. exactly packed-value order, which puts 0 first and 1
 * second.  A custom order may be supplied as a permutation of packed values;
 * it must also start 0, 1.
 *
 * FieldSpec objects are immutable and shared via FieldSpecPtr.  All element
 * arithmetic goes through the spec; for small fields (q <= 512) lookup tables
 * are precomputed so operations are O(1).
 */
class FieldSpec : public std::enable_shared_from_this<FieldSpec> {
  public:
    static constexpr std::uint64_t kMaxSize = 1u << 20;

    static FieldSpecPtr make_prime(std::uint32_t p, std::vector<std::uint32_t> order = {}) {
        return FieldSpecPtr(new FieldSpec(p, {}, std::move(order)));
    }

    /* modulus_low_first has length s+1, coefficients in [0, p), monic, irreducible over F_p. */
    static FieldSpecPtr make_extension(std::uint32_t p, const std::vector<std::uint32_t>& modulus_low_first,
                                       std::vector<std::uint32_t> order = {}) {
        return FieldSpecPtr(new FieldSpec(p, modulus_low_first, std::move(order)));
    }

    std::uint32_t characteristic() const noexcept { return p_; }
    std::uint32_t extension_degree() const noexcept { return s_; }
    std::uint64_t size() const noexcept { return q_; }
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

    inline FieldElement zero() const noexcept;
    inline FieldElement one() const noexcept;
    inline FieldElement from_packed(std::uint32_t v) const;
    inline FieldElement from_order_index(std::uint64_t idx) const;
    inline FieldElement from_coeffs(const std::vector<std::uint32_t>& c) const;

    std::uint32_t packed_of_order(std::uint64_t idx) const {
        if (idx >= q_) throw std::out_of_range("element order index out of range");
        return order_to_packed_[static_cast<std::size_t>(idx)];
    }
    std::uint32_t order_of_packed(std::uint32_t v) const {
        assert(v < q_);
        return packed_to_order_[v];
    }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (lut_) return add_[a * q_ + b];
        return add_slow(a, b);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
    std::uint32_t neg(std::uint32_t a) const {
        if (lut_) return neg_[a];
        return neg_slow(a);
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (lut_) return mul_[a * q_ + b];
        return mul_slow(a, b);
    }
    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw std::domain_error("inverse of zero field element");
        if (lut_) return inv_[a];
        return inv_slow(a);
    }
    std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }

    /* Element text: plain integer for prime fields, "[c_{s-1},...,c_0]" otherwise. */
    std::string element_text(std::uint32_t v) const {
        if (s_ == 1) return std::to_string(v);
        std::vector<std::uint32_t> c = unpack(v);
        std::string out = "[";
        for (std::uint32_t i = s_; i-- > 0;) {
            out += std::to_string(c[i]);
            if (i != 0) out += ",";
        }
        out += "]";
        return out;
    }

  private:
    FieldSpec(std::uint32_t p, const std::vector<std::uint32_t>& modulus, std::vector<std::uint32_t> order) : p_(p) {
        if (p < 2 || !is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
        if (modulus.empty()) {
            s_ = 1;
            q_ = p;
        } else {
            if (modulus.size() < 3) throw std::invalid_argument("extension modulus must have degree >= 2");
            s_ = static_cast<std::uint32_t>(modulus.size() - 1);
            modulus_ = modulus;
            for (auto c : modulus_)
                if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
            if (modulus_.back() != 1) throw std::invalid_argument("extension modulus must be monic");
            q_ = 1;
            for (std::uint32_t i = 0; i < s_; ++i) {
                q_ *= p;
                if (q_ > kMaxSize) throw std::invalid_argument("field too large");
            }
            if (!is_irreducible(modulus_, p)) throw std::invalid_argument("extension modulus is reducible");
        }
        if (order.empty()) {
            order_to_packed_.resize(q_);
            for (std::uint64_t i = 0; i < q_; ++i) order_to_packed_[i] = static_cast<std::uint32_t>(i);
        } else {
            if (order.size() != q_) throw std::invalid_argument("element order must list all q elements");
            std::vector<bool> seen(q_, false);
            for (auto v : order) {
                if (v >= q_ || seen[v]) throw std::invalid_argument("element order is not a permutation");
                seen[v] = true;
            }
            if (order[0] != 0 || order[1] != 1) throw std::invalid_argument("element order must start 0, 1");
            order_to_packed_ = std::move(order);
        }
        packed_to_order_.resize(q_);
        for (std::uint64_t i = 0; i < q_; ++i) packed_to_order_[order_to_packed_[i]] = static_cast<std::uint32_t>(i);

        lut_ = q_ <= 512;
        if (lut_) {
            add_.resize(q_ * q_);
            mul_.resize(q_ * q_);
            neg_.resize(q_);
            inv_.resize(q_, 0);
            for (std::uint32_t a = 0; a < q_; ++a) {
                neg_[a] = neg_slow(a);
                if (a != 0) inv_[a] = inv_slow(a);
                for (std::uint32_t b = 0; b < q_; ++b) {
                    add_[a * q_ + b] = add_slow(a, b);
                    mul_[a * q_ + b] = mul_slow(a, b);
                }
            }
        }
    }

    static bool is_prime(std::uint32_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    /* Trial division by every monic polynomial of degree 1..deg/2 over F_p; fine at this scale. */
    static bool is_irreducible(const std::vector<std::uint32_t>& f, std::uint32_t p) {
        std::uint32_t deg = static_cast<std::uint32_t>(f.size() - 1);
        for (std::uint32_t d = 1; 2 * d <= deg; ++d) {
            std::uint64_t count = 1;
            for (std::uint32_t i = 0; i < d; ++i) count *= p;
            for (std::uint64_t t = 0; t < count; ++t) {
                std::vector<std::uint32_t> g(d + 1, 0);
                std::uint64_t tt = t;
                for (std::uint32_t i = 0; i < d; ++i) {
                    g[i] = static_cast<std::uint32_t>(tt % p);
                    tt /= p;
                }
                g[d] = 1;
                if (poly_mod_is_zero(f, g, p)) return false;
            }
        }
        return true;
    }

    static bool poly_mod_is_zero(std::vector<std::uint32_t> r, const std::vector<std::uint32_t>& g, std::uint32_t p) {
        std::size_t dg = g.size() - 1;
        while (r.size() > dg) {
            std::uint32_t lead = r.back();
            if (lead != 0) {
                /* g is monic */
                std::size_t shift = r.size() - 1 - dg;
                for (std::size_t i = 0; i <= dg; ++i) {
                    std::uint64_t sub = (static_cast<std::uint64_t>(lead) * g[i]) % p;
                    r[shift + i] = static_cast<std::uint32_t>((r[shift + i] + p - sub) % p);
                }
            }
            r.pop_back();
        }
        for (auto c : r)
            if (c != 0) return false;
        return true;
    }

    std::vector<std::uint32_t> unpack(std::uint32_t v) const {
        std::vector<std::uint32_t> c(s_);
        for (std::uint32_t i = 0; i < s_; ++i) {
            c[i] = v % p_;
            v /= p_;
        }
        return c;
    }
    std::uint32_t pack(const std::vector<std::uint32_t>& c) const {
        std::uint32_t v = 0;
        for (std::uint32_t i = s_; i-- > 0;) v = v * p_ + c[i];
        return v;
    }

    std::uint32_t add_slow(std::uint32_t a, std::uint32_t b) const {
        if (s_ == 1) return (a + b) % p_;
        auto ca = unpack(a), cb = unpack(b);
        for (std::uint32_t i = 0; i < s_; ++i) ca[i] = (ca[i] + cb[i]) % p_;
        return pack(ca);
    }
    std::uint32_t neg_slow(std::uint32_t a) const {
        if (s_ == 1) return a == 0 ? 0 : p_ - a;
        auto c = unpack(a);
        for (auto& x : c) x = x == 0 ? 0 : p_ - x;
        return pack(c);
    }
    std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const {
        if (s_ == 1) return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
        auto ca = unpack(a), cb = unpack(b);
        std::vector<std::uint32_t> prod(2 * s_ - 1, 0);
        for (std::uint32_t i = 0; i < s_; ++i)
            for (std::uint32_t j = 0; j < s_; ++j)
                prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p_);
        /* reduce modulo the monic modulus */
        for (std::size_t d = prod.size(); d-- > s_;) {
            std::uint32_t lead = prod[d];
            if (lead == 0) continue;
            prod[d] = 0;
            for (std::uint32_t i = 0; i < s_; ++i) {
                std::uint64_t sub = (static_cast<std::uint64_t>(lead) * modulus_[i]) % p_;
                prod[d - s_ + i] = static_cast<std::uint32_t>((prod[d - s_ + i] + p_ - sub) % p_);
            }
        }
        prod.resize(s_);
        return pack(prod);
    }
    std::uint32_t inv_slow(std::uint32_t a) const {
        if (s_ == 1) {
            /* extended Euclid on integers */
            std::int64_t t = 0, newt = 1, r = p_, newr = a;
            while (newr != 0) {
                std::int64_t qq = r / newr;
                std::int64_t tmp = t - qq * newt;
                t = newt;
                newt = tmp;
                tmp = r - qq * newr;
                r = newr;
                newr = tmp;
            }
            if (t < 0) t += p_;
            return static_cast<std::uint32_t>(t);
        }
        /* Fermat: a^(q-2) */
        std::uint64_t e = q_ - 2;
        std::uint32_t base = a, acc = 1;
        while (e) {
            if (e & 1) acc = mul_slow(acc, base);
            base = mul_slow(base, base);
            e >>= 1;
        }
        return acc;
    }

    std::uint32_t p_ = 0;
    std::uint32_t s_ = 1;
    std::uint64_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> order_to_packed_, packed_to_order_;
    bool lut_ = false;
    std::vector<std::uint32_t> add_, mul_, neg_, inv_;
};

/**
 * A single element of a finite field.  Holds a non-owning pointer to its
 * FieldSpec; keep the spec alive for as long as elements derived from it are
 * in use (every container type in this library stores a FieldSpecPtr for
 * exactly that reason).
 */
class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(const FieldSpec* f, std::uint32_t packed) : f_(f), v_(packed) {}

    const FieldSpec* field() const noexcept { return f_; }
    std::uint32_t packed() const noexcept { return v_; }
    bool is_zero() const noexcept { return v_ == 0; }
    bool is_one() const noexcept { return v_ == 1; }

    /* Position of this element in the field's total order. */
    std::uint32_t order_index() const { return f_->order_of_packed(v_); }

    std::uint32_t coeff(std::uint32_t i) const {
        std::uint32_t v = v_;
        for (std::uint32_t k = 0; k < i; ++k) v /= f_->characteristic();
        return v % f_->characteristic();
    }

    FieldElement operator+(FieldElement o) const { return must_match(o), FieldElement(f_, f_->add(v_, o.v_)); }
    FieldElement operator-(FieldElement o) const { return must_match(o), FieldElement(f_, f_->sub(v_, o.v_)); }
    FieldElement operator*(FieldElement o) const { return must_match(o), FieldElement(f_, f_->mul(v_, o.v_)); }
    FieldElement operator/(FieldElement o) const { return must_match(o), FieldElement(f_, f_->div(v_, o.v_)); }
    FieldElement operator-() const { return FieldElement(f_, f_->neg(v_)); }
    FieldElement inverse() const { return FieldElement(f_, f_->inv(v_)); }
    FieldElement& operator+=(FieldElement o) { return *this = *this + o; }
    FieldElement& operator-=(FieldElement o) { return *this = *this - o; }
    FieldElement& operator*=(FieldElement o) { return *this = *this * o; }

    bool operator==(FieldElement o) const { return must_match(o), v_ == o.v_; }
    bool operator!=(FieldElement o) const { return !(*this == o); }

    std::string text() const { return f_->element_text(v_); }

  private:
    void must_match([[maybe_unused]] FieldElement o) const { assert(f_ != nullptr && f_ == o.f_); }

    const FieldSpec* f_ = nullptr;
    std::uint32_t v_ = 0;
};

inline FieldElement FieldSpec::zero() const noexcept { return FieldElement(this, 0); }
inline FieldElement FieldSpec::one() const noexcept { return FieldElement(this, 1); }
inline FieldElement FieldSpec::from_packed(std::uint32_t v) const {
    if (v >= q_) throw std::out_of_range("packed element value out of range");
    return FieldElement(this, v);
}
inline FieldElement FieldSpec::from_order_index(std::uint64_t idx) const {
    return FieldElement(this, packed_of_order(idx));
}
inline FieldElement FieldSpec::from_coeffs(const std::vector<std::uint32_t>& c) const {
    if (c.size() != s_) throw std::invalid_argument("coefficient vector has wrong length");
    std::uint32_t v = 0;
    for (std::uint32_t i = s_; i-- > 0;) {
        if (c[i] >= p_) throw std::out_of_range("element coefficient out of range");
        v = v * p_ + c[i];
    }
    return FieldElement(this, v);
}

}  // namespace pqdigits

#endif
