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

#ifndef PQDIGITS_RATIONAL_HPP
#define PQDIGITS_RATIONAL_HPP

#include <string>
#include <utility>

#include "poly.hpp"

namespace pqdigits {

/** Reduced rational function num/den with a monic denominator. */
class RationalFunction {
  public:
    explicit RationalFunction(Poly num) : num_(std::move(num)), den_(Poly::one(num_.spec())) {}
    RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
        reduce();
    }

    const Poly& num() const noexcept { return num_; }
    const Poly& den() const noexcept { return den_; }
    const FieldSpecPtr& spec() const noexcept { return num_.spec(); }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const noexcept { return den_.is_one(); }

    /* deg num - deg den; kNegInfDeg for zero. */
    int degree() const noexcept { return is_zero() ? kNegInfDeg : num_.degree() - den_.degree(); }

    RationalFunction operator+(const RationalFunction& o) const {
        return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RationalFunction operator-(const RationalFunction& o) const {
        return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    RationalFunction operator*(const RationalFunction& o) const {
        return RationalFunction(num_ * o.num_, den_ * o.den_);
    }
    RationalFunction operator/(const RationalFunction& o) const {
        if (o.is_zero()) throw std::domain_error("division by zero rational function");
        return RationalFunction(num_ * o.den_, den_ * o.num_);
    }
    RationalFunction inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero rational function");
        return RationalFunction(den_, num_);
    }

    /* this * (num/den)^e for integer e of either sign. */
    RationalFunction times_pow(const RationalFunction& base, int e) const {
        RationalFunction b = e >= 0 ? base : base.inverse();
        unsigned k = static_cast<unsigned>(e >= 0 ? e : -e);
        RationalFunction acc = *this;
        RationalFunction sq = b;
        while (k) {
            if (k & 1) acc = acc * sq;
            if ((k >>= 1)) sq = sq * sq;
        }
        return acc;
    }

    bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

    std::string text() const {
        if (is_polynomial()) return format_poly(num_);
        return "(" + format_poly(num_) + ")/(" + format_poly(den_) + ")";
    }

  private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = Poly::one(den_.spec());
            return;
        }
        Poly g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = poly_exact_div(num_, g);
            den_ = poly_exact_div(den_, g);
        }
        FieldElement lead = den_.leading();
        if (!lead.is_one()) {
            FieldElement inv = lead.inverse();
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    Poly num_, den_;
};

}  // namespace pqdigits

#endif
