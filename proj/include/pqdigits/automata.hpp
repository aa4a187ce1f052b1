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

#ifndef PQDIGITS_AUTOMATA_HPP
#define PQDIGITS_AUTOMATA_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "digit_system.hpp"

namespace pqdigits {

inline constexpr std::uint64_t kDefaultStateBudget = 100000;

/**
 * Finite automaton with output computing the digit s^(m) of a polynomial fed
 * coefficient by coefficient from the most significant end.  States are the
 * residues modulo P^{m+1}; reading coefficient a moves residue A to A*X + a,
 * so after the whole input the state is the input reduced mod P^{m+1}, which
 * determines its first m+1 digits.  States are built eagerly from the reachable
 * part, bounded by `budget`.
 */
class DigitAutomaton {
  public:
    DigitAutomaton(DigitSystem ds, int digit_index, std::uint64_t budget = kDefaultStateBudget)
        : ds_(std::move(ds)), digit_index_(digit_index) {
        assert(digit_index >= 0);
        Poly modulus = poly_pow(ds_.P(), digit_index_ + 1);
        std::uint32_t q = static_cast<std::uint32_t>(ds_.spec()->size());
        std::map<std::vector<std::uint32_t>, int> ids;
        auto intern = [&](const Poly& rep) {
            std::vector<std::uint32_t> key;
            for (const FieldElement& c : rep.coeffs()) key.push_back(c.packed());
            auto [it, fresh] = ids.emplace(std::move(key), static_cast<int>(reps_.size()));
            if (fresh) {
                if (reps_.size() >= budget) throw BudgetError("automaton state count exceeds budget");
                reps_.push_back(rep);
            }
            return it->second;
        };
        intern(Poly::zero(ds_.spec()));
        for (std::size_t at = 0; at < reps_.size(); ++at) {
            Poly rep = reps_[at];  // by value: reps_ may grow below
            trans_.emplace_back();
            trans_.back().reserve(q);
            for (std::uint32_t a = 0; a < q; ++a) {
                Poly next = poly_mod(rep.shifted_up(1) + Poly::constant(ds_.spec(), ds_.spec()->from_order_index(a)),
                                     modulus);
                trans_.back().push_back(intern(next));
            }
        }
        outputs_.reserve(reps_.size());
        for (const Poly& rep : reps_) outputs_.push_back(digit_function(ds_, digit_index_, rep));
    }

    const DigitSystem& system() const noexcept { return ds_; }
    int digit_index() const noexcept { return digit_index_; }
    int state_count() const noexcept { return static_cast<int>(reps_.size()); }
    int initial() const noexcept { return 0; }
    int transition(int state, std::uint32_t letter_order_index) const {
        return trans_[static_cast<std::size_t>(state)][letter_order_index];
    }
    const Poly& representative(int state) const { return reps_[static_cast<std::size_t>(state)]; }
    const Poly& output(int state) const { return outputs_[static_cast<std::size_t>(state)]; }

    /* Digit s^(digit_index) of w. */
    Poly run(const Poly& w) const {
        int state = 0;
        for (int i = w.degree(); i >= 0; --i) {
            state = transition(state, static_cast<std::uint32_t>(w.coeff(i).order_index()));
        }
        return output(state);
    }

  private:
    DigitSystem ds_;
    int digit_index_;
    std::vector<Poly> reps_;
    std::vector<std::vector<int>> trans_;
    std::vector<Poly> outputs_;
};

/**
 * The substitution generating the sequence n -> s^(0)(w_n), where w_n is the
 * n-th polynomial in enumeration order.  Letters are the digits (residues mod
 * P); the image of letter A is the word over j < branching() with j-th letter
 * (X^{deg P - deg Q} * A + w_j * Q) mod P.  Since w_{rn+j} = w_n * X^{deg P -
 * deg Q} + w_j, the sequence of last digits is its fixed point from letter 0.
 */
class Substitution {
  public:
    explicit Substitution(DigitSystem ds, std::uint64_t budget = kDefaultStateBudget) : ds_(std::move(ds)) {
        std::uint64_t letter_count = ds_.digit_count();
        if (letter_count > budget) throw BudgetError("substitution alphabet exceeds budget");
        std::uint64_t r = ds_.branching();
        int shift = ds_.r_exp();
        letters_.reserve(letter_count);
        for (std::uint64_t i = 0; i < letter_count; ++i) letters_.push_back(ds_.digit_by_index(i));
        rules_.reserve(letter_count);
        for (std::uint64_t i = 0; i < letter_count; ++i) {
            std::vector<std::uint64_t> word;
            word.reserve(r);
            for (std::uint64_t j = 0; j < r; ++j) {
                Poly image = poly_mod(letters_[i].shifted_up(shift) + letters_[j] * ds_.Q(), ds_.P());
                word.push_back(poly_to_index(image));
            }
            rules_.push_back(std::move(word));
        }
    }

    const DigitSystem& system() const noexcept { return ds_; }
    std::uint64_t letter_count() const noexcept { return letters_.size(); }
    const Poly& letter(std::uint64_t i) const { return letters_[i]; }
    const std::vector<std::uint64_t>& rule(std::uint64_t i) const { return rules_[i]; }

    /**
     * First `count` letters of the fixed point from letter 0.  The image of 0
     * starts with 0, so appending the image of the n-th letter for n = 0, 1,
     * ... writes positions r*n .. r*n + r - 1 consistently.
     */
    std::vector<std::uint64_t> fixed_point(std::uint64_t count) const {
        std::vector<std::uint64_t> u;
        if (count == 0) return u;
        std::uint64_t r = rules_[0].size();
        u.reserve(count + r);
        u.push_back(0);
        for (std::uint64_t n = 0; n * r < count; ++n) {
            const std::vector<std::uint64_t>& word = rules_[u[n]];
            u.resize(std::max<std::uint64_t>(u.size(), n * r + r));
            for (std::uint64_t j = 0; j < r; ++j) u[n * r + j] = word[j];
        }
        u.resize(count);
        return u;
    }

  private:
    DigitSystem ds_;
    std::vector<Poly> letters_;
    std::vector<std::vector<std::uint64_t>> rules_;
};

/**
 * Digit-level transducer multiplying an expansion by X.  It reads digits from
 * the least significant end carrying a field element u, initially 0: on digit
 * t it moves to u' = (coefficient of X^{deg P - 1} in t) / lc(P) and emits
 * X*t - u'*P + u*Q; past the last digit, state u emits the extra most
 * significant digit u*Q.  run() returns the raw output, which may carry one
 * leading zero; normalize_digits() restores canonical form.
 */
class Transducer {
  public:
    explicit Transducer(DigitSystem ds, std::uint64_t budget = kDefaultStateBudget) : ds_(std::move(ds)) {
        std::uint64_t q = ds_.spec()->size();
        std::uint64_t inputs = ds_.digit_count();
        if (inputs > budget / q) throw BudgetError("transducer table exceeds budget");
        FieldElement lead = ds_.P().leading();
        int m = ds_.deg_p();
        edges_.resize(q);
        for (std::uint64_t ui = 0; ui < q; ++ui) {
            FieldElement u = ds_.spec()->from_order_index(ui);
            edges_[ui].reserve(inputs);
            for (std::uint64_t ti = 0; ti < inputs; ++ti) {
                Poly t = ds_.digit_by_index(ti);
                FieldElement carry = t.coeff(m - 1) / lead;
                Poly out = t.shifted_up(1) - ds_.P() * carry + ds_.Q() * u;
                edges_[ui].push_back(Edge{carry.order_index(), std::move(out)});
            }
            end_outputs_.push_back(ds_.Q() * u);
        }
    }

    struct Edge {
        std::uint64_t to;
        Poly out;
    };

    const DigitSystem& system() const noexcept { return ds_; }
    std::uint64_t state_count() const noexcept { return edges_.size(); }
    std::uint64_t initial() const noexcept { return 0; }
    const Edge& edge(std::uint64_t state, std::uint64_t input_digit_index) const {
        return edges_[state][input_digit_index];
    }
    const Poly& end_output(std::uint64_t state) const { return end_outputs_[state]; }

    /* Transduce a plain digit string; the result has exactly one more digit than the input. */
    DigitString run(const DigitString& in) const {
        assert(!in.radix_point);
        std::uint64_t state = 0;
        DigitString out;
        out.digits.reserve(in.digits.size() + 1);
        for (auto it = in.digits.rbegin(); it != in.digits.rend(); ++it) {
            if (!ds_.is_digit(*it)) throw std::invalid_argument("transducer input is not a digit");
            const Edge& e = edge(state, poly_to_index(*it));
            out.digits.push_back(e.out);
            state = e.to;
        }
        out.digits.push_back(end_output(state));
        std::reverse(out.digits.begin(), out.digits.end());
        return out;
    }

  private:
    DigitSystem ds_;
    std::vector<std::vector<Edge>> edges_;
    std::vector<Poly> end_outputs_;
};

/**
 * Expansion of c*w from the expansion of w without leaving digit strings:
 * Horner's rule over the coefficients of c, one transducer pass per degree
 * and one digitwise scaled addition per coefficient.
 */
inline DigitString mul_by_poly(const DigitSystem& ds, const Poly& c, const DigitString& w) {
    assert(!w.radix_point);
    Transducer by_x(ds);
    DigitString acc;
    acc.digits.push_back(Poly::zero(ds.spec()));
    for (int i = c.degree(); i >= 0; --i) {
        acc = normalize_digits(by_x.run(acc));
        acc = digitwise_add(ds, acc, digitwise_scale(ds, w, c.coeff(i)));
    }
    return acc;
}

}  // namespace pqdigits

#endif
