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

#ifndef PQDIGITS_CHRISTOL_HPP
#define PQDIGITS_CHRISTOL_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "laurent.hpp"

namespace pqdigits {

/**
 * Finite automaton with output whose input alphabet is {0, ..., base-1}.
 * Feeding it the base-`base` digits of an index j, most significant first and
 * without leading zeros (j = 0 reads the empty word), yields a field element:
 * the coefficient of X^{-j} of the series the machine describes.  A sequence
 * computable this way is exactly a base-automatic sequence, so machines built
 * here are the bounded-kernel witnesses for the estimators below.
 */
class IndexAutomaton {
  public:
    IndexAutomaton(FieldSpecPtr spec, int base, std::vector<std::vector<int>> transitions,
                   std::vector<FieldElement> outputs, int initial = 0)
        : spec_(std::move(spec)),
          base_(base),
          initial_(initial),
          transitions_(std::move(transitions)),
          outputs_(std::move(outputs)) {
        if (!spec_) throw std::invalid_argument("index automaton needs a field");
        if (base_ < 2) throw std::invalid_argument("index automaton base must be at least 2");
        if (transitions_.empty()) throw std::invalid_argument("index automaton needs at least one state");
        if (transitions_.size() != outputs_.size())
            throw std::invalid_argument("index automaton needs exactly one output per state");
        int states = static_cast<int>(transitions_.size());
        if (initial_ < 0 || initial_ >= states)
            throw std::invalid_argument("index automaton initial state out of range");
        for (const std::vector<int>& row : transitions_) {
            if (static_cast<int>(row.size()) != base_)
                throw std::invalid_argument("index automaton transition rows must have one entry per letter");
            for (int target : row) {
                if (target < 0 || target >= states)
                    throw std::invalid_argument("index automaton transition target out of range");
            }
        }
    }

    const FieldSpecPtr& spec() const noexcept { return spec_; }
    int base() const noexcept { return base_; }
    int state_count() const noexcept { return static_cast<int>(transitions_.size()); }
    int initial() const noexcept { return initial_; }
    int transition(int state, int letter) const {
        return transitions_[static_cast<std::size_t>(state)][static_cast<std::size_t>(letter)];
    }
    const FieldElement& output(int state) const { return outputs_[static_cast<std::size_t>(state)]; }

    /* The machine's value at index j: run on the digits of j, then read the
       final state's output. */
    FieldElement value_at(std::uint64_t j) const {
        std::array<int, 64> digits;  // base >= 2, so at most 64 digits
        std::size_t count = 0;
        std::uint64_t base = static_cast<std::uint64_t>(base_);
        while (j != 0) {
            digits[count++] = static_cast<int>(j % base);
            j /= base;
        }
        int state = initial_;
        while (count > 0) state = transition(state, digits[--count]);
        return outputs_[static_cast<std::size_t>(state)];
    }

  private:
    FieldSpecPtr spec_;
    int base_;
    int initial_;
    std::vector<std::vector<int>> transitions_;
    std::vector<FieldElement> outputs_;
};

/**
 * A deterministic supply of series coefficients: index j always yields the
 * same coefficient of X^{-j}.  Two backings are supported: any SeriesInput
 * rule (rational functions, periodic patterns, the lacunary families), and an
 * IndexAutomaton addressing positions by their base digits.  The two built-in
 * lacunary families are the standard contrasting pair for kernel estimation:
 *
 *   - sum of X^{-2^i}, i >= 0: in characteristic 2 this series y satisfies
 *     y^2 + y + X^{-1} = 0 (squaring shifts the exponent set by one), so it
 *     is algebraic and its expansions have bounded kernels;
 *   - sum of X^{-i^2}, i >= 1: the square gaps grow too slowly to be
 *     exponentially lacunary and too irregularly for automaticity, the
 *     classic growing-kernel witness.
 */
class CoefficientSource {
  public:
    enum class Kind { Series, Automaton };

    static CoefficientSource from_series(SeriesInput input) {
        if (!input.spec) throw std::invalid_argument("coefficient source needs a field");
        CoefficientSource src;
        src.kind_ = Kind::Series;
        src.spec_ = input.spec;
        src.series_ = std::move(input);
        return src;
    }

    static CoefficientSource from_automaton(IndexAutomaton machine) {
        CoefficientSource src;
        src.kind_ = Kind::Automaton;
        src.spec_ = machine.spec();
        src.machine_ = std::move(machine);
        return src;
    }

    /* Sum of X^{-2^i} for i >= 0; algebraic in characteristic 2 (see above). */
    static CoefficientSource lacunary_powers_of_two(const FieldSpecPtr& f) {
        return from_series(blank_pattern(f, SeriesInput::Kind::LacunaryPow2));
    }

    /* Sum of X^{-i^2} for i >= 1; not automatic in any base. */
    static CoefficientSource lacunary_squares(const FieldSpecPtr& f) {
        return from_series(blank_pattern(f, SeriesInput::Kind::LacunarySquare));
    }

    /* The series of num/den at infinity. */
    static CoefficientSource rational(const Poly& num, const Poly& den) {
        if (den.is_zero()) throw std::invalid_argument("rational coefficient source needs a nonzero denominator");
        SeriesInput in = blank_pattern(num.spec(), SeriesInput::Kind::Rational);
        in.num = num;
        in.den = den;
        return from_series(std::move(in));
    }

    Kind kind() const noexcept { return kind_; }
    const FieldSpecPtr& spec() const noexcept { return spec_; }

    /* Whether indices can be probed arbitrarily deep (everything except a
       fixed explicit coefficient window). */
    bool deepens() const noexcept { return kind_ == Kind::Automaton || series_.deepens(); }

    /* Coefficient of X^{-j}, j >= 0. */
    FieldElement coefficient(int j) const {
        if (j < 0) throw std::invalid_argument("coefficient index must be nonnegative");
        if (kind_ == Kind::Automaton) return machine_->value_at(static_cast<std::uint64_t>(j));
        return series_.materialize(-j - 1).coeff(-j);
    }

    /* The sequence coefficient(0), ..., coefficient(count - 1). */
    std::vector<FieldElement> coefficients(int count) const {
        if (count < 0) throw std::invalid_argument("coefficient count must be nonnegative");
        std::vector<FieldElement> out;
        out.reserve(static_cast<std::size_t>(count));
        if (count == 0) return out;
        if (kind_ == Kind::Automaton) {
            for (int j = 0; j < count; ++j) out.push_back(machine_->value_at(static_cast<std::uint64_t>(j)));
            return out;
        }
        LaurentSeries s = series_.materialize(-count);
        for (int j = 0; j < count; ++j) out.push_back(s.coeff(-j));
        return out;
    }

    /* The described series as a window known down to `floor`. */
    LaurentSeries materialize(int floor) const {
        if (kind_ == Kind::Series) return series_.materialize(floor);
        int low = std::min(floor, 0);
        std::vector<FieldElement> c;
        c.reserve(static_cast<std::size_t>(1 - low));
        for (int e = low; e <= 0; ++e) c.push_back(machine_->value_at(static_cast<std::uint64_t>(-e)));
        return LaurentSeries::from_window(spec_, low, std::move(c), false);
    }

  private:
    CoefficientSource() = default;

    static SeriesInput blank_pattern(const FieldSpecPtr& f, SeriesInput::Kind kind) {
        if (!f) throw std::invalid_argument("coefficient source needs a field");
        SeriesInput in;
        in.spec = f;
        in.integer_part = Poly::zero(f);
        in.num = in.den = Poly::zero(f);
        in.kind = kind;
        return in;
    }

    Kind kind_ = Kind::Series;
    FieldSpecPtr spec_;
    SeriesInput series_;
    std::optional<IndexAutomaton> machine_;
};

/* Verdict of a kernel estimate: did the class counts stabilize between the
   last two levels, or are they still growing?  A semi-decision either way —
   finite data never proves the infinite property. */
enum class KernelGrowth { BoundedSoFar, GrowingSoFar };

/**
 * Result of sampling a finite symbol sequence u along the arithmetic
 * progressions (u_{p^e k + c})_k for every level e <= max_e and every offset
 * 0 <= c < p^e.  counts[e] is the number of distinct level-e subsequences
 * when each is truncated to the common length sample_length[e] = depth / p^e;
 * the common truncation makes equality transitive and means a longer run can
 * only split classes further, so counts are nondecreasing in the depth for
 * each fixed e.  A sequence is base-p automatic exactly when the counts stay
 * bounded as e and the depth grow; distinctness of prefixes lower-bounds the
 * true class count, so "growing" is evidence and "bounded" is only absence
 * of evidence.
 */
struct KernelReport {
    int depth = 0;   // symbols examined
    int prime = 0;   // sampling base p
    int max_e = 0;   // deepest level sampled
    std::vector<std::size_t> counts;  // distinct classes per level, e = 0..max_e
    std::vector<int> sample_length;   // entries compared at each level
    KernelGrowth growth = KernelGrowth::GrowingSoFar;

    bool bounded_so_far() const noexcept { return growth == KernelGrowth::BoundedSoFar; }

    /* Every consecutive level strictly adds classes. */
    bool strictly_growing() const noexcept {
        if (counts.size() < 2) return false;
        for (std::size_t e = 0; e + 1 < counts.size(); ++e) {
            if (counts[e] >= counts[e + 1]) return false;
        }
        return true;
    }

    /* The counts as a comma-separated line, e.g. "1,2,3,3,3". */
    std::string profile_text() const {
        std::string out;
        for (std::size_t e = 0; e < counts.size(); ++e) {
            if (e != 0) out += ",";
            out += std::to_string(counts[e]);
        }
        return out;
    }

    friend bool operator==(const KernelReport&, const KernelReport&) = default;
};

namespace detail {

inline bool is_prime_small(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

}  // namespace detail

/**
 * Estimate the base-p kernel of a symbol sequence: for each level e <= max_e
 * collect the subsequences along the p^e-step progressions, truncate them to
 * the common length available at that level, and count how many are distinct.
 * Requires at least p^max_e symbols so every level has at least one full
 * sample per offset.
 */
inline KernelReport p_kernel_estimate(const std::vector<std::uint64_t>& seq, int p, int max_e) {
    if (!detail::is_prime_small(p)) throw std::invalid_argument("kernel sampling base must be a prime");
    if (max_e < 0) throw std::invalid_argument("kernel level bound must be nonnegative");
    const std::uint64_t length = seq.size();
    if (length > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
        throw BudgetError("kernel input sequence too long");
    std::uint64_t need = 1;
    for (int e = 0; e < max_e; ++e) {
        if (need > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(p))
            throw PrecisionError("sequence shorter than p^max_e symbols");
        need *= static_cast<std::uint64_t>(p);
    }
    if (length < need)
        throw PrecisionError("kernel estimation to level " + std::to_string(max_e) + " needs at least " +
                             std::to_string(need) + " symbols, got " + std::to_string(length));

    KernelReport rep;
    rep.depth = static_cast<int>(length);
    rep.prime = p;
    rep.max_e = max_e;
    std::uint64_t step = 1;
    for (int e = 0; e <= max_e; ++e) {
        const std::uint64_t entries = length / step;
        std::set<std::vector<std::uint64_t>> classes;
        std::vector<std::uint64_t> sample;
        for (std::uint64_t c = 0; c < step; ++c) {
            sample.clear();
            sample.reserve(entries);
            for (std::uint64_t k = 0; k < entries; ++k) sample.push_back(seq[step * k + c]);
            classes.insert(sample);
        }
        rep.counts.push_back(classes.size());
        rep.sample_length.push_back(static_cast<int>(entries));
        if (e < max_e) step *= static_cast<std::uint64_t>(p);
    }
    rep.growth = (max_e >= 1 && rep.counts[static_cast<std::size_t>(max_e)] ==
                                    rep.counts[static_cast<std::size_t>(max_e) - 1])
                     ? KernelGrowth::BoundedSoFar
                     : KernelGrowth::GrowingSoFar;
    return rep;
}

/* Field-element sequences are sampled by their enumeration indices. */
inline KernelReport p_kernel_estimate(const std::vector<FieldElement>& seq, int p, int max_e) {
    std::vector<std::uint64_t> ids;
    ids.reserve(seq.size());
    for (const FieldElement& v : seq) ids.push_back(v.order_index());
    return p_kernel_estimate(ids, p, max_e);
}

/* The digits after the radix point as symbols: each digit polynomial of
   degree < deg P is one letter of an alphabet of size q^(deg P). */
inline std::vector<std::uint64_t> fractional_digit_symbols(const DigitString& s) {
    std::vector<std::uint64_t> out;
    out.reserve(static_cast<std::size_t>(s.fractional_digit_count()));
    for (int i = s.integer_digit_count(); i < s.size(); ++i) {
        out.push_back(poly_to_index(s.digits[static_cast<std::size_t>(i)]));
    }
    return out;
}

/**
 * Kernel estimate for the digit sequence of a series in the given digit
 * system: expand to `depth` fractional digits, encode each digit polynomial
 * as one symbol, and sample with the field's characteristic p (not with q:
 * over F_{p^s} positions are still addressed in base p, while symbols are
 * compared as whole digits).
 */
inline KernelReport digit_kernel(const DigitSystem& ds, const CoefficientSource& src, int depth, int max_e) {
    if (depth < 1) throw std::invalid_argument("digit kernel depth must be positive");
    if (src.spec() != ds.spec())
        throw std::invalid_argument("coefficient source field differs from the digit system's");
    int floor = -(depth + 1) * ds.r_exp() - ds.deg_q();
    DigitString digits = series_expand(ds, src.materialize(floor), depth);
    return p_kernel_estimate(fractional_digit_symbols(digits), static_cast<int>(ds.spec()->characteristic()),
                             max_e);
}

inline KernelReport digit_kernel(const DigitSystem& ds, const SeriesInput& input, int depth, int max_e) {
    return digit_kernel(ds, CoefficientSource::from_series(input), depth, max_e);
}

}  // namespace pqdigits

#endif
