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

#ifndef PQDIGITS_GRAPH_HPP
#define PQDIGITS_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <vector>

#include "digit_system.hpp"

namespace pqdigits {

/**
 * The expansion graph has every polynomial as a vertex and an edge v -> v'
 * labelled s whenever appending digit s to the expansion of v yields the
 * expansion of v'.  The admissible labels at v are m_v + d*Q for all d of
 * degree below deg P - deg Q, where m_v is the representative of -P*v mod Q,
 * so every vertex has exactly branching() outgoing edges.  Returned sorted.
 */
inline std::vector<Poly> edge_labels(const DigitSystem& ds, const Poly& v) {
    Poly mv = poly_mod(-(ds.P() * v), ds.Q());
    std::uint64_t r = ds.branching();
    std::vector<Poly> labels;
    labels.reserve(r);
    for (std::uint64_t i = 0; i < r; ++i) labels.push_back(mv + index_to_poly(ds.spec(), i) * ds.Q());
    std::sort(labels.begin(), labels.end(), PolyLess{});
    return labels;
}

/* Follow the edge labelled s out of v.  s must be admissible at v. */
inline Poly child(const DigitSystem& ds, const Poly& v, const Poly& s) {
    Poly sum = ds.P() * v + s;
    auto [quo, rem] = poly_divrem(sum, ds.Q());
    if (!rem.is_zero()) throw std::invalid_argument("digit is not admissible at this vertex");
    return quo;
}

/* Length of the expansion of v; vertices of equal level form one layer of the graph. */
inline int level_of(const DigitSystem& ds, const Poly& v) {
    if (v.is_zero()) return 1;
    return v.degree() / ds.r_exp() + 1;
}

/**
 * Labels of the least path of length k out of v, picking at every step the
 * least admissible digit.  Every vertex continues in all branching() ways, so
 * the greedy choice is the lexicographically least label sequence.
 */
inline std::vector<Poly> minimal_string(const DigitSystem& ds, const Poly& v, int k) {
    std::vector<Poly> labels;
    Poly cur = v;
    for (int i = 0; i < k; ++i) {
        Poly s = edge_labels(ds, cur)[0];
        labels.push_back(s);
        cur = child(ds, cur, s);
    }
    return labels;
}

/**
 * Label sequences of every path of length `depth` out of `root`, in
 * lexicographic order of the choices made.  Each sequence lists labels in
 * traversal order: element 0 is the edge taken first.  There are
 * branching()^depth paths; the count is checked against `budget` first.
 */
inline std::vector<std::vector<Poly>> enumerate_paths(const DigitSystem& ds, const Poly& root, int depth,
                                                      std::uint64_t budget = kDefaultEnumBudget) {
    assert(depth >= 0);
    std::uint64_t r = ds.branching(), total = 1;
    for (int i = 0; i < depth; ++i) {
        if (total > budget / r) throw BudgetError("path count exceeds budget");
        total *= r;
    }
    std::vector<std::vector<Poly>> out;
    out.reserve(total);
    std::vector<std::uint64_t> odo(static_cast<std::size_t>(depth), 0);
    for (std::uint64_t t = 0; t < total; ++t) {
        std::vector<Poly> labels;
        labels.reserve(depth);
        Poly cur = root;
        for (int i = 0; i < depth; ++i) {
            Poly s = edge_labels(ds, cur)[static_cast<std::size_t>(odo[static_cast<std::size_t>(i)])];
            labels.push_back(s);
            cur = child(ds, cur, s);
        }
        out.push_back(std::move(labels));
        for (int i = depth; i-- > 0;) {
            if (++odo[static_cast<std::size_t>(i)] < r) break;
            odo[static_cast<std::size_t>(i)] = 0;
        }
    }
    return out;
}

/* True iff s repeats with the given period from its start: s[i] = s[i mod period]. */
inline bool is_periodic(const std::vector<Poly>& s, int period) {
    assert(period >= 1);
    for (std::size_t i = static_cast<std::size_t>(period); i < s.size(); ++i) {
        if (s[i] != s[i - static_cast<std::size_t>(period)]) return false;
    }
    return true;
}

/**
 * The path enumeration of the graph rooted at 0: b_0 = 0 and the children of
 * b_t along its edges in label order are b_{rt}, ..., b_{rt+r-1}.  Every
 * polynomial appears exactly once, levels appear in order, and the base-r
 * digits of n spell the path to b_n.  Lookups memoize; safe to share across
 * threads.
 */
class ExpansionOrder {
  public:
    explicit ExpansionOrder(DigitSystem ds) : ds_(std::move(ds)), r_(ds_.branching()) {
        memo_.push_back(Poly::zero(ds_.spec()));
    }

    const DigitSystem& system() const noexcept { return ds_; }

    Poly vertex(std::uint64_t n) {
        std::lock_guard<std::mutex> lock(mu_);
        grow(n);
        return memo_[n];
    }

    /* Least significant expansion digit of vertex(n): the (n mod r)-th label out of vertex(n / r). */
    Poly last_digit(std::uint64_t n) {
        std::lock_guard<std::mutex> lock(mu_);
        grow(n / r_);
        return edge_labels(ds_, memo_[n / r_])[n % r_];
    }

  private:
    void grow(std::uint64_t n) {
        if (n >= kDefaultEnumBudget) throw BudgetError("path enumeration index exceeds budget");
        while (memo_.size() <= n) {
            std::uint64_t i = memo_.size();
            const Poly& parent = memo_[i / r_];
            memo_.push_back(child(ds_, parent, edge_labels(ds_, parent)[i % r_]));
        }
    }

    DigitSystem ds_;
    std::uint64_t r_;
    std::vector<Poly> memo_;
    std::mutex mu_;
};

}  // namespace pqdigits

#endif
