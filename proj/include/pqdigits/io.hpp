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

#ifndef PQDIGITS_IO_HPP
#define PQDIGITS_IO_HPP

/**
 * Text serialization.  Machines and the expansion graph render to Graphviz
 * DOT digraphs; kernel reports render to CSV tables for plotting.  Every
 * function returns the finished text and leaves the destination to the
 * caller.
 */

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "automata.hpp"
#include "christol.hpp"
#include "graph.hpp"

namespace pqdigits {

namespace detail {

/* Escape text for use inside a double-quoted DOT label. */
inline std::string dot_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

inline void dot_node(std::string& out, const std::string& name, const std::string& label) {
    out += "  " + name + " [label=\"" + dot_escape(label) + "\"];\n";
}

inline void dot_edge(std::string& out, const std::string& from, const std::string& to, const std::string& label) {
    out += "  " + from + " -> " + to + " [label=\"" + dot_escape(label) + "\"];\n";
}

}  // namespace detail

/**
 * DOT digraph of a digit automaton.  States are named q0, q1, ... and
 * labelled with their name and output digit; an unlabelled point marks the
 * initial state.  Each state has one edge per input letter, in letter order.
 */
inline std::string export_dot(const DigitAutomaton& m) {
    std::string out = "digraph dfao {\n  rankdir=LR;\n  node [shape=circle];\n  start [shape=point];\n";
    for (int s = 0; s < m.state_count(); ++s) {
        detail::dot_node(out, "q" + std::to_string(s), "q" + std::to_string(s) + " / " + format_poly(m.output(s)));
    }
    out += "  start -> q" + std::to_string(m.initial()) + ";\n";
    std::uint32_t q = static_cast<std::uint32_t>(m.system().spec()->size());
    for (int s = 0; s < m.state_count(); ++s) {
        for (std::uint32_t a = 0; a < q; ++a) {
            detail::dot_edge(out, "q" + std::to_string(s), "q" + std::to_string(m.transition(s, a)),
                             m.system().spec()->from_order_index(a).text());
        }
    }
    out += "}\n";
    return out;
}

/**
 * DOT digraph of a digit transducer.  States are named u0, u1, ... and
 * labelled with their name and end output; every edge is labelled with its
 * "(input,output)" digit pair, one edge per input digit.
 */
inline std::string export_dot(const Transducer& t) {
    std::string out = "digraph transducer {\n  rankdir=LR;\n  node [shape=circle];\n  start [shape=point];\n";
    const DigitSystem& ds = t.system();
    for (std::uint64_t s = 0; s < t.state_count(); ++s) {
        detail::dot_node(out, "u" + std::to_string(s), "u" + std::to_string(s) + " / " + format_poly(t.end_output(s)));
    }
    out += "  start -> u" + std::to_string(t.initial()) + ";\n";
    for (std::uint64_t s = 0; s < t.state_count(); ++s) {
        for (std::uint64_t i = 0; i < ds.digit_count(); ++i) {
            const Transducer::Edge& e = t.edge(s, i);
            detail::dot_edge(out, "u" + std::to_string(s), "u" + std::to_string(e.to),
                             "(" + format_poly(ds.digit_by_index(i)) + "," + format_poly(e.out) + ")");
        }
    }
    out += "}\n";
    return out;
}

/**
 * DOT digraph of a substitution.  Letters are boxes named a0, a1, ...
 * labelled with their digit; letter i points at each letter of its image
 * word, with the position in the word as the edge label.
 */
inline std::string export_dot(const Substitution& sub) {
    std::string out = "digraph substitution {\n  rankdir=LR;\n  node [shape=box];\n";
    for (std::uint64_t i = 0; i < sub.letter_count(); ++i) {
        detail::dot_node(out, "a" + std::to_string(i), format_poly(sub.letter(i)));
    }
    for (std::uint64_t i = 0; i < sub.letter_count(); ++i) {
        const std::vector<std::uint64_t>& word = sub.rule(i);
        for (std::size_t j = 0; j < word.size(); ++j) {
            detail::dot_edge(out, "a" + std::to_string(i), "a" + std::to_string(word[j]), std::to_string(j));
        }
    }
    out += "}\n";
    return out;
}

/**
 * DOT digraph of the expansion graph truncated to the vertices within
 * `depth` steps of `root`.  Nodes are labelled with their polynomial, edges
 * with their digit.  Vertices at the cutoff distance appear without their
 * outgoing edges.  Throws BudgetError when the truncation holds more than
 * `budget` vertices.
 */
inline std::string export_graph_dot(const DigitSystem& ds, const Poly& root, int depth,
                                    std::uint64_t budget = kDefaultEnumBudget) {
    assert(depth >= 0);
    std::map<Poly, int, PolyLess> ids;
    std::vector<Poly> verts;
    auto intern = [&](const Poly& v) {
        auto [it, fresh] = ids.emplace(v, static_cast<int>(verts.size()));
        if (fresh) {
            if (verts.size() >= budget) throw BudgetError("graph truncation exceeds budget");
            verts.push_back(v);
        }
        return it->second;
    };
    struct Arc {
        int from, to;
        Poly label;
    };
    std::vector<Arc> arcs;
    intern(root);
    std::size_t frontier = 0;
    for (int d = 0; d < depth; ++d) {
        std::size_t end = verts.size();
        for (std::size_t i = frontier; i < end; ++i) {
            Poly v = verts[i];  // by value: verts may grow below
            for (const Poly& s : edge_labels(ds, v)) {
                arcs.push_back(Arc{static_cast<int>(i), intern(child(ds, v, s)), s});
            }
        }
        frontier = end;
    }
    std::string out = "digraph expansion {\n  rankdir=LR;\n  node [shape=box];\n";
    for (std::size_t i = 0; i < verts.size(); ++i) {
        detail::dot_node(out, "n" + std::to_string(i), format_poly(verts[i]));
    }
    for (const Arc& a : arcs) {
        detail::dot_edge(out, "n" + std::to_string(a.from), "n" + std::to_string(a.to), format_poly(a.label));
    }
    out += "}\n";
    return out;
}

/* Expansion graph truncation rooted at 0. */
inline std::string export_graph_dot(const DigitSystem& ds, int depth, std::uint64_t budget = kDefaultEnumBudget) {
    return export_graph_dot(ds, Poly::zero(ds.spec()), depth, budget);
}

inline constexpr std::string_view kKernelCsvHeader = "depth,e,count,sample_length\n";

inline void append_kernel_csv_rows(std::string& out, const KernelReport& rep) {
    for (std::size_t e = 0; e < rep.counts.size(); ++e) {
        out += std::to_string(rep.depth) + "," + std::to_string(e) + "," + std::to_string(rep.counts[e]) + "," +
               std::to_string(rep.sample_length[e]) + "\n";
    }
}

/* CSV table of a kernel report: one row per level, `depth,e,count,sample_length`. */
inline std::string kernel_csv(const KernelReport& rep) {
    std::string out{kKernelCsvHeader};
    append_kernel_csv_rows(out, rep);
    return out;
}

/* CSV table of several kernel reports (one header), e.g. one report per depth. */
inline std::string kernel_csv(const std::vector<KernelReport>& reps) {
    std::string out{kKernelCsvHeader};
    for (const KernelReport& rep : reps) append_kernel_csv_rows(out, rep);
    return out;
}

}  // namespace pqdigits

#endif
