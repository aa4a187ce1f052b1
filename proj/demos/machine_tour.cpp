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

/*
   Tour of the three machines attached to a digit system: the substitution
   whose fixed point lists every polynomial's last digit in enumeration
   order, the automaton computing a fixed digit of the expansion, and the
   transducer multiplying an expansion by X.  Finishes by writing the
   automaton as a DOT digraph.
*/

#include <cstdio>

#include <pqdigits/automata.hpp>
#include <pqdigits/io.hpp>

using namespace pqdigits;

int main() {
    auto f = FieldSpec::make_prime(2);
    DigitSystem ds(parse_poly(f, "X^2+1"), parse_poly(f, "X"));

    Substitution sub(ds);
    std::printf("substitution rules over %llu letters:\n",
                static_cast<unsigned long long>(sub.letter_count()));
    for (std::uint64_t i = 0; i < sub.letter_count(); ++i) {
        std::printf("  %-4s ->", format_poly(sub.letter(i)).c_str());
        for (std::uint64_t j : sub.rule(i)) std::printf(" %s", format_poly(sub.letter(j)).c_str());
        std::printf("\n");
    }

    std::printf("\nfixed point, last digits of w_0, w_1, ...:");
    for (std::uint64_t letter : sub.fixed_point(16)) std::printf(" %s", format_poly(sub.letter(letter)).c_str());
    std::printf("\n");

    DigitAutomaton s0(ds, 0);
    bool agree = true;
    std::vector<std::uint64_t> u = sub.fixed_point(64);
    for (std::uint64_t n = 0; n < 64; ++n)
        agree = agree && poly_to_index(s0.run(index_to_poly(f, n))) == u[n];
    std::printf("automaton with %d states recomputes those 64 letters: %s\n", s0.state_count(),
                agree ? "yes" : "NO");

    Transducer tr(ds);
    Poly w = parse_poly(f, "X^2");
    DigitString in = expand_poly(ds, w);
    DigitString out = normalize_digits(tr.run(in));
    std::printf("transducing %s (digits of %s) gives %s, the digits of X*%s: %s\n",
                format_digit_string(in).c_str(), format_poly(w).c_str(), format_digit_string(out).c_str(),
                format_poly(w).c_str(),
                out.digits == expand_poly(ds, Poly::x(f) * w).digits ? "yes" : "NO");

    std::printf("\n%s", export_dot(s0).c_str());
    return 0;
}
