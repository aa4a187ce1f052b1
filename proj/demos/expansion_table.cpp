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
   Print the digit expansion of every polynomial up to a degree bound in a
   P/Q system, together with the string evaluated back as a sanity check.

   Usage: expansion_table [max_deg]
*/

#include <cstdio>
#include <cstdlib>
#include <string>

#include <pqdigits/digit_system.hpp>

using namespace pqdigits;

int main(int argc, char** argv) {
    int max_deg = argc > 1 ? std::atoi(argv[1]) : 2;
    auto f = FieldSpec::make_prime(2);
    DigitSystem ds(parse_poly(f, "X^2+1"), parse_poly(f, "X"));
    std::printf("digits of w in base P/Q = (%s)/(%s) over GF(%llu)\n\n", format_poly(ds.P()).c_str(),
                format_poly(ds.Q()).c_str(), static_cast<unsigned long long>(f->size()));

    std::uint64_t count = 1;
    for (int i = 0; i <= max_deg; ++i) count *= f->size();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Poly w = index_to_poly(f, idx);
        DigitString s = expand_poly(ds, w);
        RationalFunction back = evaluate(ds, s);
        std::printf("%-10s -> %-16s (evaluates back: %s)\n", format_poly(w).c_str(),
                    format_digit_string(s).c_str(), back.is_polynomial() && back.num() == w ? "yes" : "NO");
    }
    return 0;
}
