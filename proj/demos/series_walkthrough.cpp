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
   Expand a formal Laurent series to a radix-pointed digit string, expand its
   polynomial and fractional parts separately, and classify the expansion's
   minimality.

   Usage: series_walkthrough ["<series pattern>" [fractional_digits]]
   Patterns look like "X+1 ; periodic(|1,1,0)", "rational(X/X^3+X+1)", or a
   plain polynomial.
*/

#include <cstdio>
#include <cstdlib>

#include <pqdigits/laurent.hpp>

using namespace pqdigits;

int main(int argc, char** argv) {
    const char* pattern = argc > 1 ? argv[1] : "X+1 ; periodic(|1,1,0)";
    int frac = argc > 2 ? std::atoi(argv[2]) : 10;
    auto f = FieldSpec::make_prime(2);
    DigitSystem ds(parse_poly(f, "X^2+1"), parse_poly(f, "X"));

    SeriesInput in = parse_series_input(f, pattern);
    std::printf("series:          %s\n", pattern);
    std::printf("expansion:       %s\n", format_digit_string(series_expand(ds, in, frac)).c_str());

    SeriesInput floor_only = in;
    floor_only.kind = SeriesInput::Kind::PolyOnly;  // keep the polynomial part, drop the tail
    SeriesInput frac_only = in;
    frac_only.integer_part = Poly::zero(f);
    std::printf("polynomial part: %s\n", format_digit_string(series_expand(ds, floor_only, frac)).c_str());
    std::printf("fractional part: %s\n", format_digit_string(series_expand(ds, frac_only, frac)).c_str());

    MahlerReport rep = mahler_classify(ds, in, 4 * frac);
    std::printf("\nwithin the first %d fractional digits:\n", rep.depth);
    if (rep.eventually_minimal)
        std::printf("  the tail from digit %d on uses only digits of degree < deg Q\n", rep.minimal_from + 1);
    else
        std::printf("  digits of degree >= deg Q keep appearing through the last inspected position\n");
    return 0;
}
