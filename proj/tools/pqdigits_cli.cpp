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

#include <cstdint>
#include <iostream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pqdigits/cone.hpp"
#include "pqdigits/io.hpp"

namespace {

using namespace pqdigits;
using nlohmann::json;

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kParse = 2,
    kInvalidSystem = 3,
    kBudget = 4,
    kVerifyFail = 5,
};

struct CliConfig {
    std::string field_text = "2";
    std::string p_text = "X^2+1";
    std::string q_text = "X";
    std::string format = "plain";
    std::uint64_t enum_budget = kDefaultEnumBudget;
    std::uint64_t state_budget = kDefaultStateBudget;
    std::uint64_t seed = 0;
};

DigitSystem make_system(const CliConfig& cfg) {
    FieldSpecPtr f = parse_field_spec(cfg.field_text);
    return DigitSystem(parse_poly(f, cfg.p_text), parse_poly(f, cfg.q_text));
}

/* Series patterns accept "-" for stdin; surrounding whitespace is dropped. */
std::string read_text_argument(const std::string& arg) {
    std::string text = arg;
    if (arg == "-") text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    std::size_t last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

int reject_format(const CliConfig& cfg, const std::string& command) {
    std::cerr << "error: format '" << cfg.format << "' is not supported by '" << command << "'\n";
    return kParse;
}

/* Plain digit notation; expansions with no integer digit print a leading 0. */
std::string plain_digit_string(const DigitString& s) {
    std::string text = format_digit_string(s);
    if (!text.empty() && text.front() == '.') text.insert(text.begin(), '0');
    return text;
}

json digit_string_json(const DigitSystem& ds, const DigitString& s) {
    json digits = json::array();
    for (const Poly& d : s.digits) digits.push_back(format_poly(d));
    json out;
    out["base"] = {{"P", format_poly(ds.P())}, {"Q", format_poly(ds.Q())}};
    out["digits"] = std::move(digits);
    out["radix_point"] = nullptr;
    if (s.radix_point) out["radix_point"] = *s.radix_point;
    if (s.truncated) out["truncated"] = true;
    return out;
}

json machine_json(const DigitAutomaton& m) {
    const FieldSpecPtr& f = m.system().spec();
    std::uint32_t q = static_cast<std::uint32_t>(f->size());
    json trans = json::array();
    json outputs = json::array();
    for (int s = 0; s < m.state_count(); ++s) {
        for (std::uint32_t a = 0; a < q; ++a) {
            trans.push_back({{"from", s}, {"in", f->from_order_index(a).text()}, {"to", m.transition(s, a)}});
        }
        outputs.push_back(format_poly(m.output(s)));
    }
    return json{{"kind", "dfao"},
                {"digit_index", m.digit_index()},
                {"states", m.state_count()},
                {"initial", m.initial()},
                {"transitions", std::move(trans)},
                {"end_outputs", std::move(outputs)}};
}

json machine_json(const Transducer& t) {
    const DigitSystem& ds = t.system();
    json trans = json::array();
    json ends = json::array();
    for (std::uint64_t s = 0; s < t.state_count(); ++s) {
        for (std::uint64_t i = 0; i < ds.digit_count(); ++i) {
            const Transducer::Edge& e = t.edge(s, i);
            trans.push_back({{"from", s},
                             {"in", format_poly(ds.digit_by_index(i))},
                             {"to", e.to},
                             {"out", format_poly(e.out)}});
        }
        ends.push_back(format_poly(t.end_output(s)));
    }
    return json{{"kind", "transducer"},
                {"states", t.state_count()},
                {"initial", t.initial()},
                {"transitions", std::move(trans)},
                {"end_outputs", std::move(ends)}};
}

json machine_json(const Substitution& rho) {
    json letters = json::array();
    json rules = json::array();
    for (std::uint64_t i = 0; i < rho.letter_count(); ++i) {
        letters.push_back(format_poly(rho.letter(i)));
        rules.push_back(rho.rule(i));
    }
    return json{{"kind", "substitution"}, {"letters", std::move(letters)}, {"rules", std::move(rules)}};
}

json kernel_json(const KernelReport& rep) {
    return json{{"depth", rep.depth},
                {"prime", rep.prime},
                {"max_e", rep.max_e},
                {"counts", rep.counts},
                {"sample_length", rep.sample_length},
                {"growth", rep.bounded_so_far() ? "bounded-so-far" : "growing-so-far"}};
}

json mahler_json(const MahlerReport& rep) {
    return json{{"depth", rep.depth},
                {"digit_degrees", rep.digit_degrees},
                {"bad_positions", rep.bad_positions},
                {"eventually_minimal", rep.eventually_minimal},
                {"minimal_from", rep.minimal_from}};
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

// --- subcommand: expand -----------------------------------------------------

int run_expand(const CliConfig& cfg, const std::string& w_text) {
    DigitSystem ds = make_system(cfg);
    DigitString s = expand_poly(ds, parse_poly(ds.spec(), w_text));
    if (cfg.format == "json") {
        print_json(digit_string_json(ds, s));
    } else if (cfg.format == "plain") {
        std::cout << format_digit_string(s) << "\n";
    } else {
        return reject_format(cfg, "expand");
    }
    return kOk;
}

// --- subcommand: series-expand ----------------------------------------------

int run_series_expand(const CliConfig& cfg, const std::string& series_text, int total_digits) {
    DigitSystem ds = make_system(cfg);
    SeriesInput input = parse_series_input(ds.spec(), read_text_argument(series_text));
    int integer_digits = series_expand(ds, input, 1).integer_digit_count();
    int fractional = total_digits - integer_digits;
    if (fractional < 1)
        throw BudgetError("digit budget of " + std::to_string(total_digits) + " does not reach past the radix point");
    DigitString s = series_expand(ds, input, fractional);
    if (cfg.format == "json") {
        print_json(digit_string_json(ds, s));
    } else if (cfg.format == "plain") {
        std::cout << plain_digit_string(s) << "\n";
    } else {
        return reject_format(cfg, "series-expand");
    }
    return kOk;
}

// --- subcommand: machine ----------------------------------------------------

std::string machine_table(const DigitAutomaton& m) {
    const FieldSpecPtr& f = m.system().spec();
    std::uint32_t q = static_cast<std::uint32_t>(f->size());
    std::string out = "digit automaton for index " + std::to_string(m.digit_index()) + ": " +
                      std::to_string(m.state_count()) + " states, " + std::to_string(q) + " letters\n";
    for (int s = 0; s < m.state_count(); ++s) {
        out += "q" + std::to_string(s) + " [out=" + format_poly(m.output(s)) + "]";
        for (std::uint32_t a = 0; a < q; ++a) {
            out += "  " + f->from_order_index(a).text() + "->q" + std::to_string(m.transition(s, a));
        }
        out += "\n";
    }
    return out;
}

std::string machine_table(const Transducer& t) {
    const DigitSystem& ds = t.system();
    std::string out = "carry transducer: " + std::to_string(t.state_count()) + " states, " +
                      std::to_string(ds.digit_count()) + " input digits\n";
    for (std::uint64_t s = 0; s < t.state_count(); ++s) {
        out += "u" + std::to_string(s) + " [end=" + format_poly(t.end_output(s)) + "]";
        for (std::uint64_t i = 0; i < ds.digit_count(); ++i) {
            const Transducer::Edge& e = t.edge(s, i);
            out += "  (" + format_poly(ds.digit_by_index(i)) + "," + format_poly(e.out) + ")->u" + std::to_string(e.to);
        }
        out += "\n";
    }
    return out;
}

std::string machine_table(const Substitution& rho) {
    std::string out = "substitution on " + std::to_string(rho.letter_count()) + " letters\n";
    for (std::uint64_t i = 0; i < rho.letter_count(); ++i) {
        out += format_poly(rho.letter(i)) + " -> ";
        const std::vector<std::uint64_t>& word = rho.rule(i);
        for (std::size_t j = 0; j < word.size(); ++j) {
            if (j != 0) out += ",";
            out += format_poly(rho.letter(word[j]));
        }
        out += "\n";
    }
    return out;
}

int run_machine(const CliConfig& cfg, const std::string& kind, int sm_index, bool want_dot,
                const std::string& run_text, int terms) {
    DigitSystem ds = make_system(cfg);
    if (kind == "substitution") {
        if (!run_text.empty()) {
            std::cerr << "error: --run applies to s0-dfao, sm-dfao and mulx\n";
            return kParse;
        }
        Substitution rho(ds, cfg.state_budget);
        if (terms > 0) {
            std::vector<std::uint64_t> u = rho.fixed_point(static_cast<std::uint64_t>(terms));
            std::string out;
            for (std::size_t i = 0; i < u.size(); ++i) {
                if (i != 0) out += ",";
                out += format_poly(rho.letter(u[i]));
            }
            std::cout << out << "\n";
            return kOk;
        }
        if (want_dot || cfg.format == "dot") {
            std::cout << export_dot(rho);
        } else if (cfg.format == "json") {
            print_json(machine_json(rho));
        } else if (cfg.format == "plain") {
            std::cout << machine_table(rho);
        } else {
            return reject_format(cfg, "machine substitution");
        }
        return kOk;
    }
    if (terms > 0) {
        std::cerr << "error: --terms applies to the substitution machine\n";
        return kParse;
    }
    if (kind == "mulx") {
        Transducer t(ds, cfg.state_budget);
        if (!run_text.empty()) {
            DigitString in = parse_digit_string(ds.spec(), run_text);
            if (in.radix_point) throw ParseError("the transducer runs on plain digit strings without a radix point");
            std::cout << format_digit_string(t.run(in)) << "\n";
            return kOk;
        }
        if (want_dot || cfg.format == "dot") {
            std::cout << export_dot(t);
        } else if (cfg.format == "json") {
            print_json(machine_json(t));
        } else if (cfg.format == "plain") {
            std::cout << machine_table(t);
        } else {
            return reject_format(cfg, "machine mulx");
        }
        return kOk;
    }
    int digit_index = (kind == "s0-dfao") ? 0 : sm_index;
    DigitAutomaton m(ds, digit_index, cfg.state_budget);
    if (!run_text.empty()) {
        std::cout << format_poly(m.run(parse_poly(ds.spec(), run_text))) << "\n";
        return kOk;
    }
    if (want_dot || cfg.format == "dot") {
        std::cout << export_dot(m);
    } else if (cfg.format == "json") {
        print_json(machine_json(m));
    } else if (cfg.format == "plain") {
        std::cout << machine_table(m);
    } else {
        return reject_format(cfg, "machine " + kind);
    }
    return kOk;
}

// --- subcommand: graph --------------------------------------------------------

int run_graph(const CliConfig& cfg, const std::string& root_text, int depth) {
    DigitSystem ds = make_system(cfg);
    Poly root = root_text.empty() ? Poly::zero(ds.spec()) : parse_poly(ds.spec(), root_text);
    if (cfg.format != "plain" && cfg.format != "dot") return reject_format(cfg, "graph");
    std::cout << export_graph_dot(ds, root, depth, cfg.enum_budget);
    return kOk;
}

// --- subcommand: verify -------------------------------------------------------

struct VerifyResult {
    std::vector<std::string> lines;
    bool pass = true;

    void fail(const std::string& line) {
        lines.push_back(line);
        pass = false;
    }
};

Poly random_poly(const FieldSpecPtr& f, int max_deg, std::mt19937_64& rng) {
    int deg = static_cast<int>(rng() % static_cast<std::uint64_t>(max_deg + 1));
    std::vector<FieldElement> coeffs;
    for (int i = 0; i <= deg; ++i)
        coeffs.push_back(f->from_order_index(static_cast<std::uint32_t>(rng() % f->size())));
    return Poly::from_coeffs(f, coeffs);
}

/* Count q^exponent against a budget; the suites below enumerate that many cases. */
std::uint64_t checked_power(std::uint64_t base, int exponent, std::uint64_t budget) {
    std::uint64_t total = 1;
    for (int i = 0; i < exponent; ++i) {
        if (total > budget / base) throw BudgetError("enumeration exceeds budget");
        total *= base;
    }
    return total;
}

VerifyResult verify_formulas(const CliConfig& cfg, const DigitSystem& ds, int max_deg, int samples, int frac_digits) {
    VerifyResult res;
    const FieldSpecPtr& f = ds.spec();
    std::uint64_t total = checked_power(f->size(), max_deg + 1, cfg.enum_budget);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        Poly w = index_to_poly(f, idx);
        if (cone_expand_poly(ds, w).digits != expand_poly(ds, w).digits) {
            res.fail("formula digits of " + format_poly(w) + " differ from the division algorithm");
            return res;
        }
    }
    res.lines.push_back("polynomial expansions: formula matches division for all " + std::to_string(total) +
                        " inputs of degree <= " + std::to_string(max_deg));
    std::mt19937_64 rng(cfg.seed);
    for (int i = 0; i < samples; ++i) {
        Poly num = random_poly(f, 4, rng);
        Poly den = random_poly(f, 3, rng);
        while (den.is_zero()) den = random_poly(f, 3, rng);
        std::string text = "rational(" + format_poly(num) + "/" + format_poly(den) + ")";
        SeriesInput input = parse_series_input(f, text);
        DigitString by_formula = cone_digit_expansion(ds, input, frac_digits).digits;
        DigitString by_algorithm = series_expand(ds, input, frac_digits);
        if (by_formula.digits != by_algorithm.digits || by_formula.radix_point != by_algorithm.radix_point) {
            res.fail("series formula digits of " + text + " differ from the expansion algorithm");
            return res;
        }
    }
    res.lines.push_back("series expansions: formula matches the algorithm on " + std::to_string(samples) +
                        " sampled rationals to " + std::to_string(frac_digits) + " fractional digits");
    return res;
}

VerifyResult verify_uniqueness(const CliConfig& cfg, const DigitSystem& ds, int max_len) {
    VerifyResult res;
    std::uint64_t digits = ds.digit_count(), checked = 0;
    for (int len = 1; len <= max_len; ++len) {
        std::uint64_t total = checked_power(digits, len, cfg.enum_budget);
        for (std::uint64_t t = 1; t < total; ++t) {  // t = 0 is the all-zero string
            DigitString s;
            std::uint64_t rest = t;
            for (int i = 0; i < len; ++i) {
                s.digits.push_back(ds.digit_by_index(rest % digits));
                rest /= digits;
            }
            if (evaluate(ds, s).is_zero()) {
                res.fail("nonzero digit string " + format_digit_string(s) + " evaluates to zero");
                return res;
            }
            ++checked;
        }
    }
    res.lines.push_back("uniqueness: all " + std::to_string(checked) + " nonzero strings of length <= " +
                        std::to_string(max_len) + " evaluate to nonzero values");
    return res;
}

VerifyResult verify_graph(const CliConfig& cfg, const DigitSystem& ds, int depth) {
    VerifyResult res;
    std::uint64_t r = ds.branching();
    std::map<Poly, int, PolyLess> seen;
    std::vector<Poly> frontier{Poly::zero(ds.spec())}, next;
    seen.emplace(frontier.front(), 0);
    std::uint64_t expanded = 0, self_loops = 0;
    for (int d = 0; d <= depth; ++d) {
        for (const Poly& v : frontier) {
            std::vector<Poly> labels = edge_labels(ds, v);
            if (labels.size() != r) {
                res.fail("vertex " + format_poly(v) + " has out-degree " + std::to_string(labels.size()));
                return res;
            }
            for (std::size_t i = 1; i < labels.size(); ++i) {
                if (labels[i] == labels[i - 1]) {
                    res.fail("vertex " + format_poly(v) + " repeats the edge label " + format_poly(labels[i]));
                    return res;
                }
            }
            for (const Poly& s : labels) {
                if (!ds.is_digit(s)) {
                    res.fail("edge label " + format_poly(s) + " at " + format_poly(v) + " is not a digit");
                    return res;
                }
                Poly c = child(ds, v, s);
                if (c == v) {
                    ++self_loops;
                    if (!v.is_zero() || !s.is_zero()) {
                        res.fail("unexpected self-loop at " + format_poly(v) + " on digit " + format_poly(s));
                        return res;
                    }
                }
                if (seen.emplace(c, 0).second) next.push_back(c);
            }
            if (++expanded > cfg.enum_budget) throw BudgetError("graph scan exceeds budget");
        }
        frontier.swap(next);
        next.clear();
    }
    if (self_loops != 1) {  // each vertex is expanded once, so the loop at 0 appears once
        res.fail("expected exactly the self-loop at 0, saw " + std::to_string(self_loops) + " loop edges");
        return res;
    }
    res.lines.push_back("graph: " + std::to_string(expanded) + " vertices expanded to depth " +
                        std::to_string(depth) + "; out-degree " + std::to_string(r) +
                        " everywhere; the only self-loop sits at 0");
    return res;
}

VerifyResult verify_periodicity(const CliConfig& cfg, const DigitSystem& ds, int depth, int period) {
    VerifyResult res;
    std::vector<std::vector<Poly>> paths = enumerate_paths(ds, Poly::zero(ds.spec()), depth, cfg.enum_budget);
    std::uint64_t periodic = 0;
    for (const std::vector<Poly>& path : paths) {
        bool rep = false;
        for (int p = 1; p <= period && !rep; ++p) rep = is_periodic(path, p);
        if (!rep) continue;
        ++periodic;
        bool all_zero = true;
        for (const Poly& s : path) all_zero = all_zero && s.is_zero();
        if (!all_zero) {
            std::string text;
            for (const Poly& s : path) text += (text.empty() ? "" : ",") + format_poly(s);
            res.fail("non-zero path " + text + " is periodic with period <= " + std::to_string(period));
            return res;
        }
    }
    if (periodic != 1) {
        res.fail("expected exactly the all-zero periodic path, found " + std::to_string(periodic));
        return res;
    }
    res.lines.push_back("periodicity: " + std::to_string(paths.size()) + " root paths of depth " +
                        std::to_string(depth) + "; only the all-zero path is periodic with period <= " +
                        std::to_string(period));
    return res;
}

int run_verify(const CliConfig& cfg, const std::string& suite, int max_deg, int samples, int frac_digits,
               int max_len, int depth, int period) {
    DigitSystem ds = make_system(cfg);
    VerifyResult res;
    if (suite == "formulas") {
        res = verify_formulas(cfg, ds, max_deg, samples, frac_digits);
    } else if (suite == "uniqueness") {
        res = verify_uniqueness(cfg, ds, max_len);
    } else if (suite == "graph") {
        res = verify_graph(cfg, ds, depth < 0 ? 5 : depth);
    } else {
        res = verify_periodicity(cfg, ds, depth < 0 ? 12 : depth, period);
    }
    if (cfg.format == "json") {
        print_json(json{{"suite", suite}, {"pass", res.pass}, {"details", res.lines}});
    } else if (cfg.format == "plain") {
        for (const std::string& line : res.lines) std::cout << line << "\n";
        std::cout << (res.pass ? "pass" : "fail") << "\n";
    } else {
        return reject_format(cfg, "verify");
    }
    return res.pass ? kOk : kVerifyFail;
}

// --- subcommand: mahler -------------------------------------------------------

int run_mahler(const CliConfig& cfg, const std::string& series_text, int depth) {
    DigitSystem ds = make_system(cfg);
    SeriesInput input = parse_series_input(ds.spec(), read_text_argument(series_text));
    MahlerReport rep = mahler_classify(ds, input, depth);
    if (cfg.format == "json") {
        print_json(mahler_json(rep));
        return kOk;
    }
    if (cfg.format != "plain") return reject_format(cfg, "mahler");
    std::cout << "inspected fractional digits: " << rep.depth << "\n";
    std::string bad;
    for (std::size_t i = 0; i < rep.bad_positions.size(); ++i) {
        if (i != 0) bad += ",";
        bad += std::to_string(rep.bad_positions[static_cast<std::size_t>(i)]);
    }
    std::cout << "digits of degree >= deg Q at positions: " << (bad.empty() ? "none" : bad) << "\n";
    if (rep.eventually_minimal) {
        std::cout << "verdict: eventually minimal (tail values admissible from index " << rep.minimal_from << ")\n";
    } else {
        std::cout << "verdict: not minimal within the inspected depth\n";
    }
    return kOk;
}

// --- subcommand: kernel -------------------------------------------------------

int run_kernel(const CliConfig& cfg, const std::string& source_text, int depth, int max_e, bool coefficients) {
    DigitSystem ds = make_system(cfg);
    SeriesInput input = parse_series_input(ds.spec(), read_text_argument(source_text));
    KernelReport rep;
    if (coefficients) {
        CoefficientSource src = CoefficientSource::from_series(input);
        rep = p_kernel_estimate(src.coefficients(depth), static_cast<int>(ds.spec()->characteristic()), max_e);
    } else {
        rep = digit_kernel(ds, input, depth, max_e);
    }
    if (cfg.format == "json") {
        print_json(kernel_json(rep));
    } else if (cfg.format == "csv") {
        std::cout << kernel_csv(rep);
    } else if (cfg.format == "plain") {
        std::cout << "symbols: " << rep.depth << (coefficients ? " coefficients" : " fractional digits") << "\n";
        std::cout << "sampling base: " << rep.prime << "\n";
        std::cout << "classes per level 0.." << rep.max_e << ": " << rep.profile_text() << "\n";
        std::cout << "growth: " << (rep.bounded_so_far() ? "bounded-so-far" : "growing-so-far") << "\n";
    } else {
        return reject_format(cfg, "kernel");
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CliConfig cfg;
    CLI::App app{"rational-base digit expansions over finite fields"};
    app.option_defaults()->always_capture_default();
    app.add_option("--field", cfg.field_text, "coefficient field: a prime p, or p^s:modulus");
    app.add_option("-P", cfg.p_text, "base numerator polynomial P");
    app.add_option("-Q", cfg.q_text, "base denominator polynomial Q");
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"plain", "json", "dot", "csv"}));
    app.add_option("--enum-budget", cfg.enum_budget, "cap on enumerated cases")->envname("PQDIGITS_ENUM_BUDGET");
    app.add_option("--state-budget", cfg.state_budget, "cap on constructed machine states")
        ->envname("PQDIGITS_STATE_BUDGET");
    app.add_option("--seed", cfg.seed, "seed for sampled checks");
    app.require_subcommand(1);

    std::string w_text, series_text, machine_kind, run_text, verify_suite, root_text, source_text;
    int total_digits = 12, sm_index = 1, terms = 0, graph_depth = 3;
    int max_deg = 6, samples = 10, frac_digits = 10, max_len = 4, vdepth = -1, period = 4;
    int mahler_depth = 40, kernel_depth = 1024, kernel_max_e = 6;
    bool want_dot = false, coefficients = false;

    CLI::App* c_expand = app.add_subcommand("expand", "digit expansion of a polynomial");
    c_expand->add_option("w", w_text, "polynomial to expand")->required();

    CLI::App* c_series = app.add_subcommand("series-expand", "radix-pointed expansion of a Laurent series");
    c_series->add_option("series", series_text, "series pattern ('-' reads stdin)")->required();
    c_series->add_option("--digits", total_digits, "total digits to display");

    CLI::App* c_machine = app.add_subcommand("machine", "digit machines: automata, transducer, substitution");
    c_machine->add_option("kind", machine_kind, "machine kind")
        ->required()
        ->check(CLI::IsMember({"s0-dfao", "sm-dfao", "mulx", "substitution"}));
    c_machine->add_option("--m", sm_index, "digit index for sm-dfao")->check(CLI::NonNegativeNumber);
    c_machine->add_flag("--export-dot", want_dot, "emit the machine as a DOT digraph");
    c_machine->add_option("--run", run_text, "run the machine on a polynomial (dfao) or digit string (mulx)");
    c_machine->add_option("--terms", terms, "print this many fixed-point terms (substitution)");

    CLI::App* c_graph = app.add_subcommand("graph", "DOT view of the expansion graph");
    c_graph->add_option("--root", root_text, "root vertex (default 0)");
    c_graph->add_option("--depth", graph_depth, "truncation depth");

    CLI::App* c_verify = app.add_subcommand("verify", "run a property suite against this digit system");
    c_verify->add_option("suite", verify_suite, "property suite")
        ->required()
        ->check(CLI::IsMember({"formulas", "uniqueness", "graph", "periodicity"}));
    c_verify->add_option("--max-deg", max_deg, "polynomial degree bound (formulas)");
    c_verify->add_option("--samples", samples, "sampled rational series (formulas)");
    c_verify->add_option("--frac-digits", frac_digits, "fractional digits compared (formulas)");
    c_verify->add_option("--max-len", max_len, "digit string length bound (uniqueness)");
    c_verify->add_option("--depth", vdepth, "scan depth (graph: 5, periodicity: 12)");
    c_verify->add_option("--period", period, "period bound (periodicity)");

    CLI::App* c_mahler = app.add_subcommand("mahler", "digit-minimality classification of a series");
    c_mahler->add_option("series", source_text, "series pattern ('-' reads stdin)")->required();
    c_mahler->add_option("--depth", mahler_depth, "fractional digits to inspect");

    CLI::App* c_kernel = app.add_subcommand("kernel", "subsequence-class profile of an expansion");
    c_kernel->add_option("source", series_text, "series pattern ('-' reads stdin)")->required();
    c_kernel->add_option("--depth", kernel_depth, "symbols to sample");
    c_kernel->add_option("--max-e", kernel_max_e, "deepest sampling level");
    c_kernel->add_flag("--coefficients", coefficients, "sample series coefficients instead of digits");

    for (CLI::App* sub : {c_expand, c_series, c_machine, c_graph, c_verify, c_mahler, c_kernel})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kParse;
    }

    try {
        if (*c_expand) return run_expand(cfg, w_text);
        if (*c_series) return run_series_expand(cfg, series_text, total_digits);
        if (*c_machine) return run_machine(cfg, machine_kind, sm_index, want_dot, run_text, terms);
        if (*c_graph) return run_graph(cfg, root_text, graph_depth);
        if (*c_verify) return run_verify(cfg, verify_suite, max_deg, samples, frac_digits, max_len, vdepth, period);
        if (*c_mahler) return run_mahler(cfg, source_text, mahler_depth);
        if (*c_kernel) return run_kernel(cfg, series_text, kernel_depth, kernel_max_e, coefficients);
        std::cerr << "error: no subcommand selected\n";
        return kParse;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const InvalidSystemError& e) {
        std::cerr << "invalid digit system: " << e.what() << "\n";
        return kInvalidSystem;
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const PrecisionError& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return kBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kParse;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}
