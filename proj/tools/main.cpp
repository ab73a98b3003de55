// sop: command line front end for the sum-over-paths engine.
//
// Exit codes: 0 success (equiv: equal), 1 equiv: distinct, 2 equiv: unknown,
// 64 bad flags, 65 unparsable input, 66 a configured cap was exceeded.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sop/circuit.hpp"
#include "sop/discard.hpp"
#include "sop/interp.hpp"
#include "sop/json_io.hpp"
#include "sop/rewrite.hpp"
#include "sop/zh.hpp"

namespace {

constexpr int kExitFlags = 64;
constexpr int kExitParse = 65;
constexpr int kExitCaps = 66;

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw sop::ParseError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool looks_like_circuit(const std::string& path, const std::string& text) {
    if (path.size() >= 5 && path.ends_with(".sopc")) return true;
    const auto pos = text.find_first_not_of(" \t\r\n");
    if (pos == std::string::npos) return false;
    return text.compare(pos, 6, "qubits") == 0 || text[pos] == '#';
}

sop::SopTerm load_term(const std::string& path) {
    const std::string text = slurp(path);
    if (looks_like_circuit(path, text))
        return sop::circuit_to_sop(sop::parse_circuit(text));
    return sop::term_from_json(text);
}

sop::Strategy parse_strategy(const std::string& s) {
    if (s == "clif") return sop::Strategy::Clif;
    if (s == "clif+") return sop::Strategy::ClifPlus;
    if (s == "ground") return sop::Strategy::ClifGround;
    throw CLI::ValidationError("--strategy", "expected clif, clif+ or ground");
}

std::vector<bool> parse_bits(const std::string& s) {
    std::vector<bool> bits;
    for (char c : s) {
        if (c != '0' && c != '1')
            throw sop::ParseError("bit strings are over {0,1}, got '" + s + "'");
        bits.push_back(c == '1');
    }
    return bits;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.ends_with('\n')) std::cout << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sum-over-paths rewriting engine"};
    app.require_subcommand(1);

    std::string strategy_name = "ground";
    std::string trace_path;
    std::string format = "json";
    std::size_t max_steps = 1000000;
    std::size_t var_cap = 20;
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "seed for randomized helpers")
        ->group("");  // accepted everywhere for script symmetry, unused here

    std::string in_a, in_b, bits_in, bits_out;

    auto* cmd_reduce = app.add_subcommand("reduce", "rewrite to normal form");
    cmd_reduce->add_option("input", in_a, "term JSON, circuit, or - for stdin")
        ->required();
    cmd_reduce->add_option("--strategy", strategy_name, "clif, clif+ or ground");
    cmd_reduce->add_option("--trace", trace_path, "write step trace JSON lines");
    cmd_reduce->add_option("--max-steps", max_steps, "rewrite step budget");

    auto* cmd_equiv = app.add_subcommand("equiv", "decide term equivalence");
    cmd_equiv->add_option("a", in_a)->required();
    cmd_equiv->add_option("b", in_b)->required();
    cmd_equiv->add_option("--strategy", strategy_name,
                          "accepted for symmetry; equiv picks by purity");
    cmd_equiv->add_option("--max-steps", max_steps);
    cmd_equiv->add_option("--var-cap", var_cap, "exact evaluator fallback cap");

    auto* cmd_interp = app.add_subcommand("interp", "exact matrix semantics");
    cmd_interp->add_option("input", in_a)->required();
    cmd_interp->add_option("--format", format, "json or text");
    cmd_interp->add_option("--var-cap", var_cap);

    auto* cmd_amp = app.add_subcommand("amplitude", "<out|C|in> exactly");
    cmd_amp->add_option("circuit", in_a)->required();
    cmd_amp->add_option("in_bits", bits_in)->required();
    cmd_amp->add_option("out_bits", bits_out)->required();
    cmd_amp->add_option("--max-steps", max_steps);
    cmd_amp->add_option("--var-cap", var_cap);

    auto* cmd_tozh = app.add_subcommand("to-zh", "translate a term to ZH");
    cmd_tozh->add_option("input", in_a)->required();
    cmd_tozh->add_option("--format", format, "json or dot");

    auto* cmd_fromzh = app.add_subcommand("from-zh", "translate ZH JSON to a term");
    cmd_fromzh->add_option("input", in_a)->required();

    auto* cmd_stats = app.add_subcommand("stats", "term metrics");
    cmd_stats->add_option("input", in_a)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitFlags;
    }

    try {
        sop::ReduceConfig rcfg;
        rcfg.max_steps = max_steps;
        sop::InterpConfig icfg;
        icfg.var_cap = var_cap;

        if (cmd_reduce->parsed()) {
            const sop::SopTerm t = load_term(in_a);
            sop::RewriteTrace trace;
            const sop::SopTerm r =
                sop::reduce(t, parse_strategy(strategy_name), rcfg,
                            trace_path.empty() ? nullptr : &trace);
            if (!trace_path.empty())
                write_output(trace_path, trace.to_json_lines());
            write_output("", sop::term_to_json(sop::alpha_canonicalize(r)));
            return 0;
        }
        if (cmd_equiv->parsed()) {
            parse_strategy(strategy_name);  // validate even though unused
            sop::EquivConfig cfg{rcfg, icfg};
            const auto v = sop::equiv(load_term(in_a), load_term(in_b), cfg);
            switch (v) {
                case sop::EquivResult::Equal: std::cout << "equal\n"; return 0;
                case sop::EquivResult::Distinct: std::cout << "distinct\n"; return 1;
                case sop::EquivResult::Unknown: std::cout << "unknown\n"; return 2;
            }
        }
        if (cmd_interp->parsed()) {
            const sop::SopTerm t = load_term(in_a);
            const sop::CycMatrix m =
                t.is_pure() ? sop::interp(t, icfg) : sop::interp_ground(t, icfg);
            if (format == "text")
                write_output("", sop::matrix_to_text(m));
            else
                write_output("", sop::matrix_to_json(m));
            return 0;
        }
        if (cmd_amp->parsed()) {
            const sop::Circuit c = sop::parse_circuit(slurp(in_a));
            const auto r = sop::amplitude(c, parse_bits(bits_in),
                                          parse_bits(bits_out), rcfg, icfg);
            std::cout << r.to_string() << "\n";
            return 0;
        }
        if (cmd_tozh->parsed()) {
            const sop::ZhDiagram d = sop::sop_to_zh(load_term(in_a));
            write_output("", format == "dot" ? sop::zh_to_dot(d)
                                             : sop::zh_to_json(d));
            return 0;
        }
        if (cmd_fromzh->parsed()) {
            const sop::SopTerm t = sop::zh_to_sop(sop::zh_from_json(slurp(in_a)));
            write_output("", sop::term_to_json(t));
            return 0;
        }
        if (cmd_stats->parsed()) {
            const sop::SopTerm t = load_term(in_a);
            std::size_t out_mon = 0, in_mon = 0, d_mon = 0;
            for (const auto& p : t.out) out_mon += p.monomial_count();
            for (const auto& p : t.in) in_mon += p.monomial_count();
            for (const auto& p : t.discards) d_mon += p.monomial_count();
            std::ostringstream os;
            os << "vars: " << t.vars.size() << "\n"
               << "arity: " << t.n_in << " -> " << t.n_out << "\n"
               << "scalar: " << t.scalar.to_string() << "\n"
               << "phase monomials: " << t.phase.monomial_count() << "\n"
               << "output monomials: " << out_mon << "\n"
               << "input monomials: " << in_mon << "\n"
               << "discards: " << t.discards.size() << " (" << d_mon
               << " monomials)\n"
               << "clifford: " << (sop::is_clifford(t) ? "yes" : "no") << "\n";
            os << "measure: [";
            const auto mt = sop::measure_tuple(t);
            for (std::size_t i = 0; i < mt.size(); ++i)
                os << (i ? "," : "") << mt[i];
            os << "]\n";
            for (auto [s, name] : {std::pair{sop::Strategy::Clif, "clif"},
                                   {sop::Strategy::ClifPlus, "clif+"},
                                   {sop::Strategy::ClifGround, "ground"}})
                os << "terminal(" << name
                   << "): " << (sop::is_terminal(t, s) ? "yes" : "no") << "\n";
            write_output("", os.str());
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitFlags;
    } catch (const sop::TooManyVariables& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCaps;
    } catch (const sop::StepLimitExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCaps;
    } catch (const sop::MonomialCapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCaps;
    } catch (const sop::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return 0;
}
