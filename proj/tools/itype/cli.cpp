#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <json.hpp>
#include <sstream>

#include "itype/acceptance.hpp"
#include "itype/infer.hpp"
#include "itype/reduction.hpp"
#include "itype/serialize.hpp"

namespace itype::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string input;  // inline term, or a path for check
    std::string file;
    std::size_t fuel = 1000;
    std::uint64_t seed = 0;
    bool deterministic = true;
    std::string system = "strong";
    std::string format = "text";
    std::string strategy = "finf";
    bool ascii = false;
};

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open " + path);
    return read_all(f);
}

// Inline text, then --file, then standard input.
std::string term_source(const Options& o, std::istream& in) {
    if (!o.input.empty()) return o.input;
    if (!o.file.empty() && o.file != "-") return read_file(o.file);
    return read_all(in);
}

Term read_term(const Options& o, std::istream& in) { return make_hygienic(parse_term(term_source(o, in))); }

Mode system_of(const std::string& s) { return s == "weak" ? Mode::weak : Mode::strong; }

InferConfig config_of(const Options& o, bool trace) {
    InferConfig cfg;
    cfg.fuel = o.fuel;
    cfg.choice_seed = o.seed;
    cfg.deterministic = o.deterministic;
    cfg.trace = trace;
    return cfg;
}

std::string status_line(InferStatus s) {
    std::string out = to_string(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
    return out;
}

int cmd_parse(const Options& o, std::istream& in, std::ostream& out) {
    Term t = read_term(o, in);
    if (o.format == "json") {
        std::set<std::string> fv = free_vars(t);
        json j{{"term", to_string(t, o.ascii)},
               {"size", t.size()},
               {"free_vars", std::vector<std::string>(fv.begin(), fv.end())},
               {"normal_form", is_normal_form(t)}};
        out << j.dump() << "\n";
    } else {
        out << to_string(t, o.ascii) << "\n";
    }
    return ok;
}

int cmd_reduce(const Options& o, std::istream& in, std::ostream& out) {
    Term t = read_term(o, in);
    const Strategy strategy = o.strategy == "lo" ? Strategy::leftmost_outermost : Strategy::f_infinity;
    std::vector<std::string> steps{to_string(t, o.ascii)};
    std::size_t n = 0;
    while (!is_normal_form(t) && n < o.fuel) {
        t = reduction_step(t, strategy);
        ++n;
        steps.push_back(to_string(t, o.ascii));
    }
    const bool reached = is_normal_form(t);
    if (o.format == "json") {
        json j{{"strategy", o.strategy}, {"steps", steps}, {"normal_form", reached}};
        out << j.dump() << "\n";
    } else {
        for (std::size_t i = 0; i < steps.size(); ++i) out << i << "  " << steps[i] << "\n";
        if (reached) {
            out << "normal form after " << n << (n == 1 ? " step" : " steps") << "\n";
        } else {
            out << "FUEL-EXHAUSTED\n";
        }
    }
    return reached ? ok : failed;
}

int cmd_infer(const Options& o, bool trace, std::istream& in, std::ostream& out) {
    if (system_of(o.system) == Mode::weak) throw UsageError("inference is only available for the strong system");
    Term t = read_term(o, in);
    InferOutcome res = infer_strong(t, config_of(o, trace));
    if (o.format == "json") {
        if (trace) {
            for (const auto& e : res.trace) out << trace_event_to_json(e, o.ascii) << "\n";
        }
        out << outcome_to_json(res, false, o.ascii) << "\n";
    } else {
        if (trace) {
            for (const auto& e : res.trace) out << to_string(e, o.ascii) << "\n";
        }
        if (res.ok()) {
            out << to_string(final_typing(res), o.ascii) << "\n";
        } else {
            out << status_line(res.status) << "\n";
        }
    }
    return res.ok() ? ok : failed;
}

int cmd_check(const Options& o, bool system_given, std::istream& in, std::ostream& out) {
    const std::string& path = o.input.empty() ? o.file : o.input;
    std::string text = path.empty() || path == "-" ? read_all(in) : read_file(path);
    ParsedDerivation parsed;
    try {
        parsed = parse_derivation_json(text);
    } catch (const JsonFormatError& e) {
        throw UsageError(e.what());
    }
    const Mode system = system_given ? system_of(o.system) : parsed.system.value_or(Mode::strong);
    ValidationReport report = validate(parsed.derivation, system);
    if (o.format == "json") {
        json v = json::array();
        for (const auto& x : report.violations) v.push_back({{"path", x.path}, {"message", x.message}});
        out << json{{"valid", report.valid()}, {"system", to_string(system)}, {"violations", v}}.dump() << "\n";
    } else if (report.valid()) {
        out << "valid (" << to_string(system) << ")\n";
    } else {
        out << "invalid (" << to_string(system) << "): " << report.violations.size() << " violation"
            << (report.violations.size() == 1 ? "" : "s") << "\n"
            << to_string(report);
    }
    return report.valid() ? ok : failed;
}

int cmd_corpus(const Options& o, bool seed_given, bool fuel_given, std::ostream& out) {
    acceptance::SuiteOptions opts;
    if (seed_given) opts.corpus.seed = o.seed;
    if (fuel_given) opts.fuel = o.fuel;
    acceptance::Suite suite(opts);
    bool all = true;
    json rows = json::array();
    suite.run_all([&](const acceptance::CriterionResult& r) {
        all = all && r.passed;
        if (o.format == "json") {
            rows.push_back({{"id", r.id},
                            {"name", r.name},
                            {"passed", r.passed},
                            {"seconds", r.seconds},
                            {"detail", r.detail}});
        } else {
            out << acceptance::to_string(r) << std::endl;
        }
    });
    if (o.format == "json") out << rows.dump() << "\n";
    return all ? ok : failed;
}

void add_term_input(CLI::App* sub, Options& o) {
    sub->add_option("term", o.input, "Term text (default: --file, then standard input)");
    sub->add_option("--file", o.file, "Read the term from a file ('-' for standard input)");
}

void add_format(CLI::App* sub, Options& o) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--ascii", o.ascii, "ASCII rendering (\\ for lambda, -> for arrows, |- for turnstile)");
}

void add_infer_flags(CLI::App* sub, Options& o) {
    sub->add_option("--fuel", o.fuel, "Maximum number of expansion rounds")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Seed for the choice among blocked equations");
    sub->add_option("--deterministic", o.deterministic,
                    "Try blocked equations in set order (false: shuffled with --seed)");
    sub->add_option("--system", o.system, "Type system")->check(CLI::IsMember({"weak", "strong"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Intersection type inference for the lambda-calculus."};
    app.name("itype");
    app.require_subcommand(1);
    Options o;

    auto* parse = app.add_subcommand("parse", "Parse a term and print it back");
    add_term_input(parse, o);
    add_format(parse, o);

    auto* reduce = app.add_subcommand("reduce", "Reduce a term step by step");
    add_term_input(reduce, o);
    add_format(reduce, o);
    reduce->add_option("--fuel", o.fuel, "Maximum number of contraction steps");
    reduce->add_option("--strategy", o.strategy, "finf (perpetual) or lo (leftmost-outermost)")
        ->check(CLI::IsMember({"finf", "lo"}));

    auto* infer = app.add_subcommand("infer", "Infer the principal strong typing");
    add_term_input(infer, o);
    add_format(infer, o);
    add_infer_flags(infer, o);

    auto* trace = app.add_subcommand("trace", "Infer and print every event of the run");
    add_term_input(trace, o);
    add_format(trace, o);
    add_infer_flags(trace, o);

    auto* check = app.add_subcommand("check", "Validate a JSON derivation");
    check->add_option("derivation", o.input, "Path to a JSON derivation ('-' or absent: standard input)");
    check->add_option("--file", o.file, "Same as the positional path");
    add_format(check, o);
    auto* check_system = check->add_option("--system", o.system, "Type system (default: the file's, else strong)")
                             ->check(CLI::IsMember({"weak", "strong"}));

    auto* corpus = app.add_subcommand("corpus", "Run the acceptance criteria and print a pass/fail table");
    corpus->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    auto* corpus_seed = corpus->add_option("--seed", o.seed, "Seed for the random corpus and generators");
    auto* corpus_fuel = corpus->add_option("--fuel", o.fuel, "Expansion rounds per inference")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return ok;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return usage;
    }

    try {
        if (*parse) return cmd_parse(o, in, out);
        if (*reduce) return cmd_reduce(o, in, out);
        if (*infer) return cmd_infer(o, false, in, out);
        if (*trace) return cmd_infer(o, true, in, out);
        if (*check) return cmd_check(o, check_system->count() > 0, in, out);
        if (*corpus) return cmd_corpus(o, corpus_seed->count() > 0, corpus_fuel->count() > 0, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return usage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }
    return usage;
}

}  // namespace itype::cli
