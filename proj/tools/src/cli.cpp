#include "distcsp_tools/cli.hpp"

#include <fstream>
#include <ostream>

#include "CLI11.hpp"

#include "distcsp_tools/io.hpp"

namespace distcsp::cli {

namespace {

using io::json;

struct SolveArgs {
    std::string template_path;
    std::string instance_path;
    std::string mode = "auto";
    bool trace = false;
    bool stats = false;
    bool analysis = false;
    bool check = false;
    std::optional<Offset> max_d;
};

struct VerifyArgs {
    std::string template_path;
    std::string instance_path;
    std::string assignment_path;
};

struct PolyArgs {
    std::string template_path;
    std::optional<Offset> max_d;
    std::optional<Offset> window;
    std::uint64_t trials = 10'000;
    std::uint64_t seed = 0x5eed;
};

struct EndoArgs {
    std::string template_path;
    std::string spec_path;
    std::optional<Offset> max_period;
    std::optional<Offset> value_window;
    std::vector<std::string> drifts;
    Offset q = 1;
    std::string out_path;
};

Template load_template(const std::string& path) { return io::parse_template(io::read_file(path)); }

int cmd_analyze(const std::string& path, std::ostream& out) {
    const Template t = load_template(path);
    out << io::serialize_report(json{{"analysis", io::analysis_to_json(analyze_template(t))}});
    return kSuccess;
}

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
    const Template t = load_template(a.template_path);
    const Instance inst = io::parse_instance(io::read_file(a.instance_path), t);

    SolveOptions opts;
    if (a.mode == "auto")
        opts.mode = SolveMode::Auto;
    else if (a.mode == "consistency")
        opts.mode = SolveMode::Consistency;
    else
        opts.mode = SolveMode::Brute;
    opts.check_invariants = a.check;
    opts.max_modulus = a.max_d;
    if (a.trace)
        opts.trace = [&err](const std::string& line) { err << line << '\n'; };

    const SolveResult r = solve(inst, t, opts);
    json report{{"verdict", io::verdict_name(r.verdict.kind)}};
    if (r.verdict.witness)
        report["witness"] = r.verdict.witness->values;
    if (a.stats)
        report["stats"] = io::stats_to_json(r.stats, r.verdict);
    if (a.analysis && t.has_tuple_relation())
        report["analysis"] = io::analysis_to_json(analyze_template(t));
    out << io::serialize_report(report);
    if (!r.verdict.reason.empty())
        err << r.verdict.reason << '\n';

    const auto& p = r.stats.propagation;
    if (p.bound_violations || p.budget_violations) {
        err << "invariant violation: " << p.bound_violations << " window bound, " << p.budget_violations
            << " replacement budget\n";
        return kInternalError;
    }
    switch (r.verdict.kind) {
    case VerdictKind::Sat:
        return kSuccess;
    case VerdictKind::Unsat:
        return kUnsat;
    case VerdictKind::Unknown:
        break;
    }
    return kUnknown;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
    const Template t = load_template(a.template_path);
    const Instance inst = io::parse_instance(io::read_file(a.instance_path), t);
    const Assignment asg = io::parse_assignment(io::read_file(a.assignment_path));
    const VerifyResult r = verify_assignment(inst, t, asg);
    json report{{"verdict", r.ok ? "sat" : "unsat"}, {"witness", asg.values}};
    out << io::serialize_report(report);
    if (!r.ok) {
        err << "constraint " << *r.failing_constraint << " ("
            << inst.constraints[*r.failing_constraint].relation << ") is violated\n";
        return kUnsat;
    }
    return kSuccess;
}

json median_counterexample_to_json(Offset d, const std::string& relation, const MedianCounterexample& c) {
    return json{{"modulus", d},
                {"relation", relation},
                {"inputs", json::array({c.inputs[0], c.inputs[1], c.inputs[2]})},
                {"image", c.image}};
}

int cmd_poly(const PolyArgs& a, std::ostream& out) {
    const Template t = load_template(a.template_path);
    const Offset d_max = a.max_d.value_or(default_modulus_bound(t));
    if (d_max < 1)
        throw InputError("--max-d must be at least 1");

    PolymorphismSearchOptions opts;
    opts.window = a.window;
    opts.randomized_trials = a.trials;
    opts.seed = a.seed;
    const auto finding = find_modular_median(t, d_max, opts);

    json poly{{"max_d", d_max}, {"found", finding.has_value()}};
    if (finding) {
        poly["modulus"] = finding->modulus;
        poly["verified_window"] = finding->verified_window;
        poly["randomized_trials"] = finding->randomized_trials;
        poly["window_verified"] = true;
        json decomp = json::array();
        for (const auto& rel : t.relations()) {
            if (rel.arity() < 3 || !rel.has_tuples())
                continue;
            const auto r = check_two_decomposable(rel);
            json jr{{"relation", rel.name()}, {"decomposable", r.decomposable}, {"window", r.window}};
            if (r.counterexample)
                jr["counterexample"] = *r.counterexample;
            decomp.push_back(std::move(jr));
        }
        poly["two_decomposable"] = std::move(decomp);
    } else {
        json refutations = json::array();
        for (Offset d = 1; d <= d_max; ++d) {
            for (const auto& rel : t.relations()) {
                const auto r = preserves_relation(d, rel, a.window);
                if (!r.preserved) {
                    refutations.push_back(median_counterexample_to_json(d, rel.name(), *r.counterexample));
                    break;
                }
            }
        }
        poly["refutations"] = std::move(refutations);
    }
    out << io::serialize_report(json{{"polymorphism", std::move(poly)}});
    return finding ? kSuccess : kUnknown;
}

int cmd_endo_check(const EndoArgs& a, std::ostream& out) {
    const Template t = load_template(a.template_path);
    const PeriodicMapSpec spec = io::parse_periodic_spec(io::read_file(a.spec_path));
    const EndoCheck check = is_endomorphism(spec, t);
    json endo{{"spec", io::format_periodic_spec(spec)}, {"is_endomorphism", check.is_endomorphism}};
    if (check.counterexample) {
        endo["counterexample"] = json{{"relation", check.counterexample->relation},
                                      {"source", check.counterexample->source},
                                      {"image", check.counterexample->image}};
    } else {
        endo["classification"] = io::classification_to_json(classify_endomorphism(spec, t));
    }
    out << io::serialize_report(json{{"endomorphism", std::move(endo)}});
    return check.is_endomorphism ? kSuccess : kUnsat;
}

int cmd_endo_search(const EndoArgs& a, std::ostream& out) {
    const Template t = load_template(a.template_path);
    const Offset big_d = std::max<Offset>(1, max_distance_or_zero(t));
    EndoSearchOptions opts;
    opts.max_period = a.max_period.value_or(big_d);
    opts.value_window = a.value_window.value_or(2 * big_d);
    if (!a.drifts.empty()) {
        opts.drifts.clear();
        for (const auto& d : a.drifts) {
            if (d == "+1" || d == "1")
                opts.drifts.push_back(1);
            else if (d == "-1")
                opts.drifts.push_back(-1);
            else if (d == "0")
                opts.drifts.push_back(0);
            else
                throw InputError("--drift must be +1, -1 or 0, got '" + d + "'");
        }
    }
    const auto found = search_periodic_endomorphism(t, opts);
    json drifts = json::array();
    for (int d : opts.drifts)
        drifts.push_back(d);
    json search{{"found", found.has_value()},
                {"max_period", opts.max_period},
                {"value_window", opts.value_window},
                {"drifts", std::move(drifts)}};
    if (found) {
        search["spec"] = io::format_periodic_spec(*found);
        search["classification"] = io::classification_to_json(classify_endomorphism(*found, t));
    }
    out << io::serialize_report(json{{"endomorphism_search", std::move(search)}});
    return found ? kSuccess : kUnknown;
}

int cmd_endo_reduce(const EndoArgs& a, std::ostream& out) {
    const Template t = load_template(a.template_path);
    if (a.q < 1)
        throw InputError("--q must be at least 1");
    const std::string doc = io::serialize_report(io::template_to_json(reduce_template(t, a.q)));
    if (!a.out_path.empty()) {
        std::ofstream f(a.out_path, std::ios::binary);
        if (!f)
            throw InputError("cannot write '" + a.out_path + "'");
        f << doc;
    }
    out << doc;
    return kSuccess;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decision procedures for distance constraint satisfaction problems", "distcsp"};
    app.require_subcommand(1);

    std::string analyze_path;
    auto* analyze = app.add_subcommand("analyze", "Gaifman distance profile and stretch bound of a template");
    analyze->add_option("template", analyze_path, "Template document")->required();

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "Decide an instance over a template");
    solve_cmd->add_option("template", solve_args.template_path, "Template document")->required();
    solve_cmd->add_option("instance", solve_args.instance_path, "Instance document")->required();
    solve_cmd->add_option("--mode", solve_args.mode, "auto | consistency | brute")
        ->check(CLI::IsMember({"auto", "consistency", "brute"}));
    solve_cmd->add_flag("--trace", solve_args.trace, "Print each proper replacement to stderr");
    solve_cmd->add_flag("--stats", solve_args.stats, "Include propagation statistics in the report");
    solve_cmd->add_flag("--analysis", solve_args.analysis, "Include the template analysis in the report");
    solve_cmd->add_flag("--check", solve_args.check, "Check window-bound and budget invariants");
    solve_cmd->add_option("--max-d", solve_args.max_d, "Modulus bound for the polymorphism check");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "Check an assignment against an instance");
    verify->add_option("template", verify_args.template_path, "Template document")->required();
    verify->add_option("instance", verify_args.instance_path, "Instance document")->required();
    verify->add_option("assignment", verify_args.assignment_path, "Assignment document")->required();

    PolyArgs poly_args;
    auto* poly = app.add_subcommand("poly", "Search for a modular median polymorphism");
    poly->add_option("template", poly_args.template_path, "Template document")->required();
    poly->add_option("--max-d", poly_args.max_d, "Largest modulus to try (default 2*D)");
    poly->add_option("--window", poly_args.window, "Base-shift window override");
    poly->add_option("--trials", poly_args.trials, "Randomized falsification trials per relation");
    poly->add_option("--seed", poly_args.seed, "Seed for the randomized falsifier");

    EndoArgs endo_args;
    auto* endo = app.add_subcommand("endo", "Endomorphism checks, search and template reduction");
    endo->require_subcommand(1);
    auto* endo_check = endo->add_subcommand("check", "Check and classify a periodic map");
    endo_check->add_option("template", endo_args.template_path, "Template document")->required();
    endo_check->add_option("--spec", endo_args.spec_path, "File holding 'p=..; values=..; drift=..'")->required();
    auto* endo_search = endo->add_subcommand("search", "Bounded search for a non-isometric periodic endomorphism");
    endo_search->add_option("template", endo_args.template_path, "Template document")->required();
    endo_search->add_option("--max-period", endo_args.max_period, "Largest period (default D)");
    endo_search->add_option("--value-window", endo_args.value_window, "Base values range (default 2*D)");
    endo_search->add_option("--drift", endo_args.drifts, "Restrict drifts (+1, -1, 0); repeatable");
    auto* endo_reduce = endo->add_subcommand("reduce", "Restrict to multiples of q and rescale");
    endo_reduce->add_option("template", endo_args.template_path, "Template document")->required();
    endo_reduce->add_option("--q", endo_args.q, "Reduction factor")->required();
    endo_reduce->add_option("--out", endo_args.out_path, "Also write the reduced template here");

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kInputError;
    }

    try {
        if (*analyze)
            return cmd_analyze(analyze_path, out);
        if (*solve_cmd)
            return cmd_solve(solve_args, out, err);
        if (*verify)
            return cmd_verify(verify_args, out, err);
        if (*poly)
            return cmd_poly(poly_args, out);
        if (*endo_check)
            return cmd_endo_check(endo_args, out);
        if (*endo_search)
            return cmd_endo_search(endo_args, out);
        if (*endo_reduce)
            return cmd_endo_reduce(endo_args, out);
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    } catch (const RefusalError& e) {
        err << e.what() << '\n';
        return kUnknown;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

} // namespace distcsp::cli
