#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "semid/model_io.hpp"
#include "semid/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitNoAuxiliarySet = 10;
constexpr int kExitInconclusive = 11;
constexpr int kExitAnalysisError = 12;

struct CommonArgs {
    std::string file;
    unsigned long long delta_seed = 0;
    bool use_delta_seed = false;
};

semid::CausalDiagram load_diagram(const std::string& path, semid::ModelFile* model = nullptr) {
    semid::ModelFile m = semid::load_model_file(path);
    if (model) *model = m;
    return semid::CausalDiagram::build(m.spec);
}

semid::Ordering pick_delta(const semid::CausalDiagram& d, const CommonArgs& args) {
    return args.use_delta_seed ? semid::ordering_delta(d, args.delta_seed)
                               : semid::ordering_delta(d);
}

int verdict_exit_code(const semid::Verdict& v) {
    switch (v.kind) {
        case semid::VerdictKind::Identified: return kExitOk;
        case semid::VerdictKind::NoAuxiliarySet: return kExitNoAuxiliarySet;
        case semid::VerdictKind::Inconclusive: return kExitInconclusive;
    }
    return kExitAnalysisError;
}

int run_analyze(const CommonArgs& common, bool as_json, int check_orderings, bool exit_verdict,
                int budget) {
    semid::CausalDiagram d = load_diagram(common.file);
    semid::AnalyzeOptions options;
    options.delta = pick_delta(d, common);
    options.budget = budget;
    semid::Verdict verdict = semid::analyze(d, options);

    std::cout << (as_json ? semid::json_report(d, verdict) : semid::text_report(d, verdict));

    if (check_orderings > 0) {
        int disagreements = 0;
        for (int i = 1; i <= check_orderings; ++i) {
            semid::AnalyzeOptions alt;
            alt.delta = semid::ordering_delta(d, static_cast<unsigned long long>(i));
            alt.budget = budget;
            semid::Verdict other = semid::analyze(d, alt);
            if (other.kind != verdict.kind) {
                ++disagreements;
                std::cout << "ordering check: tie-seed " << i
                          << " disagrees with the reported verdict\n";
            }
        }
        std::cout << "ordering check: " << check_orderings << " orderings, " << disagreements
                  << " disagreement" << (disagreements == 1 ? "" : "s") << "\n";
    }
    return exit_verdict ? verdict_exit_code(verdict) : kExitOk;
}

int run_decompose(const CommonArgs& common, const std::string& x, const std::string& y) {
    semid::ModelFile model;
    semid::CausalDiagram d = load_diagram(common.file, &model);
    semid::PathPolynomial poly = semid::decompose(d, x, y);
    std::cout << semid::format_polynomial(poly) << "\n";

    if (!model.params.empty()) {
        semid::Parameterization pi;
        pi.coeffs = model.params;
        bool complete = true;
        for (const auto& term : poly.terms) {
            for (const auto& p : term) complete &= pi.coeffs.count(p) != 0;
        }
        if (complete) {
            char buffer[64];
            std::snprintf(buffer, sizeof(buffer), "%.12g", semid::eval_polynomial(poly, pi));
            std::cout << "value: " << buffer << "\n";
        }
    }
    return kExitOk;
}

int run_paths(const CommonArgs& common, const std::string& x, const std::string& y) {
    semid::CausalDiagram d = load_diagram(common.file);
    for (const semid::Path& p : semid::enumerate_unblocked_paths(d, d.var(x), d.var(y))) {
        std::cout << semid::format_path(d, p) << "\n";
    }
    return kExitOk;
}

int run_verify(const CommonArgs& common, unsigned long long seed, int trials, bool as_json) {
    semid::CausalDiagram d = load_diagram(common.file);
    semid::RoundTripSummary summary = semid::round_trip_verify(d, seed, trials);
    std::cout << (as_json ? semid::json_round_trip(summary) : semid::text_round_trip(summary));
    return kExitOk;
}

int run_export_dot(const CommonArgs& common, const std::string& what, int budget) {
    semid::CausalDiagram d = load_diagram(common.file);
    if (what == "diagram") {
        std::cout << semid::dot_diagram(d);
        return kExitOk;
    }
    semid::AnalyzeOptions options;
    options.delta = pick_delta(d, common);
    options.budget = budget;
    semid::Verdict verdict = semid::analyze(d, options);
    std::cout << semid::dot_dependence(d, verdict.dependence);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Identifiability analysis of recursive linear SEMs from their causal diagram"};
    app.require_subcommand(1);

    CommonArgs common;
    bool as_json = false;
    bool exit_verdict = false;
    int check_orderings = 0;
    int budget = 10000;
    unsigned long long seed = 1;
    int trials = 100;
    std::string x, y, what = "diagram";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("file", common.file, "model file (JSON)")->required();
        cmd->add_option("--delta-seed", common.delta_seed, "shuffle ordering ties by this seed")
            ->each([&](const std::string&) { common.use_delta_seed = true; });
    };

    CLI::App* analyze = app.add_subcommand("analyze", "identification verdict for a model");
    add_common(analyze);
    analyze->add_flag("--json", as_json, "emit the report as JSON");
    analyze->add_flag("--exit-verdict", exit_verdict, "encode the verdict in the exit code");
    analyze->add_option("--check-orderings", check_orderings,
                        "re-run under N random valid orderings and report disagreements");
    analyze->add_option("--budget", budget, "assignment backtracking budget");

    CLI::App* decompose = app.add_subcommand("decompose", "Wright path polynomial of a pair");
    add_common(decompose);
    decompose->add_option("X", x, "first variable")->required();
    decompose->add_option("Y", y, "second variable")->required();

    CLI::App* paths = app.add_subcommand("paths", "unblocked paths between two variables");
    add_common(paths);
    paths->add_option("X", x, "first variable")->required();
    paths->add_option("Y", y, "second variable")->required();

    CLI::App* verify = app.add_subcommand("verify", "numeric round-trip recovery check");
    add_common(verify);
    verify->add_option("--seed", seed, "base seed for the trials");
    verify->add_option("--trials", trials, "number of trials");
    verify->add_flag("--json", as_json, "emit the summary as JSON");

    CLI::App* export_dot = app.add_subcommand("export-dot", "DOT rendering of a graph");
    add_common(export_dot);
    export_dot->add_option("--what", what, "diagram or dependence")
        ->check(CLI::IsMember({"diagram", "dependence"}));
    export_dot->add_option("--budget", budget, "assignment backtracking budget");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            return run_analyze(common, as_json, check_orderings, exit_verdict, budget);
        }
        if (decompose->parsed()) return run_decompose(common, x, y);
        if (paths->parsed()) return run_paths(common, x, y);
        if (verify->parsed()) return run_verify(common, seed, trials, as_json);
        if (export_dot->parsed()) return run_export_dot(common, what, budget);
    } catch (const semid::ParseError& e) {
        std::cerr << common.file << ":" << e.line() << ":" << e.column()
                  << ": parse error: " << e.what() << "\n";
        return kExitInput;
    } catch (const semid::PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const semid::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
