#include "radbound/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "radbound/bounds.hpp"
#include "radbound/error.hpp"
#include "radbound/estimator.hpp"
#include "radbound/io.hpp"
#include "radbound/subsequence.hpp"
#include "radbound/sweep.hpp"

namespace radbound::cli {

using nlohmann::json;

namespace {

struct BoundArgs {
    std::string network;
    std::string budget;
    std::size_t n = 0;
    std::optional<double> radius;
    std::string method = "main";
    std::string subseq;
};

struct OptimizeArgs {
    std::string network;
    std::string budget;
};

struct EstimateArgs {
    std::string budget;
    std::string inputs;
    std::string mode = "exact";
    std::size_t mc_samples = 256;
    std::size_t restarts = 20;
    std::size_t steps = 500;
    double step_size = 0.1;
    std::string widths = "1,2,4";
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    std::string out;
};

struct SweepArgs {
    std::string family = "gaussian";
    std::size_t depth_min = 1;
    std::size_t depth_max = 64;
    Eigen::Index width = 16;
    double frobenius = 1.0;
    std::uint64_t seed = 0;
    std::size_t n = 1000;
    double radius = 1.0;
    std::string out;
};

// Budget from exactly one of --network / --budget; a network yields its tight budget.
NormBudget load_budget_source(const std::string& network, const std::string& budget,
                              std::optional<double> radius_override) {
    if (network.empty() == budget.empty()) {
        throw FormatError("give exactly one of --network or --budget");
    }
    if (!network.empty()) {
        return budget_from_network(load_network(network), 0.0, radius_override.value_or(1.0));
    }
    NormBudget b = load_budget(budget);
    return radius_override ? b.with_radius(*radius_override) : b;
}

int cmd_bound(const BoundArgs& args, std::ostream& out) {
    const NormBudget budget = load_budget_source(args.network, args.budget, args.radius);
    const BoundMethod method = parse_bound_method(args.method);
    std::optional<Subsequence> seq;
    if (method == BoundMethod::Composite) {
        if (args.subseq.empty()) {
            throw FormatError("--subseq is required with --method composite");
        }
        seq = Subsequence::parse(args.subseq);
    } else if (!args.subseq.empty()) {
        throw FormatError("--subseq is only valid with --method composite");
    }
    const BoundReport report = evaluate_bound(NormProfile(budget), method, args.n, budget.radius(), seq);
    out << to_json(report).dump(2) << '\n';
    return kOk;
}

int cmd_optimize(const OptimizeArgs& args, std::ostream& out) {
    const NormProfile profile(load_budget_source(args.network, args.budget, std::nullopt));
    const Subsequence dyadic = dyadic_subsequence(profile);
    const Subsequence optimal = optimal_subsequence(profile);
    const double dyadic_cost = subsequence_cost(profile, dyadic);
    const double optimal_cost = subsequence_cost(profile, optimal);
    const json doc{{"depth", profile.depth()},
                   {"dyadic", {{"subsequence", to_json(dyadic)}, {"cost", dyadic_cost}}},
                   {"optimal", {{"subsequence", to_json(optimal)}, {"cost", optimal_cost}}},
                   {"ratio", optimal_cost / dyadic_cost}};
    out << doc.dump(2) << '\n';
    return kOk;
}

std::vector<Eigen::Index> parse_widths(const std::string& text) {
    std::vector<Eigen::Index> widths;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const long long w = std::stoll(item, &used);
            if (used != item.size() || w < 1) {
                throw std::invalid_argument(item);
            }
            widths.push_back(static_cast<Eigen::Index>(w));
        } catch (const std::exception&) {
            throw FormatError("malformed --widths entry '" + item + "'");
        }
    }
    if (widths.empty()) {
        throw FormatError("--widths must list at least one width");
    }
    return widths;
}

int cmd_estimate(const EstimateArgs& args, std::ostream& out) {
    const NormBudget budget = load_budget(args.budget);
    const InputSet inputs = load_inputs(args.inputs);
    for (Eigen::Index i = 0; i < inputs.size(); ++i) {
        if (inputs.point(i).norm() > budget.radius() * (1.0 + kMembershipTolerance)) {
            throw FormatError("input point " + std::to_string(i) + " lies outside the budget's radius-B ball");
        }
    }

    EstimatorConfig cfg;
    cfg.mode = parse_estimator_mode(args.mode);
    cfg.mc_samples = args.mc_samples;
    cfg.restarts = args.restarts;
    cfg.steps = args.steps;
    cfg.step_size = args.step_size;
    cfg.widths = parse_widths(args.widths);
    cfg.seed = args.seed;
    cfg.threads = args.threads;

    const RademacherEstimate est = empirical_rademacher(inputs, budget, cfg);
    const auto n = static_cast<std::size_t>(inputs.size());
    const NormProfile profile(budget);
    const Subsequence optimal = optimal_subsequence(profile);
    const double bound = composite_bound(profile, optimal, n, budget.radius());

    json doc{{"estimate", est.mean},
             {"mode", std::string(to_string(est.mode))},
             {"n", n},
             {"seed", args.seed},
             {"stderr", est.standard_error ? json(*est.standard_error) : json(nullptr)},
             {"sign_vectors", est.sign_vectors},
             {"bound", bound},
             {"subsequence", to_json(optimal)},
             {"ratio", est.mean / bound}};
    if (!args.out.empty() && est.best_witness) {
        write_text_file(args.out, network_to_text(*est.best_witness));
        doc["witness_file"] = args.out;
    }
    out << doc.dump(2) << '\n';
    return kOk;
}

int cmd_sweep(const SweepArgs& args, std::ostream& out) {
    SweepFamily family;
    family.kind = parse_family(args.family);
    family.width = args.width;
    family.per_layer_frobenius = args.frobenius;
    family.seed = args.seed;
    const auto rows = run_sweep(family, args.depth_min, args.depth_max, args.n, args.radius);
    std::ostringstream csv;
    write_sweep_csv(rows, csv);
    write_text_file(args.out, csv.str());
    out << json{{"rows", rows.size()}, {"out", args.out}, {"family", args.family}}.dump(2) << '\n';
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Norm-based Rademacher complexity bounds for ReLU networks", "radbound"};
    app.require_subcommand(1);

    BoundArgs bound;
    auto* bound_cmd = app.add_subcommand("bound", "Evaluate a Rademacher complexity bound");
    auto* bound_net = bound_cmd->add_option("--network", bound.network, "Network JSON file");
    auto* bound_budget = bound_cmd->add_option("--budget", bound.budget, "Budget JSON file");
    bound_net->excludes(bound_budget);
    bound_cmd->add_option("--n", bound.n, "Sample count")->required()->check(CLI::PositiveNumber);
    bound_cmd->add_option("--B", bound.radius, "Input radius (overrides the budget file)")
        ->check(CLI::PositiveNumber);
    bound_cmd->add_option("--method", bound.method, "main | composite | baseline | optimal")
        ->check(CLI::IsMember({"main", "composite", "baseline", "optimal"}));
    bound_cmd->add_option("--subseq", bound.subseq, "Breakpoints for --method composite, e.g. \"0,3,7\"");

    OptimizeArgs optimize;
    auto* opt_cmd = app.add_subcommand("optimize", "Dyadic and optimal layer subsequences");
    auto* opt_net = opt_cmd->add_option("--network", optimize.network, "Network JSON file");
    auto* opt_budget = opt_cmd->add_option("--budget", optimize.budget, "Budget JSON file");
    opt_net->excludes(opt_budget);

    EstimateArgs estimate;
    auto* est_cmd = app.add_subcommand("estimate", "Empirical Rademacher complexity by projected ascent");
    est_cmd->add_option("--budget", estimate.budget, "Budget JSON file")->required();
    est_cmd->add_option("--inputs", estimate.inputs, "Input-set JSON file")->required();
    est_cmd->add_option("--mode", estimate.mode, "exact | mc")->check(CLI::IsMember({"exact", "mc", "monte_carlo"}));
    est_cmd->add_option("--mc-samples", estimate.mc_samples, "Sign vectors drawn in mc mode");
    est_cmd->add_option("--restarts", estimate.restarts, "Ascent restarts per width");
    est_cmd->add_option("--steps", estimate.steps, "Ascent steps per restart");
    est_cmd->add_option("--step-size", estimate.step_size, "Initial relative step size");
    est_cmd->add_option("--widths", estimate.widths, "Hidden widths to search, e.g. \"1,2,4\"");
    est_cmd->add_option("--seed", estimate.seed, "Random seed");
    est_cmd->add_option("--threads", estimate.threads, "Worker threads (0 = all cores)");
    est_cmd->add_option("--out", estimate.out, "Write the best witness network here");

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Bounds across depths for a synthetic network family");
    sweep_cmd->add_option("--family", sweep.family, "rank1 | gaussian")
        ->check(CLI::IsMember({"rank1", "gaussian"}));
    sweep_cmd->add_option("--depth-min", sweep.depth_min, "Smallest depth")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--depth-max", sweep.depth_max, "Largest depth")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--width", sweep.width, "Layer width")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--frobenius", sweep.frobenius, "Per-layer Frobenius norm")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--seed", sweep.seed, "Random seed");
    sweep_cmd->add_option("--n", sweep.n, "Sample count used for the bounds")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--B", sweep.radius, "Input radius used for the bounds")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--out", sweep.out, "CSV output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*bound_cmd) return cmd_bound(bound, out);
        if (*opt_cmd) return cmd_optimize(optimize, out);
        if (*est_cmd) return cmd_estimate(estimate, out);
        if (*sweep_cmd) return cmd_sweep(sweep, out);
    } catch (const DegenerateBudgetError& e) {
        err << "error: " << e.what() << '\n';
        return kDegenerateBudget;
    } catch (const ModeError& e) {
        err << "error: " << e.what() << '\n';
        return kModeMismatch;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace radbound::cli
