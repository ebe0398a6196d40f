#include <CLI11.hpp>

#include "frac_cli.hpp"

int main(int argc, char** argv) {
    using namespace fracspec::cli;
    CLI::App app{"Fractional calculus on exponentially weighted spaces"};
    app.require_subcommand(1);
    Options opt;

    auto common = [&](CLI::App* sub, bool config_required) {
        auto* c = sub->add_option("--config", opt.config_path, "JSON configuration");
        if (config_required) c->required()->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out_dir, "output directory")->capture_default_str();
        sub->add_option("--threads", opt.threads, "worker thread cap")->check(CLI::PositiveNumber);
        sub->add_option("--seed", opt.seed, "seed for randomized inputs");
    };
    auto* apply = app.add_subcommand("apply", "apply a fractional derivative or integral to an input");
    common(apply, true);
    auto* solve = app.add_subcommand("solve", "solve a Caputo or Riemann-Liouville problem");
    common(solve, true);
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    common(verify, false);
    verify->add_option("suite", opt.suite, "suite name")->capture_default_str();
    verify->add_option("--budget", opt.budgets, "override a budget, NAME=VALUE");
    auto* bench = app.add_subcommand("bench", "time the spectral path against the quadrature oracle");
    common(bench, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    if (*apply) return guarded(cmd_apply, opt);
    if (*solve) return guarded(cmd_solve, opt);
    if (*verify) return guarded(cmd_verify, opt);
    return guarded(cmd_bench, opt);
}
