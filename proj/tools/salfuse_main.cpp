#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "salfuse/error.hpp"
#include "salfuse/parallel.hpp"
#include "salfuse/pipeline.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::int64_t seed = -1;
    int jobs = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "configuration file")->required();
    cmd->add_option("--out", args.out_dir, "output directory")->required();
    cmd->add_option("--seed", args.seed, "seed override (>= 0)");
    cmd->add_option("--jobs", args.jobs, "worker thread count");
}

salfuse::RunOptions to_options(const CommonArgs& args) {
    salfuse::RunOptions opts;
    opts.out_dir = args.out_dir;
    if (args.seed >= 0) opts.seed = static_cast<std::uint64_t>(args.seed);
    int jobs = args.jobs > 0 ? args.jobs : salfuse::default_jobs();
    if (const char* env = std::getenv("SALFUSE_JOBS")) {
        const int v = std::atoi(env);
        if (v > 0) jobs = v;
    }
    opts.jobs = jobs;
    return opts;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"salfuse: learn per-frame saliency fusion weights from eye-tracking data"};
    app.require_subcommand(1);

    CommonArgs synth_args, features_args, fit_args, evaluate_args, report_args;
    add_common(app.add_subcommand("synth", "generate a seeded synthetic dataset"), synth_args);
    add_common(app.add_subcommand("features", "build per-video feature map stacks"), features_args);
    add_common(app.add_subcommand("fit", "learn per-frame feature weights"), fit_args);
    add_common(app.add_subcommand("evaluate", "score fusion schemes with NSS and KLD"),
               evaluate_args);
    add_common(app.add_subcommand("report", "render weight and metric SVG charts"), report_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand("synth"))
            salfuse::run_synth(salfuse::Config::parse_file(synth_args.config_path),
                               to_options(synth_args));
        else if (app.got_subcommand("features"))
            salfuse::run_features(salfuse::Config::parse_file(features_args.config_path),
                                  to_options(features_args));
        else if (app.got_subcommand("fit"))
            salfuse::run_fit(salfuse::Config::parse_file(fit_args.config_path),
                             to_options(fit_args));
        else if (app.got_subcommand("evaluate"))
            salfuse::run_evaluate(salfuse::Config::parse_file(evaluate_args.config_path),
                                  to_options(evaluate_args));
        else if (app.got_subcommand("report"))
            salfuse::run_report(salfuse::Config::parse_file(report_args.config_path),
                                to_options(report_args));
    } catch (const salfuse::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
