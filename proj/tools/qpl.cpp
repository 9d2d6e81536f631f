// qpl.cpp  --  experiment driver CLI
//
//   qpl <pipeline> --config <file> [--out <dir>] [--threads N] [--seed S]
//
// Exit codes: 0 success, 2 guard/config violation, 3 invariant failure.
// The memory budget for the lattice counter comes from QPL_MEMORY_BUDGET
// (bytes) when set.

#include <cstdio>
#include <string>

#include "CLI11.hpp"

#include "qpl/parallel.hpp"
#include "qpl/pipelines.hpp"

int main(int argc, char** argv) {
    CLI::App app{"quartic-pair laboratory"};
    app.footer("pipelines: moments psi cubic-identity large-values forms-check local\n"
               "           singular-series singular-integral count predict");

    std::string pipeline, config_path, out_dir;
    int threads = 0;
    long long seed = -1;

    app.add_option("pipeline", pipeline, "pipeline to run")->required();
    app.add_option("--config", config_path, "JSON config file")->required();
    app.add_option("--out", out_dir, "output directory (overrides the config)");
    app.add_option("--threads", threads, "worker thread count (0 = library default)");
    app.add_option("--seed", seed, "seed override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (threads > 0) qpl::set_num_threads(threads);

    try {
        auto cfg = qpl::pipelines::ExperimentConfig::from_json_file(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (seed >= 0) cfg.seed = static_cast<qpl::u64>(seed);
        return qpl::pipelines::run_experiment(pipeline, cfg);
    } catch (const qpl::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
}
