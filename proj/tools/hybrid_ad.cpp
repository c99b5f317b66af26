#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hybridad/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Behavioral-model learning and anomaly detection for hybrid "
                 "production systems"};
    app.require_subcommand(1);

    hybridad::cli::GenerateOptions generate;
    CLI::App* gen = app.add_subcommand("generate", "Write a synthetic cycle corpus as CSV files");
    gen->add_option("out-dir", generate.out_dir, "Output directory")->required();
    gen->add_option("--cycles", generate.cycles, "Number of cycles")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    gen->add_option("--spec", generate.spec_path, "Cycle spec JSON file (default: built-in)");
    gen->add_option("--seed", generate.seed, "Root seed")->capture_default_str();

    hybridad::cli::TrainOptions train;
    CLI::App* tr = app.add_subcommand("train", "Learn a behavioral model from a CSV corpus");
    tr->add_option("data-dir", train.data_dir, "Directory of cycle CSV files")->required();
    tr->add_option("model-out", train.model_path, "Model file to write")->required();
    tr->add_option("--config", train.config_path, "Training config JSON file");
    tr->add_option("--window-seconds", train.window_seconds, "Sliding window length in seconds");
    tr->add_option("--overlap", train.overlap, "Window overlap fraction in [0, 1)");
    tr->add_option("--layers", train.layers, "Hidden layer widths, comma separated")
        ->delimiter(',');
    tr->add_option("--cd-k", train.cd_steps, "Contrastive divergence steps");
    tr->add_option("--epochs", train.epochs, "Training epochs per layer");
    tr->add_option("--lr", train.learning_rate, "Learning rate for every layer");
    tr->add_option("--seed", train.seed, "Root seed");

    hybridad::cli::DetectOptions detect;
    CLI::App* det = app.add_subcommand("detect", "Replay cycles against a model");
    det->add_option("model", detect.model_path, "Model file")->required();
    det->add_option("data-dir", detect.data_dir, "Directory of cycle CSV files")->required();
    det->add_option("report-out", detect.report_path, "JSON-lines report to write")->required();
    det->add_option("--timing-tolerance", detect.timing_tolerance,
                    "Relative widening of dwell intervals")
        ->capture_default_str();

    hybridad::cli::InspectOptions inspect;
    CLI::App* ins = app.add_subcommand("inspect", "Summarize a model file");
    ins->add_option("model", inspect.model_path, "Model file")->required();
    ins->add_option("--dot", inspect.dot_path, "Write the automaton as a DOT file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? hybridad::cli::kExitSuccess : hybridad::cli::kExitUsage;
    }

    if (gen->parsed()) return hybridad::cli::cmd_generate(generate);
    if (tr->parsed()) return hybridad::cli::cmd_train(train);
    if (det->parsed()) return hybridad::cli::cmd_detect(detect);
    return hybridad::cli::cmd_inspect(inspect);
}
