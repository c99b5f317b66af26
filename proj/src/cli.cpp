#include "hybridad/cli.hpp"

#include <array>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "hybridad/csv_io.hpp"
#include "hybridad/datagen.hpp"
#include "hybridad/model_io.hpp"
#include "hybridad/pipeline.hpp"
#include "hybridad/text.hpp"

namespace hybridad::cli {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code_for(Errc code) {
    switch (code) {
    case Errc::ParseError:
    case Errc::VersionMismatch: return kExitParse;
    case Errc::IoError: return kExitIo;
    default: return kExitValidation;
    }
}

namespace {

template <typename Fn> int run_command(Fn&& fn) {
    try {
        fn();
        return kExitSuccess;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}

std::string cycle_file_name(int index, int total) {
    int width = 1;
    for (int rest = total - 1; rest >= 10; rest /= 10) ++width;
    if (width < 3) width = 3;
    std::ostringstream name;
    name << "cycle_" << std::setw(width) << std::setfill('0') << index << ".csv";
    return name.str();
}

std::string describe_verdict(const automaton::Verdict& v) {
    using automaton::VerdictKind;
    std::ostringstream out;
    switch (v.kind) {
    case VerdictKind::UnexpectedInitialState:
        if (v.unknown_signature)
            out << "initial signature " << automaton::signature_to_string(v.signature)
                << " unknown to the model";
        else
            out << "signature " << automaton::signature_to_string(v.signature)
                << " is not an initial state";
        break;
    case VerdictKind::UnknownEvent:
        out << "no transition from state " << (v.source_state ? *v.source_state : -1)
            << " on event " << (v.event ? automaton::event_to_string(*v.event) : "?");
        if (v.unknown_signature)
            out << " (signature " << automaton::signature_to_string(v.signature)
                << " never seen in training)";
        break;
    case VerdictKind::WrongTiming:
        out << "dwell " << format_double(v.dwell.value_or(0.0)) << " s outside ["
            << format_double(v.interval_min.value_or(0.0)) << ", "
            << format_double(v.interval_max.value_or(0.0)) << "] s on event "
            << (v.event ? automaton::event_to_string(*v.event) : "?") << " from state "
            << (v.source_state ? *v.source_state : -1);
        break;
    case VerdictKind::Normal: break;
    }
    return out.str();
}

void do_generate(const GenerateOptions& options) {
    const datagen::CycleSpec spec = options.spec_path.empty()
                                        ? datagen::default_cycle_spec()
                                        : model_io::load_cycle_spec(options.spec_path);
    spec.validate();

    std::error_code ec;
    fs::create_directories(options.out_dir, ec);
    if (ec) raise(Errc::IoError, "cannot create '" + options.out_dir + "': " + ec.message());

    RngStream rng(options.seed);
    const std::vector<signals::ObservationExample> cycles =
        datagen::generate_cycles(spec, options.cycles, rng);
    for (int i = 0; i < options.cycles; ++i) {
        const fs::path path =
            fs::path(options.out_dir) / cycle_file_name(i, options.cycles);
        csv_io::write_cycle_csv(path.string(), cycles[static_cast<std::size_t>(i)]);
    }

    const json manifest = {{"seed", options.seed},
                           {"cycles", options.cycles},
                           {"spec", model_io::cycle_spec_to_json(spec)}};
    const fs::path manifest_path = fs::path(options.out_dir) / "manifest.json";
    std::ofstream out(manifest_path, std::ios::binary);
    if (!out) raise(Errc::IoError, "cannot open '" + manifest_path.string() + "' for writing");
    out << manifest.dump(1) << '\n';
    if (!out) raise(Errc::IoError, "write to '" + manifest_path.string() + "' failed");

    std::cout << "wrote " << options.cycles << " cycle files to " << options.out_dir << '\n';
}

void do_train(const TrainOptions& options) {
    pipeline::ModelConfig cfg = options.config_path.empty()
                                    ? pipeline::ModelConfig{}
                                    : model_io::load_model_config(options.config_path);
    if (options.window_seconds) cfg.window_seconds = *options.window_seconds;
    if (options.overlap) cfg.overlap = *options.overlap;
    if (options.layers) cfg.layer_sizes = *options.layers;
    if (options.cd_steps) cfg.cd_steps = *options.cd_steps;
    if (options.epochs) cfg.epochs = *options.epochs;
    if (options.learning_rate) cfg.learning_rate = *options.learning_rate;
    if (options.seed) cfg.seed = *options.seed;

    const std::vector<signals::ObservationExample> corpus = csv_io::load_corpus(options.data_dir);
    pipeline::LearnStats stats;
    const pipeline::BehaviorModel model = pipeline::learn_model(corpus, cfg, &stats);
    model_io::save_model(options.model_path, model);

    std::cout << "cycles: " << corpus.size() << '\n'
              << "snapshots: " << stats.snapshot_count << '\n'
              << "distinct codes: " << stats.distinct_codes << '\n'
              << "states: " << model.machine.states.size() << '\n'
              << "transitions: " << model.machine.transitions.size() << '\n'
              << "model: " << options.model_path << '\n';
}

void do_detect(const DetectOptions& options) {
    const pipeline::BehaviorModel model = model_io::load_model(options.model_path);
    const std::vector<signals::ObservationExample> corpus = csv_io::load_corpus(options.data_dir);

    std::ofstream report(options.report_path, std::ios::binary);
    if (!report) raise(Errc::IoError, "cannot open '" + options.report_path + "' for writing");

    std::array<std::int64_t, pipeline::kCycleClassCount> counts{};
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const pipeline::PipelineReport result =
            pipeline::detect_anomalies(model, corpus[i], options.timing_tolerance);
        counts[static_cast<std::size_t>(result.classification)] += 1;

        json line = {{"cycle", i},
                     {"class", pipeline::cycle_class_name(result.classification)},
                     {"detail", result.replay.verdicts.empty()
                                    ? ""
                                    : describe_verdict(result.replay.verdicts.front())},
                     {"t", nullptr}};
        if (!result.replay.verdicts.empty()) line["t"] = result.replay.verdicts.front().at;
        report << line.dump() << '\n';
    }
    if (!report) raise(Errc::IoError, "write to '" + options.report_path + "' failed");

    std::cout << std::left << std::setw(24) << "classification" << std::right << std::setw(8)
              << "cycles" << std::setw(9) << "percent" << '\n';
    for (int c = 0; c < pipeline::kCycleClassCount; ++c) {
        const double pct = corpus.empty() ? 0.0
                                          : 100.0 * static_cast<double>(counts[static_cast<std::size_t>(c)]) /
                                                static_cast<double>(corpus.size());
        std::ostringstream cell;
        cell << std::fixed << std::setprecision(0) << pct << '%';
        std::cout << std::left << std::setw(24)
                  << pipeline::cycle_class_name(static_cast<pipeline::CycleClass>(c)) << std::right
                  << std::setw(8) << counts[static_cast<std::size_t>(c)] << std::setw(9)
                  << cell.str() << '\n';
    }
    std::cout << std::left << std::setw(24) << "total" << std::right << std::setw(8)
              << corpus.size() << '\n'
              << "report: " << options.report_path << '\n';
}

void do_inspect(const InspectOptions& options) {
    const pipeline::BehaviorModel model = model_io::load_model(options.model_path);

    std::size_t continuous = 0;
    for (signals::SignalKind kind : model.kinds)
        if (kind == signals::SignalKind::Continuous) ++continuous;

    std::ostringstream arch;
    arch << model.net.input_count();
    for (const rbm::Rbm& layer : model.net.layers) arch << '-' << layer.hidden_count();

    std::cout << "signals: " << continuous << " continuous + "
              << (model.kinds.size() - continuous) << " discrete\n"
              << "architecture: " << arch.str() << '\n'
              << "code width: " << model.code_width << '\n'
              << "window: " << format_double(model.windowing.window_seconds) << " s, overlap "
              << format_double(model.windowing.overlap) << ", sample time "
              << format_double(model.windowing.sample_time) << " s\n"
              << "states: " << model.machine.states.size() << '\n'
              << "transitions: " << model.machine.transitions.size() << '\n'
              << "initial states: " << model.machine.initial_state_ids.size() << '\n'
              << "seed: " << model.seed << '\n'
              << "config digest: " << model.config_digest << '\n';

    if (!options.dot_path.empty()) {
        std::ofstream out(options.dot_path, std::ios::binary);
        if (!out) raise(Errc::IoError, "cannot open '" + options.dot_path + "' for writing");
        out << automaton::export_dot(model.machine);
        if (!out) raise(Errc::IoError, "write to '" + options.dot_path + "' failed");
        std::cout << "dot: " << options.dot_path << '\n';
    }
}

} // namespace

int cmd_generate(const GenerateOptions& options) {
    return run_command([&] { do_generate(options); });
}

int cmd_train(const TrainOptions& options) {
    return run_command([&] { do_train(options); });
}

int cmd_detect(const DetectOptions& options) {
    return run_command([&] { do_detect(options); });
}

int cmd_inspect(const InspectOptions& options) {
    return run_command([&] { do_inspect(options); });
}

} // namespace hybridad::cli
