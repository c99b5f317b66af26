#include "hybridad/pipeline.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>
#include <utility>

#include <Eigen/Dense>

#include "hybridad/errors.hpp"
#include "hybridad/text.hpp"

namespace hybridad::pipeline {

namespace {

std::size_t continuous_count(const std::vector<signals::SignalKind>& kinds) {
    return static_cast<std::size_t>(
        std::count(kinds.begin(), kinds.end(), signals::SignalKind::Continuous));
}

double infer_sample_time(const signals::ObservationExample& o) {
    if (o.size() < 2) raise(Errc::TooShort, "need at least two samples to infer the time grid");
    std::vector<double> gaps;
    gaps.reserve(o.size() - 1);
    for (std::size_t i = 1; i < o.size(); ++i)
        gaps.push_back(o.samples[i].t - o.samples[i - 1].t);
    const std::size_t mid = gaps.size() / 2;
    std::nth_element(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(mid), gaps.end());
    return gaps[mid];
}

std::string digest_config(const ModelConfig& cfg, double resolved_sample_time) {
    std::string text = "w=" + format_double(cfg.window_seconds) +
                       ";o=" + format_double(cfg.overlap) +
                       ";st=" + format_double(resolved_sample_time) + ";layers=";
    for (std::size_t i = 0; i < cfg.layer_sizes.size(); ++i) {
        if (i > 0) text += ',';
        text += std::to_string(cfg.layer_sizes[i]);
    }
    text += ";cd=" + std::to_string(cfg.cd_steps) + ";ep=" + std::to_string(cfg.epochs) +
            ";bs=" + std::to_string(cfg.batch_size) + ";lr=" + format_double(cfg.learning_rate) +
            ";seed=" + std::to_string(cfg.seed);

    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

Eigen::VectorXd to_vector(const std::vector<double>& values) {
    return Eigen::Map<const Eigen::VectorXd>(values.data(),
                                             static_cast<Eigen::Index>(values.size()));
}

CycleClass classify(const automaton::AnomalyReport& replay) {
    if (replay.verdicts.empty()) return CycleClass::Normal;
    const automaton::Verdict& v = replay.verdicts.front();
    if (v.unknown_signature) return CycleClass::NewPattern;
    switch (v.kind) {
    case automaton::VerdictKind::UnknownEvent: return CycleClass::UnknownEvent;
    case automaton::VerdictKind::WrongTiming: return CycleClass::WrongTiming;
    case automaton::VerdictKind::UnexpectedInitialState: return CycleClass::UnexpectedInitialState;
    case automaton::VerdictKind::Normal: break;
    }
    return CycleClass::Normal;
}

} // namespace

void BehaviorModel::validate() const {
    const std::size_t continuous = continuous_count(kinds);
    if (continuous == 0) raise(Errc::NoContinuousSignals, "model has no continuous signals");
    const signals::WindowLayout layout = signals::window_layout(windowing);
    const auto expected_input =
        static_cast<Eigen::Index>(layout.samples_per_window * continuous);
    if (net.input_count() != expected_input)
        raise(Errc::DimensionMismatch,
              "network input width " + std::to_string(net.input_count()) +
                  " does not match window size " + std::to_string(expected_input));
    if (net.code_width() != code_width)
        raise(Errc::DimensionMismatch, "stored code width disagrees with the network");
    const std::size_t expected_signature =
        static_cast<std::size_t>(code_width) + native_discrete_indices.size();
    if (!machine.states.empty() && machine.signature_width() != expected_signature)
        raise(Errc::DimensionMismatch,
              "automaton signature width " + std::to_string(machine.signature_width()) +
                  " does not match code width plus discrete signals " +
                  std::to_string(expected_signature));
    if (scaling.scale.size() != continuous || scaling.offset.size() != continuous)
        raise(Errc::DimensionMismatch, "scaling parameter count does not match signals");
}

automaton::DiscreteObservation discretize(const BehaviorModel& model,
                                          const signals::ObservationExample& o) {
    if (o.kinds != model.kinds)
        raise(Errc::KindsMismatch, "observation signal kinds differ from the training data");

    const signals::ObservationExample scaled = signals::apply_scaling(o, model.scaling);
    const std::vector<signals::Snapshot> snapshots = signals::window(scaled, model.windowing);
    const signals::WindowLayout layout = signals::window_layout(model.windowing);

    automaton::DiscreteObservation disc;
    disc.samples.reserve(snapshots.size());
    for (std::size_t k = 0; k < snapshots.size(); ++k) {
        const dbn::BinaryCode code = dbn::encode(model.net, to_vector(snapshots[k].values));
        automaton::DiscreteSample sample;
        sample.t = snapshots[k].window_end;
        sample.bits.assign(code.begin(), code.end());
        const signals::TimedSample& end_sample = o.samples[layout.end_index(k)];
        for (std::size_t idx : model.native_discrete_indices) {
            const double value = end_sample.values[idx];
            if (value != 0.0 && value != 1.0)
                raise(Errc::NonBinaryDiscrete, "discrete signal value must be 0 or 1");
            sample.bits.push_back(value == 1.0 ? 1 : 0);
        }
        disc.samples.push_back(std::move(sample));
    }
    return disc;
}

BehaviorModel learn_model(const std::vector<signals::ObservationExample>& observations,
                          const ModelConfig& cfg, LearnStats* stats) {
    if (observations.empty()) raise(Errc::EmptyInput, "no training observations");
    for (const signals::ObservationExample& o : observations)
        if (o.kinds != observations.front().kinds)
            raise(Errc::KindsMismatch, "training observations disagree on signal kinds");
    if (continuous_count(observations.front().kinds) == 0)
        raise(Errc::NoContinuousSignals, "training data has no continuous signals");

    BehaviorModel model;
    model.kinds = observations.front().kinds;
    model.native_discrete_indices = observations.front().discrete_indices();
    model.windowing.window_seconds = cfg.window_seconds;
    model.windowing.overlap = cfg.overlap;
    model.windowing.sample_time =
        cfg.sample_time > 0.0 ? cfg.sample_time : infer_sample_time(observations.front());
    model.seed = cfg.seed;
    model.config_digest = digest_config(cfg, model.windowing.sample_time);
    model.scaling = signals::fit_scaling(observations).params;

    std::vector<Eigen::VectorXd> pooled;
    for (const signals::ObservationExample& o : observations) {
        const signals::ObservationExample scaled = signals::apply_scaling(o, model.scaling);
        for (const signals::Snapshot& snap : signals::window(scaled, model.windowing))
            pooled.push_back(to_vector(snap.values));
    }

    std::vector<rbm::TrainConfig> layer_configs = dbn::default_layer_configs(cfg.layer_sizes);
    for (rbm::TrainConfig& layer : layer_configs) {
        layer.cd_steps = cfg.cd_steps;
        layer.epochs = cfg.epochs;
        layer.batch_size = cfg.batch_size;
        if (cfg.learning_rate > 0.0) layer.learning_rate = cfg.learning_rate;
        layer.mean_field_visible = true;
    }

    RngStream rng(cfg.seed);
    model.net = dbn::train_dbn(pooled, layer_configs, rng);
    model.code_width = static_cast<int>(model.net.code_width());

    std::vector<automaton::DiscreteObservation> streams;
    streams.reserve(observations.size());
    std::set<automaton::Signature> codes;
    for (const signals::ObservationExample& o : observations) {
        automaton::DiscreteObservation disc = discretize(model, o);
        for (const automaton::DiscreteSample& s : disc.samples)
            codes.insert(automaton::Signature(
                s.bits.begin(), s.bits.begin() + static_cast<std::ptrdiff_t>(model.code_width)));
        streams.push_back(std::move(disc));
    }
    model.machine = automaton::learn_automaton(streams, automaton::ConvergencePolicy::SinglePass);

    model.validate();
    if (stats != nullptr) {
        stats->snapshot_count = pooled.size();
        stats->distinct_codes = codes.size();
    }
    return model;
}

PipelineReport detect_anomalies(const BehaviorModel& model, const signals::ObservationExample& o,
                                double timing_tolerance) {
    model.validate();
    const automaton::DiscreteObservation disc = discretize(model, o);
    PipelineReport report;
    report.replay = automaton::detect(model.machine, disc, timing_tolerance,
                                      automaton::DetectMode::StopAtFirst);
    report.classification = classify(report.replay);
    return report;
}

std::string cycle_class_name(CycleClass c) {
    switch (c) {
    case CycleClass::Normal: return "Normal";
    case CycleClass::NewPattern: return "NewPattern";
    case CycleClass::UnknownEvent: return "UnknownEvent";
    case CycleClass::WrongTiming: return "WrongTiming";
    case CycleClass::UnexpectedInitialState: return "UnexpectedInitialState";
    }
    return "Unknown";
}

std::int64_t EvaluationSummary::total(CycleLabel label) const {
    std::int64_t sum = 0;
    for (std::int64_t c : counts[static_cast<std::size_t>(label)]) sum += c;
    return sum;
}

EvaluationSummary evaluate(const BehaviorModel& model, const std::vector<LabeledCycle>& cycles,
                           double timing_tolerance) {
    EvaluationSummary summary;
    for (const LabeledCycle& entry : cycles) {
        const PipelineReport report = detect_anomalies(model, entry.cycle, timing_tolerance);
        summary.counts[static_cast<std::size_t>(entry.label)]
                      [static_cast<std::size_t>(report.classification)] += 1;
    }
    return summary;
}

std::string format_evaluation(const EvaluationSummary& summary) {
    static const char* kLabels[2] = {"normal", "modified"};
    std::ostringstream out;
    out << std::left << std::setw(10) << "label";
    for (int c = 0; c < kCycleClassCount; ++c)
        out << std::right << std::setw(23) << cycle_class_name(static_cast<CycleClass>(c));
    out << std::right << std::setw(8) << "cycles" << '\n';
    for (int label = 0; label < 2; ++label) {
        const auto& row = summary.counts[static_cast<std::size_t>(label)];
        const std::int64_t total = summary.total(static_cast<CycleLabel>(label));
        out << std::left << std::setw(10) << kLabels[label];
        for (int c = 0; c < kCycleClassCount; ++c) {
            const double pct =
                total > 0 ? 100.0 * static_cast<double>(row[static_cast<std::size_t>(c)]) /
                                static_cast<double>(total)
                          : 0.0;
            std::ostringstream cell;
            cell << std::fixed << std::setprecision(0) << pct << '%';
            out << std::right << std::setw(23) << cell.str();
        }
        out << std::right << std::setw(8) << total << '\n';
    }
    return out.str();
}

} // namespace hybridad::pipeline
