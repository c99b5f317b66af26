#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hybridad/automaton.hpp"
#include "hybridad/dbn.hpp"
#include "hybridad/signals.hpp"

namespace hybridad::pipeline {

struct ModelConfig {
    double window_seconds = 3.0;
    double overlap = 0.3;
    double sample_time = 0.0; // <= 0: inferred from the data's time grid
    std::vector<int> layer_sizes = {40, 30, 20, 15};
    int cd_steps = 1;
    int epochs = 50;
    int batch_size = 32;
    double learning_rate = 0.0; // <= 0: per-kind defaults
    std::uint64_t seed = 0;
};

// Everything detection needs, frozen at training time.
struct BehaviorModel {
    signals::ScalingParams scaling;
    dbn::Dbn net;
    automaton::TimedAutomaton machine;
    signals::WindowParams windowing;
    int code_width = 0;
    std::vector<std::size_t> native_discrete_indices;
    std::vector<signals::SignalKind> kinds;
    std::uint64_t seed = 0;
    std::string config_digest;

    // Checks the structural width invariants; raised violations indicate a
    // corrupted or hand-edited model.
    void validate() const;
};

struct LearnStats {
    std::size_t snapshot_count = 0;
    std::size_t distinct_codes = 0; // distinct DBN codes before the discrete merge
};

BehaviorModel learn_model(const std::vector<signals::ObservationExample>& observations,
                          const ModelConfig& cfg, LearnStats* stats = nullptr);

// Scale, window, encode, and append the native discrete values sampled at
// each window's end sample. Shared verbatim by training and detection.
automaton::DiscreteObservation discretize(const BehaviorModel& model,
                                          const signals::ObservationExample& o);

enum class CycleClass : int {
    Normal = 0,
    NewPattern = 1,
    UnknownEvent = 2,
    WrongTiming = 3,
    UnexpectedInitialState = 4
};
inline constexpr int kCycleClassCount = 5;

std::string cycle_class_name(CycleClass c);

struct PipelineReport {
    CycleClass classification = CycleClass::Normal;
    automaton::AnomalyReport replay;
};

// Replays one cycle against the model. A verdict whose failing signature
// was never a training state is surfaced as NewPattern.
PipelineReport detect_anomalies(const BehaviorModel& model, const signals::ObservationExample& o,
                                double timing_tolerance = 0.0);

enum class CycleLabel : int { Normal = 0, Modified = 1 };

struct LabeledCycle {
    signals::ObservationExample cycle;
    CycleLabel label = CycleLabel::Normal;
};

struct EvaluationSummary {
    // counts[label][classification]
    std::array<std::array<std::int64_t, kCycleClassCount>, 2> counts{};
    std::int64_t total(CycleLabel label) const;
};

EvaluationSummary evaluate(const BehaviorModel& model, const std::vector<LabeledCycle>& cycles,
                           double timing_tolerance = 0.0);

// Fixed-width percentage table, one row per label.
std::string format_evaluation(const EvaluationSummary& summary);

} // namespace hybridad::pipeline
