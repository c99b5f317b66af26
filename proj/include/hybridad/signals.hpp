#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hybridad::signals {

enum class SignalKind : std::uint8_t { Discrete, Continuous };

/// One timestamped reading of every observed signal.
struct TimedSample {
    double t = 0.0;
    std::vector<double> values;
};

/// One complete production cycle: an ordered, timestamped sequence of
/// mixed continuous/discrete signal vectors. All samples share the same
/// per-position kind tags. Build through build_observation, which checks
/// the invariants; treat as immutable afterwards.
struct ObservationExample {
    std::vector<SignalKind> kinds;
    std::vector<TimedSample> samples;

    std::size_t size() const { return samples.size(); }
    std::size_t signal_count() const { return kinds.size(); }
    std::size_t continuous_count() const;
    std::vector<std::size_t> continuous_indices() const;
    std::vector<std::size_t> discrete_indices() const;
};

ObservationExample build_observation(std::vector<TimedSample> rows,
                                     std::vector<SignalKind> kinds);

/// Flattened continuous content of one sliding window: the continuous
/// sub-vectors of the covered samples concatenated oldest-first. The
/// window ends at (and includes) the sample at window_end.
struct Snapshot {
    double window_end = 0.0;
    std::vector<double> values;
};

struct WindowParams {
    double window_seconds = 0.0;
    double overlap = 0.0; // fraction in [0, 1)
    double sample_time = 0.0;
};

/// Window geometry in sample counts, shared by windowing and by callers
/// that need to know which sample a snapshot ends on.
struct WindowLayout {
    std::size_t samples_per_window = 0; // w
    std::size_t stride = 0;

    std::size_t snapshot_count(std::size_t cycle_samples) const {
        if (cycle_samples < samples_per_window) return 0;
        return (cycle_samples - samples_per_window) / stride + 1;
    }
    std::size_t end_index(std::size_t snapshot) const {
        return samples_per_window - 1 + snapshot * stride;
    }
};

WindowLayout window_layout(const WindowParams& params);

std::vector<Snapshot> window(const ObservationExample& o, const WindowParams& params);

/// Per-continuous-signal affine rescaling, fit so the pooled training data
/// has unit variance. Offsets are zero unless a caller sets them.
struct ScalingParams {
    std::vector<double> scale;
    std::vector<double> offset;
};

struct ScalingFit {
    ScalingParams params;
    std::vector<std::size_t> constant_signals; // continuous positions left at scale 1
};

ScalingFit fit_scaling(const std::vector<ObservationExample>& observations);

ObservationExample apply_scaling(const ObservationExample& o, const ScalingParams& p);

} // namespace hybridad::signals
