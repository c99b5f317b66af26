#pragma once

#include <vector>

#include "hybridad/rng.hpp"
#include "hybridad/signals.hpp"

namespace hybridad::datagen {

// One constant-level phase. Levels are ordered continuous signals first,
// then discrete signals.
struct Phase {
    double duration_seconds = 0.0;
    std::vector<double> levels;
};

struct CycleSpec {
    std::vector<Phase> phases;
    int continuous_count = 0;
    int discrete_count = 0;
    double noise_sigma = 0.0;
    double duration_jitter = 0.0; // fraction: durations scale by U(1-j, 1+j)
    double sample_time = 1.0;

    int signal_count() const { return continuous_count + discrete_count; }
    std::vector<signals::SignalKind> kinds() const;
    double nominal_duration() const;
    // Fixed per cycle regardless of jitter; the final phase is truncated or
    // extended to keep the grid length stable.
    std::size_t samples_per_cycle() const;
    void validate() const;
};

// Six phases over 30 s, three continuous signals plus one discrete, sampled
// every 0.2 s (150 samples per cycle). Levels sit on {0, 0.5, 1}, far apart
// relative to the default noise.
CycleSpec default_cycle_spec();

signals::ObservationExample generate_cycle(const CycleSpec& spec, RngStream& rng);

// n cycles, each from an independent sub-stream forked off rng, so cycle i
// is reproducible no matter how many cycles are drawn around it.
std::vector<signals::ObservationExample> generate_cycles(const CycleSpec& spec, int n,
                                                         RngStream& rng);

enum class AnomalyKind { NoiseAtStart, NoiseAtRandom, DropToZero, RaiseByFraction, Ramp };

struct AnomalySpec {
    AnomalyKind kind = AnomalyKind::NoiseAtStart;
    // Noise sigma, raise fraction, or ramp height, depending on kind.
    double magnitude = 1.0;
    std::size_t span = 1; // consecutive samples touched
};

struct InjectionResult {
    signals::ObservationExample cycle;
    double at = 0.0; // timestamp of the first modified sample
};

// Modified copy of the cycle; only continuous signals inside the span are
// touched. NoiseAtStart anchors the span at sample 0, every other kind
// draws the start uniformly.
InjectionResult inject_anomaly(const signals::ObservationExample& cycle, const AnomalySpec& spec,
                               RngStream& rng);

} // namespace hybridad::datagen
