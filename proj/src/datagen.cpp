#include "hybridad/datagen.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "hybridad/errors.hpp"

namespace hybridad::datagen {

std::vector<signals::SignalKind> CycleSpec::kinds() const {
    std::vector<signals::SignalKind> k;
    k.reserve(static_cast<std::size_t>(signal_count()));
    for (int i = 0; i < continuous_count; ++i) k.push_back(signals::SignalKind::Continuous);
    for (int i = 0; i < discrete_count; ++i) k.push_back(signals::SignalKind::Discrete);
    return k;
}

double CycleSpec::nominal_duration() const {
    double total = 0.0;
    for (const Phase& p : phases) total += p.duration_seconds;
    return total;
}

std::size_t CycleSpec::samples_per_cycle() const {
    return static_cast<std::size_t>(std::llround(nominal_duration() / sample_time));
}

void CycleSpec::validate() const {
    if (phases.empty()) raise(Errc::InvalidArgument, "cycle needs at least one phase");
    if (continuous_count < 0 || discrete_count < 0)
        raise(Errc::InvalidArgument, "signal counts must be >= 0");
    if (signal_count() < 1) raise(Errc::InvalidArgument, "cycle needs at least one signal");
    if (!(sample_time > 0.0)) raise(Errc::InvalidArgument, "sample_time must be > 0");
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma))
        raise(Errc::InvalidArgument, "noise_sigma must be finite and >= 0");
    if (!(duration_jitter >= 0.0) || duration_jitter >= 1.0)
        raise(Errc::InvalidArgument, "duration_jitter must lie in [0, 1)");
    for (std::size_t i = 0; i < phases.size(); ++i) {
        const Phase& p = phases[i];
        if (!(p.duration_seconds > 0.0))
            raise(Errc::InvalidArgument, "phase " + std::to_string(i) + " duration must be > 0");
        if (p.levels.size() != static_cast<std::size_t>(signal_count()))
            raise(Errc::InvalidArgument,
                  "phase " + std::to_string(i) + " has " + std::to_string(p.levels.size()) +
                      " levels for " + std::to_string(signal_count()) + " signals");
        for (std::size_t s = 0; s < p.levels.size(); ++s) {
            if (!std::isfinite(p.levels[s]))
                raise(Errc::NonFinite, "phase " + std::to_string(i) + " level");
            if (s >= static_cast<std::size_t>(continuous_count) && p.levels[s] != 0.0 &&
                p.levels[s] != 1.0)
                raise(Errc::NonBinaryDiscrete,
                      "discrete level in phase " + std::to_string(i) + " must be 0 or 1");
        }
    }
    if (samples_per_cycle() < 1) raise(Errc::InvalidArgument, "cycle shorter than one sample");
}

CycleSpec default_cycle_spec() {
    CycleSpec spec;
    spec.continuous_count = 3;
    spec.discrete_count = 1;
    spec.noise_sigma = 0.05;
    spec.duration_jitter = 0.05;
    spec.sample_time = 0.2;
    spec.phases = {
        {5.0, {0.0, 1.0, 0.5, 0.0}},
        {4.0, {1.0, 1.0, 0.0, 1.0}},
        {6.0, {1.0, 0.0, 0.5, 1.0}},
        {5.0, {0.5, 0.0, 1.0, 0.0}},
        {4.0, {0.5, 1.0, 1.0, 1.0}},
        {6.0, {0.0, 0.5, 0.0, 0.0}},
    };
    return spec;
}

signals::ObservationExample generate_cycle(const CycleSpec& spec, RngStream& rng) {
    spec.validate();

    std::vector<double> boundaries; // cumulative jittered phase ends
    boundaries.reserve(spec.phases.size());
    double acc = 0.0;
    for (const Phase& p : spec.phases) {
        const double factor =
            spec.duration_jitter > 0.0
                ? rng.uniform(1.0 - spec.duration_jitter, 1.0 + spec.duration_jitter)
                : 1.0;
        acc += p.duration_seconds * factor;
        boundaries.push_back(acc);
    }

    const std::size_t n = spec.samples_per_cycle();
    const std::size_t signal_count = static_cast<std::size_t>(spec.signal_count());
    const std::size_t continuous = static_cast<std::size_t>(spec.continuous_count);

    std::vector<signals::TimedSample> rows(n);
    std::size_t phase = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * spec.sample_time;
        // Samples past the last boundary stay in the final phase.
        while (phase + 1 < spec.phases.size() && t >= boundaries[phase]) ++phase;
        const Phase& p = spec.phases[phase];
        rows[k].t = t;
        rows[k].values.resize(signal_count);
        for (std::size_t s = 0; s < signal_count; ++s) {
            double value = p.levels[s];
            if (s < continuous && spec.noise_sigma > 0.0)
                value += spec.noise_sigma * rng.normal();
            rows[k].values[s] = value;
        }
    }
    return signals::build_observation(std::move(rows), spec.kinds());
}

std::vector<signals::ObservationExample> generate_cycles(const CycleSpec& spec, int n,
                                                         RngStream& rng) {
    if (n < 1) raise(Errc::InvalidArgument, "cycle count must be >= 1");
    std::vector<signals::ObservationExample> cycles;
    cycles.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        RngStream cycle_rng = rng.fork(static_cast<std::uint64_t>(i));
        cycles.push_back(generate_cycle(spec, cycle_rng));
    }
    return cycles;
}

InjectionResult inject_anomaly(const signals::ObservationExample& cycle, const AnomalySpec& spec,
                               RngStream& rng) {
    if (spec.span < 1) raise(Errc::InvalidArgument, "span must be >= 1");
    if (!std::isfinite(spec.magnitude)) raise(Errc::NonFinite, "anomaly magnitude");
    const std::size_t n = cycle.size();
    if (spec.span > n)
        raise(Errc::SpanTooLong, "span " + std::to_string(spec.span) + " exceeds cycle length " +
                                     std::to_string(n));
    const std::vector<std::size_t> continuous = cycle.continuous_indices();
    if (continuous.empty()) raise(Errc::NoContinuousSignals, "cycle has no continuous signals");

    const std::size_t start = spec.kind == AnomalyKind::NoiseAtStart
                                  ? 0
                                  : static_cast<std::size_t>(rng.uniform_below(n - spec.span + 1));

    InjectionResult result;
    result.cycle = cycle;
    result.at = cycle.samples[start].t;
    for (std::size_t k = 0; k < spec.span; ++k) {
        signals::TimedSample& sample = result.cycle.samples[start + k];
        const double ramp_fraction =
            spec.span == 1 ? 1.0
                           : static_cast<double>(k) / static_cast<double>(spec.span - 1);
        for (std::size_t idx : continuous) {
            double& value = sample.values[idx];
            switch (spec.kind) {
            case AnomalyKind::NoiseAtStart:
            case AnomalyKind::NoiseAtRandom: value += spec.magnitude * rng.normal(); break;
            case AnomalyKind::DropToZero: value = 0.0; break;
            case AnomalyKind::RaiseByFraction: value *= 1.0 + spec.magnitude; break;
            case AnomalyKind::Ramp: value += spec.magnitude * ramp_fraction; break;
            }
        }
    }
    return result;
}

} // namespace hybridad::datagen
