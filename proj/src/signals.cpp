#include "hybridad/signals.hpp"

#include <cmath>
#include <string>

#include "hybridad/errors.hpp"

namespace hybridad::signals {

namespace {

// Timestamps may jitter off the uniform grid by at most this fraction of
// the sample time before windowing refuses the cycle.
constexpr double kGridTolerance = 0.10;

} // namespace

std::size_t ObservationExample::continuous_count() const {
    std::size_t n = 0;
    for (SignalKind k : kinds)
        if (k == SignalKind::Continuous) ++n;
    return n;
}

std::vector<std::size_t> ObservationExample::continuous_indices() const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < kinds.size(); ++i)
        if (kinds[i] == SignalKind::Continuous) idx.push_back(i);
    return idx;
}

std::vector<std::size_t> ObservationExample::discrete_indices() const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < kinds.size(); ++i)
        if (kinds[i] == SignalKind::Discrete) idx.push_back(i);
    return idx;
}

ObservationExample build_observation(std::vector<TimedSample> rows,
                                     std::vector<SignalKind> kinds) {
    if (rows.empty()) raise(Errc::EmptyData, "observation has no samples");
    if (kinds.empty()) raise(Errc::ArityMismatch, "kinds is empty");

    for (std::size_t i = 0; i < rows.size(); ++i) {
        const TimedSample& row = rows[i];
        if (row.values.size() != kinds.size())
            raise(Errc::ArityMismatch,
                  "sample " + std::to_string(i) + " has " + std::to_string(row.values.size()) +
                      " values, expected " + std::to_string(kinds.size()));
        if (i > 0 && !(row.t > rows[i - 1].t))
            raise(Errc::NonMonotonicTime,
                  "timestamp " + std::to_string(row.t) + " at sample " + std::to_string(i) +
                      " does not increase");
        for (std::size_t j = 0; j < kinds.size(); ++j) {
            if (kinds[j] == SignalKind::Discrete && row.values[j] != 0.0 && row.values[j] != 1.0)
                raise(Errc::NonBinaryDiscrete,
                      "discrete signal " + std::to_string(j) + " has value " +
                          std::to_string(row.values[j]) + " at sample " + std::to_string(i));
        }
    }

    ObservationExample o;
    o.kinds = std::move(kinds);
    o.samples = std::move(rows);
    return o;
}

WindowLayout window_layout(const WindowParams& params) {
    if (!(params.sample_time > 0.0))
        raise(Errc::InvalidArgument, "sample_time must be positive");
    if (params.window_seconds < params.sample_time)
        raise(Errc::InvalidArgument, "window shorter than one sample");
    if (!(params.overlap >= 0.0 && params.overlap < 1.0))
        raise(Errc::InvalidArgument, "overlap must lie in [0, 1)");

    WindowLayout layout;
    layout.samples_per_window =
        static_cast<std::size_t>(std::llround(params.window_seconds / params.sample_time));
    const double raw_stride =
        std::floor(static_cast<double>(layout.samples_per_window) * (1.0 - params.overlap));
    layout.stride = std::max<std::size_t>(1, static_cast<std::size_t>(raw_stride));
    return layout;
}

std::vector<Snapshot> window(const ObservationExample& o, const WindowParams& params) {
    const WindowLayout layout = window_layout(params);
    const std::size_t w = layout.samples_per_window;
    const std::size_t n = o.size();
    if (n < w)
        raise(Errc::TooShort, "cycle has " + std::to_string(n) + " samples, window needs " +
                                  std::to_string(w));

    for (std::size_t i = 1; i < n; ++i) {
        const double gap = o.samples[i].t - o.samples[i - 1].t;
        if (std::abs(gap - params.sample_time) > kGridTolerance * params.sample_time)
            raise(Errc::IrregularSampling,
                  "gap " + std::to_string(gap) + " at sample " + std::to_string(i) +
                      " deviates from sample_time " + std::to_string(params.sample_time));
    }

    const std::vector<std::size_t> cont = o.continuous_indices();
    const std::size_t count = layout.snapshot_count(n);

    std::vector<Snapshot> snapshots;
    snapshots.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t end = layout.end_index(k);
        Snapshot s;
        s.window_end = o.samples[end].t;
        s.values.reserve(w * cont.size());
        for (std::size_t i = end + 1 - w; i <= end; ++i)
            for (std::size_t c : cont)
                s.values.push_back(o.samples[i].values[c]);
        snapshots.push_back(std::move(s));
    }
    return snapshots;
}

ScalingFit fit_scaling(const std::vector<ObservationExample>& observations) {
    if (observations.empty()) raise(Errc::EmptyData, "no observations to fit scaling on");
    const std::vector<std::size_t> cont = observations.front().continuous_indices();

    // Pooled population variance per continuous signal, over every sample
    // of every training cycle.
    std::vector<double> sum(cont.size(), 0.0), sumsq(cont.size(), 0.0);
    std::size_t n = 0;
    for (const ObservationExample& o : observations) {
        if (o.continuous_indices() != cont)
            raise(Errc::ArityMismatch, "observations disagree on continuous signal positions");
        for (const TimedSample& row : o.samples) {
            for (std::size_t j = 0; j < cont.size(); ++j) {
                const double v = row.values[cont[j]];
                sum[j] += v;
                sumsq[j] += v * v;
            }
            ++n;
        }
    }

    ScalingFit fit;
    fit.params.scale.resize(cont.size(), 1.0);
    fit.params.offset.resize(cont.size(), 0.0);
    for (std::size_t j = 0; j < cont.size(); ++j) {
        const double mean = sum[j] / static_cast<double>(n);
        const double var = sumsq[j] / static_cast<double>(n) - mean * mean;
        if (var > 0.0 && std::isfinite(var)) {
            fit.params.scale[j] = 1.0 / std::sqrt(var);
        } else {
            fit.constant_signals.push_back(cont[j]);
        }
    }
    return fit;
}

ObservationExample apply_scaling(const ObservationExample& o, const ScalingParams& p) {
    const std::vector<std::size_t> cont = o.continuous_indices();
    if (p.scale.size() != cont.size() || p.offset.size() != cont.size())
        raise(Errc::ArityMismatch, "scaling arity " + std::to_string(p.scale.size()) +
                                       " does not match " + std::to_string(cont.size()) +
                                       " continuous signals");

    ObservationExample scaled = o;
    for (TimedSample& row : scaled.samples)
        for (std::size_t j = 0; j < cont.size(); ++j)
            row.values[cont[j]] = row.values[cont[j]] * p.scale[j] + p.offset[j];
    return scaled;
}

} // namespace hybridad::signals
