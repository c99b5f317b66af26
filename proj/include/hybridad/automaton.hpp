#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace hybridad::automaton {

using Signature = std::vector<std::uint8_t>;

struct DiscreteSample {
    double t = 0.0;
    Signature bits;
};

// Timestamped discrete stream; timestamps strictly increasing, uniform width.
struct DiscreteObservation {
    std::vector<DiscreteSample> samples;
};

struct BitFlip {
    int index = 0;
    bool rising = false; // true: 0 -> 1, false: 1 -> 0
    auto operator<=>(const BitFlip&) const = default;
};

// Difference between two consecutive distinct signatures, flips sorted by
// bit index. Never empty.
struct TaEvent {
    std::vector<BitFlip> flips;
    auto operator<=>(const TaEvent&) const = default;
};

struct TaState {
    int id = 0;
    Signature signature;
    std::int64_t visit_count = 0;
};

struct TaTransition {
    int source = 0;
    int target = 0;
    TaEvent event;
    double min_dwell = 0.0;
    double max_dwell = 0.0;
    std::int64_t observation_count = 0;
};

struct TimedAutomaton {
    std::vector<TaState> states; // index equals id
    std::vector<TaTransition> transitions;
    std::set<int> initial_state_ids;

    // Lookup indices, rebuilt by reindex(). Deterministic learning and
    // serialization never depend on their iteration order beyond std::map's.
    std::map<Signature, int> state_by_signature;
    std::map<std::pair<int, TaEvent>, std::size_t> transition_by_key;

    void reindex();
    const TaState* find_state(const Signature& sig) const;
    const TaTransition* find_transition(int source, const TaEvent& event) const;
    std::size_t signature_width() const {
        return states.empty() ? 0 : states.front().signature.size();
    }
};

struct EventEntry {
    double t = 0.0;
    Signature signature;
    std::optional<TaEvent> event; // empty on the first entry
};

// Collapses consecutive identical bit-vectors; each entry carries the first
// timestamp of a new signature and the diff-event from the previous one.
std::vector<EventEntry> to_event_stream(const DiscreteObservation& obs);

enum class ConvergencePolicy {
    SinglePass, // one pass over the examples, in order
    UntilStable // repeat passes until one adds no state, transition, or interval change
};

TimedAutomaton learn_automaton(const std::vector<DiscreteObservation>& examples,
                               ConvergencePolicy policy = ConvergencePolicy::SinglePass);

enum class VerdictKind { Normal, UnknownEvent, WrongTiming, UnexpectedInitialState };

struct Verdict {
    VerdictKind kind = VerdictKind::Normal;
    double at = 0.0;
    std::optional<int> source_state;
    std::optional<TaEvent> event;
    std::optional<double> dwell;        // WrongTiming
    std::optional<double> interval_min; // violated interval, before tolerance
    std::optional<double> interval_max;
    Signature signature;            // the signature the verdict is about
    bool unknown_signature = false; // signature is not a state of the automaton
};

struct AnomalyReport {
    std::vector<Verdict> verdicts;
    bool aborted = false; // replay could not be resynchronized

    bool normal() const { return verdicts.empty(); }
    VerdictKind classification() const {
        return verdicts.empty() ? VerdictKind::Normal : verdicts.front().kind;
    }
};

enum class DetectMode {
    StopAtFirst, // stop at the first mid-stream anomaly
    Streaming    // collect every verdict, resynchronizing where possible
};

// Replay of obs against the automaton. The initial signature yields an
// UnexpectedInitialState verdict when outside initial_state_ids; replay
// still continues from it when it names a known state and aborts otherwise.
// Dwell times are accepted inside [min*(1-tol), max*(1+tol)].
AnomalyReport detect(const TimedAutomaton& a, const DiscreteObservation& obs,
                     double timing_tolerance = 0.0, DetectMode mode = DetectMode::StopAtFirst);

// Graphviz text, sorted by state id and transition key for stable diffs.
std::string export_dot(const TimedAutomaton& a);

std::string signature_to_string(const Signature& sig);
Signature signature_from_string(const std::string& text);
std::string event_to_string(const TaEvent& event);
TaEvent event_from_string(const std::string& text);
std::string verdict_kind_name(VerdictKind kind);

} // namespace hybridad::automaton
