#include "hybridad/automaton.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <string>

#include "hybridad/errors.hpp"
#include "hybridad/text.hpp"

namespace hybridad::automaton {

namespace {

void validate_observation(const DiscreteObservation& obs) {
    if (obs.samples.empty()) raise(Errc::EmptyObservation, "observation has no samples");
    const std::size_t width = obs.samples.front().bits.size();
    double prev_t = obs.samples.front().t;
    for (std::size_t i = 0; i < obs.samples.size(); ++i) {
        const DiscreteSample& s = obs.samples[i];
        if (s.bits.size() != width)
            raise(Errc::SignatureLengthMismatch,
                  "bit vector at sample " + std::to_string(i) + " has width " +
                      std::to_string(s.bits.size()) + ", expected " + std::to_string(width));
        for (std::uint8_t b : s.bits)
            if (b > 1) raise(Errc::NonBinaryDiscrete, "bit value out of {0, 1}");
        if (i > 0 && !(s.t > prev_t))
            raise(Errc::NonMonotonicTime,
                  "timestamps must be strictly increasing at sample " + std::to_string(i));
        prev_t = s.t;
    }
}

TaEvent diff_event(const Signature& from, const Signature& to) {
    TaEvent event;
    for (std::size_t i = 0; i < from.size(); ++i)
        if (from[i] != to[i])
            event.flips.push_back({static_cast<int>(i), to[i] == 1});
    return event;
}

struct Replay {
    AnomalyReport report;
    const TaState* current = nullptr;
    double entered_at = 0.0;
};

} // namespace

void TimedAutomaton::reindex() {
    state_by_signature.clear();
    transition_by_key.clear();
    for (const TaState& s : states) state_by_signature[s.signature] = s.id;
    for (std::size_t i = 0; i < transitions.size(); ++i)
        transition_by_key[{transitions[i].source, transitions[i].event}] = i;
}

const TaState* TimedAutomaton::find_state(const Signature& sig) const {
    const auto it = state_by_signature.find(sig);
    return it == state_by_signature.end() ? nullptr : &states[static_cast<std::size_t>(it->second)];
}

const TaTransition* TimedAutomaton::find_transition(int source, const TaEvent& event) const {
    const auto it = transition_by_key.find({source, event});
    return it == transition_by_key.end() ? nullptr : &transitions[it->second];
}

std::vector<EventEntry> to_event_stream(const DiscreteObservation& obs) {
    validate_observation(obs);
    std::vector<EventEntry> entries;
    entries.push_back({obs.samples.front().t, obs.samples.front().bits, std::nullopt});
    for (std::size_t i = 1; i < obs.samples.size(); ++i) {
        const DiscreteSample& s = obs.samples[i];
        const Signature& prev = entries.back().signature;
        if (s.bits == prev) continue;
        entries.push_back({s.t, s.bits, diff_event(prev, s.bits)});
    }
    return entries;
}

namespace {

// One learning pass over one example. Returns true when it changed the
// automaton's structure (states, transitions, intervals, initial set).
bool learn_example(TimedAutomaton& a, const DiscreteObservation& example) {
    const std::vector<EventEntry> entries = to_event_stream(example);
    if (!a.states.empty() && entries.front().signature.size() != a.signature_width())
        raise(Errc::SignatureLengthMismatch,
              "examples disagree on bit-vector width: " +
                  std::to_string(entries.front().signature.size()) + " vs " +
                  std::to_string(a.signature_width()));

    bool changed = false;
    const auto ensure_state = [&](const Signature& sig) -> int {
        const auto it = a.state_by_signature.find(sig);
        if (it != a.state_by_signature.end()) {
            a.states[static_cast<std::size_t>(it->second)].visit_count += 1;
            return it->second;
        }
        const int id = static_cast<int>(a.states.size());
        a.states.push_back({id, sig, 1});
        a.state_by_signature[sig] = id;
        changed = true;
        return id;
    };

    int current = ensure_state(entries.front().signature);
    changed |= a.initial_state_ids.insert(current).second;
    double entered_at = entries.front().t;

    for (std::size_t i = 1; i < entries.size(); ++i) {
        const EventEntry& entry = entries[i];
        const double dwell = entry.t - entered_at;
        const int target = ensure_state(entry.signature);

        const auto key = std::make_pair(current, *entry.event);
        const auto it = a.transition_by_key.find(key);
        if (it == a.transition_by_key.end()) {
            a.transition_by_key[key] = a.transitions.size();
            a.transitions.push_back({current, target, *entry.event, dwell, dwell, 1});
            changed = true;
        } else {
            TaTransition& tr = a.transitions[it->second];
            if (tr.target != target)
                raise(Errc::NondeterminismConflict,
                      "transition from state " + std::to_string(current) + " on event " +
                          event_to_string(*entry.event) + " already leads elsewhere");
            if (dwell < tr.min_dwell) {
                tr.min_dwell = dwell;
                changed = true;
            }
            if (dwell > tr.max_dwell) {
                tr.max_dwell = dwell;
                changed = true;
            }
            tr.observation_count += 1;
        }
        current = target;
        entered_at = entry.t;
    }
    return changed;
}

} // namespace

TimedAutomaton learn_automaton(const std::vector<DiscreteObservation>& examples,
                               ConvergencePolicy policy) {
    if (examples.empty()) raise(Errc::EmptyInput, "no training examples");
    TimedAutomaton a;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const DiscreteObservation& example : examples)
            changed |= learn_example(a, example);
        if (policy == ConvergencePolicy::SinglePass) break;
    }
    return a;
}

AnomalyReport detect(const TimedAutomaton& a, const DiscreteObservation& obs,
                     double timing_tolerance, DetectMode mode) {
    if (a.states.empty()) raise(Errc::EmptyData, "automaton has no states");
    if (timing_tolerance < 0.0) raise(Errc::InvalidArgument, "timing tolerance must be >= 0");
    const std::vector<EventEntry> entries = to_event_stream(obs);
    if (entries.front().signature.size() != a.signature_width())
        raise(Errc::SignatureLengthMismatch,
              "observation width " + std::to_string(entries.front().signature.size()) +
                  " does not match automaton width " + std::to_string(a.signature_width()));

    AnomalyReport report;
    const TaState* current = a.find_state(entries.front().signature);
    if (current == nullptr || a.initial_state_ids.count(current->id) == 0) {
        Verdict v;
        v.kind = VerdictKind::UnexpectedInitialState;
        v.at = entries.front().t;
        v.signature = entries.front().signature;
        v.unknown_signature = current == nullptr;
        report.verdicts.push_back(std::move(v));
        if (current == nullptr) {
            report.aborted = true;
            return report;
        }
    }

    double entered_at = entries.front().t;
    for (std::size_t i = 1; i < entries.size(); ++i) {
        const EventEntry& entry = entries[i];
        const double dwell = entry.t - entered_at;
        const TaTransition* tr = a.find_transition(current->id, *entry.event);

        if (tr == nullptr) {
            const TaState* dest = a.find_state(entry.signature);
            Verdict v;
            v.kind = VerdictKind::UnknownEvent;
            v.at = entry.t;
            v.source_state = current->id;
            v.event = *entry.event;
            v.signature = entry.signature;
            v.unknown_signature = dest == nullptr;
            report.verdicts.push_back(std::move(v));
            if (mode == DetectMode::StopAtFirst) return report;
            if (dest == nullptr) {
                report.aborted = true;
                return report;
            }
            current = dest; // resynchronize on the observed signature
            entered_at = entry.t;
            continue;
        }

        const double lo = tr->min_dwell * (1.0 - timing_tolerance);
        const double hi = tr->max_dwell * (1.0 + timing_tolerance);
        if (dwell < lo || dwell > hi) {
            Verdict v;
            v.kind = VerdictKind::WrongTiming;
            v.at = entry.t;
            v.source_state = current->id;
            v.event = *entry.event;
            v.dwell = dwell;
            v.interval_min = tr->min_dwell;
            v.interval_max = tr->max_dwell;
            v.signature = entry.signature;
            report.verdicts.push_back(std::move(v));
            if (mode == DetectMode::StopAtFirst) return report;
        }
        current = &a.states[static_cast<std::size_t>(tr->target)];
        entered_at = entry.t;
    }
    return report;
}

std::string export_dot(const TimedAutomaton& a) {
    std::ostringstream out;
    out << "digraph timed_automaton {\n";
    out << "  rankdir=LR;\n";
    for (const TaState& s : a.states) {
        out << "  s" << s.id << " [label=\"" << s.id << "\" tooltip=\""
            << signature_to_string(s.signature) << "\" shape="
            << (a.initial_state_ids.count(s.id) ? "doublecircle" : "circle") << "];\n";
    }
    std::vector<TaTransition> sorted = a.transitions;
    std::sort(sorted.begin(), sorted.end(), [](const TaTransition& x, const TaTransition& y) {
        if (x.source != y.source) return x.source < y.source;
        return x.event < y.event;
    });
    for (const TaTransition& tr : sorted) {
        out << "  s" << tr.source << " -> s" << tr.target << " [label=\""
            << event_to_string(tr.event) << " [" << format_double(tr.min_dwell) << ", "
            << format_double(tr.max_dwell) << "]\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::string signature_to_string(const Signature& sig) {
    std::string text(sig.size(), '0');
    for (std::size_t i = 0; i < sig.size(); ++i)
        if (sig[i]) text[i] = '1';
    return text;
}

Signature signature_from_string(const std::string& text) {
    Signature sig(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '0' && text[i] != '1')
            raise(Errc::ParseError, "signature must be 0/1 digits, got '" + text + "'");
        sig[i] = text[i] == '1' ? 1 : 0;
    }
    return sig;
}

std::string event_to_string(const TaEvent& event) {
    std::string text;
    for (std::size_t i = 0; i < event.flips.size(); ++i) {
        if (i > 0) text += ',';
        text += event.flips[i].rising ? '+' : '-';
        text += std::to_string(event.flips[i].index);
    }
    return text;
}

TaEvent event_from_string(const std::string& text) {
    if (text.empty()) raise(Errc::ParseError, "event string is empty");
    TaEvent event;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        if (comma <= pos + 1 || (text[pos] != '+' && text[pos] != '-'))
            raise(Errc::ParseError, "bad event token in '" + text + "'");
        int index = 0;
        const auto res = std::from_chars(text.data() + pos + 1, text.data() + comma, index);
        if (res.ec != std::errc() || res.ptr != text.data() + comma || index < 0)
            raise(Errc::ParseError, "bad flip index in '" + text + "'");
        if (!event.flips.empty() && event.flips.back().index >= index)
            raise(Errc::ParseError, "event flips must be strictly ordered in '" + text + "'");
        event.flips.push_back({index, text[pos] == '+'});
        pos = comma + 1;
    }
    return event;
}

std::string verdict_kind_name(VerdictKind kind) {
    switch (kind) {
    case VerdictKind::Normal: return "Normal";
    case VerdictKind::UnknownEvent: return "UnknownEvent";
    case VerdictKind::WrongTiming: return "WrongTiming";
    case VerdictKind::UnexpectedInitialState: return "UnexpectedInitialState";
    }
    return "Unknown";
}

} // namespace hybridad::automaton
