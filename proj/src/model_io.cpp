#include "hybridad/model_io.hpp"

#include <fstream>
#include <utility>

#include "hybridad/errors.hpp"

namespace hybridad::model_io {

using nlohmann::json;

namespace {

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols) {
    if (static_cast<Eigen::Index>(j.size()) != rows)
        raise(Errc::ParseError, "weight matrix row count mismatch");
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& row = j.at(static_cast<std::size_t>(i));
        if (static_cast<Eigen::Index>(row.size()) != cols)
            raise(Errc::ParseError, "weight matrix column count mismatch");
        for (Eigen::Index k = 0; k < cols; ++k)
            m(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
    }
    return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Eigen::VectorXd vector_from_json(const json& j, Eigen::Index size) {
    if (static_cast<Eigen::Index>(j.size()) != size)
        raise(Errc::ParseError, "bias vector length mismatch");
    Eigen::VectorXd v(size);
    for (Eigen::Index i = 0; i < size; ++i) v[i] = j.at(static_cast<std::size_t>(i)).get<double>();
    return v;
}

std::string kinds_to_string(const std::vector<signals::SignalKind>& kinds) {
    std::string text(kinds.size(), 'c');
    for (std::size_t i = 0; i < kinds.size(); ++i)
        if (kinds[i] == signals::SignalKind::Discrete) text[i] = 'd';
    return text;
}

std::vector<signals::SignalKind> kinds_from_string(const std::string& text) {
    std::vector<signals::SignalKind> kinds;
    kinds.reserve(text.size());
    for (char c : text) {
        if (c == 'c')
            kinds.push_back(signals::SignalKind::Continuous);
        else if (c == 'd')
            kinds.push_back(signals::SignalKind::Discrete);
        else
            raise(Errc::ParseError, std::string("bad signal kind character '") + c + "'");
    }
    return kinds;
}

json automaton_to_json(const automaton::TimedAutomaton& a) {
    json states = json::array();
    for (const automaton::TaState& s : a.states)
        states.push_back({{"id", s.id},
                          {"signature", automaton::signature_to_string(s.signature)},
                          {"visits", s.visit_count}});
    json transitions = json::array();
    for (const automaton::TaTransition& t : a.transitions)
        transitions.push_back({{"source", t.source},
                               {"target", t.target},
                               {"event", automaton::event_to_string(t.event)},
                               {"min", t.min_dwell},
                               {"max", t.max_dwell},
                               {"count", t.observation_count}});
    json initial = json::array();
    for (int id : a.initial_state_ids) initial.push_back(id);
    return {{"states", std::move(states)},
            {"transitions", std::move(transitions)},
            {"initial", std::move(initial)}};
}

automaton::TimedAutomaton automaton_from_json(const json& j) {
    automaton::TimedAutomaton a;
    for (const json& s : j.at("states")) {
        automaton::TaState state;
        state.id = s.at("id").get<int>();
        state.signature = automaton::signature_from_string(s.at("signature").get<std::string>());
        state.visit_count = s.at("visits").get<std::int64_t>();
        if (state.id != static_cast<int>(a.states.size()))
            raise(Errc::ParseError, "state ids must be dense and ordered");
        if (!a.states.empty() && state.signature.size() != a.states.front().signature.size())
            raise(Errc::ParseError, "state signatures differ in width");
        a.states.push_back(std::move(state));
    }
    for (const json& t : j.at("transitions")) {
        automaton::TaTransition tr;
        tr.source = t.at("source").get<int>();
        tr.target = t.at("target").get<int>();
        tr.event = automaton::event_from_string(t.at("event").get<std::string>());
        tr.min_dwell = t.at("min").get<double>();
        tr.max_dwell = t.at("max").get<double>();
        tr.observation_count = t.at("count").get<std::int64_t>();
        const int n = static_cast<int>(a.states.size());
        if (tr.source < 0 || tr.source >= n || tr.target < 0 || tr.target >= n)
            raise(Errc::ParseError, "transition endpoint out of range");
        if (!(tr.min_dwell >= 0.0) || tr.min_dwell > tr.max_dwell)
            raise(Errc::ParseError, "transition interval must satisfy 0 <= min <= max");
        if (tr.observation_count < 1) raise(Errc::ParseError, "transition count must be >= 1");
        a.transitions.push_back(std::move(tr));
    }
    for (const json& id : j.at("initial")) {
        const int value = id.get<int>();
        if (value < 0 || value >= static_cast<int>(a.states.size()))
            raise(Errc::ParseError, "initial state id out of range");
        a.initial_state_ids.insert(value);
    }
    a.reindex();
    if (a.transition_by_key.size() != a.transitions.size())
        raise(Errc::ParseError, "duplicate (source, event) transition");
    if (a.state_by_signature.size() != a.states.size())
        raise(Errc::ParseError, "duplicate state signature");
    return a;
}

} // namespace

json model_to_json(const pipeline::BehaviorModel& model) {
    json layers = json::array();
    for (const rbm::Rbm& layer : model.net.layers) {
        layers.push_back(
            {{"kind", layer.visible_kind == rbm::VisibleKind::Gaussian ? "gaussian" : "bernoulli"},
             {"visible", layer.visible_count()},
             {"hidden", layer.hidden_count()},
             {"weights", matrix_to_json(layer.weights)},
             {"visible_bias", vector_to_json(layer.visible_bias)},
             {"hidden_bias", vector_to_json(layer.hidden_bias)}});
    }
    return {{"format_version", kModelFormatVersion},
            {"kinds", kinds_to_string(model.kinds)},
            {"windowing",
             {{"window_seconds", model.windowing.window_seconds},
              {"overlap", model.windowing.overlap},
              {"sample_time", model.windowing.sample_time}}},
            {"scaling", {{"scale", model.scaling.scale}, {"offset", model.scaling.offset}}},
            {"code_width", model.code_width},
            {"native_discrete_indices", model.native_discrete_indices},
            {"network", {{"layers", std::move(layers)}}},
            {"automaton", automaton_to_json(model.machine)},
            {"metadata", {{"seed", model.seed}, {"config_digest", model.config_digest}}}};
}

pipeline::BehaviorModel model_from_json(const json& j) {
    try {
        const int version = j.at("format_version").get<int>();
        if (version != kModelFormatVersion)
            raise(Errc::VersionMismatch, "model format version " + std::to_string(version) +
                                             ", this build reads version " +
                                             std::to_string(kModelFormatVersion));
        pipeline::BehaviorModel model;
        model.kinds = kinds_from_string(j.at("kinds").get<std::string>());
        const json& w = j.at("windowing");
        model.windowing.window_seconds = w.at("window_seconds").get<double>();
        model.windowing.overlap = w.at("overlap").get<double>();
        model.windowing.sample_time = w.at("sample_time").get<double>();
        model.scaling.scale = j.at("scaling").at("scale").get<std::vector<double>>();
        model.scaling.offset = j.at("scaling").at("offset").get<std::vector<double>>();
        model.code_width = j.at("code_width").get<int>();
        model.native_discrete_indices =
            j.at("native_discrete_indices").get<std::vector<std::size_t>>();
        for (const json& layer_json : j.at("network").at("layers")) {
            rbm::Rbm layer;
            const std::string kind = layer_json.at("kind").get<std::string>();
            if (kind == "gaussian")
                layer.visible_kind = rbm::VisibleKind::Gaussian;
            else if (kind == "bernoulli")
                layer.visible_kind = rbm::VisibleKind::Bernoulli;
            else
                raise(Errc::ParseError, "unknown layer kind '" + kind + "'");
            const auto visible = layer_json.at("visible").get<Eigen::Index>();
            const auto hidden = layer_json.at("hidden").get<Eigen::Index>();
            if (visible < 1 || hidden < 1) raise(Errc::ParseError, "layer sizes must be >= 1");
            layer.weights = matrix_from_json(layer_json.at("weights"), visible, hidden);
            layer.visible_bias = vector_from_json(layer_json.at("visible_bias"), visible);
            layer.hidden_bias = vector_from_json(layer_json.at("hidden_bias"), hidden);
            model.net.layers.push_back(std::move(layer));
        }
        model.machine = automaton_from_json(j.at("automaton"));
        const json& meta = j.at("metadata");
        model.seed = meta.at("seed").get<std::uint64_t>();
        model.config_digest = meta.at("config_digest").get<std::string>();
        model.validate();
        return model;
    } catch (const json::exception& e) {
        raise(Errc::ParseError, std::string("malformed model file: ") + e.what());
    }
}

void save_model(const std::string& path, const pipeline::BehaviorModel& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(Errc::IoError, "cannot open '" + path + "' for writing");
    out << model_to_json(model).dump(1) << '\n';
    if (!out) raise(Errc::IoError, "write to '" + path + "' failed");
}

pipeline::BehaviorModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::IoError, "cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        raise(Errc::ParseError, path + ": " + e.what());
    }
    try {
        return model_from_json(j);
    } catch (const Error& e) {
        raise(e.code(), path + ": " + e.what());
    }
}

json cycle_spec_to_json(const datagen::CycleSpec& spec) {
    json phases = json::array();
    for (const datagen::Phase& p : spec.phases)
        phases.push_back({{"duration", p.duration_seconds}, {"levels", p.levels}});
    return {{"continuous", spec.continuous_count},
            {"discrete", spec.discrete_count},
            {"noise_sigma", spec.noise_sigma},
            {"duration_jitter", spec.duration_jitter},
            {"sample_time", spec.sample_time},
            {"phases", std::move(phases)}};
}

datagen::CycleSpec cycle_spec_from_json(const json& j) {
    try {
        datagen::CycleSpec spec;
        spec.continuous_count = j.at("continuous").get<int>();
        spec.discrete_count = j.at("discrete").get<int>();
        spec.sample_time = j.at("sample_time").get<double>();
        spec.noise_sigma = j.value("noise_sigma", 0.0);
        spec.duration_jitter = j.value("duration_jitter", 0.0);
        for (const json& p : j.at("phases")) {
            datagen::Phase phase;
            phase.duration_seconds = p.at("duration").get<double>();
            phase.levels = p.at("levels").get<std::vector<double>>();
            spec.phases.push_back(std::move(phase));
        }
        spec.validate();
        return spec;
    } catch (const json::exception& e) {
        raise(Errc::ParseError, std::string("malformed cycle spec: ") + e.what());
    }
}

datagen::CycleSpec load_cycle_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::IoError, "cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        raise(Errc::ParseError, path + ": " + e.what());
    }
    try {
        return cycle_spec_from_json(j);
    } catch (const Error& e) {
        raise(e.code(), path + ": " + e.what());
    }
}

json model_config_to_json(const pipeline::ModelConfig& cfg) {
    return {{"window_seconds", cfg.window_seconds},
            {"overlap", cfg.overlap},
            {"sample_time", cfg.sample_time},
            {"layers", cfg.layer_sizes},
            {"cd_steps", cfg.cd_steps},
            {"epochs", cfg.epochs},
            {"batch_size", cfg.batch_size},
            {"learning_rate", cfg.learning_rate},
            {"seed", cfg.seed}};
}

pipeline::ModelConfig model_config_from_json(const json& j) {
    try {
        pipeline::ModelConfig cfg;
        cfg.window_seconds = j.value("window_seconds", cfg.window_seconds);
        cfg.overlap = j.value("overlap", cfg.overlap);
        cfg.sample_time = j.value("sample_time", cfg.sample_time);
        cfg.layer_sizes = j.value("layers", cfg.layer_sizes);
        cfg.cd_steps = j.value("cd_steps", cfg.cd_steps);
        cfg.epochs = j.value("epochs", cfg.epochs);
        cfg.batch_size = j.value("batch_size", cfg.batch_size);
        cfg.learning_rate = j.value("learning_rate", cfg.learning_rate);
        cfg.seed = j.value("seed", cfg.seed);
        return cfg;
    } catch (const json::exception& e) {
        raise(Errc::ParseError, std::string("malformed training config: ") + e.what());
    }
}

pipeline::ModelConfig load_model_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::IoError, "cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        raise(Errc::ParseError, path + ": " + e.what());
    }
    try {
        return model_config_from_json(j);
    } catch (const Error& e) {
        raise(e.code(), path + ": " + e.what());
    }
}

} // namespace hybridad::model_io
