#include "hybridad/rbm.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "hybridad/errors.hpp"

namespace hybridad::rbm {

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Eigen::VectorXd sigmoid(Eigen::VectorXd x) {
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = sigmoid(x[i]);
    return x;
}

void check_visible_dim(const Rbm& r, const Eigen::VectorXd& v) {
    if (v.size() != r.visible_count())
        raise(Errc::DimensionMismatch, "visible vector has " + std::to_string(v.size()) +
                                           " entries, model expects " +
                                           std::to_string(r.visible_count()));
}

void check_hidden_dim(const Rbm& r, const Eigen::VectorXd& h) {
    if (h.size() != r.hidden_count())
        raise(Errc::DimensionMismatch, "hidden vector has " + std::to_string(h.size()) +
                                           " entries, model expects " +
                                           std::to_string(r.hidden_count()));
}

} // namespace

TrainConfig default_train_config(VisibleKind kind, int hidden_units) {
    TrainConfig cfg;
    cfg.visible_kind = kind;
    cfg.hidden_units = hidden_units;
    cfg.learning_rate = (kind == VisibleKind::Gaussian) ? 0.01 : 0.1;
    return cfg;
}

Eigen::VectorXd hidden_expectation(const Rbm& r, const Eigen::VectorXd& v) {
    check_visible_dim(r, v);
    return sigmoid(r.hidden_bias + r.weights.transpose() * v);
}

Eigen::VectorXd visible_expectation(const Rbm& r, const Eigen::VectorXd& h) {
    check_hidden_dim(r, h);
    Eigen::VectorXd mean = r.visible_bias + r.weights * h;
    if (r.visible_kind == VisibleKind::Bernoulli) mean = sigmoid(std::move(mean));
    return mean;
}

Eigen::VectorXd sample_hidden(const Rbm& r, const Eigen::VectorXd& v, RngStream& rng) {
    Eigen::VectorXd mu = hidden_expectation(r, v);
    for (Eigen::Index j = 0; j < mu.size(); ++j) mu[j] = rng.bernoulli(mu[j]) ? 1.0 : 0.0;
    return mu;
}

Eigen::VectorXd sample_visible(const Rbm& r, const Eigen::VectorXd& h, RngStream& rng) {
    Eigen::VectorXd mu = visible_expectation(r, h);
    if (r.visible_kind == VisibleKind::Bernoulli) {
        for (Eigen::Index i = 0; i < mu.size(); ++i) mu[i] = rng.bernoulli(mu[i]) ? 1.0 : 0.0;
    } else {
        for (Eigen::Index i = 0; i < mu.size(); ++i) mu[i] += rng.normal();
    }
    return mu;
}

double energy(const Rbm& r, const Eigen::VectorXd& v, const Eigen::VectorXd& h) {
    check_visible_dim(r, v);
    check_hidden_dim(r, h);
    const double interaction = v.dot(r.weights * h);
    if (r.visible_kind == VisibleKind::Bernoulli)
        return -r.visible_bias.dot(v) - r.hidden_bias.dot(h) - interaction;
    const Eigen::VectorXd d = v - r.visible_bias;
    return 0.5 * d.squaredNorm() - r.hidden_bias.dot(h) - interaction;
}

double exact_partition(const Rbm& r) {
    const Eigen::Index m = r.visible_count();
    const Eigen::Index n = r.hidden_count();

    if (r.visible_kind == VisibleKind::Bernoulli) {
        if (m + n > 20)
            raise(Errc::TooLarge, "enumeration over 2^" + std::to_string(m + n) + " states");
        Eigen::VectorXd v(m), h(n);
        double z = 0.0;
        for (std::uint64_t vb = 0; vb < (1ULL << m); ++vb) {
            for (Eigen::Index i = 0; i < m; ++i) v[i] = static_cast<double>((vb >> i) & 1);
            for (std::uint64_t hb = 0; hb < (1ULL << n); ++hb) {
                for (Eigen::Index j = 0; j < n; ++j) h[j] = static_cast<double>((hb >> j) & 1);
                z += std::exp(-energy(r, v, h));
            }
        }
        return z;
    }

    // Gaussian visible layer: integrate v analytically per hidden state.
    //   integral exp(-0.5|v-b|^2 + v.Wh + c.h) dv
    //     = (2 pi)^{m/2} exp(c.h + b.Wh + 0.5 |Wh|^2)
    if (n > 20) raise(Errc::TooLarge, "enumeration over 2^" + std::to_string(n) + " hidden states");
    const double log_gauss = 0.5 * static_cast<double>(m) * std::log(2.0 * M_PI);
    Eigen::VectorXd h(n);
    double z = 0.0;
    for (std::uint64_t hb = 0; hb < (1ULL << n); ++hb) {
        for (Eigen::Index j = 0; j < n; ++j) h[j] = static_cast<double>((hb >> j) & 1);
        const Eigen::VectorXd mu = r.weights * h;
        z += std::exp(log_gauss + r.hidden_bias.dot(h) + r.visible_bias.dot(mu) +
                      0.5 * mu.squaredNorm());
    }
    return z;
}

GibbsResult gibbs_step(const Rbm& r, const Eigen::VectorXd& v_prev, RngStream& rng) {
    GibbsResult step;
    step.hidden = sample_hidden(r, v_prev, rng);
    step.visible = sample_visible(r, step.hidden, rng);
    return step;
}

UpdateState UpdateState::zeros(const Rbm& r) {
    UpdateState s;
    s.weight_velocity = Eigen::MatrixXd::Zero(r.visible_count(), r.hidden_count());
    s.visible_bias_velocity = Eigen::VectorXd::Zero(r.visible_count());
    s.hidden_bias_velocity = Eigen::VectorXd::Zero(r.hidden_count());
    s.hidden_activity = Eigen::VectorXd::Zero(r.hidden_count());
    return s;
}

void cd_k_update(Rbm& r, const std::vector<Eigen::VectorXd>& batch, const TrainConfig& cfg,
                 RngStream& rng, UpdateState& state) {
    if (batch.empty()) raise(Errc::EmptyData, "empty mini-batch");
    if (cfg.cd_steps < 1) raise(Errc::InvalidArgument, "cd_steps must be >= 1");

    Eigen::MatrixXd grad_w = Eigen::MatrixXd::Zero(r.visible_count(), r.hidden_count());
    Eigen::VectorXd grad_b = Eigen::VectorXd::Zero(r.visible_count());
    Eigen::VectorXd grad_c = Eigen::VectorXd::Zero(r.hidden_count());
    Eigen::VectorXd activity_sum = Eigen::VectorXd::Zero(r.hidden_count());

    const bool gaussian_means =
        cfg.mean_field_visible && r.visible_kind == VisibleKind::Gaussian;

    for (const Eigen::VectorXd& v0 : batch) {
        check_visible_dim(r, v0);
        // k Gibbs steps: sampled h throughout the chain, sampled v unless
        // the Gaussian mean-field option is on.
        Eigen::VectorXd v = v0;
        for (int step = 0; step < cfg.cd_steps; ++step) {
            const Eigen::VectorXd h = sample_hidden(r, v, rng);
            v = gaussian_means ? visible_expectation(r, h) : sample_visible(r, h, rng);
        }
        // The update itself uses hidden expectations at both chain ends.
        const Eigen::VectorXd h0 = hidden_expectation(r, v0);
        const Eigen::VectorXd hk = hidden_expectation(r, v);

        grad_w.noalias() += v0 * h0.transpose() - v * hk.transpose();
        grad_b += v0 - v;
        grad_c += h0 - hk;
        activity_sum += h0;
    }

    const double inv = 1.0 / static_cast<double>(batch.size());
    grad_w *= inv;
    grad_b *= inv;
    grad_c *= inv;

    state.weight_velocity = cfg.momentum * state.weight_velocity +
                            cfg.learning_rate * (grad_w - cfg.weight_decay * r.weights);
    state.visible_bias_velocity =
        cfg.momentum * state.visible_bias_velocity + cfg.learning_rate * grad_b;
    state.hidden_bias_velocity =
        cfg.momentum * state.hidden_bias_velocity + cfg.learning_rate * grad_c;

    r.weights += state.weight_velocity;
    r.visible_bias += state.visible_bias_velocity;
    r.hidden_bias += state.hidden_bias_velocity;

    if (cfg.sparsity_target) {
        state.hidden_activity = cfg.sparsity_decay * state.hidden_activity +
                                (1.0 - cfg.sparsity_decay) * (activity_sum * inv);
        r.hidden_bias.array() +=
            cfg.learning_rate * (*cfg.sparsity_target - state.hidden_activity.array());
    }

    if (!r.weights.allFinite()) raise(Errc::NonFinite, "weights after CD update");
    if (!r.visible_bias.allFinite()) raise(Errc::NonFinite, "visible bias after CD update");
    if (!r.hidden_bias.allFinite()) raise(Errc::NonFinite, "hidden bias after CD update");
}

Rbm train_rbm(const std::vector<Eigen::VectorXd>& data, const TrainConfig& cfg, RngStream& rng) {
    if (data.empty()) raise(Errc::EmptyData, "no training vectors");
    if (cfg.hidden_units < 1) raise(Errc::InvalidArgument, "hidden_units must be >= 1");
    if (!(cfg.learning_rate > 0.0)) raise(Errc::InvalidArgument, "learning_rate must be > 0");
    if (cfg.batch_size < 1) raise(Errc::InvalidArgument, "batch_size must be >= 1");
    if (cfg.epochs < 0) raise(Errc::InvalidArgument, "epochs must be >= 0");

    const Eigen::Index m = data.front().size();
    for (const Eigen::VectorXd& v : data) {
        if (v.size() != m) raise(Errc::DimensionMismatch, "training vectors differ in dimension");
        if (!v.allFinite()) raise(Errc::NonFinite, "training vector");
        if (cfg.visible_kind == VisibleKind::Bernoulli &&
            (v.minCoeff() < 0.0 || v.maxCoeff() > 1.0))
            raise(Errc::InvalidArgument, "Bernoulli visible data must lie in [0, 1]");
    }

    Rbm r;
    r.visible_kind = cfg.visible_kind;
    r.weights = Eigen::MatrixXd(m, cfg.hidden_units);
    for (Eigen::Index j = 0; j < r.weights.cols(); ++j)
        for (Eigen::Index i = 0; i < r.weights.rows(); ++i)
            r.weights(i, j) = cfg.init_weight_sigma * rng.normal();
    r.visible_bias = Eigen::VectorXd::Zero(m);
    r.hidden_bias = Eigen::VectorXd::Zero(cfg.hidden_units);

    UpdateState state = UpdateState::zeros(r);
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);

    TrainConfig epoch_cfg = cfg;
    std::vector<Eigen::VectorXd> batch;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        epoch_cfg.momentum =
            (epoch < cfg.momentum_switch_epoch) ? cfg.momentum : cfg.final_momentum;

        // Fisher-Yates with the stream, so shuffles replay byte-for-byte.
        for (std::size_t i = order.size() - 1; i > 0; --i) {
            const std::size_t j = static_cast<std::size_t>(rng.uniform_below(i + 1));
            std::swap(order[i], order[j]);
        }

        for (std::size_t start = 0; start < order.size();
             start += static_cast<std::size_t>(cfg.batch_size)) {
            const std::size_t stop =
                std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
            batch.clear();
            for (std::size_t i = start; i < stop; ++i) batch.push_back(data[order[i]]);
            cd_k_update(r, batch, epoch_cfg, rng, state);
        }
    }
    return r;
}

Rbm train_rbm(const std::vector<Eigen::VectorXd>& data, const TrainConfig& cfg) {
    RngStream rng(cfg.seed);
    return train_rbm(data, cfg, rng);
}

} // namespace hybridad::rbm
