#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "hybridad/rng.hpp"

namespace hybridad::rbm {

enum class VisibleKind : std::uint8_t { Bernoulli, Gaussian };

/// Restricted Boltzmann machine. Hidden units are always Bernoulli; the
/// visible layer is Bernoulli or Gaussian (unit variance). Immutable
/// outside training.
struct Rbm {
    Eigen::MatrixXd weights;      // visible x hidden
    Eigen::VectorXd visible_bias; // m
    Eigen::VectorXd hidden_bias;  // n
    VisibleKind visible_kind = VisibleKind::Bernoulli;

    Eigen::Index visible_count() const { return weights.rows(); }
    Eigen::Index hidden_count() const { return weights.cols(); }
};

struct TrainConfig {
    VisibleKind visible_kind = VisibleKind::Bernoulli;
    int hidden_units = 1;
    int cd_steps = 1;            // k
    double learning_rate = 0.1;  // 0.1 Bernoulli visible, 0.01 Gaussian
    int epochs = 50;
    int batch_size = 32;
    double momentum = 0.5;
    double final_momentum = 0.9;
    int momentum_switch_epoch = 5;
    double weight_decay = 2e-4;
    std::optional<double> sparsity_target; // in (0,1); off when unset
    double sparsity_decay = 0.95;          // running-mean decay for the sparsity nudge
    bool mean_field_visible = false;       // Gaussian chain propagates means, not samples
    std::uint64_t seed = 0;
    double init_weight_sigma = 0.01;
};

TrainConfig default_train_config(VisibleKind kind, int hidden_units);

/// E[h|v] = sigmoid(c + W^T v), componentwise.
Eigen::VectorXd hidden_expectation(const Rbm& r, const Eigen::VectorXd& v);

/// Bernoulli visible: sigmoid(b + W h). Gaussian visible: b + W h.
Eigen::VectorXd visible_expectation(const Rbm& r, const Eigen::VectorXd& h);

/// Independent Bernoulli draw per hidden unit.
Eigen::VectorXd sample_hidden(const Rbm& r, const Eigen::VectorXd& v, RngStream& rng);

/// Bernoulli visible: independent {0,1} draws. Gaussian visible: N(mu, 1).
Eigen::VectorXd sample_visible(const Rbm& r, const Eigen::VectorXd& h, RngStream& rng);

/// Bernoulli visible: -b.v - c.h - v^T W h.
/// Gaussian visible: 0.5 |v-b|^2 - c.h - v^T W h.
double energy(const Rbm& r, const Eigen::VectorXd& v, const Eigen::VectorXd& h);

/// Partition function by exhaustive enumeration; tiny models only
/// (Bernoulli: m+n <= 20, Gaussian: n <= 20, visible integral in closed
/// form). Test oracle, not a production path.
double exact_partition(const Rbm& r);

struct GibbsResult {
    Eigen::VectorXd hidden;  // sampled h | v_prev
    Eigen::VectorXd visible; // sampled v | hidden
};

GibbsResult gibbs_step(const Rbm& r, const Eigen::VectorXd& v_prev, RngStream& rng);

/// Momentum/velocity carried between contrastive-divergence updates, plus
/// the running hidden activity used by the sparsity nudge.
struct UpdateState {
    Eigen::MatrixXd weight_velocity;
    Eigen::VectorXd visible_bias_velocity;
    Eigen::VectorXd hidden_bias_velocity;
    Eigen::VectorXd hidden_activity;

    static UpdateState zeros(const Rbm& r);
};

/// One CD-k parameter update. The three update terms are averaged over the
/// batch before the learning rate is applied; a single training vector is
/// just a batch of one.
void cd_k_update(Rbm& r, const std::vector<Eigen::VectorXd>& batch, const TrainConfig& cfg,
                 RngStream& rng, UpdateState& state);

Rbm train_rbm(const std::vector<Eigen::VectorXd>& data, const TrainConfig& cfg, RngStream& rng);

/// Convenience overload seeding the stream from cfg.seed.
Rbm train_rbm(const std::vector<Eigen::VectorXd>& data, const TrainConfig& cfg);

} // namespace hybridad::rbm
