#include "hybridad/dbn.hpp"

#include <string>
#include <utility>

#include "hybridad/errors.hpp"

namespace hybridad::dbn {

std::vector<rbm::TrainConfig> default_layer_configs(const std::vector<int>& hidden_sizes) {
    if (hidden_sizes.empty()) raise(Errc::InvalidArgument, "no layer sizes given");
    std::vector<rbm::TrainConfig> configs;
    configs.reserve(hidden_sizes.size());
    for (std::size_t i = 0; i < hidden_sizes.size(); ++i) {
        if (hidden_sizes[i] < 1)
            raise(Errc::InvalidArgument,
                  "layer size must be >= 1, got " + std::to_string(hidden_sizes[i]));
        const auto kind =
            (i == 0) ? rbm::VisibleKind::Gaussian : rbm::VisibleKind::Bernoulli;
        configs.push_back(rbm::default_train_config(kind, hidden_sizes[i]));
    }
    return configs;
}

Dbn train_dbn(const std::vector<Eigen::VectorXd>& data,
              const std::vector<rbm::TrainConfig>& layer_configs, RngStream& rng) {
    if (data.empty()) raise(Errc::EmptyData, "no training vectors");
    if (layer_configs.empty()) raise(Errc::InvalidArgument, "no layer configs given");
    if (layer_configs.front().visible_kind != rbm::VisibleKind::Gaussian)
        raise(Errc::InvalidArgument, "first layer must have a Gaussian visible kind");
    for (std::size_t i = 1; i < layer_configs.size(); ++i)
        if (layer_configs[i].visible_kind != rbm::VisibleKind::Bernoulli)
            raise(Errc::InvalidArgument, "layers above the first must be Bernoulli");

    Dbn net;
    net.layers.reserve(layer_configs.size());
    std::vector<Eigen::VectorXd> level = data;
    for (const rbm::TrainConfig& cfg : layer_configs) {
        rbm::Rbm layer = rbm::train_rbm(level, cfg, rng);
        // Hidden expectations, not samples, feed the next layer.
        for (Eigen::VectorXd& v : level) v = rbm::hidden_expectation(layer, v);
        net.layers.push_back(std::move(layer));
    }
    return net;
}

Eigen::VectorXd encode_soft(const Dbn& net, const Eigen::VectorXd& input) {
    if (net.layers.empty()) raise(Errc::EmptyData, "network has no layers");
    Eigen::VectorXd v = input;
    for (const rbm::Rbm& layer : net.layers) v = rbm::hidden_expectation(layer, v);
    return v;
}

BinaryCode encode(const Dbn& net, const Eigen::VectorXd& input) {
    const Eigen::VectorXd soft = encode_soft(net, input);
    BinaryCode code(static_cast<std::size_t>(soft.size()));
    for (Eigen::Index j = 0; j < soft.size(); ++j)
        code[static_cast<std::size_t>(j)] = soft[j] >= 0.5 ? 1 : 0;
    return code;
}

Eigen::VectorXd reconstruct(const Dbn& net, const Eigen::VectorXd& input) {
    Eigen::VectorXd v = encode_soft(net, input);
    for (auto it = net.layers.rbegin(); it != net.layers.rend(); ++it)
        v = rbm::visible_expectation(*it, v);
    return v;
}

} // namespace hybridad::dbn
