#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "hybridad/rbm.hpp"
#include "hybridad/rng.hpp"

namespace hybridad::dbn {

// Stack of RBMs trained greedily, bottom layer Gaussian-visible so it can
// take scaled real-valued input, every layer above it Bernoulli.
struct Dbn {
    std::vector<rbm::Rbm> layers;

    Eigen::Index input_count() const {
        return layers.empty() ? 0 : layers.front().visible_count();
    }
    Eigen::Index code_width() const {
        return layers.empty() ? 0 : layers.back().hidden_count();
    }
};

using BinaryCode = std::vector<std::uint8_t>;

// One training config per layer. hidden_units gives the layer width; the
// visible kind is forced to Gaussian for the first entry and Bernoulli for
// the rest.
std::vector<rbm::TrainConfig> default_layer_configs(const std::vector<int>& hidden_sizes);

// Greedy layer-wise training. Each trained layer maps the running dataset
// to its hidden expectations, which become the next layer's input.
Dbn train_dbn(const std::vector<Eigen::VectorXd>& data,
              const std::vector<rbm::TrainConfig>& layer_configs, RngStream& rng);

// Feed-forward hidden expectations through every layer.
Eigen::VectorXd encode_soft(const Dbn& net, const Eigen::VectorXd& input);

// encode_soft thresholded at 0.5; a value exactly at the threshold maps to 1.
BinaryCode encode(const Dbn& net, const Eigen::VectorXd& input);

// Forward pass to the top layer, then visible expectations back down.
Eigen::VectorXd reconstruct(const Dbn& net, const Eigen::VectorXd& input);

} // namespace hybridad::dbn
