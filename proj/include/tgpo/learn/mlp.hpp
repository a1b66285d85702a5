#pragma once

#include <Eigen/Core>
#include <vector>

#include "tgpo/util/rng.hpp"

namespace tgpo::learn {

// Fully-connected network with tanh hidden layers and a linear output layer.
// Batches are row-major: one sample per row. Backward accumulates into a
// mirrored gradient structure.
struct MlpGrads {
  std::vector<Eigen::MatrixXd> W;
  std::vector<Eigen::VectorXd> b;
  void set_zero();
  double squared_norm() const;
  void scale(double factor);
};

class Mlp {
 public:
  Mlp(int input, std::vector<int> hidden, int output);

  // Orthogonal weights scaled by gain (hidden layers) and final_gain (output
  // layer); zero biases.
  void init_orthogonal(Rng& rng, double gain, double final_gain);

  int input_dim() const { return input_; }
  int output_dim() const { return output_; }
  int n_layers() const { return static_cast<int>(W.size()); }

  Eigen::MatrixXd forward(const Eigen::MatrixXd& x) const;

  // Keeps every post-activation for the backward pass.
  struct Cache {
    std::vector<Eigen::MatrixXd> h;  // h[0] = input, h[i] = activation after layer i
  };
  Eigen::MatrixXd forward(const Eigen::MatrixXd& x, Cache& cache) const;

  // grad_out is dLoss/dOutput for the batch in cache; adds into grads.
  void backward(const Cache& cache, const Eigen::MatrixXd& grad_out, MlpGrads& grads) const;

  MlpGrads zero_grads() const;

  // All parameters as one flat vector (layer order, W row-major then b).
  Eigen::VectorXd flatten() const;
  void unflatten(const Eigen::VectorXd& theta);
  int n_params() const;

  std::vector<Eigen::MatrixXd> W;  // (out x in) per layer
  std::vector<Eigen::VectorXd> b;

 private:
  int input_ = 0;
  int output_ = 0;
};

}  // namespace tgpo::learn
