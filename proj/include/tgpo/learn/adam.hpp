#pragma once

#include <Eigen/Core>
#include <vector>

#include "tgpo/learn/mlp.hpp"

namespace tgpo::learn {

struct AdamConfig {
  double lr = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.1;  // decoupled, weight matrices only
};

// Adam for one Mlp plus optionally one extra vector parameter (no decay on
// biases or the extra vector). The caller clips gradients before step().
class MlpAdam {
 public:
  MlpAdam(const Mlp& net, AdamConfig cfg, int extra_dim = 0);

  void step(Mlp& net, const MlpGrads& grads);
  void step(Mlp& net, const MlpGrads& grads, Eigen::VectorXd& extra,
            const Eigen::VectorXd& extra_grad);

  int t() const { return t_; }

 private:
  void step_impl(Mlp& net, const MlpGrads& grads, Eigen::VectorXd* extra,
                 const Eigen::VectorXd* extra_grad);

  AdamConfig cfg_;
  int t_ = 0;
  std::vector<Eigen::MatrixXd> mW_, vW_;
  std::vector<Eigen::VectorXd> mb_, vb_;
  Eigen::VectorXd m_extra_, v_extra_;
};

// Global L2 norm over the network gradients and an optional extra vector.
double grad_global_norm(const MlpGrads& grads, const Eigen::VectorXd* extra = nullptr);

// Scales everything down so the global norm is at most max_norm.
void clip_grad_norm(MlpGrads& grads, double max_norm, Eigen::VectorXd* extra = nullptr);

}  // namespace tgpo::learn
