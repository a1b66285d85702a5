#include "tgpo/learn/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace tgpo::learn {

MlpAdam::MlpAdam(const Mlp& net, AdamConfig cfg, int extra_dim) : cfg_(cfg) {
  for (const auto& w : net.W) {
    mW_.emplace_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
    vW_.emplace_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
  }
  for (const auto& v : net.b) {
    mb_.emplace_back(Eigen::VectorXd::Zero(v.size()));
    vb_.emplace_back(Eigen::VectorXd::Zero(v.size()));
  }
  m_extra_ = Eigen::VectorXd::Zero(extra_dim);
  v_extra_ = Eigen::VectorXd::Zero(extra_dim);
}

void MlpAdam::step(Mlp& net, const MlpGrads& grads) { step_impl(net, grads, nullptr, nullptr); }

void MlpAdam::step(Mlp& net, const MlpGrads& grads, Eigen::VectorXd& extra,
                   const Eigen::VectorXd& extra_grad) {
  step_impl(net, grads, &extra, &extra_grad);
}

void MlpAdam::step_impl(Mlp& net, const MlpGrads& grads, Eigen::VectorXd* extra,
                        const Eigen::VectorXd* extra_grad) {
  ++t_;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, t_);
  const double bc2 = 1.0 - std::pow(cfg_.beta2, t_);
  auto update = [&](auto& param, auto& m, auto& v, const auto& g, bool decay) {
    m = cfg_.beta1 * m + (1.0 - cfg_.beta1) * g;
    v = (cfg_.beta2 * v.array() + (1.0 - cfg_.beta2) * g.array().square()).matrix();
    auto m_hat = m.array() / bc1;
    auto v_hat = v.array() / bc2;
    param.array() -= cfg_.lr * m_hat / (v_hat.sqrt() + cfg_.eps);
    if (decay && cfg_.weight_decay > 0.0)
      param.array() -= cfg_.lr * cfg_.weight_decay * param.array();
  };
  for (std::size_t l = 0; l < net.W.size(); ++l) {
    update(net.W[l], mW_[l], vW_[l], grads.W[l], true);
    update(net.b[l], mb_[l], vb_[l], grads.b[l], false);
  }
  if (extra != nullptr) {
    if (extra->size() != m_extra_.size())
      throw std::invalid_argument("MlpAdam: extra parameter size mismatch");
    update(*extra, m_extra_, v_extra_, *extra_grad, false);
  }
}

double grad_global_norm(const MlpGrads& grads, const Eigen::VectorXd* extra) {
  double s = grads.squared_norm();
  if (extra != nullptr) s += extra->squaredNorm();
  return std::sqrt(s);
}

void clip_grad_norm(MlpGrads& grads, double max_norm, Eigen::VectorXd* extra) {
  const double norm = grad_global_norm(grads, extra);
  if (norm <= max_norm || norm == 0.0) return;
  const double factor = max_norm / norm;
  grads.scale(factor);
  if (extra != nullptr) *extra *= factor;
}

}  // namespace tgpo::learn
