#include "tgpo/learn/mlp.hpp"

#include <Eigen/QR>
#include <stdexcept>

namespace tgpo::learn {

void MlpGrads::set_zero() {
  for (auto& m : W) m.setZero();
  for (auto& v : b) v.setZero();
}

double MlpGrads::squared_norm() const {
  double s = 0.0;
  for (const auto& m : W) s += m.squaredNorm();
  for (const auto& v : b) s += v.squaredNorm();
  return s;
}

void MlpGrads::scale(double factor) {
  for (auto& m : W) m *= factor;
  for (auto& v : b) v *= factor;
}

Mlp::Mlp(int input, std::vector<int> hidden, int output) : input_(input), output_(output) {
  if (input <= 0 || output <= 0) throw std::invalid_argument("Mlp: dims must be positive");
  int prev = input;
  for (int h : hidden) {
    if (h <= 0) throw std::invalid_argument("Mlp: dims must be positive");
    W.emplace_back(Eigen::MatrixXd::Zero(h, prev));
    b.emplace_back(Eigen::VectorXd::Zero(h));
    prev = h;
  }
  W.emplace_back(Eigen::MatrixXd::Zero(output, prev));
  b.emplace_back(Eigen::VectorXd::Zero(output));
}

namespace {

Eigen::MatrixXd orthogonal_matrix(Rng& rng, int rows, int cols) {
  // QR of a Gaussian matrix; signs fixed by diag(R) so the result is the
  // unique factor with positive diagonal.
  const int big = std::max(rows, cols);
  const int small = std::min(rows, cols);
  Eigen::MatrixXd a(big, small);
  for (int i = 0; i < big; ++i)
    for (int j = 0; j < small; ++j) a(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(big, small);
  Eigen::MatrixXd r = qr.matrixQR().topRows(small).triangularView<Eigen::Upper>();
  for (int j = 0; j < small; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  if (rows < cols) return q.transpose();
  return q;
}

}  // namespace

void Mlp::init_orthogonal(Rng& rng, double gain, double final_gain) {
  const int last = n_layers() - 1;
  for (int l = 0; l <= last; ++l) {
    const double g = (l == last) ? final_gain : gain;
    W[l] = g * orthogonal_matrix(rng, static_cast<int>(W[l].rows()),
                                 static_cast<int>(W[l].cols()));
    b[l].setZero();
  }
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& x) const {
  Cache cache;
  return forward(x, cache);
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& x, Cache& cache) const {
  if (x.cols() != input_) throw std::invalid_argument("Mlp::forward: wrong input dim");
  cache.h.clear();
  cache.h.reserve(W.size());
  cache.h.push_back(x);
  const int last = n_layers() - 1;
  for (int l = 0; l < last; ++l) {
    Eigen::MatrixXd z = cache.h.back() * W[l].transpose();
    z.rowwise() += b[l].transpose();
    cache.h.push_back(z.array().tanh().matrix());
  }
  Eigen::MatrixXd out = cache.h.back() * W[last].transpose();
  out.rowwise() += b[last].transpose();
  return out;
}

void Mlp::backward(const Cache& cache, const Eigen::MatrixXd& grad_out, MlpGrads& grads) const {
  const int last = n_layers() - 1;
  Eigen::MatrixXd g = grad_out;  // dLoss/dz for the current layer
  for (int l = last; l >= 0; --l) {
    grads.W[l].noalias() += g.transpose() * cache.h[l];
    grads.b[l] += g.colwise().sum().transpose();
    if (l == 0) break;
    Eigen::MatrixXd dh = g * W[l];
    // through tanh: dz = dh * (1 - h^2)
    g = (dh.array() * (1.0 - cache.h[l].array().square())).matrix();
  }
}

MlpGrads Mlp::zero_grads() const {
  MlpGrads g;
  for (const auto& w : W) g.W.emplace_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
  for (const auto& v : b) g.b.emplace_back(Eigen::VectorXd::Zero(v.size()));
  return g;
}

int Mlp::n_params() const {
  int n = 0;
  for (const auto& w : W) n += static_cast<int>(w.size());
  for (const auto& v : b) n += static_cast<int>(v.size());
  return n;
}

Eigen::VectorXd Mlp::flatten() const {
  Eigen::VectorXd theta(n_params());
  int at = 0;
  for (std::size_t l = 0; l < W.size(); ++l) {
    for (int i = 0; i < W[l].rows(); ++i)
      for (int j = 0; j < W[l].cols(); ++j) theta[at++] = W[l](i, j);
    for (int i = 0; i < b[l].size(); ++i) theta[at++] = b[l][i];
  }
  return theta;
}

void Mlp::unflatten(const Eigen::VectorXd& theta) {
  if (theta.size() != n_params()) throw std::invalid_argument("Mlp::unflatten: wrong size");
  int at = 0;
  for (std::size_t l = 0; l < W.size(); ++l) {
    for (int i = 0; i < W[l].rows(); ++i)
      for (int j = 0; j < W[l].cols(); ++j) W[l](i, j) = theta[at++];
    for (int i = 0; i < b[l].size(); ++i) b[l][i] = theta[at++];
  }
}

}  // namespace tgpo::learn
