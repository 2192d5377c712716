#include "uacim/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace uacim {

Mlp::Mlp(const std::vector<int>& sizes, Rng& rng) {
  if (sizes.size() < 2) throw std::invalid_argument("an MLP needs at least two layer sizes");
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const int in = sizes[l], out = sizes[l + 1];
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    DenseLayer layer{Eigen::MatrixXd(out, in), Eigen::VectorXd(out)};
    for (int r = 0; r < out; ++r) {
      for (int c = 0; c < in; ++c) layer.weight(r, c) = (2.0 * rng.uniform() - 1.0) * bound;
    }
    for (int r = 0; r < out; ++r) layer.bias(r) = (2.0 * rng.uniform() - 1.0) * bound;
    layers_.push_back(std::move(layer));
  }
}

std::vector<int> Mlp::sizes() const {
  std::vector<int> s;
  if (layers_.empty()) return s;
  s.push_back(static_cast<int>(layers_.front().weight.cols()));
  for (const auto& l : layers_) s.push_back(static_cast<int>(l.weight.rows()));
  return s;
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& x) const {
  Cache unused;
  return forward(x, unused);
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& x, Cache& cache) const {
  cache.activations.clear();
  cache.activations.push_back(x);
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    Eigen::MatrixXd z = layers_[l].weight * cache.activations.back();
    z.colwise() += layers_[l].bias;
    if (l + 1 < layers_.size()) z = z.array().tanh().matrix();
    cache.activations.push_back(std::move(z));
  }
  return cache.activations.back();
}

std::vector<DenseLayer> Mlp::backward(const Cache& cache, const Eigen::MatrixXd& grad_out) const {
  std::vector<DenseLayer> grads(layers_.size());
  Eigen::MatrixXd delta = grad_out;
  for (std::size_t l = layers_.size(); l-- > 0;) {
    const Eigen::MatrixXd& input = cache.activations[l];
    grads[l].weight = delta * input.transpose();
    grads[l].bias = delta.rowwise().sum();
    if (l == 0) break;
    delta = (layers_[l].weight.transpose() * delta).array() * (1.0 - input.array().square());
  }
  return grads;
}

std::size_t Mlp::num_parameters() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
  return n;
}

Eigen::VectorXd Mlp::flatten(const std::vector<DenseLayer>& layers) {
  std::size_t n = 0;
  for (const auto& l : layers) n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  Eigen::Index at = 0;
  for (const auto& l : layers) {
    v.segment(at, l.weight.size()) = l.weight.reshaped();
    at += l.weight.size();
    v.segment(at, l.bias.size()) = l.bias;
    at += l.bias.size();
  }
  return v;
}

Eigen::VectorXd Mlp::flat() const { return flatten(layers_); }

void Mlp::set_flat(const Eigen::VectorXd& v) {
  if (static_cast<std::size_t>(v.size()) != num_parameters()) {
    throw std::invalid_argument("parameter vector has the wrong length");
  }
  Eigen::Index at = 0;
  for (auto& l : layers_) {
    l.weight.reshaped() = v.segment(at, l.weight.size());
    at += l.weight.size();
    l.bias = v.segment(at, l.bias.size());
    at += l.bias.size();
  }
}

bool Mlp::finite() const {
  for (const auto& l : layers_) {
    if (!l.weight.allFinite() || !l.bias.allFinite()) return false;
  }
  return true;
}

Adam::Adam(const Mlp& net, double lr, double beta1, double beta2, double eps)
    : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {
  for (const auto& l : net.layers()) {
    m_.push_back({Eigen::MatrixXd::Zero(l.weight.rows(), l.weight.cols()),
                  Eigen::VectorXd::Zero(l.bias.size())});
  }
  v_ = m_;
}

void Adam::step(Mlp& net, const std::vector<DenseLayer>& grads) {
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  auto update = [&](auto& param, auto& m, auto& v, const auto& g) {
    m = beta1_ * m + (1.0 - beta1_) * g;
    v = beta2_ * v + (1.0 - beta2_) * g.cwiseProduct(g);
    param.array() -= lr_ * (m.array() / c1) / ((v.array() / c2).sqrt() + eps_);
  };
  auto& layers = net.layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    update(layers[l].weight, m_[l].weight, v_[l].weight, grads[l].weight);
    update(layers[l].bias, m_[l].bias, v_[l].bias, grads[l].bias);
  }
}

}  // namespace uacim
