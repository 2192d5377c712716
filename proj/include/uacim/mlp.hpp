#pragma once

// Small fully connected network on Eigen: tanh hidden layers, linear output.
// Samples are columns.

#include <vector>

#include <Eigen/Dense>

#include "uacim/rng.hpp"

namespace uacim {

struct DenseLayer {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;
};

class Mlp {
 public:
  Mlp() = default;
  // sizes = {in, hidden..., out}. Weights and biases start uniform in
  // +-1/sqrt(fan_in).
  Mlp(const std::vector<int>& sizes, Rng& rng);

  struct Cache {
    std::vector<Eigen::MatrixXd> activations;  // input, each hidden output, final output
  };

  Eigen::MatrixXd forward(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXd forward(const Eigen::MatrixXd& x, Cache& cache) const;

  // Gradients w.r.t. every layer for d(loss)/d(output) = grad_out.
  std::vector<DenseLayer> backward(const Cache& cache, const Eigen::MatrixXd& grad_out) const;

  std::vector<DenseLayer>& layers() { return layers_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<int> sizes() const;

  std::size_t num_parameters() const;
  Eigen::VectorXd flat() const;
  void set_flat(const Eigen::VectorXd& v);
  static Eigen::VectorXd flatten(const std::vector<DenseLayer>& layers);

  bool finite() const;

 private:
  std::vector<DenseLayer> layers_;
};

// Adam with the usual bias correction.
class Adam {
 public:
  Adam() = default;
  Adam(const Mlp& net, double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);

  void step(Mlp& net, const std::vector<DenseLayer>& grads);
  double learning_rate() const { return lr_; }

 private:
  double lr_ = 1e-3, beta1_ = 0.9, beta2_ = 0.999, eps_ = 1e-8;
  long t_ = 0;
  std::vector<DenseLayer> m_, v_;
};

}  // namespace uacim
