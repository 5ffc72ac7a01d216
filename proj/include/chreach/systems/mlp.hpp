#pragma once

#include "chreach/core.hpp"
#include "chreach/rng.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace chreach {

/// Fully-connected network with softplus activations on hidden layers and a
/// linear output layer: softplus_beta(z) = log(1 + exp(beta z)) / beta.
class MlpPolicy {
 public:
  MlpPolicy() = default;

  MlpPolicy(std::vector<Mat> weights, std::vector<Vec> biases, double beta)
      : weights_(std::move(weights)), biases_(std::move(biases)), beta_(beta) {
    if (weights_.empty() || weights_.size() != biases_.size()) {
      throw ConfigError("MlpPolicy: weight/bias count mismatch");
    }
    if (!(beta_ > 0.0)) throw ConfigError("MlpPolicy: beta must be positive");
    for (std::size_t l = 0; l < weights_.size(); ++l) {
      if (weights_[l].rows() != biases_[l].size()) {
        throw ConfigError("MlpPolicy: bias size mismatch at layer " +
                          std::to_string(l));
      }
      if (l > 0 && weights_[l].cols() != weights_[l - 1].rows()) {
        throw ConfigError("MlpPolicy: layer shapes do not chain at layer " +
                          std::to_string(l));
      }
    }
  }

  int input_dim() const { return static_cast<int>(weights_.front().cols()); }
  int output_dim() const { return static_cast<int>(weights_.back().rows()); }
  double beta() const { return beta_; }
  const std::vector<Mat>& weights() const { return weights_; }
  const std::vector<Vec>& biases() const { return biases_; }

  // Overflow-safe: log(1+e^z) = max(z,0) + log1p(e^{-|z|}).
  double softplus(double z) const {
    const double bz = beta_ * z;
    return (std::max(bz, 0.0) + std::log1p(std::exp(-std::abs(bz)))) / beta_;
  }

  double softplus_grad(double z) const {
    const double bz = beta_ * z;
    return bz >= 0.0 ? 1.0 / (1.0 + std::exp(-bz))
                     : std::exp(bz) / (1.0 + std::exp(bz));
  }

  Vec eval(const Vec& x) const {
    Vec h = x;
    for (std::size_t l = 0; l < weights_.size(); ++l) {
      h = weights_[l] * h + biases_[l];
      if (l + 1 < weights_.size()) {
        for (int i = 0; i < h.size(); ++i) h[i] = softplus(h[i]);
      }
    }
    return h;
  }

  /// Jacobian d pi / d x by the chain rule through the softplus layers.
  Mat jacobian(const Vec& x) const {
    Vec h = x;
    Mat j = Mat::Identity(x.size(), x.size());
    for (std::size_t l = 0; l < weights_.size(); ++l) {
      const Vec z = weights_[l] * h + biases_[l];
      j = weights_[l] * j;
      if (l + 1 < weights_.size()) {
        h.resize(z.size());
        for (int i = 0; i < z.size(); ++i) {
          h[i] = softplus(z[i]);
          j.row(i) *= softplus_grad(z[i]);
        }
      } else {
        h = z;
      }
    }
    return j;
  }

  /// Seeded He-style initialization; the resulting policy is the shipped
  /// ground truth for the neural-loop experiments.
  static MlpPolicy seeded(const std::vector<int>& sizes, double beta,
                          std::uint64_t seed, double output_scale = 0.5) {
    if (sizes.size() < 2) throw ConfigError("MlpPolicy::seeded: need >= 2 sizes");
    Rng rng(seed);
    std::vector<Mat> ws;
    std::vector<Vec> bs;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
      const double scale = std::sqrt(2.0 / double(sizes[l]));
      Mat w(sizes[l + 1], sizes[l]);
      for (int r = 0; r < w.rows(); ++r) {
        for (int c = 0; c < w.cols(); ++c) w(r, c) = scale * rng.normal();
      }
      Vec b(sizes[l + 1]);
      for (int r = 0; r < b.size(); ++r) b[r] = 0.1 * rng.normal();
      if (l + 2 == sizes.size()) {
        w *= output_scale;
        b *= output_scale;
      }
      ws.push_back(std::move(w));
      bs.push_back(std::move(b));
    }
    return MlpPolicy(std::move(ws), std::move(bs), beta);
  }

  /// Text format, whitespace separated:
  ///   chreach-mlp 1
  ///   beta <beta>
  ///   layers <L> <d0> <d1> ... <dL>
  ///   then per layer: d_{l+1} x d_l row-major weights, d_{l+1} biases.
  void save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw NumericalError("MlpPolicy::save: cannot open " + path);
    out << "chreach-mlp 1\n";
    out << std::setprecision(17);
    out << "beta " << beta_ << "\n";
    out << "layers " << weights_.size();
    out << " " << weights_.front().cols();
    for (const auto& w : weights_) out << " " << w.rows();
    out << "\n";
    for (std::size_t l = 0; l < weights_.size(); ++l) {
      for (int r = 0; r < weights_[l].rows(); ++r) {
        for (int c = 0; c < weights_[l].cols(); ++c) {
          out << weights_[l](r, c) << (c + 1 == weights_[l].cols() ? "\n" : " ");
        }
      }
      for (int r = 0; r < biases_[l].size(); ++r) {
        out << biases_[l][r] << (r + 1 == biases_[l].size() ? "\n" : " ");
      }
    }
  }

  static MlpPolicy load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("MlpPolicy::load: cannot open " + path);
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "chreach-mlp" || version != 1) {
      throw ConfigError("MlpPolicy::load: bad header in " + path);
    }
    std::string key;
    double beta = 0.0;
    in >> key >> beta;
    if (key != "beta") throw ConfigError("MlpPolicy::load: expected beta");
    int layers = 0;
    in >> key >> layers;
    if (key != "layers" || layers < 1) {
      throw ConfigError("MlpPolicy::load: expected layer count");
    }
    std::vector<int> sizes(layers + 1);
    for (auto& s : sizes) in >> s;
    std::vector<Mat> ws;
    std::vector<Vec> bs;
    for (int l = 0; l < layers; ++l) {
      Mat w(sizes[l + 1], sizes[l]);
      for (int r = 0; r < w.rows(); ++r) {
        for (int c = 0; c < w.cols(); ++c) in >> w(r, c);
      }
      Vec b(sizes[l + 1]);
      for (int r = 0; r < b.size(); ++r) in >> b[r];
      ws.push_back(std::move(w));
      bs.push_back(std::move(b));
    }
    if (!in) throw ConfigError("MlpPolicy::load: truncated file " + path);
    return MlpPolicy(std::move(ws), std::move(bs), beta);
  }

 private:
  std::vector<Mat> weights_;
  std::vector<Vec> biases_;
  double beta_ = 1.0;
};

}  // namespace chreach
