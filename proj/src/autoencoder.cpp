#include "dimest/autoencoder.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "dimest/errors.hpp"
#include "dimest/rng.hpp"

namespace dimest {

std::string to_string(Activation a) {
  switch (a) {
    case Activation::identity: return "identity";
    case Activation::relu: return "relu";
    case Activation::sigmoid: return "sigmoid";
    case Activation::tanh: return "tanh";
  }
  throw ArgumentError("unknown activation");
}

Activation activation_from_string(const std::string& name) {
  if (name == "identity") return Activation::identity;
  if (name == "relu") return Activation::relu;
  if (name == "sigmoid") return Activation::sigmoid;
  if (name == "tanh") return Activation::tanh;
  throw ArgumentError("unknown activation '" + name + "'");
}

void AeConfig::validate() const {
  if (layer_sizes.size() < 3 || layer_sizes.size() % 2 == 0) {
    throw ArgumentError("layer_sizes must have odd length >= 3, got " +
                        std::to_string(layer_sizes.size()));
  }
  for (std::size_t i = 0; i < layer_sizes.size(); ++i) {
    if (layer_sizes[i] < 1) {
      throw ArgumentError("layer size at index " + std::to_string(i) +
                          " must be positive");
    }
  }
  if (layer_sizes.front() != layer_sizes.back()) {
    throw ArgumentError(
        "input and output sizes must match for reconstruction, got " +
        std::to_string(layer_sizes.front()) + " and " +
        std::to_string(layer_sizes.back()));
  }
  if (activations.size() != layer_sizes.size() - 1) {
    throw ArgumentError("expected " + std::to_string(layer_sizes.size() - 1) +
                        " activations (one per non-input layer), got " +
                        std::to_string(activations.size()));
  }
  if (activations[innermost_weight()] != Activation::identity) {
    throw ArgumentError("innermost hidden layer activation must be identity");
  }
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw ArgumentError("lambda must be finite and non-negative");
  }
  if (!std::isfinite(learning_rate) || learning_rate <= 0.0) {
    throw ArgumentError("learning_rate must be finite and positive");
  }
  if (epochs < 0) {
    throw ArgumentError("epochs must be non-negative");
  }
  if (batch_size < 1) {
    throw ArgumentError("batch_size must be positive");
  }
  if (!std::isfinite(init_scale) || init_scale <= 0.0) {
    throw ArgumentError("init_scale must be finite and positive");
  }
}

AeConfig mnist_ae_config() {
  AeConfig config;
  config.layer_sizes = {784, 256, 128, 64, 128, 256, 784};
  config.activations = {Activation::relu,     Activation::identity,
                        Activation::identity, Activation::identity,
                        Activation::relu,     Activation::sigmoid};
  return config;
}

AeConfig returns_ae_config(Eigen::Index features) {
  AeConfig config;
  config.layer_sizes = {features, 256, 128, 64, 128, 256, features};
  config.activations = {Activation::relu,     Activation::identity,
                        Activation::identity, Activation::identity,
                        Activation::relu,     Activation::tanh};
  return config;
}

double normalized_l1(const Eigen::VectorXd& y) {
  const double norm2 = y.norm();
  if (norm2 < 1e-12) return 0.0;
  return y.lpNorm<1>() / norm2;
}

Eigen::VectorXd normalized_l1_gradient(const Eigen::VectorXd& y) {
  const double norm2 = y.norm();
  if (norm2 < 1e-12) return Eigen::VectorXd::Zero(y.size());
  const double norm1 = y.lpNorm<1>();
  const Eigen::VectorXd sign = y.array().sign();
  return sign / norm2 - (norm1 / (norm2 * norm2 * norm2)) * y;
}

namespace {

Eigen::MatrixXd activate(Activation a, const Eigen::MatrixXd& z) {
  switch (a) {
    case Activation::identity: return z;
    case Activation::relu: return z.cwiseMax(0.0);
    case Activation::sigmoid:
      return (1.0 / (1.0 + (-z.array()).exp())).matrix();
    case Activation::tanh: return z.array().tanh().matrix();
  }
  throw ArgumentError("unknown activation");
}

// Derivative with respect to z, given both z and a = activate(z).
Eigen::MatrixXd activate_derivative(Activation kind, const Eigen::MatrixXd& z,
                                    const Eigen::MatrixXd& a) {
  switch (kind) {
    case Activation::identity: return Eigen::MatrixXd::Ones(z.rows(), z.cols());
    case Activation::relu: return (z.array() > 0.0).cast<double>().matrix();
    case Activation::sigmoid: return (a.array() * (1.0 - a.array())).matrix();
    case Activation::tanh: return (1.0 - a.array().square()).matrix();
  }
  throw ArgumentError("unknown activation");
}

struct BatchCache {
  std::vector<Eigen::MatrixXd> z;  // z[l]: pre-activations of weight layer l
  std::vector<Eigen::MatrixXd> a;  // a[0] = input; a[l+1] = activate(z[l])
};

BatchCache forward_batch(const AeModel& model, const Eigen::MatrixXd& batch) {
  const std::size_t layers = model.weights.size();
  BatchCache cache;
  cache.z.resize(layers);
  cache.a.resize(layers + 1);
  cache.a[0] = batch;
  for (std::size_t l = 0; l < layers; ++l) {
    cache.z[l] = (cache.a[l] * model.weights[l].transpose()).rowwise() +
                 model.biases[l].transpose();
    cache.a[l + 1] = activate(model.config.activations[l], cache.z[l]);
  }
  return cache;
}

void check_input_width(const AeModel& model, Eigen::Index cols) {
  if (cols != model.config.input_size()) {
    throw ArgumentError("input width " + std::to_string(cols) +
                        " does not match network input size " +
                        std::to_string(model.config.input_size()));
  }
}

}  // namespace

AeModel init_model(const AeConfig& config) {
  config.validate();
  AeModel model;
  model.config = config;
  Rng rng(config.seed);
  const std::size_t layers = config.layer_sizes.size() - 1;
  model.weights.reserve(layers);
  model.biases.reserve(layers);
  for (std::size_t l = 0; l < layers; ++l) {
    const Eigen::Index fan_in = config.layer_sizes[l];
    const Eigen::Index fan_out = config.layer_sizes[l + 1];
    const double bound =
        config.init_scale / std::sqrt(static_cast<double>(fan_in));
    Eigen::MatrixXd w(fan_out, fan_in);
    for (Eigen::Index i = 0; i < fan_out; ++i) {
      for (Eigen::Index j = 0; j < fan_in; ++j) {
        w(i, j) = rng.uniform(-bound, bound);
      }
    }
    model.weights.push_back(std::move(w));
    model.biases.push_back(Eigen::VectorXd::Zero(fan_out));
  }
  return model;
}

ForwardResult forward(const AeModel& model, const Eigen::VectorXd& x) {
  check_input_width(model, x.size());
  const BatchCache cache = forward_batch(model, x.transpose());
  return ForwardResult{
      cache.a.back().row(0).transpose(),
      cache.a[model.config.innermost_layer()].row(0).transpose()};
}

LossTerms loss(const AeModel& model, const DataMatrix& batch) {
  check_input_width(model, batch.cols());
  const BatchCache cache = forward_batch(model, batch.values());
  const double rows = static_cast<double>(batch.rows());
  LossTerms terms;
  terms.reconstruction =
      0.5 * (cache.a.back() - batch.values()).squaredNorm() / rows;
  const Eigen::MatrixXd& hidden = cache.a[model.config.innermost_layer()];
  double penalty = 0.0;
  for (Eigen::Index r = 0; r < hidden.rows(); ++r) {
    penalty += normalized_l1(hidden.row(r).transpose());
  }
  terms.sparsity = model.config.lambda * penalty / rows;
  terms.total = terms.reconstruction + terms.sparsity;
  return terms;
}

AeGradients gradients(const AeModel& model, const DataMatrix& batch) {
  check_input_width(model, batch.cols());
  const AeConfig& config = model.config;
  const std::size_t layers = model.weights.size();
  const std::size_t hidden_weight = config.innermost_weight();
  const BatchCache cache = forward_batch(model, batch.values());
  const double rows = static_cast<double>(batch.rows());

  std::vector<Eigen::MatrixXd> deltas(layers);  // deltas[l] = dLoss/dz[l]
  deltas[layers - 1] =
      ((cache.a[layers] - batch.values()) / rows)
          .cwiseProduct(activate_derivative(config.activations[layers - 1],
                                            cache.z[layers - 1],
                                            cache.a[layers]));
  for (std::size_t l = layers - 1; l-- > 0;) {
    Eigen::MatrixXd upstream = deltas[l + 1] * model.weights[l + 1];
    if (l == hidden_weight && config.lambda > 0.0) {
      const Eigen::MatrixXd& hidden = cache.a[l + 1];
      for (Eigen::Index r = 0; r < hidden.rows(); ++r) {
        upstream.row(r) += (config.lambda / rows) *
                           normalized_l1_gradient(hidden.row(r).transpose())
                               .transpose();
      }
    }
    deltas[l] = upstream.cwiseProduct(
        activate_derivative(config.activations[l], cache.z[l], cache.a[l + 1]));
  }

  AeGradients grads;
  grads.weights.resize(layers);
  grads.biases.resize(layers);
  for (std::size_t l = 0; l < layers; ++l) {
    grads.weights[l] = deltas[l].transpose() * cache.a[l];
    grads.biases[l] = deltas[l].colwise().sum().transpose();
  }
  return grads;
}

AeModel train(const AeConfig& config, const DataMatrix& data) {
  config.validate();
  if (data.cols() != config.input_size()) {
    throw ArgumentError("training data width " + std::to_string(data.cols()) +
                        " does not match network input size " +
                        std::to_string(config.input_size()));
  }
  AeModel model = init_model(config);
  // init_model consumes Rng(seed); shuffling gets its own derived stream so
  // both are reproducible independently.
  Rng shuffle_rng(derive_seed(config.seed, 1));
  const Eigen::Index n = data.rows();
  const Eigen::Index batch_size = std::min<Eigen::Index>(config.batch_size, n);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  long step = 0;
  for (long epoch = 0; epoch < config.epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    for (Eigen::Index start = 0; start < n; start += batch_size) {
      const Eigen::Index b = std::min(batch_size, n - start);
      Eigen::MatrixXd batch(b, data.cols());
      for (Eigen::Index i = 0; i < b; ++i) {
        batch.row(i) = data.values().row(order[static_cast<std::size_t>(start + i)]);
      }
      const AeGradients grads = gradients(model, DataMatrix(std::move(batch)));
      ++step;
      for (std::size_t l = 0; l < model.weights.size(); ++l) {
        model.weights[l] -= config.learning_rate * grads.weights[l];
        model.biases[l] -= config.learning_rate * grads.biases[l];
        if (!model.weights[l].allFinite() || !model.biases[l].allFinite()) {
          throw TrainingDivergenceError(epoch, step);
        }
      }
    }
    const LossTerms epoch_loss = loss(model, data);
    if (!std::isfinite(epoch_loss.total)) {
      throw TrainingDivergenceError(epoch, step);
    }
    model.training_history.push_back(epoch_loss.total);
  }
  return model;
}

HiddenBatch hidden_activations(const AeModel& model, const DataMatrix& data) {
  check_input_width(model, data.cols());
  BatchCache cache = forward_batch(model, data.values());
  return HiddenBatch{std::move(cache.a[model.config.innermost_layer()])};
}

namespace {

constexpr char kModelMagic[8] = {'D', 'I', 'M', 'A', 'E', 'M', '0', '1'};

void write_bytes(std::ofstream& out, const void* data, std::size_t size) {
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
}

void read_bytes(std::ifstream& in, void* data, std::size_t size,
                const std::string& path) {
  const auto offset = static_cast<long long>(in.tellg());
  in.read(static_cast<char*>(data), static_cast<std::streamsize>(size));
  if (in.gcount() != static_cast<std::streamsize>(size)) {
    throw FormatError("model file '" + path + "' truncated at byte offset " +
                      std::to_string(offset));
  }
}

}  // namespace

void save_model(const AeModel& model, const std::string& path) {
  model.config.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ArgumentError("cannot open '" + path + "' for writing");
  }
  write_bytes(out, kModelMagic, sizeof(kModelMagic));
  const std::uint32_t layer_count =
      static_cast<std::uint32_t>(model.config.layer_sizes.size());
  write_bytes(out, &layer_count, sizeof(layer_count));
  for (const Eigen::Index size : model.config.layer_sizes) {
    const std::uint32_t s = static_cast<std::uint32_t>(size);
    write_bytes(out, &s, sizeof(s));
  }
  for (const Activation a : model.config.activations) {
    const std::uint8_t code = static_cast<std::uint8_t>(a);
    write_bytes(out, &code, sizeof(code));
  }
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    const Eigen::MatrixXd& w = model.weights[l];
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        const double v = w(i, j);
        write_bytes(out, &v, sizeof(v));
      }
    }
    for (Eigen::Index i = 0; i < model.biases[l].size(); ++i) {
      const double v = model.biases[l][i];
      write_bytes(out, &v, sizeof(v));
    }
  }
  if (!out) {
    throw ArgumentError("failed writing model file '" + path + "'");
  }
}

AeModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ArgumentError("cannot open model file '" + path + "'");
  }
  char magic[8];
  read_bytes(in, magic, sizeof(magic), path);
  if (std::string(magic, 8) != std::string(kModelMagic, 8)) {
    throw FormatError("model file '" + path +
                      "' has wrong magic at byte offset 0");
  }
  std::uint32_t layer_count = 0;
  read_bytes(in, &layer_count, sizeof(layer_count), path);
  if (layer_count < 3 || layer_count > 1024) {
    throw FormatError("model file '" + path + "' has implausible layer count " +
                      std::to_string(layer_count));
  }
  AeConfig config;
  config.layer_sizes.resize(layer_count);
  for (std::uint32_t i = 0; i < layer_count; ++i) {
    std::uint32_t size = 0;
    read_bytes(in, &size, sizeof(size), path);
    config.layer_sizes[i] = static_cast<Eigen::Index>(size);
  }
  config.activations.resize(layer_count - 1);
  for (std::uint32_t i = 0; i + 1 < layer_count; ++i) {
    std::uint8_t code = 0;
    read_bytes(in, &code, sizeof(code), path);
    if (code > 3) {
      throw FormatError("model file '" + path + "' has unknown activation code " +
                        std::to_string(code));
    }
    config.activations[i] = static_cast<Activation>(code);
  }
  config.validate();
  AeModel model;
  model.config = config;
  for (std::uint32_t l = 0; l + 1 < layer_count; ++l) {
    const Eigen::Index rows = config.layer_sizes[l + 1];
    const Eigen::Index cols = config.layer_sizes[l];
    Eigen::MatrixXd w(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) {
        double v = 0.0;
        read_bytes(in, &v, sizeof(v), path);
        w(i, j) = v;
      }
    }
    Eigen::VectorXd b(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
      double v = 0.0;
      read_bytes(in, &v, sizeof(v), path);
      b[i] = v;
    }
    model.weights.push_back(std::move(w));
    model.biases.push_back(std::move(b));
  }
  char extra = 0;
  in.read(&extra, 1);
  if (in.gcount() != 0) {
    throw FormatError("model file '" + path + "' has trailing bytes");
  }
  return model;
}

}  // namespace dimest
