// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "mindhash/schemes.hpp"

namespace mindhash::predictor {

/// Printable ASCII, space through tilde.
inline constexpr int kAlphabetSize = 95;
inline constexpr int kDefaultHidden = 50;

/// Throws NonPrintable outside the alphabet.
int char_index(char c);
char index_char(int index);

/// Inputs feed the network one character at a time; targets[i] is the
/// character expected after inputs[0..i].
struct Sequence {
  std::vector<int> inputs;
  std::vector<int> targets;
};

/// Every next-character transition of a password.
Sequence full_sequence(std::string_view password);
/// All transitions except the one into the final character.
Sequence training_sequence(std::string_view password);

class NextCharPredictor {
 public:
  virtual ~NextCharPredictor() = default;
  /// Probability of each alphabet character following `prefix`.
  virtual Eigen::VectorXd distribution(std::string_view prefix) const = 0;
  /// Most likely next character; ties go to the lowest alphabet index.
  char predict(std::string_view prefix) const;
};

/// Share of passwords whose final character is the top prediction given the
/// rest. Passwords shorter than two characters are skipped.
double last_char_accuracy(const NextCharPredictor& model, std::span<const std::string> passwords);

/// Gates are stacked input, forget, output, candidate. Inputs are one-hot,
/// so the input weights are read column by column.
struct LstmParams {
  Eigen::MatrixXd wx;  // 4H x V
  Eigen::MatrixXd wh;  // 4H x H
  Eigen::VectorXd b;   // 4H
  Eigen::MatrixXd wy;  // V x H
  Eigen::VectorXd by;  // V

  static LstmParams zeros(int hidden);

  int hidden() const { return static_cast<int>(wh.cols()); }
  std::size_t size() const;
  /// Flat view in the order wx, wh, b, wy, by (column-major within each).
  double& operator[](std::size_t index);
  double operator[](std::size_t index) const;

  double squared_norm() const;
  void scale(double factor);
  void add_scaled(const LstmParams& other, double factor);
  void set_zero();
};

class LstmModel final : public NextCharPredictor {
 public:
  explicit LstmModel(std::uint64_t seed, int hidden = kDefaultHidden);

  const LstmParams& params() const { return params_; }
  LstmParams& params() { return params_; }
  int hidden() const { return params_.hidden(); }

  /// One probability vector per input character.
  std::vector<Eigen::VectorXd> forward(std::string_view text) const;
  Eigen::VectorXd distribution(std::string_view prefix) const override;

  /// Summed cross-entropy over all targets; adds gradients into `grads`
  /// when it is not null.
  double loss(std::span<const Sequence> batch, LstmParams* grads = nullptr) const;

  nlohmann::json to_json() const;
  static LstmModel from_json(const nlohmann::json& doc);
  void save(const std::filesystem::path& path) const;
  static LstmModel load(const std::filesystem::path& path);

 private:
  LstmModel() = default;
  LstmParams params_;
};

struct TrainConfig {
  int epochs = 100;
  double learning_rate = 0.05;
  double clip_norm = 5.0;
  std::uint64_t seed = 1;
  int hidden = kDefaultHidden;
};

struct TrainResult {
  LstmModel model;
  std::vector<double> epoch_loss;  // mean cross-entropy per transition
};

/// Plain SGD, one update per password, gradient norm clipped. Passwords are
/// put in canonical order before the seeded shuffle, so the input order has
/// no effect. Throws ConfigError for epochs < 1 and CorpusError when no
/// password has a transition to train on.
TrainResult train(std::span<const std::string> passwords, const TrainConfig& config);

std::string loss_curve_csv(std::span<const double> epoch_loss);

struct GradientCheckResult {
  double max_relative_error = 0.0;
  std::size_t checked = 0;
};

/// Central differences against backpropagation on `samples` parameters drawn
/// from those the sample can affect. `corrupt` edits the analytic gradient
/// before comparison; it exists for negative controls.
GradientCheckResult gradient_check(const LstmModel& model, std::span<const std::string> sample,
                                   std::size_t samples = 200, std::uint64_t seed = 0,
                                   double step = 1e-5,
                                   const std::function<void(LstmParams&)>& corrupt = {});

/// Laplace-smoothed character model over the previous `order` characters,
/// padded at the start. Counts the same transitions the LSTM trains on.
class NgramModel final : public NextCharPredictor {
 public:
  NgramModel(int order, std::span<const std::string> passwords);

  int order() const { return order_; }
  Eigen::VectorXd distribution(std::string_view prefix) const override;

 private:
  std::string context_of(std::string_view prefix) const;

  int order_;
  std::map<std::string, std::vector<std::uint32_t>> counts_;
};

/// `count` passwords from simulated users, ten accounts per user.
std::vector<std::string> synthetic_passwords(schemes::SchemeId scheme, std::size_t count,
                                             std::uint64_t seed);

/// Uniformly random printable strings.
std::vector<std::string> random_passwords(std::size_t count, std::size_t min_length,
                                          std::size_t max_length, std::uint64_t seed);

}  // namespace mindhash::predictor
