// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "mindhash/error.hpp"
#include "mindhash/predictor.hpp"
#include "mindhash/rng.hpp"
#include "mindhash/security_lab.hpp"

namespace mindhash::predictor {

using Eigen::MatrixXd;
using Eigen::VectorXd;

int char_index(char c) {
  const auto u = static_cast<unsigned char>(c);
  if (u < 0x20 || u > 0x7e) {
    throw Error(ErrorKind::NonPrintable, "character outside printable ASCII");
  }
  return u - 0x20;
}

char index_char(int index) { return static_cast<char>(0x20 + index); }

Sequence full_sequence(std::string_view password) {
  Sequence s;
  for (std::size_t i = 0; i + 1 < password.size(); ++i) {
    s.inputs.push_back(char_index(password[i]));
    s.targets.push_back(char_index(password[i + 1]));
  }
  return s;
}

Sequence training_sequence(std::string_view password) {
  if (password.size() < 3) return {};
  return full_sequence(password.substr(0, password.size() - 1));
}

char NextCharPredictor::predict(std::string_view prefix) const {
  const VectorXd p = distribution(prefix);
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < p.size(); ++i) {
    if (p[i] > p[best]) best = i;
  }
  return index_char(static_cast<int>(best));
}

double last_char_accuracy(const NextCharPredictor& model, std::span<const std::string> passwords) {
  std::size_t total = 0, correct = 0;
  for (const auto& pw : passwords) {
    if (pw.size() < 2) continue;
    ++total;
    if (model.predict(std::string_view(pw).substr(0, pw.size() - 1)) == pw.back()) ++correct;
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

// ------------------------------------------------------------ parameters

LstmParams LstmParams::zeros(int hidden) {
  LstmParams p;
  p.wx = MatrixXd::Zero(4 * hidden, kAlphabetSize);
  p.wh = MatrixXd::Zero(4 * hidden, hidden);
  p.b = VectorXd::Zero(4 * hidden);
  p.wy = MatrixXd::Zero(kAlphabetSize, hidden);
  p.by = VectorXd::Zero(kAlphabetSize);
  return p;
}

std::size_t LstmParams::size() const {
  return static_cast<std::size_t>(wx.size() + wh.size() + b.size() + wy.size() + by.size());
}

double& LstmParams::operator[](std::size_t index) {
  auto i = static_cast<Eigen::Index>(index);
  if (i < wx.size()) return wx.data()[i];
  i -= wx.size();
  if (i < wh.size()) return wh.data()[i];
  i -= wh.size();
  if (i < b.size()) return b.data()[i];
  i -= b.size();
  if (i < wy.size()) return wy.data()[i];
  i -= wy.size();
  if (i < by.size()) return by.data()[i];
  throw Error(ErrorKind::Config, "parameter index out of range");
}

double LstmParams::operator[](std::size_t index) const {
  return const_cast<LstmParams&>(*this)[index];
}

double LstmParams::squared_norm() const {
  return wx.squaredNorm() + wh.squaredNorm() + b.squaredNorm() + wy.squaredNorm() +
         by.squaredNorm();
}

void LstmParams::scale(double factor) {
  wx *= factor;
  wh *= factor;
  b *= factor;
  wy *= factor;
  by *= factor;
}

void LstmParams::add_scaled(const LstmParams& other, double factor) {
  wx += factor * other.wx;
  wh += factor * other.wh;
  b += factor * other.b;
  wy += factor * other.wy;
  by += factor * other.by;
}

void LstmParams::set_zero() {
  wx.setZero();
  wh.setZero();
  b.setZero();
  wy.setZero();
  by.setZero();
}

// ----------------------------------------------------------------- model

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

VectorXd softmax(const VectorXd& logits) {
  VectorXd e = (logits.array() - logits.maxCoeff()).exp();
  return e / e.sum();
}

struct Step {
  int input = 0;
  VectorXd h_prev, c_prev, i, f, o, g, c, tanh_c, h, probs;
};

}  // namespace

LstmModel::LstmModel(std::uint64_t seed, int hidden) {
  if (hidden < 1) throw Error(ErrorKind::Config, "hidden size must be positive");
  params_ = LstmParams::zeros(hidden);
  Rng rng(derive_seed(seed, "lstm-init"));
  const double scale = 1.0 / std::sqrt(static_cast<double>(hidden));
  auto fill = [&](MatrixXd& m) {
    for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = (2.0 * rng.unit() - 1.0) * scale;
  };
  fill(params_.wx);
  fill(params_.wh);
  fill(params_.wy);
  params_.b.segment(hidden, hidden).setConstant(1.0);  // forget gate
}

namespace {

std::vector<Step> run(const LstmParams& p, std::span<const int> inputs) {
  const int h = p.hidden();
  std::vector<Step> steps(inputs.size());
  VectorXd h_prev = VectorXd::Zero(h), c_prev = VectorXd::Zero(h);
  for (std::size_t t = 0; t < inputs.size(); ++t) {
    Step& s = steps[t];
    s.input = inputs[t];
    s.h_prev = h_prev;
    s.c_prev = c_prev;
    const VectorXd z = p.wx.col(s.input) + p.wh * h_prev + p.b;
    s.i = z.segment(0, h).unaryExpr(&sigmoid);
    s.f = z.segment(h, h).unaryExpr(&sigmoid);
    s.o = z.segment(2 * h, h).unaryExpr(&sigmoid);
    s.g = z.segment(3 * h, h).array().tanh();
    s.c = s.f.cwiseProduct(c_prev) + s.i.cwiseProduct(s.g);
    s.tanh_c = s.c.array().tanh();
    s.h = s.o.cwiseProduct(s.tanh_c);
    s.probs = softmax(p.wy * s.h + p.by);
    h_prev = s.h;
    c_prev = s.c;
  }
  return steps;
}

}  // namespace

std::vector<VectorXd> LstmModel::forward(std::string_view text) const {
  std::vector<int> inputs;
  for (char c : text) inputs.push_back(char_index(c));
  std::vector<VectorXd> out;
  for (auto& s : run(params_, inputs)) out.push_back(std::move(s.probs));
  return out;
}

VectorXd LstmModel::distribution(std::string_view prefix) const {
  if (prefix.empty()) return VectorXd::Constant(kAlphabetSize, 1.0 / kAlphabetSize);
  return forward(prefix).back();
}

double LstmModel::loss(std::span<const Sequence> batch, LstmParams* grads) const {
  const int h = params_.hidden();
  double total = 0.0;
  for (const auto& seq : batch) {
    if (seq.inputs.empty()) continue;
    const auto steps = run(params_, seq.inputs);
    for (std::size_t t = 0; t < steps.size(); ++t) {
      total -= std::log(steps[t].probs[seq.targets[t]]);
    }
    if (grads == nullptr) continue;

    VectorXd dh_next = VectorXd::Zero(h), dc_next = VectorXd::Zero(h);
    VectorXd dz(4 * h);
    for (std::size_t t = steps.size(); t-- > 0;) {
      const Step& s = steps[t];
      VectorXd dy = s.probs;
      dy[seq.targets[t]] -= 1.0;
      grads->wy.noalias() += dy * s.h.transpose();
      grads->by += dy;
      const VectorXd dh = params_.wy.transpose() * dy + dh_next;
      const VectorXd d_o = dh.cwiseProduct(s.tanh_c);
      const VectorXd dc =
          dh.cwiseProduct(s.o).cwiseProduct((1.0 - s.tanh_c.array().square()).matrix()) + dc_next;
      const VectorXd di = dc.cwiseProduct(s.g);
      const VectorXd dg = dc.cwiseProduct(s.i);
      const VectorXd df = dc.cwiseProduct(s.c_prev);
      dc_next = dc.cwiseProduct(s.f);
      dz.segment(0, h) = di.array() * s.i.array() * (1.0 - s.i.array());
      dz.segment(h, h) = df.array() * s.f.array() * (1.0 - s.f.array());
      dz.segment(2 * h, h) = d_o.array() * s.o.array() * (1.0 - s.o.array());
      dz.segment(3 * h, h) = dg.array() * (1.0 - s.g.array().square());
      grads->wx.col(s.input) += dz;
      grads->wh.noalias() += dz * s.h_prev.transpose();
      grads->b += dz;
      dh_next.noalias() = params_.wh.transpose() * dz;
    }
  }
  return total;
}

// ------------------------------------------------------------ checkpoints

namespace {

nlohmann::json matrix_json(const MatrixXd& m) {
  return {{"rows", m.rows()},
          {"cols", m.cols()},
          {"data", std::vector<double>(m.data(), m.data() + m.size())}};
}

MatrixXd matrix_from(const nlohmann::json& doc, Eigen::Index rows, Eigen::Index cols) {
  if (doc.at("rows").get<Eigen::Index>() != rows || doc.at("cols").get<Eigen::Index>() != cols) {
    throw Error(ErrorKind::Schema, "checkpoint shape mismatch");
  }
  const auto data = doc.at("data").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw Error(ErrorKind::Schema, "checkpoint data size mismatch");
  }
  return Eigen::Map<const MatrixXd>(data.data(), rows, cols);
}

}  // namespace

nlohmann::json LstmModel::to_json() const {
  std::string alphabet;
  for (int i = 0; i < kAlphabetSize; ++i) alphabet.push_back(index_char(i));
  return {{"format", "mindhash-lstm-1"},
          {"alphabet", alphabet},
          {"hidden", hidden()},
          {"gate_order", {"input", "forget", "output", "candidate"}},
          {"wx", matrix_json(params_.wx)},
          {"wh", matrix_json(params_.wh)},
          {"b", matrix_json(params_.b)},
          {"wy", matrix_json(params_.wy)},
          {"by", matrix_json(params_.by)}};
}

LstmModel LstmModel::from_json(const nlohmann::json& doc) {
  try {
    const int h = doc.at("hidden").get<int>();
    if (h < 1) throw Error(ErrorKind::Schema, "hidden size must be positive");
    LstmModel m;
    m.params_.wx = matrix_from(doc.at("wx"), 4 * h, kAlphabetSize);
    m.params_.wh = matrix_from(doc.at("wh"), 4 * h, h);
    m.params_.b = matrix_from(doc.at("b"), 4 * h, 1);
    m.params_.wy = matrix_from(doc.at("wy"), kAlphabetSize, h);
    m.params_.by = matrix_from(doc.at("by"), kAlphabetSize, 1);
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Schema, std::string("bad checkpoint: ") + e.what());
  }
}

void LstmModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Config, "cannot write " + path.string());
  out << to_json().dump() << '\n';
}

LstmModel LstmModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot read " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("checkpoint: ") + e.what());
  }
}

// -------------------------------------------------------------- training

TrainResult train(std::span<const std::string> passwords, const TrainConfig& config) {
  if (config.epochs < 1) throw Error(ErrorKind::Config, "epochs must be at least 1");
  if (config.learning_rate <= 0.0 || config.clip_norm <= 0.0) {
    throw Error(ErrorKind::Config, "learning rate and clip norm must be positive");
  }
  std::vector<std::string> sorted(passwords.begin(), passwords.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Sequence> data;
  std::size_t transitions = 0;
  for (const auto& pw : sorted) {
    Sequence s = training_sequence(pw);
    if (s.inputs.empty()) continue;
    transitions += s.inputs.size();
    data.push_back(std::move(s));
  }
  if (data.empty()) {
    throw Error(ErrorKind::Corpus, "no password has a transition to train on");
  }

  TrainResult result{LstmModel(config.seed, config.hidden), {}};
  LstmParams grads = LstmParams::zeros(config.hidden);
  std::vector<std::size_t> order(data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    Rng rng(derive_seed(config.seed, "epoch", static_cast<std::uint64_t>(epoch)));
    rng.shuffle(order);
    double epoch_loss = 0.0;
    for (std::size_t idx : order) {
      grads.set_zero();
      epoch_loss += result.model.loss(std::span<const Sequence>(&data[idx], 1), &grads);
      const double norm = std::sqrt(grads.squared_norm());
      if (norm > config.clip_norm) grads.scale(config.clip_norm / norm);
      result.model.params().add_scaled(grads, -config.learning_rate);
    }
    result.epoch_loss.push_back(epoch_loss / static_cast<double>(transitions));
  }
  return result;
}

std::string loss_curve_csv(std::span<const double> epoch_loss) {
  std::ostringstream out;
  out.precision(10);
  out << "epoch,loss\n";
  for (std::size_t i = 0; i < epoch_loss.size(); ++i) out << i + 1 << ',' << epoch_loss[i] << '\n';
  return out.str();
}

// ------------------------------------------------------- gradient check

namespace {

// Loss-only forward pass in extended precision. Difference quotients of a
// double-precision loss carry roundoff near 1e-9, which swamps the smallest
// gradients.
long double extended_loss(const LstmParams& p, std::span<const Sequence> batch) {
  using T = long double;
  using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
  const int h = p.hidden();
  const Mat wx = p.wx.cast<T>(), wh = p.wh.cast<T>(), wy = p.wy.cast<T>();
  const Vec b = p.b.cast<T>(), by = p.by.cast<T>();
  auto sig = [](T x) { return T(1) / (T(1) + std::exp(-x)); };
  T total = 0;
  for (const auto& seq : batch) {
    Vec hs = Vec::Zero(h), cs = Vec::Zero(h);
    for (std::size_t t = 0; t < seq.inputs.size(); ++t) {
      const Vec z = wx.col(seq.inputs[t]) + wh * hs + b;
      const Vec i = z.segment(0, h).unaryExpr(sig);
      const Vec f = z.segment(h, h).unaryExpr(sig);
      const Vec o = z.segment(2 * h, h).unaryExpr(sig);
      const Vec g = z.segment(3 * h, h).array().tanh();
      cs = f.cwiseProduct(cs) + i.cwiseProduct(g);
      hs = o.cwiseProduct(Vec(cs.array().tanh()));
      const Vec logits = wy * hs + by;
      const T top = logits.maxCoeff();
      const T log_sum = top + std::log((logits.array() - top).exp().sum());
      total += log_sum - logits[seq.targets[t]];
    }
  }
  return total;
}

}  // namespace

GradientCheckResult gradient_check(const LstmModel& model, std::span<const std::string> sample,
                                   std::size_t samples, std::uint64_t seed, double step,
                                   const std::function<void(LstmParams&)>& corrupt) {
  std::vector<Sequence> batch;
  std::set<int> used_inputs;
  for (const auto& pw : sample) {
    batch.push_back(full_sequence(pw));
    used_inputs.insert(batch.back().inputs.begin(), batch.back().inputs.end());
  }
  const int h = model.hidden();
  LstmParams analytic = LstmParams::zeros(h);
  model.loss(batch, &analytic);
  if (corrupt) corrupt(analytic);

  // Input-weight columns of characters never fed in cannot affect the loss.
  std::vector<std::size_t> candidates;
  const std::size_t rows = static_cast<std::size_t>(4 * h);
  for (int c : used_inputs) {
    for (std::size_t r = 0; r < rows; ++r) candidates.push_back(static_cast<std::size_t>(c) * rows + r);
  }
  for (std::size_t k = static_cast<std::size_t>(model.params().wx.size()); k < analytic.size(); ++k) {
    candidates.push_back(k);
  }
  Rng rng(derive_seed(seed, "gradient-check"));
  rng.shuffle(candidates);
  if (candidates.size() > samples) candidates.resize(samples);

  LstmModel probe = model;
  GradientCheckResult result;
  for (std::size_t index : candidates) {
    const double original = probe.params()[index];
    probe.params()[index] = original + step;
    const long double plus = extended_loss(probe.params(), batch);
    probe.params()[index] = original - step;
    const long double minus = extended_loss(probe.params(), batch);
    probe.params()[index] = original;
    const auto numeric = static_cast<double>((plus - minus) / (2.0L * step));
    const double a = analytic[index];
    // The floor keeps pairs of near-zero gradients from dividing noise by noise.
    const double denominator = std::max(std::abs(a) + std::abs(numeric), 1e-7);
    result.max_relative_error = std::max(result.max_relative_error, std::abs(a - numeric) / denominator);
    ++result.checked;
  }
  return result;
}

// -------------------------------------------------------------- corpora

std::vector<std::string> synthetic_passwords(schemes::SchemeId scheme, std::size_t count,
                                             std::uint64_t seed) {
  const auto& sites = lab::default_websites();
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto user = lab::user_seed(seed, i / sites.size());
    try {
      out.push_back(lab::simulated_password(scheme, user, sites[i % sites.size()]));
    } catch (const Error&) {
      // A simulated user who cannot produce this account is left out.
    }
  }
  return out;
}

std::vector<std::string> random_passwords(std::size_t count, std::size_t min_length,
                                          std::size_t max_length, std::uint64_t seed) {
  if (min_length < 1 || max_length < min_length) {
    throw Error(ErrorKind::Config, "invalid length range");
  }
  Rng rng(derive_seed(seed, "random-passwords"));
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto length = static_cast<std::size_t>(
        rng.between(static_cast<std::int64_t>(min_length), static_cast<std::int64_t>(max_length)));
    std::string pw;
    for (std::size_t k = 0; k < length; ++k) {
      pw.push_back(index_char(static_cast<int>(rng.below(kAlphabetSize))));
    }
    out.push_back(std::move(pw));
  }
  return out;
}

}  // namespace mindhash::predictor
