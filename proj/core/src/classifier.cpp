#include "mevolve/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mevolve {

namespace {

void validate_training(const FeatureMatrix& features, const std::vector<int>& labels,
                       int class_count) {
  if (features.empty()) throw std::invalid_argument("fit: empty training set");
  if (features.size() != labels.size()) {
    throw std::invalid_argument("fit: features and labels differ in length");
  }
  if (class_count < 1) throw std::invalid_argument("fit: class_count must be >= 1");
  const std::size_t dim = features.front().size();
  for (const auto& row : features) {
    if (row.size() != dim) throw std::invalid_argument("fit: ragged feature matrix");
  }
  std::vector<std::size_t> counts(static_cast<std::size_t>(class_count), 0);
  for (int y : labels) {
    if (y < 0 || y >= class_count) {
      throw std::invalid_argument("fit: label " + std::to_string(y) + " outside [0, " +
                                  std::to_string(class_count) + ")");
    }
    ++counts[static_cast<std::size_t>(y)];
  }
  for (int c = 0; c < class_count; ++c) {
    if (counts[static_cast<std::size_t>(c)] == 0) {
      throw std::invalid_argument("fit: class " + std::to_string(c) +
                                  " absent from training data");
    }
  }
}

double squared_distance(const std::vector<double>& x, const std::vector<double>& y) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double diff = x[i] - y[i];
    sum += diff * diff;
  }
  return sum;
}

std::vector<double> softmax(std::vector<double> z) {
  const double peak = *std::max_element(z.begin(), z.end());
  double total = 0.0;
  for (double& v : z) {
    v = std::exp(v - peak);
    total += v;
  }
  for (double& v : z) v /= total;
  return z;
}

}  // namespace

int predict_class(const Classifier& c, const std::vector<double>& feature) {
  const std::vector<double> probs = c.predict_proba(feature);
  return static_cast<int>(std::max_element(probs.begin(), probs.end()) - probs.begin());
}

double accuracy(const Classifier& c, const FeatureMatrix& features,
                const std::vector<int>& labels) {
  if (features.empty() || features.size() != labels.size()) {
    throw std::invalid_argument("accuracy: empty or mismatched evaluation set");
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (predict_class(c, features[i]) == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(features.size());
}

void KnnClassifier::fit(const FeatureMatrix& features, const std::vector<int>& labels,
                        int class_count) {
  validate_training(features, labels, class_count);
  if (k_ == 0) throw std::invalid_argument("knn: k must be >= 1");
  if (k_ > features.size()) {
    throw std::invalid_argument("knn: k=" + std::to_string(k_) + " exceeds training size " +
                                std::to_string(features.size()));
  }
  train_x_ = features;
  train_y_ = labels;
  classes_ = class_count;
}

std::vector<double> KnnClassifier::predict_proba(const std::vector<double>& feature) const {
  if (classes_ == 0) throw std::logic_error("knn: predict before fit");
  if (feature.size() != train_x_.front().size()) {
    throw std::invalid_argument("knn: feature dimension mismatch");
  }
  std::vector<std::pair<double, std::size_t>> order;
  order.reserve(train_x_.size());
  for (std::size_t i = 0; i < train_x_.size(); ++i) {
    order.emplace_back(squared_distance(feature, train_x_[i]), i);
  }
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k_), order.end());
  std::vector<double> probs(static_cast<std::size_t>(classes_), 0.0);
  for (std::size_t t = 0; t < k_; ++t) {
    probs[static_cast<std::size_t>(train_y_[order[t].second])] += 1.0;
  }
  for (double& p : probs) p /= static_cast<double>(k_);
  return probs;
}

double LogisticRegression::nll_loss(const std::vector<std::vector<double>>& weights,
                                    const FeatureMatrix& features, const std::vector<int>& labels,
                                    double l2) {
  const std::size_t n = features.size();
  const std::size_t dim = features.front().size();
  const std::size_t classes = weights.size();
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> z(classes, 0.0);
    for (std::size_t c = 0; c < classes; ++c) {
      double dot = weights[c][dim];  // bias
      for (std::size_t j = 0; j < dim; ++j) dot += weights[c][j] * features[i][j];
      z[c] = dot;
    }
    const std::vector<double> p = softmax(std::move(z));
    loss -= std::log(std::max(p[static_cast<std::size_t>(labels[i])], 1e-300));
  }
  loss /= static_cast<double>(n);
  double penalty = 0.0;
  for (const auto& row : weights) {
    for (std::size_t j = 0; j + 1 < row.size(); ++j) penalty += row[j] * row[j];
  }
  return loss + 0.5 * l2 * penalty;
}

std::vector<std::vector<double>> LogisticRegression::nll_gradient(
    const std::vector<std::vector<double>>& weights, const FeatureMatrix& features,
    const std::vector<int>& labels, double l2) {
  const std::size_t n = features.size();
  const std::size_t dim = features.front().size();
  const std::size_t classes = weights.size();
  std::vector<std::vector<double>> grad(classes, std::vector<double>(dim + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> z(classes, 0.0);
    for (std::size_t c = 0; c < classes; ++c) {
      double dot = weights[c][dim];
      for (std::size_t j = 0; j < dim; ++j) dot += weights[c][j] * features[i][j];
      z[c] = dot;
    }
    const std::vector<double> p = softmax(std::move(z));
    for (std::size_t c = 0; c < classes; ++c) {
      const double delta = p[c] - (labels[i] == static_cast<int>(c) ? 1.0 : 0.0);
      for (std::size_t j = 0; j < dim; ++j) grad[c][j] += delta * features[i][j];
      grad[c][dim] += delta;
    }
  }
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t c = 0; c < classes; ++c) {
    for (std::size_t j = 0; j <= dim; ++j) grad[c][j] *= scale;
    for (std::size_t j = 0; j < dim; ++j) grad[c][j] += l2 * weights[c][j];
  }
  return grad;
}

void LogisticRegression::fit(const FeatureMatrix& features, const std::vector<int>& labels,
                             int class_count) {
  validate_training(features, labels, class_count);
  classes_ = class_count;
  dim_ = features.front().size();
  weights_.assign(static_cast<std::size_t>(classes_), std::vector<double>(dim_ + 1, 0.0));
  for (std::size_t epoch = 0; epoch < cfg_.max_epochs; ++epoch) {
    const auto grad = nll_gradient(weights_, features, labels, cfg_.l2);
    double grad_max = 0.0;
    for (const auto& row : grad) {
      for (double v : row) grad_max = std::max(grad_max, std::abs(v));
    }
    if (grad_max < cfg_.tolerance) break;
    for (std::size_t c = 0; c < weights_.size(); ++c) {
      for (std::size_t j = 0; j <= dim_; ++j) weights_[c][j] -= cfg_.learning_rate * grad[c][j];
    }
  }
}

std::vector<double> LogisticRegression::predict_proba(const std::vector<double>& feature) const {
  if (weights_.empty()) throw std::logic_error("logistic: predict before fit");
  if (feature.size() != dim_) throw std::invalid_argument("logistic: feature dimension mismatch");
  std::vector<double> z(weights_.size(), 0.0);
  for (std::size_t c = 0; c < weights_.size(); ++c) {
    double dot = weights_[c][dim_];
    for (std::size_t j = 0; j < dim_; ++j) dot += weights_[c][j] * feature[j];
    z[c] = dot;
  }
  return softmax(std::move(z));
}

void LogisticRegression::set_weights(std::vector<std::vector<double>> w, int class_count,
                                     std::size_t dim) {
  if (w.size() != static_cast<std::size_t>(class_count)) {
    throw std::invalid_argument("logistic: weight row count must equal class_count");
  }
  for (const auto& row : w) {
    if (row.size() != dim + 1) throw std::invalid_argument("logistic: weight row size mismatch");
  }
  weights_ = std::move(w);
  classes_ = class_count;
  dim_ = dim;
}

namespace {

constexpr const char* kModelMagic = "mevolve-model 1";

void write_hex(std::ostream& out, double v) {
  std::ostringstream ss;
  ss << std::hexfloat << v;
  out << ss.str();
}

double parse_double_token(std::istream& in, const char* context) {
  std::string token;
  if (!(in >> token)) throw std::runtime_error(std::string("model: missing value in ") + context);
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0') {
    throw std::runtime_error(std::string("model: bad numeric token '") + token + "' in " + context);
  }
  return v;
}

}  // namespace

void KnnClassifier::save(std::ostream& out) const {
  if (classes_ == 0) throw std::logic_error("knn: save before fit");
  out << kModelMagic << "\n";
  out << "knn k " << k_ << " classes " << classes_ << " dim " << train_x_.front().size()
      << " count " << train_x_.size() << "\n";
  for (std::size_t i = 0; i < train_x_.size(); ++i) {
    out << "row " << train_y_[i];
    for (double v : train_x_[i]) {
      out << ' ';
      write_hex(out, v);
    }
    out << "\n";
  }
}

void LogisticRegression::save(std::ostream& out) const {
  if (weights_.empty()) throw std::logic_error("logistic: save before fit");
  out << kModelMagic << "\n";
  out << "logistic classes " << classes_ << " dim " << dim_ << "\n";
  for (const auto& row : weights_) {
    out << "w";
    for (double v : row) {
      out << ' ';
      write_hex(out, v);
    }
    out << "\n";
  }
}

const char* classifier_kind_name(ClassifierKind k) {
  return k == ClassifierKind::Knn ? "knn" : "logistic";
}

ClassifierKind classifier_kind_from_name(const std::string& name) {
  if (name == "knn") return ClassifierKind::Knn;
  if (name == "logistic" || name == "log") return ClassifierKind::Logistic;
  throw std::invalid_argument("unknown classifier: " + name);
}

std::unique_ptr<Classifier> make_classifier(const ModelConfig& cfg) {
  if (cfg.classifier == ClassifierKind::Knn) return std::make_unique<KnnClassifier>(cfg.knn_k);
  return std::make_unique<LogisticRegression>(cfg.logistic);
}

std::unique_ptr<Classifier> load_classifier(std::istream& in) {
  std::string magic;
  if (!std::getline(in, magic) || magic != kModelMagic) {
    throw std::runtime_error("model: bad or missing header (expected '" +
                             std::string(kModelMagic) + "')");
  }
  std::string kind;
  if (!(in >> kind)) throw std::runtime_error("model: missing classifier kind");
  if (kind == "knn") {
    std::string tag;
    std::size_t k = 0, dim = 0, count = 0;
    int classes = 0;
    in >> tag >> k >> tag >> classes >> tag >> dim >> tag >> count;
    if (!in) throw std::runtime_error("model: malformed knn header");
    FeatureMatrix features(count, std::vector<double>(dim, 0.0));
    std::vector<int> labels(count, 0);
    for (std::size_t i = 0; i < count; ++i) {
      in >> tag;
      if (tag != "row") throw std::runtime_error("model: expected 'row' record");
      in >> labels[i];
      for (std::size_t j = 0; j < dim; ++j) features[i][j] = parse_double_token(in, "knn row");
    }
    if (!in) throw std::runtime_error("model: truncated knn rows");
    auto model = std::make_unique<KnnClassifier>(k);
    model->fit(features, labels, classes);
    return model;
  }
  if (kind == "logistic") {
    std::string tag;
    int classes = 0;
    std::size_t dim = 0;
    in >> tag >> classes >> tag >> dim;
    if (!in) throw std::runtime_error("model: malformed logistic header");
    std::vector<std::vector<double>> weights(static_cast<std::size_t>(classes),
                                             std::vector<double>(dim + 1, 0.0));
    for (auto& row : weights) {
      in >> tag;
      if (tag != "w") throw std::runtime_error("model: expected 'w' record");
      for (std::size_t j = 0; j <= dim; ++j) row[j] = parse_double_token(in, "logistic weights");
    }
    auto model = std::make_unique<LogisticRegression>();
    model->set_weights(std::move(weights), classes, dim);
    return model;
  }
  throw std::runtime_error("model: unknown classifier kind '" + kind + "'");
}

}  // namespace mevolve
