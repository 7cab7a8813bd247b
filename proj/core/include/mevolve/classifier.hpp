#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace mevolve {

using FeatureMatrix = std::vector<std::vector<double>>;

/// Probability-emitting classifier over fixed-length feature vectors. Training
/// is single-writer; a fitted classifier is immutable and safe for concurrent
/// prediction. Implementations must be deterministic given config, data order
/// and seed.
class Classifier {
 public:
  virtual ~Classifier() = default;

  /// Requires equal non-empty lengths and every class in [0, class_count)
  /// present at least once; throws std::invalid_argument otherwise.
  virtual void fit(const FeatureMatrix& features, const std::vector<int>& labels,
                   int class_count) = 0;

  /// Length-class_count vector, entries >= 0, summing to 1 (within 1e-9).
  virtual std::vector<double> predict_proba(const std::vector<double>& feature) const = 0;

  virtual int class_count() const = 0;
  virtual std::string kind() const = 0;
  virtual std::unique_ptr<Classifier> clone_untrained() const = 0;
  virtual void save(std::ostream& out) const = 0;
};

/// argmax of predict_proba; ties resolve to the lowest class index.
int predict_class(const Classifier& c, const std::vector<double>& feature);

/// Fraction of correct argmax predictions. Throws on an empty evaluation set.
double accuracy(const Classifier& c, const FeatureMatrix& features,
                const std::vector<int>& labels);

/// k-nearest-neighbors with Euclidean distance; probabilities are vote
/// fractions among the k nearest training points. Distance ties break toward
/// the lower training index.
class KnnClassifier : public Classifier {
 public:
  explicit KnnClassifier(std::size_t k) : k_(k) {}

  void fit(const FeatureMatrix& features, const std::vector<int>& labels,
           int class_count) override;
  std::vector<double> predict_proba(const std::vector<double>& feature) const override;
  int class_count() const override { return classes_; }
  std::string kind() const override { return "knn"; }
  std::unique_ptr<Classifier> clone_untrained() const override {
    return std::make_unique<KnnClassifier>(k_);
  }
  void save(std::ostream& out) const override;

  std::size_t k() const { return k_; }

 private:
  std::size_t k_;
  FeatureMatrix train_x_;
  std::vector<int> train_y_;
  int classes_ = 0;
};

struct LogisticConfig {
  double learning_rate = 0.05;
  double l2 = 1e-4;
  std::size_t max_epochs = 2000;
  double tolerance = 1e-7;  // stop when the gradient's max-norm falls below this
};

/// Multinomial logistic regression trained by full-batch gradient descent on
/// the L2-regularized cross-entropy, weights initialized to zero (so training
/// is deterministic with no random state). The bias column is unregularized.
class LogisticRegression : public Classifier {
 public:
  explicit LogisticRegression(LogisticConfig cfg = {}) : cfg_(cfg) {}

  void fit(const FeatureMatrix& features, const std::vector<int>& labels,
           int class_count) override;
  std::vector<double> predict_proba(const std::vector<double>& feature) const override;
  int class_count() const override { return classes_; }
  std::string kind() const override { return "logistic"; }
  std::unique_ptr<Classifier> clone_untrained() const override {
    return std::make_unique<LogisticRegression>(cfg_);
  }
  void save(std::ostream& out) const override;

  /// Weights as class_count rows of dim+1 entries (bias last).
  const std::vector<std::vector<double>>& weights() const { return weights_; }
  void set_weights(std::vector<std::vector<double>> w, int class_count, std::size_t dim);

  /// Regularized mean cross-entropy at the given weights; exposed so tests can
  /// probe it independently of fit().
  static double nll_loss(const std::vector<std::vector<double>>& weights,
                         const FeatureMatrix& features, const std::vector<int>& labels,
                         double l2);
  static std::vector<std::vector<double>> nll_gradient(
      const std::vector<std::vector<double>>& weights, const FeatureMatrix& features,
      const std::vector<int>& labels, double l2);

 private:
  LogisticConfig cfg_;
  int classes_ = 0;
  std::size_t dim_ = 0;
  std::vector<std::vector<double>> weights_;
};

enum class ClassifierKind { Knn, Logistic };

const char* classifier_kind_name(ClassifierKind k);
ClassifierKind classifier_kind_from_name(const std::string& name);

struct ModelConfig {
  std::size_t embedding_dim = 128;
  ClassifierKind classifier = ClassifierKind::Knn;
  std::size_t knn_k = 5;
  LogisticConfig logistic;
};

std::unique_ptr<Classifier> make_classifier(const ModelConfig& cfg);

/// Reads a model written by Classifier::save. Versioned text format; see
/// docs/FORMATS.md. Round-trips are exact (values are stored as hexfloats).
std::unique_ptr<Classifier> load_classifier(std::istream& in);

}  // namespace mevolve
