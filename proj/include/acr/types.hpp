#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace acr {

// The ACR scale: integer categories 1 (bad) .. 5 (excellent).
inline constexpr int kMinRating = 1;
inline constexpr int kMaxRating = 5;
inline constexpr int kNumLevels = 5;

inline bool is_valid_rating(int v) { return v >= kMinRating && v <= kMaxRating; }

// Bad user input: malformed files, out-of-range parameters, unknown names.
// The CLI maps this to exit code 2 and other failures to 3.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A single ACR score. Construction rejects anything outside {1,...,5}.
class Rating {
 public:
  explicit Rating(int value) : value_(value) {
    if (!is_valid_rating(value))
      throw std::invalid_argument("rating out of range: " + std::to_string(value));
  }
  int value() const { return value_; }
  explicit operator int() const { return value_; }

 private:
  int value_;
};

// Dense I x J matrix of ACR ratings, row-major, fully populated.
// Rows are observers, columns are stimuli.
class RatingMatrix {
 public:
  RatingMatrix(std::size_t rows, std::size_t cols, std::vector<int> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows_ == 0 || cols_ == 0)
      throw std::invalid_argument("rating matrix dimensions must be positive");
    if (data_.size() != rows_ * cols_)
      throw std::invalid_argument("rating matrix entry count does not match dimensions");
    for (int v : data_)
      if (!is_valid_rating(v))
        throw std::invalid_argument("rating out of range: " + std::to_string(v));
  }

  static RatingMatrix filled(std::size_t rows, std::size_t cols, int value) {
    return RatingMatrix(rows, cols, std::vector<int>(rows * cols, value));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  int at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, int v) {
    if (!is_valid_rating(v))
      throw std::invalid_argument("rating out of range: " + std::to_string(v));
    data_[i * cols_ + j] = v;
  }

  std::vector<int> column(std::size_t j) const {
    std::vector<int> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = at(i, j);
    return out;
  }

  const std::vector<int>& data() const { return data_; }

  bool operator==(const RatingMatrix& o) const = default;

 private:
  std::size_t rows_, cols_;
  std::vector<int> data_;
};

// Dense real-valued matrix used for z-scores, weights and real-valued fits.
struct RealMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<double> data;  // row-major

  RealMatrix() = default;
  RealMatrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

// Per-stimulus true quality on the ACR scale. Values outside [1,5] are legal
// but callers that produce reports flag them.
struct GroundTruth {
  std::vector<double> mu;

  explicit GroundTruth(std::vector<double> values) : mu(std::move(values)) {
    for (double m : mu)
      if (!std::isfinite(m)) throw std::invalid_argument("ground truth must be finite");
  }
  std::size_t size() const { return mu.size(); }

  bool in_recommended_range() const {
    for (double m : mu)
      if (m < 1.0 || m > 5.0) return false;
    return true;
  }
};

// Per-observer generative parameters: additive bias and rating noise sigma.
struct SubjectParams {
  std::vector<double> bias;
  std::vector<double> inconsistency;

  SubjectParams(std::vector<double> b, std::vector<double> v)
      : bias(std::move(b)), inconsistency(std::move(v)) {
    if (bias.size() != inconsistency.size())
      throw std::invalid_argument("bias and inconsistency must have equal length");
    for (double x : inconsistency)
      if (!(x >= 0.0)) throw std::invalid_argument("inconsistency must be >= 0");
  }
  std::size_t size() const { return bias.size(); }
};

// A sampled experiment: ratings plus the generative parameters behind them.
struct Dataset {
  RatingMatrix ratings;
  GroundTruth truth;
  SubjectParams subjects;
  std::uint64_t seed = 0;

  Dataset(RatingMatrix m, GroundTruth t, SubjectParams s, std::uint64_t sd)
      : ratings(std::move(m)), truth(std::move(t)), subjects(std::move(s)), seed(sd) {
    if (ratings.cols() != truth.size())
      throw std::invalid_argument("dataset: stimulus count mismatch");
    if (ratings.rows() != subjects.size())
      throw std::invalid_argument("dataset: observer count mismatch");
  }
};

// K x J block of adversarial ratings appended below a dataset.
struct AttackMatrix {
  RatingMatrix ratings;

  explicit AttackMatrix(RatingMatrix m) : ratings(std::move(m)) {}
  std::size_t attackers() const { return ratings.rows(); }
  std::size_t cols() const { return ratings.cols(); }

  bool operator==(const AttackMatrix& o) const = default;
};

// Dataset rows followed by attacker rows; flags mark the attacker block.
struct StackedMatrix {
  RatingMatrix ratings;
  std::vector<bool> attacker_flags;  // true for the trailing K rows
};

StackedMatrix stack(const Dataset& d, const AttackMatrix& a);

// Probability mass function over the five ACR levels.
struct Pmf {
  std::array<double, kNumLevels> p{};

  Pmf() = default;
  explicit Pmf(std::array<double, kNumLevels> probs) : p(probs) {
    double sum = 0.0;
    for (double x : p) {
      if (!(x >= 0.0)) throw std::invalid_argument("pmf entries must be >= 0");
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("pmf must sum to 1");
  }

  // Probability of an ACR level (1-based).
  double at_level(int level) const { return p[static_cast<std::size_t>(level - 1)]; }
};

// Output of a detector/reconstructor pairing on one rating matrix.
struct DetectionResult {
  enum class Kind { Hard, Soft };

  Kind kind = Kind::Hard;
  std::vector<bool> inlier_mask;             // hard only; true = kept
  std::vector<double> row_weights;           // soft only; normalized, sums to 1
  std::optional<RealMatrix> cell_weights;    // per-(row, stimulus) weights where the method has them
  std::vector<double> reconstructed;         // estimated per-stimulus quality
};

}  // namespace acr
