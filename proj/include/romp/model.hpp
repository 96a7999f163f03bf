#pragma once

// Core data model: dense vectors and matrices, supports, sparse signals,
// regression instances and the corruption ledger.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace romp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Index = std::size_t;

/// Sorted set of distinct column indices in [0, dimension).
class SupportSet {
 public:
  SupportSet() = default;
  /// Sorts and validates; throws InvalidArgument on duplicates or range errors.
  SupportSet(std::vector<Index> indices, Index dimension);
  SupportSet(std::initializer_list<Index> indices, Index dimension)
      : SupportSet(std::vector<Index>(indices), dimension) {}

  /// The first k indices {0, ..., k-1}.
  static SupportSet prefix(Index k, Index dimension);

  std::span<const Index> indices() const noexcept { return indices_; }
  Index dimension() const noexcept { return dimension_; }
  Index size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  bool contains(Index j) const;
  Index operator[](Index pos) const { return indices_[pos]; }
  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

  /// Indices in [0, dimension) not in this set.
  SupportSet complement() const;
  Index intersection_size(const SupportSet& other) const;

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  std::vector<Index> indices_;
  Index dimension_ = 0;
};

/// k-sparse vector with an explicit support. Nonzero values are never 0.
class SparseSignal {
 public:
  SparseSignal() = default;
  SparseSignal(SupportSet support, Vector values);

  Index dimension() const noexcept { return support_.dimension(); }
  Index sparsity() const noexcept { return support_.size(); }
  const SupportSet& support() const noexcept { return support_; }
  const Vector& values() const noexcept { return values_; }

  Vector dense() const;
  /// Inverse of dense(): keeps the exact nonzeros of v.
  static SparseSignal sparsify(const Vector& v);

 private:
  SupportSet support_;
  Vector values_;
};

enum class CorruptionModel { none, row, distributed };

std::string to_string(CorruptionModel model);
CorruptionModel corruption_model_from_string(const std::string& name);

/// A single overwritten cell. column == kResponse denotes the response y_i.
struct Cell {
  static constexpr std::int64_t kResponse = -1;
  Index row = 0;
  std::int64_t column = kResponse;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Record of what an adversary touched.
///
/// Row-model attacks list whole rows in `rows` (every covariate of the row and
/// its response may have been overwritten). The distributed model lists
/// individual cells in `cells`.
struct CorruptionLedger {
  CorruptionModel model = CorruptionModel::none;
  Index budget = 0;
  std::string attack_name;
  std::vector<Index> rows;
  std::vector<Cell> cells;

  /// Whether the cell (row, column) may have been written by the adversary.
  bool covers(Index row, std::int64_t column) const;
  /// Throws InvalidArgument when the budget accounting is violated.
  void validate(Index num_rows, Index num_cols) const;
};

struct RegressionInstance {
  Matrix X;
  Vector y;
  SparseSignal truth;
  double noise_sigma = 0.0;
  /// Normalization n: design entries have variance 1/n.
  Index n = 0;
  std::vector<Index> authentic_rows;
  CorruptionLedger ledger;

  Index num_rows() const noexcept { return static_cast<Index>(X.rows()); }
  Index num_cols() const noexcept { return static_cast<Index>(X.cols()); }
  /// Complement of authentic_rows, ascending.
  std::vector<Index> outlier_rows() const;
  /// Checks shapes, finiteness and ledger accounting.
  void validate() const;
};

/// Rows S (ascending) and columns of the support, copied into a new matrix.
Matrix submatrix(const Matrix& X, std::span<const Index> rows, const SupportSet& cols);
Vector subvector(const Vector& v, std::span<const Index> rows);

/// argmin_theta ||b - A theta||_2 through a Householder QR factorization.
/// Throws DegenerateSystemError when sigma_min(A) < 1e-10 sigma_max(A).
Vector least_squares(const Matrix& A, const Vector& b);

bool all_finite(const Vector& v);
bool all_finite(const Matrix& m);

}  // namespace romp
