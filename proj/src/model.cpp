#include "romp/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "romp/errors.hpp"

namespace romp {

SupportSet::SupportSet(std::vector<Index> indices, Index dimension)
    : indices_(std::move(indices)), dimension_(dimension) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw InvalidArgument("support set contains duplicate indices");
  }
  if (!indices_.empty() && indices_.back() >= dimension_) {
    throw InvalidArgument("support index " + std::to_string(indices_.back()) +
                          " out of range for dimension " + std::to_string(dimension_));
  }
}

SupportSet SupportSet::prefix(Index k, Index dimension) {
  std::vector<Index> idx(k);
  for (Index i = 0; i < k; ++i) idx[i] = i;
  return SupportSet(std::move(idx), dimension);
}

bool SupportSet::contains(Index j) const {
  return std::binary_search(indices_.begin(), indices_.end(), j);
}

SupportSet SupportSet::complement() const {
  std::vector<Index> out;
  out.reserve(dimension_ - indices_.size());
  auto it = indices_.begin();
  for (Index j = 0; j < dimension_; ++j) {
    if (it != indices_.end() && *it == j) {
      ++it;
    } else {
      out.push_back(j);
    }
  }
  return SupportSet(std::move(out), dimension_);
}

Index SupportSet::intersection_size(const SupportSet& other) const {
  Index count = 0;
  auto a = indices_.begin();
  auto b = other.indices_.begin();
  while (a != indices_.end() && b != other.indices_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++count;
      ++a;
      ++b;
    }
  }
  return count;
}

SparseSignal::SparseSignal(SupportSet support, Vector values)
    : support_(std::move(support)), values_(std::move(values)) {
  if (static_cast<Index>(values_.size()) != support_.size()) {
    throw InvalidArgument("sparse signal: value count does not match support size");
  }
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (values_[i] == 0.0) throw InvalidArgument("sparse signal: zero value on support");
    if (!std::isfinite(values_[i])) throw InvalidArgument("sparse signal: non-finite value");
  }
}

Vector SparseSignal::dense() const {
  Vector out = Vector::Zero(static_cast<Eigen::Index>(dimension()));
  for (Index i = 0; i < support_.size(); ++i) {
    out[static_cast<Eigen::Index>(support_[i])] = values_[static_cast<Eigen::Index>(i)];
  }
  return out;
}

SparseSignal SparseSignal::sparsify(const Vector& v) {
  std::vector<Index> idx;
  std::vector<double> vals;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) {
      idx.push_back(static_cast<Index>(i));
      vals.push_back(v[i]);
    }
  }
  Vector values = Eigen::Map<Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
  return SparseSignal(SupportSet(std::move(idx), static_cast<Index>(v.size())), values);
}

std::string to_string(CorruptionModel model) {
  switch (model) {
    case CorruptionModel::none: return "none";
    case CorruptionModel::row: return "row";
    case CorruptionModel::distributed: return "distributed";
  }
  return "none";
}

CorruptionModel corruption_model_from_string(const std::string& name) {
  if (name == "none") return CorruptionModel::none;
  if (name == "row") return CorruptionModel::row;
  if (name == "distributed") return CorruptionModel::distributed;
  throw InvalidArgument("unknown corruption model: " + name);
}

bool CorruptionLedger::covers(Index row, std::int64_t column) const {
  if (std::binary_search(rows.begin(), rows.end(), row)) return true;
  return std::binary_search(cells.begin(), cells.end(), Cell{row, column});
}

void CorruptionLedger::validate(Index num_rows, Index num_cols) const {
  if (!std::is_sorted(rows.begin(), rows.end()) ||
      std::adjacent_find(rows.begin(), rows.end()) != rows.end()) {
    throw InvalidArgument("ledger rows must be strictly increasing");
  }
  if (!std::is_sorted(cells.begin(), cells.end()) ||
      std::adjacent_find(cells.begin(), cells.end()) != cells.end()) {
    throw InvalidArgument("ledger cells must be strictly increasing");
  }
  for (Index r : rows) {
    if (r >= num_rows) throw InvalidArgument("ledger row out of range");
  }
  for (const Cell& c : cells) {
    if (c.row >= num_rows || c.column < Cell::kResponse ||
        c.column >= static_cast<std::int64_t>(num_cols)) {
      throw InvalidArgument("ledger cell out of range");
    }
  }
  switch (model) {
    case CorruptionModel::none:
      if (!rows.empty() || !cells.empty()) {
        throw InvalidArgument("ledger with model 'none' must be empty");
      }
      break;
    case CorruptionModel::row: {
      std::set<Index> touched(rows.begin(), rows.end());
      for (const Cell& c : cells) touched.insert(c.row);
      if (touched.size() > budget) {
        throw InvalidArgument("row-model ledger touches more than n1 rows");
      }
      break;
    }
    case CorruptionModel::distributed: {
      if (!rows.empty()) throw InvalidArgument("distributed ledger cannot list whole rows");
      std::vector<Index> per_column(num_cols + 1, 0);
      for (const Cell& c : cells) {
        Index slot = c.column == Cell::kResponse ? num_cols : static_cast<Index>(c.column);
        if (++per_column[slot] > budget) {
          throw InvalidArgument("distributed ledger exceeds n1 cells in a column");
        }
      }
      break;
    }
  }
}

std::vector<Index> RegressionInstance::outlier_rows() const {
  std::vector<Index> out;
  auto it = authentic_rows.begin();
  for (Index i = 0; i < num_rows(); ++i) {
    if (it != authentic_rows.end() && *it == i) {
      ++it;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

void RegressionInstance::validate() const {
  if (X.rows() == 0 || X.cols() == 0) throw InvalidArgument("instance: empty design matrix");
  if (y.size() != X.rows()) throw InvalidArgument("instance: response length != rows");
  if (truth.dimension() != num_cols()) throw InvalidArgument("instance: signal dimension != cols");
  if (!all_finite(X) || !all_finite(y)) throw InvalidArgument("instance: non-finite entries");
  if (noise_sigma < 0.0) throw InvalidArgument("instance: negative noise sigma");
  if (!std::is_sorted(authentic_rows.begin(), authentic_rows.end()) ||
      std::adjacent_find(authentic_rows.begin(), authentic_rows.end()) != authentic_rows.end() ||
      (!authentic_rows.empty() && authentic_rows.back() >= num_rows())) {
    throw InvalidArgument("instance: authentic rows must be sorted, distinct and in range");
  }
  ledger.validate(num_rows(), num_cols());
}

Matrix submatrix(const Matrix& X, std::span<const Index> rows, const SupportSet& cols) {
  const auto nr = static_cast<Index>(X.rows());
  const auto nc = static_cast<Index>(X.cols());
  if (cols.dimension() != nc) {
    throw InvalidArgument("submatrix: column set dimension does not match matrix");
  }
  std::vector<Index> sorted(rows.begin(), rows.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("submatrix: duplicate row index");
  }
  Matrix out(static_cast<Eigen::Index>(sorted.size()), static_cast<Eigen::Index>(cols.size()));
  for (Index r = 0; r < sorted.size(); ++r) {
    if (sorted[r] >= nr) throw InvalidArgument("submatrix: row index out of range");
    for (Index c = 0; c < cols.size(); ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          X(static_cast<Eigen::Index>(sorted[r]), static_cast<Eigen::Index>(cols[c]));
    }
  }
  return out;
}

Vector subvector(const Vector& v, std::span<const Index> rows) {
  Vector out(static_cast<Eigen::Index>(rows.size()));
  for (Index r = 0; r < rows.size(); ++r) {
    if (rows[r] >= static_cast<Index>(v.size())) {
      throw InvalidArgument("subvector: index out of range");
    }
    out[static_cast<Eigen::Index>(r)] = v[static_cast<Eigen::Index>(rows[r])];
  }
  return out;
}

Vector least_squares(const Matrix& A, const Vector& b) {
  if (A.rows() != b.size()) throw InvalidArgument("least_squares: row count != rhs length");
  if (A.rows() < A.cols()) throw InvalidArgument("least_squares: system is underdetermined");
  if (A.cols() == 0) return Vector(0);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
  const Eigen::MatrixXd R =
      qr.matrixQR().topRows(A.cols()).triangularView<Eigen::Upper>();
  const Vector sv = Eigen::JacobiSVD<Eigen::MatrixXd>(R).singularValues();
  const double smax = sv[0];
  const double smin = sv[sv.size() - 1];
  if (!(smax > 0.0) || smin < 1e-10 * smax) {
    throw DegenerateSystemError("least_squares: matrix is numerically rank deficient");
  }
  return qr.solve(b);
}

bool all_finite(const Vector& v) { return v.allFinite(); }
bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace romp
