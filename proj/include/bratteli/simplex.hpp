#pragma once

#include "bratteli/diagram.hpp"
#include "bratteli/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace bratteli {

/// Barycentric point of a standard simplex: non-negative, summing to 1.
class SimplexPoint {
 public:
  SimplexPoint() = default;
  /// Throws InvalidInput unless the coordinates form a probability vector.
  explicit SimplexPoint(std::vector<Rational> coords);

  static SimplexPoint vertex(std::size_t dim, std::size_t j);
  static SimplexPoint barycenter(std::size_t dim);
  /// Normalizes a non-negative, non-zero weight vector.
  static SimplexPoint normalized(const std::vector<Rational>& weights);

  std::size_t size() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }
  /// Index j when the point is e_j.
  std::optional<std::size_t> as_vertex() const;

  friend bool operator==(const SimplexPoint&, const SimplexPoint&) = default;

 private:
  std::vector<Rational> coords_;
};

enum class Metric { L1, L2 };

/// ||x - y||_1, or ||x - y||_2^2 for L2.
Rational point_distance(const std::vector<Rational>& x, const std::vector<Rational>& y,
                        Metric metric);

/// Column-stochastic matrix acting on barycentric coordinates; column i is the
/// image of vertex e_i.
class StochasticAffineMap {
 public:
  StochasticAffineMap() = default;
  /// rows x cols entries, row-major. Throws InvalidInput if not column-stochastic.
  StochasticAffineMap(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  static StochasticAffineMap identity(std::size_t n);
  /// Map whose columns are the given points.
  static StochasticAffineMap from_columns(const std::vector<SimplexPoint>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  SimplexPoint column(std::size_t j) const;
  SimplexPoint apply(const SimplexPoint& x) const;
  /// this ∘ other (apply other first).
  StochasticAffineMap compose(const StochasticAffineMap& other) const;

  friend bool operator==(const StochasticAffineMap&, const StochasticAffineMap&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Map T(A) from traces on the upper level to traces on the lower level:
/// entry (j, i) = A(i, j) k_j / l_i with k = u_src, l = u_dst. Requires A u_src = u_dst.
StochasticAffineMap induced_trace_map(const MultiplicityMatrix& a, const DimensionVector& u_src,
                                      const DimensionVector& u_dst);

/// The map Δ_{n+1} → Δ_n fixing e_0..e_n and sending e_{n+1} to xi (xi ∈ Δ_n).
StochasticAffineMap target_map(const SimplexPoint& xi);

}  // namespace bratteli
