#include "bratteli/simplex.hpp"

#include "bratteli/error.hpp"

namespace bratteli {

SimplexPoint::SimplexPoint(std::vector<Rational> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw Error(ErrorCode::InvalidInput, "empty simplex point");
  Rational sum = 0;
  for (const auto& c : coords_) {
    if (c < 0) throw Error(ErrorCode::InvalidInput, "negative barycentric coordinate");
    sum += c;
  }
  if (sum != 1) {
    throw Error(ErrorCode::InvalidInput,
                "barycentric coordinates sum to " + to_fraction_string(sum) + ", not 1");
  }
}

SimplexPoint SimplexPoint::vertex(std::size_t dim, std::size_t j) {
  if (j >= dim) throw Error(ErrorCode::OutOfRange, "vertex index out of range");
  std::vector<Rational> c(dim, Rational(0));
  c[j] = 1;
  return SimplexPoint(std::move(c));
}

SimplexPoint SimplexPoint::barycenter(std::size_t dim) {
  return SimplexPoint(std::vector<Rational>(dim, Rational(1, dim)));
}

SimplexPoint SimplexPoint::normalized(const std::vector<Rational>& weights) {
  Rational sum = 0;
  for (const auto& w : weights) {
    if (w < 0) throw Error(ErrorCode::InvalidInput, "negative weight");
    sum += w;
  }
  if (sum == 0) throw Error(ErrorCode::InvalidInput, "weights are all zero");
  std::vector<Rational> c;
  c.reserve(weights.size());
  for (const auto& w : weights) c.push_back(w / sum);
  return SimplexPoint(std::move(c));
}

std::optional<std::size_t> SimplexPoint::as_vertex() const {
  for (std::size_t j = 0; j < coords_.size(); ++j) {
    if (coords_[j] == 1) return j;
  }
  return std::nullopt;
}

Rational point_distance(const std::vector<Rational>& x, const std::vector<Rational>& y,
                        Metric metric) {
  if (x.size() != y.size()) throw Error(ErrorCode::ShapeMismatch, "points of different dimension");
  Rational d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Rational diff = x[i] - y[i];
    d += metric == Metric::L1 ? abs(diff) : Rational(diff * diff);
  }
  return d;
}

StochasticAffineMap::StochasticAffineMap(std::size_t rows, std::size_t cols,
                                         std::vector<Rational> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw Error(ErrorCode::ShapeMismatch, "wrong entry count");
  for (std::size_t j = 0; j < cols; ++j) {
    Rational sum = 0;
    for (std::size_t i = 0; i < rows; ++i) {
      if ((*this)(i, j) < 0) throw Error(ErrorCode::InvalidInput, "negative map entry");
      sum += (*this)(i, j);
    }
    if (sum != 1) {
      throw Error(ErrorCode::InvalidInput,
                  "column " + std::to_string(j) + " sums to " + to_fraction_string(sum));
    }
  }
}

StochasticAffineMap StochasticAffineMap::identity(std::size_t n) {
  std::vector<Rational> e(n * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
  return StochasticAffineMap(n, n, std::move(e));
}

StochasticAffineMap StochasticAffineMap::from_columns(const std::vector<SimplexPoint>& columns) {
  if (columns.empty()) throw Error(ErrorCode::InvalidInput, "no columns");
  const std::size_t rows = columns.front().size();
  std::vector<Rational> e(rows * columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw Error(ErrorCode::ShapeMismatch, "ragged columns");
    for (std::size_t i = 0; i < rows; ++i) e[i * columns.size() + j] = columns[j][i];
  }
  return StochasticAffineMap(rows, columns.size(), std::move(e));
}

SimplexPoint StochasticAffineMap::column(std::size_t j) const {
  std::vector<Rational> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return SimplexPoint(std::move(c));
}

SimplexPoint StochasticAffineMap::apply(const SimplexPoint& x) const {
  if (x.size() != cols_) {
    throw Error(ErrorCode::ShapeMismatch, "point has dimension " + std::to_string(x.size()) +
                                              ", map expects " + std::to_string(cols_));
  }
  std::vector<Rational> y(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (x[j] != 0) y[i] += (*this)(i, j) * x[j];
    }
  }
  return SimplexPoint(std::move(y));
}

StochasticAffineMap StochasticAffineMap::compose(const StochasticAffineMap& other) const {
  if (cols_ != other.rows_) throw Error(ErrorCode::ShapeMismatch, "maps do not chain");
  std::vector<Rational> e(rows_ * other.cols_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) e[i * other.cols_ + j] += a * other(k, j);
    }
  }
  return StochasticAffineMap(rows_, other.cols_, std::move(e));
}

StochasticAffineMap induced_trace_map(const MultiplicityMatrix& a, const DimensionVector& u_src,
                                      const DimensionVector& u_dst) {
  if (a.cols() != u_src.size() || a.rows() != u_dst.size()) {
    throw Error(ErrorCode::ShapeMismatch, "matrix shape does not match dimension vectors");
  }
  if (a.apply(u_src.entries()) != u_dst.entries()) {
    throw Error(ErrorCode::NotUnital, "step is not unital: A u != u'");
  }
  const std::size_t rows = a.cols(), cols = a.rows();
  std::vector<Rational> e(rows * cols);
  for (std::size_t j = 0; j < rows; ++j) {
    for (std::size_t i = 0; i < cols; ++i) {
      Rational v(a(i, j) * u_src[j], u_dst[i]);
      v.canonicalize();
      e[j * cols + i] = v;
    }
  }
  return StochasticAffineMap(rows, cols, std::move(e));
}

StochasticAffineMap target_map(const SimplexPoint& xi) {
  std::vector<SimplexPoint> cols;
  for (std::size_t j = 0; j < xi.size(); ++j) cols.push_back(SimplexPoint::vertex(xi.size(), j));
  cols.push_back(xi);
  return StochasticAffineMap::from_columns(cols);
}

}  // namespace bratteli
