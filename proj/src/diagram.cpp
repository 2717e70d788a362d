#include "bratteli/diagram.hpp"

#include "bratteli/error.hpp"

#include <sstream>

namespace bratteli {

DimensionVector::DimensionVector(std::initializer_list<long> entries) {
  entries_.reserve(entries.size());
  for (long e : entries) entries_.emplace_back(e);
}

MultiplicityMatrix::MultiplicityMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

MultiplicityMatrix::MultiplicityMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw Error(ErrorCode::ShapeMismatch, "ragged matrix literal");
    }
    for (long e : r) data_.emplace_back(e);
  }
}

MultiplicityMatrix MultiplicityMatrix::from_rows(const std::vector<std::vector<Integer>>& rows,
                                                 std::size_t cols_if_empty) {
  const std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
  MultiplicityMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw Error(ErrorCode::ShapeMismatch, "ragged matrix: row " + std::to_string(i) +
                                                " has " + std::to_string(rows[i].size()) +
                                                " entries, expected " + std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

MultiplicityMatrix MultiplicityMatrix::identity(std::size_t n) {
  MultiplicityMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<Integer> MultiplicityMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

std::vector<Integer> MultiplicityMatrix::apply(std::span<const Integer> v) const {
  if (v.size() != cols_) {
    throw Error(ErrorCode::ShapeMismatch, "matrix has " + std::to_string(cols_) +
                                              " columns, vector has " + std::to_string(v.size()));
  }
  std::vector<Integer> out(rows_, Integer(0));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  }
  return out;
}

bool MultiplicityMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    }
  }
  return true;
}

BratteliPrefix BratteliPrefix::truncated(std::size_t d) const {
  if (d == 0 || d > levels.size()) {
    throw Error(ErrorCode::InsufficientPrefix, "cannot truncate a prefix of depth " +
                                                   std::to_string(levels.size()) + " to depth " +
                                                   std::to_string(d));
  }
  BratteliPrefix out;
  out.unital = unital;
  out.levels.assign(levels.begin(), levels.begin() + static_cast<std::ptrdiff_t>(d));
  out.matrices.assign(matrices.begin(), matrices.begin() + static_cast<std::ptrdiff_t>(d - 1));
  return out;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i].kind << " at level " << violations[i].level;
    if (!violations[i].detail.empty()) os << " (" << violations[i].detail << ")";
  }
  return os.str();
}

ValidationReport validate(const BratteliPrefix& prefix) {
  ValidationReport report;
  auto add = [&](std::string kind, std::size_t level, std::string detail = {}) {
    report.violations.push_back({std::move(kind), level, std::move(detail)});
  };

  if (prefix.levels.empty()) {
    add("empty prefix", 0);
    return report;
  }
  if (prefix.matrices.size() + 1 != prefix.levels.size()) {
    add("shape", 0,
        std::to_string(prefix.levels.size()) + " levels but " +
            std::to_string(prefix.matrices.size()) + " matrices");
    return report;
  }
  for (std::size_t n = 0; n < prefix.levels.size(); ++n) {
    const auto& u = prefix.levels[n];
    if (u.size() == 0) add("empty level", n);
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] < 1) add("nonpositive dimension", n, "vertex " + std::to_string(i));
    }
  }
  for (std::size_t n = 0; n < prefix.matrices.size(); ++n) {
    const auto& a = prefix.matrices[n];
    const auto& lo = prefix.levels[n];
    const auto& hi = prefix.levels[n + 1];
    if (a.cols() != lo.size() || a.rows() != hi.size()) {
      add("shape", n,
          "matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
              ", levels have " + std::to_string(lo.size()) + " and " +
              std::to_string(hi.size()) + " vertices");
      continue;
    }
    bool negative = false;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) negative |= a(i, j) < 0;
    }
    if (negative) add("negative multiplicity", n);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      bool nonzero = false;
      for (std::size_t j = 0; j < a.cols(); ++j) nonzero |= a(i, j) != 0;
      if (!nonzero) add("degenerate matrix", n, "zero row " + std::to_string(i));
    }
    for (std::size_t j = 0; j < a.cols(); ++j) {
      bool nonzero = false;
      for (std::size_t i = 0; i < a.rows(); ++i) nonzero |= a(i, j) != 0;
      if (!nonzero) add("degenerate matrix", n, "zero column " + std::to_string(j));
    }
    const auto image = a.apply(lo.entries());
    for (std::size_t i = 0; i < image.size(); ++i) {
      if (prefix.unital && image[i] != hi[i]) {
        add("unitality", n,
            "row " + std::to_string(i) + ": A u = " + image[i].get_str() + ", u' = " +
                hi[i].get_str());
      } else if (!prefix.unital && image[i] > hi[i]) {
        add("dimension bound", n,
            "row " + std::to_string(i) + ": A u = " + image[i].get_str() + " > " +
                hi[i].get_str());
      }
    }
  }
  return report;
}

void require_valid(const BratteliPrefix& prefix) {
  auto report = validate(prefix);
  if (!report.ok()) throw Error(ErrorCode::InvalidInput, "invalid diagram: " + report.summary());
}

ValidationReport validate(const TriangularSpec& spec) {
  ValidationReport report;
  if (spec.k0 < 1) report.violations.push_back({"nonpositive k0", 0, spec.k0.get_str()});
  for (std::size_t n = 0; n < spec.mvectors.size(); ++n) {
    const auto& m = spec.mvectors[n];
    if (m.size() != n + 1) {
      report.violations.push_back({"shape", n,
                                   "m^(" + std::to_string(n) + ") has " +
                                       std::to_string(m.size()) + " entries, expected " +
                                       std::to_string(n + 1)});
      continue;
    }
    bool nonzero = false;
    for (const auto& e : m) {
      if (e < 0) report.violations.push_back({"negative multiplicity", n, e.get_str()});
      nonzero |= e > 0;
    }
    if (!nonzero) report.violations.push_back({"zero multiplicity vector", n, {}});
  }
  return report;
}

void require_valid(const TriangularSpec& spec) {
  auto report = validate(spec);
  if (!report.ok()) {
    throw Error(ErrorCode::InvalidInput, "invalid triangular spec: " + report.summary());
  }
}

std::vector<Integer> characteristic_sequence(const TriangularSpec& spec, std::size_t n) {
  if (spec.mvectors.size() < n) {
    throw Error(ErrorCode::InsufficientPrefix,
                "insufficient prefix: need " + std::to_string(n) + " multiplicity vectors, have " +
                    std::to_string(spec.mvectors.size()));
  }
  require_valid(spec);
  std::vector<Integer> k;
  k.reserve(n + 1);
  k.push_back(spec.k0);
  for (std::size_t step = 0; step < n; ++step) {
    Integer next = 0;
    for (std::size_t j = 0; j <= step; ++j) next += spec.mvectors[step][j] * k[j];
    k.push_back(std::move(next));
  }
  return k;
}

BratteliPrefix embed_triangular(const TriangularSpec& spec, std::size_t n) {
  const auto k = characteristic_sequence(spec, n);
  BratteliPrefix prefix;
  prefix.unital = true;
  for (std::size_t level = 0; level <= n; ++level) {
    prefix.levels.emplace_back(std::vector<Integer>(k.begin(), k.begin() + level + 1));
  }
  for (std::size_t step = 0; step < n; ++step) {
    MultiplicityMatrix a(step + 2, step + 1);
    for (std::size_t j = 0; j <= step; ++j) {
      a(j, j) = 1;
      a(step + 1, j) = spec.mvectors[step][j];
    }
    prefix.matrices.push_back(std::move(a));
  }
  return prefix;
}

DiagramGenerator DiagramGenerator::constant_ones(Integer k0) {
  return DiagramGenerator(Kind::ConstantOnes, [k0](std::size_t steps) {
    TriangularSpec spec;
    spec.k0 = k0;
    for (std::size_t n = 0; n < steps; ++n) spec.mvectors.emplace_back(n + 1, Integer(1));
    return spec;
  });
}

DiagramGenerator DiagramGenerator::explicit_spec(TriangularSpec spec) {
  require_valid(spec);
  return DiagramGenerator(Kind::Explicit, [spec = std::move(spec)](std::size_t steps) {
    if (steps > spec.mvectors.size()) {
      throw Error(ErrorCode::InsufficientPrefix,
                  "explicit diagram has only " + std::to_string(spec.mvectors.size()) + " steps");
    }
    TriangularSpec out;
    out.k0 = spec.k0;
    out.mvectors.assign(spec.mvectors.begin(),
                        spec.mvectors.begin() + static_cast<std::ptrdiff_t>(steps));
    return out;
  });
}

}  // namespace bratteli
