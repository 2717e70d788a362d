#pragma once

#include "bratteli/rational.hpp"

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace bratteli {

/// Matrix-algebra sizes u_n(i) at one level. Entries are expected to be >= 1;
/// validate() reports otherwise.
class DimensionVector {
 public:
  DimensionVector() = default;
  DimensionVector(std::vector<Integer> entries) : entries_(std::move(entries)) {}
  DimensionVector(std::initializer_list<long> entries);

  std::size_t size() const { return entries_.size(); }
  const Integer& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Integer>& entries() const { return entries_; }

  friend bool operator==(const DimensionVector&, const DimensionVector&) = default;

 private:
  std::vector<Integer> entries_;
};

/// Edge multiplicities A_n(i, j) from vertex j at level n to vertex i at level n+1.
/// Rows index the upper level, columns the lower one.
class MultiplicityMatrix {
 public:
  MultiplicityMatrix() = default;
  MultiplicityMatrix(std::size_t rows, std::size_t cols);
  MultiplicityMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static MultiplicityMatrix from_rows(const std::vector<std::vector<Integer>>& rows,
                                      std::size_t cols_if_empty = 0);
  static MultiplicityMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::vector<Integer> row(std::size_t i) const;
  std::vector<Integer> apply(std::span<const Integer> v) const;
  bool is_identity() const;

  friend bool operator==(const MultiplicityMatrix&, const MultiplicityMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Finite truncation of a Bratteli diagram: levels u_0..u_{N-1} and matrices
/// A_0..A_{N-2}, with matrices[n] mapping level n into level n+1. Levels are
/// 0-based throughout.
struct BratteliPrefix {
  std::vector<DimensionVector> levels;
  std::vector<MultiplicityMatrix> matrices;
  bool unital = true;

  std::size_t depth() const { return levels.size(); }
  std::size_t width(std::size_t level) const { return levels.at(level).size(); }

  /// First `depth` levels (and the matrices between them).
  BratteliPrefix truncated(std::size_t depth) const;

  friend bool operator==(const BratteliPrefix&, const BratteliPrefix&) = default;
};

struct Violation {
  std::string kind;
  std::size_t level = 0;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

ValidationReport validate(const BratteliPrefix& prefix);

/// Throws Error(InvalidInput) carrying the report summary.
void require_valid(const BratteliPrefix& prefix);

/// The triangular family: k0 plus multiplicity vectors m^(n) = (m_0..m_n).
/// mvectors[n] has n+1 entries and feeds the new vertex at level n+1.
struct TriangularSpec {
  Integer k0 = 1;
  std::vector<std::vector<Integer>> mvectors;

  std::size_t steps() const { return mvectors.size(); }

  friend bool operator==(const TriangularSpec&, const TriangularSpec&) = default;
};

ValidationReport validate(const TriangularSpec& spec);
void require_valid(const TriangularSpec& spec);

/// k_0..k_N with k_{n+1} = sum_j m_j^(n) k_j. Needs at least N multiplicity vectors.
std::vector<Integer> characteristic_sequence(const TriangularSpec& spec, std::size_t n);

/// Levels 0..N of the triangular diagram as a unital prefix.
BratteliPrefix embed_triangular(const TriangularSpec& spec, std::size_t n);

/// A pure rule producing triangular data on demand.
class DiagramGenerator {
 public:
  enum class Kind { ConstantOnes, Stationary, Explicit, Synthesized };

  using Rule = std::function<TriangularSpec(std::size_t steps)>;

  DiagramGenerator(Kind kind, Rule rule) : kind_(kind), rule_(std::move(rule)) {}

  static DiagramGenerator constant_ones(Integer k0 = 1);
  static DiagramGenerator explicit_spec(TriangularSpec spec);

  Kind kind() const { return kind_; }

  /// Spec carrying exactly `steps` multiplicity vectors.
  TriangularSpec prefix(std::size_t steps) const { return rule_(steps); }
  std::vector<Integer> mvector(std::size_t n) const { return prefix(n + 1).mvectors.at(n); }

 private:
  Kind kind_;
  Rule rule_;
};

}  // namespace bratteli
