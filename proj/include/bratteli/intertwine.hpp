#pragma once

#include "bratteli/simplex.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace bratteli {

/// f_0, f_1, ... with f_j mapping level j+1 points to level j points.
struct MapSequence {
  std::vector<StochasticAffineMap> maps;

  std::size_t size() const { return maps.size(); }
  /// Number of vertices at `level` (level <= size()).
  std::size_t dim(std::size_t level) const;
  /// Throws ShapeMismatch when consecutive maps do not chain.
  void check() const;
};

/// gap_n <= scale * ratio^n for every n beyond the prefix.
struct TailBound {
  Rational ratio;
  Rational scale = 1;

  /// Σ_{n>=from} scale * ratio^n; requires 0 <= ratio < 1.
  Rational sum_from(std::size_t from) const;
  Rational at(std::size_t n) const;
};

/// Two inverse systems. Without cross maps the vertical maps are identities and the
/// defect is d(f_j, f'_j). With cross maps rho_j : K_{j+1} -> K'_j and
/// rho'_j : K'_j -> K_j the defects are d(rho'_j rho_j, f_j) and d(rho_j rho'_{j+1}, f'_j).
struct IntertwiningData {
  MapSequence top;
  MapSequence bottom;
  std::optional<std::vector<StochasticAffineMap>> rho;
  std::optional<std::vector<StochasticAffineMap>> rho_prime;
  std::optional<TailBound> tail;
  Metric metric = Metric::L1;

  void check() const;
  bool full_form() const { return rho.has_value(); }
};

/// max over domain vertices of the distance between images; squared for L2.
Rational map_distance(const StochasticAffineMap& f, const StochasticAffineMap& g, Metric metric);

struct GapSeries {
  /// d(f_j, f'_j), or d(rho'_j rho_j, f_j) in the full form.
  std::vector<Rational> gaps;
  /// Full form only: d(rho_j rho'_{j+1}, f'_j).
  std::vector<Rational> gaps_prime;
  std::vector<Rational> partial_sums;
  /// Every prefix gap respects the tail rule (checked on squared values for L2).
  bool bound_respected = true;
  /// Partial sum plus tail (L1); sum of the per-level bounds (L2). Empty without a tail.
  std::optional<Rational> certificate;
};

/// Gaps for the first n steps.
GapSeries gap_series(const IntertwiningData& data, std::size_t n);

/// f_{j,i} = f_i ∘ ... ∘ f_{j-1} from level j to level i < j.
StochasticAffineMap compose_range(const MapSequence& seq, std::size_t i, std::size_t j);

struct VertexEstimate {
  SimplexPoint point;
  /// Sum of the remaining defects from depth j on; empty without a tail bound.
  std::optional<Rational> error_bound;
};

/// σ-style estimate f'_{j,i}(rho_j(x_{j+1})) of the image of the limit vertex e_v of the
/// top system at bottom level i. Vertex v must be persistent in the top system
/// (f_m(e_v) = e_v wherever level m+1 has it). Without cross maps rho_j = f_j.
VertexEstimate limit_vertex_estimate(const IntertwiningData& data, std::size_t i, std::size_t v,
                                     std::size_t j);

}  // namespace bratteli
