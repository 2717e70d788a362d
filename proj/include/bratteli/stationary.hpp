#pragma once

#include "bratteli/rational.hpp"
#include "bratteli/simplex.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bratteli {

/// A non-negative, non-zero sequence t_0, t_1, ... given by a finite head and a
/// tail rule for indices beyond it.
class StationarySpec {
 public:
  enum class Tail { Zero, Geometric, EqualToK, Custom };
  using Generator = std::function<Rational(std::size_t)>;

  static StationarySpec atoms(std::vector<Rational> head);
  /// t_{M+k} = t_M q^k where M is the last head index.
  static StationarySpec geometric(std::vector<Rational> head, Rational ratio);
  /// t_j = t_0 + ... + t_{j-1} beyond the head: reproduces k_j of the all-ones diagram.
  static StationarySpec equal_to_k(std::vector<Rational> head);
  /// Arbitrary rule; summability is not decidable.
  static StationarySpec custom(std::string name, Generator rule);

  /// "geometric:r" (t_j = r^{j+1}), "equal-to-k" or "k", "atoms:a,b,..",
  /// "inverse-square" (t_j = 1/(j+1)^2).
  static StationarySpec parse(std::string_view text);

  Tail tail() const { return tail_; }
  const std::vector<Rational>& head() const { return head_; }
  const Rational& ratio() const { return ratio_; }
  const std::string& name() const { return name_; }

  Rational t(std::size_t j) const;
  /// First index with t_j != 0. Custom rules are scanned up to `scan_limit`.
  std::size_t n0(std::size_t scan_limit = 4096) const;

 private:
  StationarySpec() = default;
  void check() const;

  Tail tail_ = Tail::Zero;
  std::vector<Rational> head_;
  Rational ratio_ = 0;
  Generator rule_;
  std::string name_;
};

/// ξ^(n) = (t_0..t_n) / Σ_{j<=n} t_j for n >= n0, the barycenter of Δ_n below n0.
SimplexPoint stationary_targets(const StationarySpec& t, std::size_t n);

enum class SimplexClass { Bauer, NonBauer, Degenerate, Inconclusive };

struct StationaryClassification {
  SimplexClass kind = SimplexClass::Inconclusive;
  /// NonBauer: normalized coefficients of e_∞ over e_0..e_{depth-1}.
  /// Degenerate: the unit vector at the atom.
  std::vector<Rational> coefficients;
  /// NonBauer with a geometric tail: coefficients continue with this ratio.
  std::optional<Rational> tail_ratio;
  /// Degenerate: index of the single atom.
  std::optional<std::size_t> atom;
  /// Inconclusive: Σ_{j<=n} t_j for n < depth.
  std::vector<Rational> partial_sums;
};

std::string to_string(SimplexClass kind);

/// Bauer iff Σ t diverges; NonBauer iff the sum is finite with >= 2 atoms;
/// Degenerate for exactly one atom; Inconclusive for custom tails.
StationaryClassification classify_stationary(const StationarySpec& t, std::size_t depth);

}  // namespace bratteli
