#pragma once

#include "bratteli/diagram.hpp"
#include "bratteli/simplex.hpp"
#include "bratteli/stationary.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bratteli {

/// Producer of target points ξ^(n) ∈ Δ_n.
class TargetSequence {
 public:
  using Producer = std::function<SimplexPoint(std::size_t)>;

  TargetSequence(std::string name, Producer producer, std::optional<std::size_t> available = {})
      : name_(std::move(name)), producer_(std::move(producer)), available_(available) {}

  static TargetSequence stationary(StationarySpec t);
  /// points[n] must lie in Δ_n.
  static TargetSequence explicit_list(std::vector<SimplexPoint> points);

  SimplexPoint at(std::size_t n) const;
  /// Levels available (unbounded when empty).
  std::optional<std::size_t> available() const { return available_; }
  const std::string& name() const { return name_; }
  /// First level from which the family is stationary (0 for explicit lists).
  std::size_t first_stationary_level() const { return n0_; }

 private:
  std::string name_;
  Producer producer_;
  std::optional<std::size_t> available_;
  std::size_t n0_ = 0;
};

/// ε_n = 2^{-n} / (n+1): bounds the L1 gap by 2^{-n}.
Rational level_tolerance(std::size_t n);

enum class ApproxMode { Exact, Approximate };

struct Approximation {
  std::vector<Integer> ell;
  /// max_j |ℓ_j / Σℓ - ξ_j|.
  Rational error;
};

/// Integers ℓ_j >= 1 with |ℓ_j/Σℓ - ξ_j| < ε. Exact mode clears denominators and needs
/// every coordinate positive. Approximate mode scans Σℓ = n+1, n+2, ... up to `cap` and
/// throws CapExceeded ("not found within cap") rather than return a worse vector.
Approximation approximate_on_simplex(const SimplexPoint& xi, const Rational& eps, ApproxMode mode,
                                     std::size_t cap = std::size_t{1} << 22);

struct SynthesisOptions {
  ApproxMode mode = ApproxMode::Approximate;
  /// Multiplier c = lcm_j(k_j / gcd(k_j, ℓ_j)) instead of K = Π k_j.
  bool reduced = false;
  Integer k0 = 1;
  std::size_t cap = std::size_t{1} << 22;
};

struct LevelSynthesis {
  std::vector<Integer> ell;
  std::vector<Integer> m;
  Integer k_next;
  SimplexPoint zeta;
  /// Exact mode met a zero coordinate and used the approximate search.
  bool fallback = false;
};

LevelSynthesis synthesize_level(const std::vector<Integer>& kprefix, const SimplexPoint& xi,
                                const Rational& eps, const SynthesisOptions& options = {});

struct CertificateLevel {
  std::size_t n = 0;
  SimplexPoint xi;
  std::vector<Integer> ell;
  std::vector<Integer> m;
  Integer k_next;
  SimplexPoint zeta;
  Rational gap_l1;
  Rational gap_l2_squared;
  Rational eps;
  bool fallback = false;
};

struct SynthesisCertificate {
  std::vector<CertificateLevel> levels;
  /// gap_l1 < 2^{-n} and gap_l2^2 < 4^{-n} on every level.
  bool all_certified() const;
};

struct SynthesisResult {
  TriangularSpec spec;
  SynthesisCertificate certificate;
};

/// N multiplicity vectors from ξ^(0..N-1); every m_j^(n) >= 1.
SynthesisResult synthesize(const TargetSequence& targets, std::size_t n,
                           const SynthesisOptions& options = {});

struct GConsistencyReport {
  std::size_t levels = 0;
  std::size_t vertex_budget = 0;
  bool pass = true;
  /// Every (n, vertex) whose check failed; vertex == SIZE_MAX stands for e_∞.
  std::vector<std::pair<std::size_t, std::size_t>> failures;
  /// Level of the single target explaining every failure, when there is one; otherwise
  /// the first failing n.
  std::optional<std::size_t> located_level;
};

inline constexpr std::size_t kInfinityVertex = static_cast<std::size_t>(-1);

/// Checks f_n ∘ g_{n+1} = g_n on e_0..e_M and e_∞ for n0 <= n, n+1 < N, with f_n the
/// target maps of the family.
GConsistencyReport verify_g_consistency(const TargetSequence& targets, std::size_t n0,
                                        std::size_t levels, std::size_t vertex_budget);
GConsistencyReport verify_g_consistency(const StationarySpec& t, std::size_t levels,
                                        std::size_t vertex_budget);

/// Exact synthesis of a stationary family (Kind::Stationary).
DiagramGenerator stationary_generator(const StationarySpec& t, SynthesisOptions options = {});
/// Synthesis of arbitrary targets (Kind::Synthesized).
DiagramGenerator synthesized_generator(TargetSequence targets, SynthesisOptions options = {});

}  // namespace bratteli
