#pragma once

#include "bratteli/diagram.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

namespace bratteli {

/// Prefix x_0..x_N of an element of the recurrence subgroup G ⊆ Π Z.
struct K0Element {
  std::vector<Integer> prefix;
  /// x_{n+1} = Σ_j m_j^(n) x_j for eventual_from <= n < N.
  std::optional<std::size_t> eventual_from;
};

/// Smallest n1 such that the recurrence holds for all n1 <= n < N (N = |x| - 1); empty
/// when it fails at the last step. Requires spec to cover N steps.
std::optional<std::size_t> recurrence_check(const TriangularSpec& spec,
                                            const std::vector<Integer>& x);

struct NondegeneracyWitness {
  std::size_t coordinate = 0;
  K0Element element;
};

/// For each n in F an element with x_n = 1, x_m = 0 for the other m in F, built by
/// choosing x_0..x_{max F} freely and forcing the recurrence up to `depth`.
std::vector<NondegeneracyWitness> nondegeneracy_witness(const TriangularSpec& spec,
                                                        const std::set<std::size_t>& coords,
                                                        std::size_t depth);

/// Every prefix entry is >= 0.
bool positivity_check(const K0Element& x);

}  // namespace bratteli
