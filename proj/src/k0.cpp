#include "bratteli/k0.hpp"

#include "bratteli/error.hpp"

namespace bratteli {

namespace {

Integer recurrence_value(const TriangularSpec& spec, const std::vector<Integer>& x, std::size_t n) {
  Integer v = 0;
  for (std::size_t j = 0; j <= n; ++j) v += spec.mvectors[n][j] * x[j];
  return v;
}

}  // namespace

std::optional<std::size_t> recurrence_check(const TriangularSpec& spec,
                                            const std::vector<Integer>& x) {
  if (x.empty()) throw Error(ErrorCode::ShapeMismatch, "empty sequence");
  const std::size_t steps = x.size() - 1;
  if (spec.mvectors.size() < steps) {
    throw Error(ErrorCode::ShapeMismatch, "sequence has " + std::to_string(x.size()) +
                                              " terms but the spec covers only " +
                                              std::to_string(spec.mvectors.size()) + " steps");
  }
  require_valid(spec);
  std::size_t from = steps;
  while (from > 0 && x[from] == recurrence_value(spec, x, from - 1)) --from;
  if (steps > 0 && from == steps) {
    // The last step fails, so no start index works.
    return std::nullopt;
  }
  return from;
}

std::vector<NondegeneracyWitness> nondegeneracy_witness(const TriangularSpec& spec,
                                                        const std::set<std::size_t>& coords,
                                                        std::size_t depth) {
  if (coords.empty()) return {};
  const std::size_t top = *coords.rbegin();
  if (depth < top + 1) {
    throw Error(ErrorCode::InsufficientPrefix, "depth must exceed the largest coordinate");
  }
  if (spec.mvectors.size() < depth) {
    throw Error(ErrorCode::InsufficientPrefix, "spec covers only " +
                                                   std::to_string(spec.mvectors.size()) + " steps");
  }
  std::vector<NondegeneracyWitness> out;
  for (auto c : coords) {
    std::vector<Integer> x(depth + 1, Integer(0));
    x[c] = 1;
    for (std::size_t n = top; n < depth; ++n) x[n + 1] = recurrence_value(spec, x, n);
    for (auto other : coords) {
      if (x[other] != (other == c ? 1 : 0)) {
        throw Error(ErrorCode::Precondition, "witness construction failed");
      }
    }
    out.push_back({c, K0Element{std::move(x), top}});
  }
  return out;
}

bool positivity_check(const K0Element& x) {
  for (const auto& v : x.prefix) {
    if (v < 0) return false;
  }
  return true;
}

}  // namespace bratteli
