#include "bratteli/ideals.hpp"

#include "bratteli/error.hpp"
#include "bratteli/limits.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace bratteli {

IdealProfile IdealProfile::zero(const BratteliPrefix& prefix) {
  return IdealProfile{std::vector<std::vector<std::size_t>>(prefix.depth())};
}

IdealProfile IdealProfile::full(const BratteliPrefix& prefix) {
  IdealProfile p;
  for (std::size_t n = 0; n < prefix.depth(); ++n) {
    std::vector<std::size_t> all(prefix.width(n));
    for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
    p.T.push_back(std::move(all));
  }
  return p;
}

IdealProfile IdealProfile::from_sets(std::vector<std::vector<std::size_t>> sets) {
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return IdealProfile{std::move(sets)};
}

bool IdealProfile::contains(std::size_t level, std::size_t vertex) const {
  return level < T.size() && std::binary_search(T[level].begin(), T[level].end(), vertex);
}

bool IdealProfile::is_zero() const {
  return std::all_of(T.begin(), T.end(), [](const auto& s) { return s.empty(); });
}

bool IdealProfile::is_proper(const BratteliPrefix& prefix) const {
  for (std::size_t n = 0; n < T.size(); ++n) {
    if (T[n].size() < prefix.width(n)) return true;
  }
  return false;
}

std::vector<std::size_t> IdealProfile::complement(const BratteliPrefix& prefix,
                                                  std::size_t level) const {
  std::vector<std::size_t> f;
  for (std::size_t v = 0; v < prefix.width(level); ++v) {
    if (!contains(level, v)) f.push_back(v);
  }
  return f;
}

std::string IdealProfile::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t n = 0; n < T.size(); ++n) {
    if (n) os << ",";
    os << "{";
    for (std::size_t i = 0; i < T[n].size(); ++i) os << (i ? "," : "") << T[n][i];
    os << "}";
  }
  os << "]";
  return os.str();
}

namespace {

void require_shape(const BratteliPrefix& prefix, const IdealProfile& profile) {
  if (profile.T.size() != prefix.depth()) {
    throw Error(ErrorCode::ShapeMismatch, "profile has " + std::to_string(profile.T.size()) +
                                              " levels, prefix has " +
                                              std::to_string(prefix.depth()));
  }
  for (std::size_t n = 0; n < profile.T.size(); ++n) {
    for (auto v : profile.T[n]) {
      if (v >= prefix.width(n)) {
        throw Error(ErrorCode::OutOfRange, "profile vertex " + std::to_string(v) +
                                               " out of range at level " + std::to_string(n));
      }
    }
  }
}

class Closure {
 public:
  explicit Closure(const BratteliPrefix& prefix) : prefix_(prefix) {
    in_.resize(prefix.depth());
    remaining_.resize(prefix.depth());
    for (std::size_t n = 0; n < prefix.depth(); ++n) {
      in_[n].assign(prefix.width(n), false);
      remaining_[n].assign(prefix.width(n), 0);
      if (n + 1 < prefix.depth()) {
        const auto& a = prefix.matrices[n];
        for (std::size_t k = 0; k < a.cols(); ++k) {
          for (std::size_t i = 0; i < a.rows(); ++i) remaining_[n][k] += a(i, k) != 0;
        }
      }
    }
  }

  void add(std::size_t level, std::size_t v) {
    if (level >= prefix_.depth() || v >= prefix_.width(level)) {
      throw Error(ErrorCode::OutOfRange,
                  "seed (" + std::to_string(level) + ":" + std::to_string(v) + ") outside prefix");
    }
    queue_.emplace_back(level, v);
    drain();
  }

  IdealProfile profile() const {
    IdealProfile p;
    for (const auto& level : in_) {
      std::vector<std::size_t> s;
      for (std::size_t v = 0; v < level.size(); ++v) {
        if (level[v]) s.push_back(v);
      }
      p.T.push_back(std::move(s));
    }
    return p;
  }

 private:
  void drain() {
    while (!queue_.empty()) {
      auto [n, v] = queue_.front();
      queue_.pop_front();
      if (in_[n][v]) continue;
      in_[n][v] = true;
      if (n + 1 < prefix_.depth()) {  // directed
        const auto& a = prefix_.matrices[n];
        for (std::size_t i = 0; i < a.rows(); ++i) {
          if (a(i, v) != 0 && !in_[n + 1][i]) queue_.emplace_back(n + 1, i);
        }
      }
      if (n > 0) {  // hereditary
        const auto& a = prefix_.matrices[n - 1];
        for (std::size_t k = 0; k < a.cols(); ++k) {
          if (a(v, k) != 0 && --remaining_[n - 1][k] == 0 && !in_[n - 1][k]) {
            queue_.emplace_back(n - 1, k);
          }
        }
      }
    }
  }

  const BratteliPrefix& prefix_;
  std::vector<std::vector<bool>> in_;
  std::vector<std::vector<std::size_t>> remaining_;
  std::deque<Seed> queue_;
};

}  // namespace

std::optional<std::string> check_profile(const BratteliPrefix& prefix,
                                         const IdealProfile& profile) {
  if (profile.T.size() != prefix.depth()) return "level count mismatch";
  for (std::size_t n = 0; n + 1 < prefix.depth(); ++n) {
    const auto& a = prefix.matrices[n];
    for (std::size_t k = 0; k < a.cols(); ++k) {
      bool all_in = true;
      for (std::size_t i = 0; i < a.rows(); ++i) {
        if (a(i, k) == 0) continue;
        if (!profile.contains(n + 1, i)) {
          all_in = false;
          if (profile.contains(n, k)) {
            return "directed rule fails: (" + std::to_string(n) + ":" + std::to_string(k) +
                   ") -> (" + std::to_string(n + 1) + ":" + std::to_string(i) + ")";
          }
        }
      }
      if (all_in && !profile.contains(n, k)) {
        return "hereditary rule fails at (" + std::to_string(n) + ":" + std::to_string(k) + ")";
      }
    }
  }
  return std::nullopt;
}

IdealProfile close(const BratteliPrefix& prefix, const std::vector<Seed>& seeds) {
  return close(prefix, IdealProfile::zero(prefix), seeds);
}

IdealProfile close(const BratteliPrefix& prefix, const IdealProfile& base,
                   const std::vector<Seed>& seeds) {
  require_valid(prefix);
  require_shape(prefix, base);
  Closure c(prefix);
  for (std::size_t n = 0; n < base.T.size(); ++n) {
    for (auto v : base.T[n]) c.add(n, v);
  }
  for (const auto& [n, v] : seeds) c.add(n, v);
  return c.profile();
}

BratteliPrefix quotient(const BratteliPrefix& prefix, const IdealProfile& profile) {
  require_shape(prefix, profile);
  if (auto bad = check_profile(prefix, profile)) {
    throw Error(ErrorCode::Precondition, "not an ideal profile: " + *bad);
  }
  if (!profile.is_proper(prefix)) {
    throw Error(ErrorCode::Precondition, "profile is full: the quotient is zero");
  }
  BratteliPrefix q;
  q.unital = prefix.unital;
  std::vector<std::vector<std::size_t>> f(prefix.depth());
  for (std::size_t n = 0; n < prefix.depth(); ++n) {
    f[n] = profile.complement(prefix, n);
    std::vector<Integer> u;
    for (auto v : f[n]) u.push_back(prefix.levels[n][v]);
    q.levels.emplace_back(std::move(u));
  }
  for (std::size_t n = 0; n + 1 < prefix.depth(); ++n) {
    MultiplicityMatrix a(f[n + 1].size(), f[n].size());
    for (std::size_t i = 0; i < f[n + 1].size(); ++i) {
      for (std::size_t j = 0; j < f[n].size(); ++j) a(i, j) = prefix.matrices[n](f[n + 1][i], f[n][j]);
    }
    q.matrices.push_back(std::move(a));
  }
  return q;
}

std::optional<std::size_t> compact_generating_level(const BratteliPrefix& prefix,
                                                    const IdealProfile& profile) {
  require_shape(prefix, profile);
  if (profile.is_zero()) return 0;
  for (std::size_t n0 = 0; n0 + 2 <= prefix.depth(); ++n0) {
    std::vector<Seed> seeds;
    for (auto v : profile.T[n0]) seeds.emplace_back(n0, v);
    if (close(prefix, seeds) == profile) return n0;
  }
  return std::nullopt;
}

bool is_compact(const BratteliPrefix& prefix, const IdealProfile& profile) {
  return compact_generating_level(prefix, profile).has_value();
}

std::vector<IdealProfile> enumerate_ideals(const BratteliPrefix& prefix) {
  require_valid(prefix);
  const std::size_t cap = max_enumeration_width();
  for (std::size_t n = 0; n < prefix.depth(); ++n) {
    if (prefix.width(n) > cap) {
      throw Error(ErrorCode::CapExceeded, "width cap exceeded: level " + std::to_string(n) +
                                              " has " + std::to_string(prefix.width(n)) +
                                              " vertices (cap " + std::to_string(cap) + ")");
    }
  }
  std::set<IdealProfile> seen;
  std::deque<IdealProfile> queue;
  auto start = close(prefix, {});
  seen.insert(start);
  queue.push_back(std::move(start));
  while (!queue.empty()) {
    IdealProfile p = std::move(queue.front());
    queue.pop_front();
    for (std::size_t n = 0; n < prefix.depth(); ++n) {
      for (std::size_t v = 0; v < prefix.width(n); ++v) {
        if (p.contains(n, v)) continue;
        auto q = close(prefix, p, {{n, v}});
        if (seen.insert(q).second) queue.push_back(std::move(q));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<PrimitiveProfile> primitive_profiles(const BratteliPrefix& prefix,
                                                 const RfdWitness& witness) {
  if (auto bad = verify_witness(prefix, witness, true)) {
    throw Error(ErrorCode::Precondition, "witness mismatch: " + *bad);
  }
  const std::size_t last = prefix.depth() - 1;
  std::vector<PrimitiveProfile> out;
  for (std::size_t j = 0; j < witness.r[last]; ++j) {
    std::vector<std::vector<bool>> in(prefix.depth());
    in[last].assign(prefix.width(last), true);
    in[last][witness.vertex_of_line(j, last)] = false;
    for (std::size_t n = last; n-- > 0;) {
      const auto& a = prefix.matrices[n];
      in[n].assign(prefix.width(n), true);
      for (std::size_t k = 0; k < a.cols(); ++k) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
          if (a(i, k) != 0 && !in[n + 1][i]) in[n][k] = false;
        }
      }
    }
    IdealProfile p;
    for (const auto& level : in) {
      std::vector<std::size_t> s;
      for (std::size_t v = 0; v < level.size(); ++v) {
        if (level[v]) s.push_back(v);
      }
      p.T.push_back(std::move(s));
    }
    out.push_back({j, witness.kseq[j], witness.first_level_of_line(j), std::move(p)});
  }
  return out;
}

std::size_t stabilization_level(const BratteliPrefix& q) {
  std::size_t s = q.depth() == 0 ? 0 : q.depth() - 1;
  while (s > 0 && q.matrices[s - 1].is_identity()) --s;
  return s;
}

JustInfiniteReport just_infinite_evidence(const BratteliPrefix& prefix, const RfdWitness& witness) {
  if (auto bad = verify_witness(prefix, witness, true)) {
    throw Error(ErrorCode::Precondition, "witness mismatch: " + *bad);
  }
  JustInfiniteReport report;
  report.depth = prefix.depth();
  if (prefix.depth() < 2) {
    report.vacuous = true;
    return report;
  }
  for (std::size_t n = 0; n < prefix.depth(); ++n) {
    for (std::size_t v = 0; v < prefix.width(n); ++v) {
      SeedEvidence e;
      e.seed = {n, v};
      auto p = close(prefix, {{n, v}});
      if (!p.is_proper(prefix)) {
        e.full = true;
        e.pass = true;
      } else {
        e.stabilizes_at = stabilization_level(quotient(prefix, p));
        e.pass = *e.stabilizes_at <= n + 1;
      }
      report.pass = report.pass && e.pass;
      report.seeds.push_back(e);
    }
  }
  return report;
}

bool has_full_persistence_shape(const BratteliPrefix& prefix) {
  for (std::size_t n = 0; n + 1 < prefix.depth(); ++n) {
    const auto& a = prefix.matrices[n];
    if (a.rows() < a.cols()) return false;
    for (std::size_t i = 0; i < a.cols(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if (a(i, j) != (i == j ? 1 : 0)) return false;
      }
      if (prefix.levels[n + 1][i] != prefix.levels[n][i]) return false;
    }
  }
  return true;
}

bool has_findim_quotient_line(const BratteliPrefix& prefix, const IdealProfile& profile) {
  require_shape(prefix, profile);
  if (!has_full_persistence_shape(prefix)) {
    throw Error(ErrorCode::ShapeMismatch, "prefix is not of the form A_n = [I ; *]");
  }
  if (!profile.is_proper(prefix)) throw Error(ErrorCode::Precondition, "profile is not proper");
  const auto n0 = compact_generating_level(prefix, profile);
  if (!n0) throw Error(ErrorCode::Precondition, "profile is not compact at this depth");
  // Line l of F_{n0} persisting with quotient row e_l on every later step.
  for (auto l : profile.complement(prefix, *n0)) {
    bool persists = true;
    for (std::size_t n = *n0; persists && n + 1 < prefix.depth(); ++n) {
      const auto& a = prefix.matrices[n];
      if (profile.contains(n, l) || profile.contains(n + 1, l)) {
        persists = false;
        break;
      }
      for (auto j : profile.complement(prefix, n)) persists = persists && ((a(l, j) != 0) == (j == l));
    }
    if (persists) return true;
  }
  return false;
}

}  // namespace bratteli
