#include "bratteli/error.hpp"
#include "bratteli/ideals.hpp"
#include "bratteli/io.hpp"
#include "bratteli/rfd.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace bratteli;

namespace {

BratteliPrefix load(const char* name, std::optional<std::size_t> steps = {}) {
  return to_prefix(parse_diagram(fixture(name)), steps);
}

}  // namespace

TEST(Rfd, Ex43IsRfdJi) {
  const auto p = load("ex43", 8);
  const auto v = check_rfd_ji(p);
  ASSERT_TRUE(v.consistent());
  for (std::size_t n = 0; n < p.depth(); ++n) EXPECT_EQ(v.witness().r[n], n + 1);
  EXPECT_FALSE(verify_witness(p, v.witness(), true).has_value());
}

TEST(Rfd, Ex57RightIsRfdButNotJi) {
  const auto p = load("ex57A-right", 8);
  const auto v = check_rfd(p);
  ASSERT_TRUE(v.consistent());
  for (std::size_t n = 0; n + 1 < p.depth(); ++n) {
    EXPECT_EQ(v.witness().r[n], n + 1);
    EXPECT_EQ(v.witness().blocks[n].middle_right, (MultiplicityMatrix{{1}}));
  }
  EXPECT_FALSE(check_rfd_ji(p).consistent());
}

TEST(Rfd, Ex57LeftNeedsPermutation) {
  const auto p = load("ex57A-left", 6);
  EXPECT_FALSE(check_rfd(p, RfdMode::Strict).consistent());
  EXPECT_TRUE(check_rfd(p, RfdMode::UpToPermutation).consistent());
}

TEST(Rfd, Ex57BAllPersistent) {
  const auto p = load("ex57B", 8);
  const auto v = check_rfd(p);
  ASSERT_TRUE(v.consistent());
  for (std::size_t n = 0; n < p.depth(); ++n) EXPECT_EQ(v.witness().r[n], p.width(n));
}

TEST(Rfd, ViolationLevelIsStableUnderExtension) {
  const auto p = load("ex57A-right", 8);
  const auto v = check_rfd_ji(p);
  ASSERT_FALSE(v.consistent());
  for (std::size_t d = v.violation().level + 2; d <= p.depth(); ++d) {
    const auto w = check_rfd_ji(p.truncated(d));
    ASSERT_FALSE(w.consistent());
    EXPECT_EQ(w.violation().level, v.violation().level);
  }
}

TEST(Rfd, SimpleDiagramViolates) {
  // The 2x2 all-ones step has no persistent line.
  BratteliPrefix p;
  p.levels = {DimensionVector{1, 1}, DimensionVector{2, 2}, DimensionVector{4, 4}};
  p.matrices = {MultiplicityMatrix{{1, 1}, {1, 1}}, MultiplicityMatrix{{1, 1}, {1, 1}}};
  EXPECT_FALSE(check_rfd(p).consistent());
  EXPECT_TRUE(check_all_positive(p));
}

TEST(Rfd, WitnessBlocksReassemble) {
  std::mt19937 rng(7);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto p = oracle::random_prefix(rng, 3, 3);
    for (auto mode : {RfdMode::Strict, RfdMode::UpToPermutation}) {
      const auto v = check_rfd(p, mode);
      if (!v.consistent()) continue;
      ++checked;
      EXPECT_FALSE(verify_witness(p, v.witness(), false).has_value());
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(Ideals, CloseOnEx43GivesCoSingletons) {
  const auto p = load("ex43", 4);
  const auto t = close(p, {{0, 0}});
  EXPECT_EQ(t, IdealProfile::full(p));
  const auto s = close(p, {{1, 1}});
  EXPECT_FALSE(check_profile(p, s).has_value());
  EXPECT_TRUE(s.contains(2, 2));
  EXPECT_FALSE(s.contains(2, 0));
}

TEST(Ideals, ClosureIsAnIdeal) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto p = oracle::random_prefix(rng, 4, 3);
    std::uniform_int_distribution<std::size_t> lv(0, p.depth() - 1);
    const std::size_t n = lv(rng);
    std::uniform_int_distribution<std::size_t> vx(0, p.width(n) - 1);
    const auto t = close(p, {{n, vx(rng)}});
    EXPECT_FALSE(check_profile(p, t).has_value());
  }
}

TEST(Ideals, EnumerateMatchesBruteForceSmall) {
  const auto p = load("ex57B", 3);
  const auto all = enumerate_ideals(p);
  const auto brute = oracle::brute_force_ideals(p);
  EXPECT_EQ(std::set<IdealProfile>(all.begin(), all.end()), brute);
}

TEST(Ideals, QuotientOfFullThrows) {
  const auto p = load("ex43", 3);
  EXPECT_THROW(quotient(p, IdealProfile::full(p)), Error);
  EXPECT_EQ(quotient(p, IdealProfile::zero(p)), p);
}

TEST(Ideals, PrimitiveProfilesOfEx43) {
  const auto p = load("ex43", 5);
  const auto v = check_rfd_ji(p);
  ASSERT_TRUE(v.consistent());
  const auto prims = primitive_profiles(p, v.witness());
  ASSERT_EQ(prims.size(), 6u);
  for (const auto& pr : prims) {
    EXPECT_FALSE(check_profile(p, pr.profile).has_value());
    const auto q = quotient(p, pr.profile);
    EXPECT_EQ(q.levels.back(), DimensionVector({pr.k}));
  }
}

TEST(Ideals, JustInfiniteEvidenceOnEx43) {
  const auto p = load("ex43", 6);
  const auto v = check_rfd_ji(p);
  ASSERT_TRUE(v.consistent());
  const auto r = just_infinite_evidence(p, v.witness());
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(r.vacuous);
}

TEST(Ideals, Ex57CompactnessDichotomy) {
  const auto a = load("ex57A-right", 8);
  const auto ker = close(a, {{0, 0}});
  EXPECT_TRUE(is_compact(a, ker));
  const auto q = quotient(a, ker);
  for (std::size_t n = 0; n < q.depth(); ++n) {
    EXPECT_EQ(q.levels[n], DimensionVector({Integer(1) << (n + 1)}));
  }

  const auto b = load("ex57B", 8);
  IdealProfile co_last;
  for (std::size_t n = 0; n < b.depth(); ++n) {
    std::vector<std::size_t> s(n);
    std::iota(s.begin(), s.end(), 0);
    co_last.T.push_back(s);
  }
  EXPECT_FALSE(check_profile(b, co_last).has_value());
  EXPECT_FALSE(is_compact(b, co_last));
}

TEST(Ideals, CompactIdealsOfEx57BKeepAFiniteLine) {
  const auto b = load("ex57B", 4);
  ASSERT_TRUE(has_full_persistence_shape(b));
  int compact = 0;
  for (const auto& t : enumerate_ideals(b)) {
    if (!t.is_proper(b) || !is_compact(b, t)) continue;
    ++compact;
    EXPECT_TRUE(has_findim_quotient_line(b, t)) << t.to_string();
  }
  EXPECT_GT(compact, 0);
}
