#include "property_checks.hpp"

#include <gtest/gtest.h>

using namespace critsense;

TEST(Properties, ClassicalNeverExceedsQuantumFisher) {
  const auto r = props::fisher_hierarchy();
  EXPECT_TRUE(r.ok) << r.where << " worst ratio " << r.worst;
  EXPECT_GT(r.cases, 100);
}

TEST(Properties, SpectralMatchesOverlap) {
  const auto r = props::spectral_vs_overlap();
  EXPECT_TRUE(r.ok) << r.where << " worst " << r.worst;
}

TEST(Properties, ProjectorsComplete) {
  const auto r = props::projector_completeness();
  EXPECT_TRUE(r.ok) << r.where << " worst " << r.worst;
}

TEST(Properties, NormAndTraceConserved) {
  const auto r = props::conservation();
  EXPECT_TRUE(r.ok) << r.where << " worst " << r.worst;
}

TEST(Properties, FitsRecoverSyntheticLaws) {
  const auto r = props::fit_recovery();
  EXPECT_TRUE(r.ok) << r.where << " worst " << r.worst;
}
