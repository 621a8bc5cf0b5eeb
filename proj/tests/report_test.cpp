// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "exthodge/commands.hpp"
#include "exthodge/error.hpp"
#include "exthodge/report.hpp"

namespace exthodge {
namespace {

TEST(Report, AnchorsAreNonEmpty) {
  for (int g = 0; g <= static_cast<int>(CheckGroup::GrowingDirichlet); ++g) {
    EXPECT_GT(std::string(anchor(static_cast<CheckGroup>(g))).size(), 0u) << g;
  }
}

TEST(Report, Layout) {
  Report rep(Json{{"seed", 7}});
  rep.check_le(CheckGroup::Mu, "a", 0.5, 1.0);
  rep.check_le(CheckGroup::Mu, "b", std::numeric_limits<double>::quiet_NaN(), 1.0);
  rep.data()["table"] = Json::array({1, 2});
  EXPECT_FALSE(rep.passed());
  const Json j = Json::parse(rep.dump());
  ASSERT_TRUE(j.is_object());
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"artifact", "version", "config", "checks", "data", "status"}));
  EXPECT_EQ(j["artifact"], kArtifact);
  EXPECT_EQ(j["config"]["seed"], 7);
  EXPECT_EQ(j["checks"][0]["status"], "pass");
  EXPECT_EQ(j["checks"][1]["status"], "fail");
  EXPECT_TRUE(j["checks"][1]["measured"].is_null());
  EXPECT_EQ(j["status"], "fail");
  EXPECT_EQ(rep.dump().back(), '\n');
}

TEST(Report, MergePrefixesNames) {
  Report a(Json::object()), b(Json::object());
  b.check(CheckGroup::Mu, "x", true, 1, 1);
  b.data()["v"] = 3;
  a.merge(b, "dims");
  ASSERT_EQ(a.checks().size(), 1u);
  EXPECT_EQ(a.checks()[0].name, "dims/x");
  EXPECT_TRUE(a.passed());
}

TEST(Commands, DimsTable) {
  const Report rep = run_command("dims", Json{{"s_list", {-2.0, -3.0}}});
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.config()["s_list"], Json({-2.0, -3.0}));
}

TEST(Commands, UnknownKeysAndCommandsAreRejected) {
  EXPECT_THROW(run_command("dims", Json{{"bogus", 1}}), Error);
  EXPECT_THROW(run_command("nope", Json::object()), Error);
  EXPECT_THROW(run_command("decompose", Json{{"s", 1.0}, {"correction", "on"}}), Error);
}

TEST(Commands, TowerSuiteIsDeterministic) {
  const Json cfg{{"n_max", 2}, {"n_points", 6}, {"seed", 3}};
  const Report a = run_command("verify-towers", cfg);
  const Report b = run_command("verify-towers", cfg);
  EXPECT_TRUE(a.passed());
  EXPECT_EQ(a.dump(), b.dump());
}

}  // namespace
}  // namespace exthodge
