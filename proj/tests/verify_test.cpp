#include <gtest/gtest.h>

#include "json.hpp"

#include "stieltjes/verify.hpp"

using namespace stieltjes;

TEST(Verify, AllSuitesPassOnSmallRuns) {
  VerifyOptions options;
  options.trials = 20;
  options.max_n = 6;
  for (const auto& name : suite_names()) {
    const SuiteResult r = run_suite(name, options);
    EXPECT_TRUE(r.passed) << name << ": " << r.counterexample;
    EXPECT_EQ(r.trials, 20);
    EXPECT_GT(r.checks, 0);
  }
}

TEST(Verify, InjectedSignErrorIsCaught) {
  VerifyOptions options;
  options.trials = 5;
  options.fault = Fault::kRhoSign;
  const SuiteResult r = verify_supermodular(options);
  EXPECT_FALSE(r.passed);
  const auto doc = nlohmann::json::parse(r.counterexample);
  EXPECT_EQ(doc["suite"], "supermodular");
  EXPECT_TRUE(doc.contains("Q"));
}

TEST(Verify, HullLpMatchesBinaryMinimum) {
  VerifyOptions options;
  options.trials = 10;
  options.max_n = 5;
  const SuiteResult r = verify_hull(options);
  EXPECT_TRUE(r.passed);
  EXPECT_LE(r.worst, 1e-7);
}

TEST(Verify, UnknownSuiteThrows) {
  EXPECT_THROW(run_suite("nope", {}), std::invalid_argument);
}
