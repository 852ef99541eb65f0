#include <gtest/gtest.h>

#include <sstream>

#include "transfer/acceptance.hpp"

using namespace transfer;
namespace acc = transfer::acceptance;

namespace {

acc::Routes broken_closed() {
  acc::Routes r;
  r.closed = [](unsigned m, unsigned n) {
    BigCount v = s_closed(m, n);
    if (m == 3 && n == 2) v += 1;
    return v;
  };
  return r;
}

}  // namespace

TEST(Acceptance, Levels) {
  EXPECT_EQ(acc::criteria_for("full").size(), static_cast<std::size_t>(acc::kCriterionCount));
  EXPECT_FALSE(acc::criteria_for("quick").empty());
  EXPECT_THROW(acc::criteria_for("everything"), std::invalid_argument);
}

TEST(Acceptance, CountingCriteriaPass) {
  for (int id : {1, 2, 3}) EXPECT_TRUE(acc::run_criterion(id).passed) << id;
}

TEST(Acceptance, MutatedClosedFormIsCaught) {
  const acc::Outcome o = acc::run_criterion(3, broken_closed());
  EXPECT_FALSE(o.passed);
  std::ostringstream out;
  EXPECT_NE(acc::run_suite({1, 3}, out, broken_closed()), 0);
  EXPECT_NE(out.str().find("FAIL"), std::string::npos);
  EXPECT_NE(out.str().find("--only 3"), std::string::npos);
}

TEST(Acceptance, MutatedRecurrenceIsCaught) {
  acc::Routes r;
  r.recurrence = [](unsigned m, unsigned n) { return s_recurrence(m, n) + (m == 0 && n == 0 ? 1 : 0); };
  EXPECT_FALSE(acc::run_criterion(1, r).passed);
  EXPECT_FALSE(acc::run_criterion(2, r).passed);
}
