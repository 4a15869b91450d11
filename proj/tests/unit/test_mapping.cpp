#include <gtest/gtest.h>

#include <cmath>

#include "ehs/mapping.hpp"

using namespace ehs;

namespace {

const PowerRateModel kLink;

// Data D_A = 1 bit at 0 and 1 bit at 2, 0.4 bits due by 1, no battery bound.
BoundPair simple_corridor() {
  const Staircase arrivals({{0.0, 1.0}, {2.0, 1.0}});
  const Staircase qos({{1.0, 0.4}});
  const std::vector<EventTime> events{{1.0, kQosEvent}, {2.0, kDataEvent}};
  return merge_bounds(arrivals, Staircase(), 0.0, qos, Staircase(), events, 1e-9);
}

}  // namespace

TEST(Mapping, BatteryMappingHoldsTheNextArrivalValue) {
  // 1 J at hand, 2 J more at t=1, 1 J at t=3.
  const Staircase battery({{1.0, 2.0}, {3.0, 1.0}}, 1.0);
  const std::vector<double> at{1.0, 3.0};
  const Staircase m = battery_mapping(battery, kLink, at);
  const double first = std::log2(1.0 + 1.0 / 1.0) * 1.0;   // B(1^-) = 1 over 1 s
  const double second = std::log2(1.0 + 3.0 / 3.0) * 3.0;  // B(3^-) = 3 over 3 s
  EXPECT_NEAR(m.eval(0.5), first, 1e-12);
  EXPECT_NEAR(m.eval(1.0, Side::Left), first, 1e-12);
  EXPECT_NEAR(m.eval(2.0), second, 1e-12);
}

TEST(Mapping, EminMappingUsesTheEnergyThatMustAlreadyBeGone) {
  // 0.5 J must be spent by t=1, 1.5 J by t=2.
  const Staircase emin({{1.0, 0.5}, {2.0, 1.0}});
  const std::vector<double> at{1.0, 2.0};
  const Staircase m = emin_mapping(emin, kLink, at);
  EXPECT_NEAR(m.eval(1.0), std::log2(1.5), 1e-12);
  EXPECT_NEAR(m.eval(2.0), 2.0 * std::log2(1.75), 1e-12);
  EXPECT_EQ(m.eval(0.5), 0.0);
}

TEST(Mapping, MergeMarksCorners) {
  const BoundPair b = simple_corridor();
  ASSERT_EQ(b.events.size(), 2u);
  EXPECT_DOUBLE_EQ(b.remaining, 2.0);
  EXPECT_DOUBLE_EQ(b.events[0].upper, 1.0);
  EXPECT_DOUBLE_EQ(b.events[0].lower, 0.4);
  EXPECT_FALSE(b.events[0].upper_corner);
  EXPECT_TRUE(b.events[0].lower_corner);
  EXPECT_DOUBLE_EQ(b.events[1].upper, 1.0);
  EXPECT_TRUE(b.events[1].upper_corner);
}

TEST(Mapping, RateCorridor) {
  const BoundPair b = simple_corridor();
  const RateBounds rb = rate_bounds(b);
  EXPECT_NEAR(rb.r_min, 0.4, 1e-12);
  EXPECT_DOUBLE_EQ(rb.z_min, 1.0);
  EXPECT_NEAR(rb.r_max, 0.5, 1e-12);
  EXPECT_DOUBLE_EQ(rb.z_max, 2.0);
  EXPECT_FALSE(rb.break_side);
}

TEST(Mapping, LinesAgainstTheCorridor) {
  const BoundPair b = simple_corridor();
  EXPECT_TRUE(line_feasible(0.45, b, INFINITY));
  EXPECT_FALSE(line_feasible(0.3, b, INFINITY));
  EXPECT_FALSE(line_feasible(0.6, b, INFINITY));
  EXPECT_TRUE(line_feasible(0.6, b, 1.5));

  const auto v = first_violation(0.6, b);
  ASSERT_TRUE(v);
  EXPECT_DOUBLE_EQ(v->time, 2.0);
  EXPECT_EQ(v->side, BoundSide::Upper);

  const auto low = first_violation(0.3, b);
  ASSERT_TRUE(low);
  EXPECT_EQ(low->side, BoundSide::Lower);

  EXPECT_DOUBLE_EQ(data_in_crossing(0.6, b), 1.0);
  EXPECT_DOUBLE_EQ(data_in_crossing(0.45, b), 2.0);
}

TEST(Mapping, BreakWhenTheCorridorCloses) {
  // 0.6 bits due by 0.5 needs a rate of 1.2, but only 0.8 bits exist before 1.5.
  const Staircase arrivals({{0.0, 0.8}, {1.5, 1.0}});
  const Staircase qos({{0.5, 0.6}});
  const std::vector<EventTime> events{{0.5, kQosEvent}, {1.5, kDataEvent}};
  const BoundPair b = merge_bounds(arrivals, Staircase(), 0.0, qos, Staircase(), events, 1e-9);
  const RateBounds rb = rate_bounds(b);
  ASSERT_TRUE(rb.break_side);
  EXPECT_EQ(*rb.break_side, BoundSide::Upper);
  EXPECT_DOUBLE_EQ(rb.break_time, 1.5);
}
