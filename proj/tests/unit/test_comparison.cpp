#include <cstdlib>

#include "doctest.h"
#include "ipl/comparison.hpp"
#include "ipl/errors.hpp"

using namespace ipl;

namespace {

ComparisonOptions small_options() {
  ComparisonOptions o;
  o.base.n_particles = 1000;
  o.base.t_end = 1.0;
  o.base.record_every = 5;
  o.s_list = {15.0, 7.0};
  o.n_seeds = 8;
  o.bootstrap_samples = 200;
  o.threads = 1;
  return o;
}

}  // namespace

TEST_CASE("option validation") {
  ComparisonOptions o = small_options();
  o.n_seeds = 4;
  CHECK_THROWS_AS(o.validate(), DomainError);
  o = small_options();
  o.s_list = {4.0};
  CHECK_THROWS_AS(o.validate(), InvalidExponent);
  o.s_list = {2.0};
  CHECK_THROWS_AS(o.validate(), DomainError);
  CHECK_NOTHROW(small_options().validate());
}

TEST_CASE("small comparison") {
  const ComparisonResult r = compare_exponents(small_options());
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].params == InteractionParams::power_law(7.0));
  CHECK(r.rows[1].params == InteractionParams::power_law(15.0));
  CHECK(r.times.size() == 5);
  CHECK(r.baseline_mean_m4.size() == r.times.size());
  for (const ExponentComparison& row : r.rows) {
    CHECK(row.sup_m4_diff >= 0.0);
    CHECK(row.sup_m4_sigma > 0.0);
    CHECK(row.sup_m4_ci_low <= row.sup_m4_ci_high);
    CHECK(row.histogram_l1 > 0.0);
    CHECK(row.max_m6_growth >= 1.0);
    CHECK(row.mean_m4.size() == r.times.size());
    CHECK(row.mean_m4.front() == doctest::Approx(r.baseline_mean_m4.front()));
  }
  REQUIRE(r.pairs.size() == 1);
  CHECK(r.pairs[0].s_lower == 7.0);
  CHECK(r.pairs[0].s_upper == 15.0);
  CHECK(r.pairs[0].difference == doctest::Approx(r.rows[0].sup_m4_diff - r.rows[1].sup_m4_diff));
  REQUIRE(r.monotone_decreasing.has_value());
  CHECK(*r.monotone_decreasing == r.pairs[0].separated);
}

TEST_CASE("single exponent has no verdict") {
  ComparisonOptions o = small_options();
  o.s_list = {7.0};
  const ComparisonResult r = compare_exponents(o);
  CHECK(r.rows.size() == 1);
  CHECK(r.pairs.empty());
  CHECK_FALSE(r.monotone_decreasing.has_value());
}

TEST_CASE("results do not depend on the thread count") {
  ComparisonOptions a = small_options();
  ComparisonOptions b = small_options();
  b.threads = 3;
  const ComparisonResult ra = compare_exponents(a);
  const ComparisonResult rb = compare_exponents(b);
  for (std::size_t i = 0; i < ra.rows.size(); ++i) {
    CHECK(ra.rows[i].mean_m4 == rb.rows[i].mean_m4);
    CHECK(ra.rows[i].sup_m4_sigma == rb.rows[i].sup_m4_sigma);
  }
  a.common_random_numbers = false;
  b.common_random_numbers = false;
  CHECK(compare_exponents(a).rows[0].mean_m4 == compare_exponents(b).rows[0].mean_m4);
}
