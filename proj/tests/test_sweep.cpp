#include "checks.hpp"

#include "fmlinv/sweep.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace fmlinv;

TEST_CASE("parallel sweeps reproduce the serial outcomes in order") {
  const auto serial = sweep_serial(testing::check_duality, 10, 40);
  const auto parallel = sweep_parallel(testing::check_duality, 10, 40);
  REQUIRE(serial.size() == 40);
  CHECK(serial == parallel);
  for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i].seed == 10 + i);
}

TEST_CASE("exceptions become failed outcomes") {
  const InstanceCheck check = [](std::uint64_t seed) -> SweepOutcome {
    if (seed % 3 == 0) throw std::runtime_error("boom");
    if (seed % 3 == 1) return {seed, true, false, "skipped"};
    return {seed, true, true, ""};
  };
  const auto outcomes = sweep_parallel(check, 0, 9);
  CHECK(outcomes == sweep_serial(check, 0, 9));
  CHECK_FALSE(outcomes[0].ok);
  CHECK(outcomes[0].detail.find("boom") != std::string::npos);

  const SweepSummary s = summarize(outcomes);
  CHECK(s.total == 9);
  CHECK(s.applicable == 6);
  CHECK(s.failures == 3);
  CHECK_FALSE(s.ok());
  CHECK(s.first_failure.find("boom") != std::string::npos);
}

TEST_CASE("empty sweeps") {
  const InstanceCheck never = [](std::uint64_t) -> SweepOutcome { throw std::logic_error("unreachable"); };
  CHECK(sweep_parallel(never, 5, 0).empty());
  CHECK(summarize({}).ok());
}
