#include <sstream>

#include "doctest.h"
#include "ipl/errors.hpp"
#include "ipl/simulation_io.hpp"

using namespace ipl;
using nlohmann::json;

namespace {

json minimal() {
  return json{{"n_particles", 1000}, {"exponent_s", 7}, {"dt", 0.05}, {"t_end", 1.0}, {"seed", 2}};
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  for (double x : {0.0, 1.0, -2.5, 0.1, 1e-300, 6.02214076e23, 3.141592653589793}) {
    CHECK(std::stod(format_number(x)) == x);
  }
  CHECK(format_number(0.5) == "0.5");
}

TEST_CASE("config parsing") {
  const SimulationConfig c = parse_simulation_config(minimal());
  CHECK(c.n_particles == 1000);
  CHECK(c.params == InteractionParams::power_law(7.0));
  CHECK(c.theta_min == 1e-2);
  CHECK(c.init == InitialCondition::bimodal);
  CHECK(c.record_every == 10);
  CHECK(c.seed == 2);

  json hs = minimal();
  hs["exponent_s"] = "hard_sphere";
  hs["init"] = "anisotropic";
  hs["record_every"] = 3;
  const SimulationConfig h = parse_simulation_config(hs);
  CHECK(h.params.is_hard_sphere());
  CHECK(h.init == InitialCondition::anisotropic);
  CHECK(h.record_every == 3);

  const SimulationConfig back = parse_simulation_config(to_json(h));
  CHECK(back.params == h.params);
  CHECK(back.dt == h.dt);
  CHECK(back.seed == h.seed);
}

TEST_CASE("config errors") {
  json j = minimal();
  j["colour"] = 1;
  CHECK_THROWS_AS(parse_simulation_config(j), DomainError);
  j = minimal();
  j.erase("dt");
  CHECK_THROWS_AS(parse_simulation_config(j), DomainError);
  j = minimal();
  j["n_particles"] = 10.5;
  CHECK_THROWS_AS(parse_simulation_config(j), DomainError);
  j = minimal();
  j["seed"] = -1;
  CHECK_THROWS_AS(parse_simulation_config(j), DomainError);
  j = minimal();
  j["exponent_s"] = 4;
  CHECK_THROWS_AS(parse_simulation_config(j), InvalidExponent);
  j = minimal();
  j["theta_min"] = 0.0;
  CHECK_THROWS_AS(parse_simulation_config(j), DomainError);
  j = minimal();
  j["init"] = "hot";
  CHECK_THROWS_AS(parse_simulation_config(j), DomainError);
  CHECK_THROWS_AS(parse_simulation_config(json::array()), DomainError);
  CHECK_THROWS_AS(load_simulation_config("/nonexistent/config.json"), DomainError);
}

TEST_CASE("moment CSV round trip") {
  SimulationConfig c;
  c.n_particles = 200;
  c.t_end = 0.5;
  c.record_every = 2;
  const MomentRecord r = run_simulation(c);
  std::stringstream buffer;
  write_moment_csv(buffer, r);
  CHECK(buffer.str().rfind(std::string(kMomentCsvHeader) + "\n", 0) == 0);
  const MomentRecord back = read_moment_csv(buffer);
  CHECK(back.times == r.times);
  CHECK(back.M4 == r.M4);
  CHECK(back.M6 == r.M6);
  CHECK(back.momentum == r.momentum);
  CHECK(back.entropy_est == r.entropy_est);
}

TEST_CASE("malformed CSV") {
  std::stringstream bad_header("t,M0\n");
  CHECK_THROWS_AS(read_moment_csv(bad_header), DomainError);
  std::stringstream short_row(std::string(kMomentCsvHeader) + "\n0,1,3\n");
  CHECK_THROWS_AS(read_moment_csv(short_row), DomainError);
  std::stringstream bad_number(std::string(kMomentCsvHeader) + "\n0,1,3,x,1,0,0,0,1\n");
  CHECK_THROWS_AS(read_moment_csv(bad_number), DomainError);
}
