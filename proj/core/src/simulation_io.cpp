#include "ipl/simulation_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include "ipl/errors.hpp"

namespace ipl {
namespace {

const std::set<std::string> kConfigKeys = {"n_particles", "exponent_s", "theta_min", "dt",
                                           "t_end",       "init",       "seed",      "record_every"};

const nlohmann::json& require(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw DomainError(std::string("config is missing '") + key + "'");
  return doc.at(key);
}

double number_field(const nlohmann::json& value, const char* key) {
  if (!value.is_number()) throw DomainError(std::string("config '") + key + "' must be a number");
  return value.get<double>();
}

long long integer_field(const nlohmann::json& value, const char* key) {
  if (!value.is_number_integer()) {
    throw DomainError(std::string("config '") + key + "' must be an integer");
  }
  return value.get<long long>();
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw DomainError("malformed number '" + std::string(text) + "' in CSV");
  }
  return value;
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

SimulationConfig parse_simulation_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw DomainError("config must be a JSON object");
  for (const auto& item : doc.items()) {
    if (!kConfigKeys.contains(item.key())) {
      throw DomainError("unknown config key '" + item.key() + "'");
    }
  }
  SimulationConfig config;
  const long long n = integer_field(require(doc, "n_particles"), "n_particles");
  if (n < 2 || n > 100'000'000) throw DomainError("n_particles out of range");
  config.n_particles = static_cast<int>(n);

  const auto& s = require(doc, "exponent_s");
  if (s.is_string()) {
    config.params = InteractionParams::parse(s.get<std::string>());
  } else {
    config.params = InteractionParams::power_law(number_field(s, "exponent_s"));
  }
  if (doc.contains("theta_min")) config.theta_min = number_field(doc.at("theta_min"), "theta_min");
  config.dt = number_field(require(doc, "dt"), "dt");
  config.t_end = number_field(require(doc, "t_end"), "t_end");
  if (doc.contains("init")) {
    if (!doc.at("init").is_string()) throw DomainError("config 'init' must be a string");
    config.init = parse_initial_condition(doc.at("init").get<std::string>());
  }
  const long long seed = integer_field(require(doc, "seed"), "seed");
  if (seed < 0) throw DomainError("seed must be non-negative");
  config.seed = static_cast<std::uint64_t>(seed);
  if (doc.contains("record_every")) {
    const long long every = integer_field(doc.at("record_every"), "record_every");
    if (every < 1 || every > 1'000'000'000) throw DomainError("record_every must be a positive step count");
    config.record_every = static_cast<int>(every);
  }
  config.validate();
  return config;
}

SimulationConfig load_simulation_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_simulation_config(doc);
}

nlohmann::json to_json(const SimulationConfig& config) {
  nlohmann::json doc;
  doc["n_particles"] = config.n_particles;
  if (config.params.is_hard_sphere()) {
    doc["exponent_s"] = "hard_sphere";
  } else {
    doc["exponent_s"] = config.params.exponent();
  }
  doc["theta_min"] = config.theta_min;
  doc["dt"] = config.dt;
  doc["t_end"] = config.t_end;
  doc["init"] = to_string(config.init);
  doc["seed"] = config.seed;
  doc["record_every"] = config.record_every;
  return doc;
}

void write_moment_csv(std::ostream& out, const MomentRecord& record) {
  out << kMomentCsvHeader << '\n';
  for (std::size_t i = 0; i < record.size(); ++i) {
    out << format_number(record.times[i]) << ',' << format_number(record.M0[i]) << ','
        << format_number(record.M2[i]) << ',' << format_number(record.M4[i]) << ','
        << format_number(record.M6[i]) << ',' << format_number(record.momentum[i][0]) << ','
        << format_number(record.momentum[i][1]) << ',' << format_number(record.momentum[i][2])
        << ',' << format_number(record.entropy_est[i]) << '\n';
  }
}

MomentRecord read_moment_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kMomentCsvHeader) {
    throw DomainError("moment CSV must start with the header '" + std::string(kMomentCsvHeader) + "'");
  }
  MomentRecord record;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> fields;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(parse_double(std::string_view(line).substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 9) throw DomainError("moment CSV rows must have 9 fields");
    record.times.push_back(fields[0]);
    record.M0.push_back(fields[1]);
    record.M2.push_back(fields[2]);
    record.M4.push_back(fields[3]);
    record.M6.push_back(fields[4]);
    record.momentum.push_back({fields[5], fields[6], fields[7]});
    record.entropy_est.push_back(fields[8]);
  }
  return record;
}

}  // namespace ipl
