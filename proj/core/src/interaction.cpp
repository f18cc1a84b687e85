#include "ipl/interaction.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <system_error>

#include "ipl/errors.hpp"

namespace ipl {

InteractionParams InteractionParams::power_law(double s) {
  if (!std::isfinite(s) || !(s > 2.0)) {
    throw DomainError("exponent must exceed 2");
  }
  InteractionParams p;
  p.exponent_ = s;
  return p;
}

double InteractionParams::exponent() const noexcept {
  return exponent_ ? *exponent_ : std::numeric_limits<double>::infinity();
}

double InteractionParams::gamma() const noexcept {
  if (!exponent_) return 1.0;
  return (*exponent_ - 5.0) / (*exponent_ - 1.0);
}

double InteractionParams::singular_exponent() const noexcept {
  if (!exponent_) return 1.0;
  return 1.0 + 2.0 / (*exponent_ - 1.0);
}

std::string InteractionParams::label() const {
  if (!exponent_) return "hard_sphere";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, *exponent_);
  return std::string(buf, res.ptr);
}

InteractionParams InteractionParams::parse(const std::string& text) {
  if (text == "hard_sphere" || text == "inf" || text == "infinity") return hard_sphere();
  double s = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, s);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw DomainError("cannot parse exponent '" + text + "'");
  }
  return power_law(s);
}

}  // namespace ipl
