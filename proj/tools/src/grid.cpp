#include <charconv>
#include <cmath>
#include <numbers>

#include "ipl/errors.hpp"
#include "ipl/kernel.hpp"
#include "ipl_cli/cli.hpp"

namespace ipl::cli {

namespace {

double parse_real(std::string_view text) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) {
    throw DomainError("malformed number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

double parse_scalar(std::string_view text) {
  const auto at = text.find("pi");
  if (at == std::string_view::npos) return parse_real(text);

  double factor = 1.0;
  std::string_view head = text.substr(0, at);
  if (!head.empty() && head.back() == '*') head.remove_suffix(1);
  if (!head.empty()) factor = parse_real(head);

  std::string_view tail = text.substr(at + 2);
  if (!tail.empty()) {
    if (tail.front() != '/') throw DomainError("malformed number '" + std::string(text) + "'");
    const double divisor = parse_real(tail.substr(1));
    if (divisor == 0.0) throw DomainError("division by zero in '" + std::string(text) + "'");
    factor /= divisor;
  }
  return factor * std::numbers::pi;
}

GridSpec parse_grid(std::string_view text, bool log) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
    throw DomainError("grid spec must look like lo:hi:count, got '" + std::string(text) + "'");
  }
  GridSpec grid{parse_scalar(text.substr(0, first)), parse_scalar(text.substr(first + 1, second - first - 1)), 0,
                log};
  const double count = parse_real(text.substr(second + 1));
  if (count != std::floor(count) || count < 1 || count > 10'000'000) {
    throw DomainError("grid count must be a positive integer");
  }
  grid.count = static_cast<int>(count);
  if (!(grid.lo <= grid.hi) || (grid.count > 1 && grid.lo == grid.hi)) {
    throw DomainError("grid needs lo < hi");
  }
  if (log && !(grid.lo > 0.0)) throw DomainError("log grid needs lo > 0");
  return grid;
}

std::vector<double> expand(const GridSpec& grid) {
  return grid.log ? log_grid(grid.lo, grid.hi, grid.count) : linear_grid(grid.lo, grid.hi, grid.count);
}

std::vector<InteractionParams> parse_exponents(const std::vector<std::string>& items) {
  std::vector<InteractionParams> out;
  for (const std::string& item : items) {
    std::size_t start = 0;
    while (start <= item.size()) {
      const std::size_t comma = std::min(item.find(',', start), item.size());
      const std::string token = item.substr(start, comma - start);
      if (token.empty()) throw DomainError("empty exponent in list '" + item + "'");
      out.push_back(InteractionParams::parse(token));
      start = comma + 1;
    }
  }
  if (out.empty()) throw DomainError("no exponent given");
  return out;
}

}  // namespace ipl::cli
