#pragma once

#include <optional>
#include <string>

namespace ipl {

/// Interaction law: either the inverse power law U(r) = r^{1-s} with a finite
/// exponent s > 2, or the hard-sphere limit s = infinity.
class InteractionParams {
 public:
  /// Throws DomainError("exponent must exceed 2") unless s is finite and > 2.
  static InteractionParams power_law(double s);
  static InteractionParams hard_sphere() noexcept { return InteractionParams{}; }

  bool is_hard_sphere() const noexcept { return !exponent_.has_value(); }

  /// Finite exponent s; +inf for hard spheres.
  double exponent() const noexcept;

  /// Velocity exponent gamma = (s-5)/(s-1); 1 for hard spheres.
  double gamma() const noexcept;

  /// Singular exponent 1 + 2/(s-1) of the grazing asymptotics; 1 for hard spheres.
  double singular_exponent() const noexcept;

  /// "hard_sphere" or the shortest round-trip decimal of s.
  std::string label() const;

  /// Parses "hard_sphere" (also "inf") or a decimal exponent.
  static InteractionParams parse(const std::string& text);

  friend bool operator==(const InteractionParams&, const InteractionParams&) = default;

 private:
  InteractionParams() = default;
  std::optional<double> exponent_;
};

}  // namespace ipl
