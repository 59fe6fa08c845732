#ifndef THERMOSCOPE_ERROR_HPP
#define THERMOSCOPE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace thermoscope {

/// Domain/solver failure with a machine-parsable kind tag. The CLI prints
/// these as "error: <kind>: <detail>" and exits 1.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& detail)
      : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

namespace errkind {
inline constexpr const char* dimension = "dimension";
inline constexpr const char* normalization = "normalization";
inline constexpr const char* empty_density = "empty-density";
inline constexpr const char* input = "input";
inline constexpr const char* infeasible_target = "infeasible-target";
inline constexpr const char* degenerate_system = "degenerate-system";
inline constexpr const char* domain = "domain";
inline constexpr const char* excluded_volume = "excluded-volume";
inline constexpr const char* no_critical_point = "no-critical-point";
inline constexpr const char* no_coexistence = "no-coexistence";
inline constexpr const char* anchor = "anchor";
inline constexpr const char* grid = "grid";
inline constexpr const char* consistency = "consistency";
inline constexpr const char* config = "config";
inline constexpr const char* io = "io";
}  // namespace errkind

}  // namespace thermoscope

#endif
