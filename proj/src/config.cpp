#include "specpath/config.hpp"

#include "specpath/errors.hpp"

namespace specpath {

std::string_view to_string(Mode m) noexcept {
  switch (m) {
    case Mode::kSingle:
      return "single";
    case Mode::kParallel:
      return "parallel";
    case Mode::kSpeculative:
      return "speculative";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view text) noexcept {
  if (text == "single") return Mode::kSingle;
  if (text == "parallel") return Mode::kParallel;
  if (text == "speculative") return Mode::kSpeculative;
  return std::nullopt;
}

void PlannerConfig::validate() const {
  if (max_threads < 1) throw ContractViolation("thread count must be at least 1");
  if (mode == Mode::kSpeculative && max_threads < 2)
    throw ContractViolation("speculative mode requires at least 2 threads");
  if (spec_depth < 1) throw ContractViolation("speculation depth must be at least 1");
  if (!(epsilon >= 1.0)) throw ContractViolation("epsilon must be >= 1");
  if (!(checker.virtual_cost >= 0.0)) throw ContractViolation("check cost must be >= 0");
  if (!(expansion_overhead > 0.0)) throw ContractViolation("expansion overhead must be > 0");
}

}  // namespace specpath
