#include "osa/errors.hpp"

#include <sstream>

namespace osa {

namespace {

std::string infeasible_message(std::size_t slot, double low, double high, const std::string& detail) {
  std::ostringstream os;
  os.precision(17);
  os << "infeasible PU throughput requirement at slot " << slot + 1 << ": " << detail
     << " (delta_low=" << low << ", delta_high=" << high << ")";
  return os.str();
}

std::string budget_message(std::uint64_t required, std::uint64_t budget) {
  std::ostringstream os;
  os << "belief tree needs " << required << " nodes, node budget is " << budget;
  return os.str();
}

}  // namespace

InfeasibleRequirement::InfeasibleRequirement(std::size_t slot, double delta_low, double delta_high,
                                             const std::string& detail)
    : std::runtime_error(infeasible_message(slot, delta_low, delta_high, detail)),
      slot_(slot),
      delta_low_(delta_low),
      delta_high_(delta_high) {}

BudgetExceeded::BudgetExceeded(std::uint64_t required, std::uint64_t budget)
    : std::runtime_error(budget_message(required, budget)), required_(required), budget_(budget) {}

}  // namespace osa
