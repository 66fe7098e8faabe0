#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "osa/cli/csv.hpp"

namespace osa::cli {

class UnknownFigure : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> figure_ids();

struct FigureResult {
  CsvTable table;             ///< columns: x, series, value
  std::vector<std::string> observations;  ///< ordering checks on the preset scenarios
};

/// Computes one reproduction target. `max_horizon` bounds the T axis.
FigureResult reproduce(const std::string& id, std::size_t max_horizon = 8);

}  // namespace osa::cli
