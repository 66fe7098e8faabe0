#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace osa::cli {

/// Bundled scenario documents used by the reproduction targets.
std::vector<std::string> preset_names();

/// Raw JSON of a preset. Throws std::out_of_range for unknown names.
std::string_view preset_json(std::string_view name);

}  // namespace osa::cli
