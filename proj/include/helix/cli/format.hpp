#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace helix::cli {

/// Fixed 12-significant-digit rendering used by every CSV column.
std::string format_number(double value);

/// Empty cell for an absent value.
std::string format_optional(const std::optional<double> &value);

/// Writes `contents` to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path &path, std::string_view contents);

} // namespace helix::cli
