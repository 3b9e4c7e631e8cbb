#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace anchorlab {

// Dates are carried as days since 1970-01-01.
std::optional<std::int64_t> parse_iso_date(std::string_view text);
std::string format_iso_date(std::int64_t epoch_day);

// Ordinal of the Monday starting the ISO week that contains the day; equal
// keys mean same ISO week.
std::int64_t iso_week_monday(std::int64_t epoch_day);

}  // namespace anchorlab
