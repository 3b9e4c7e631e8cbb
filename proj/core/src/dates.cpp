#include "anchorlab/dates.hpp"

#include <charconv>
#include <chrono>

namespace anchorlab {

namespace {

std::optional<int> parse_int(std::string_view s) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

}  // namespace

std::optional<std::int64_t> parse_iso_date(std::string_view text) {
    // YYYY-MM-DD, nothing else.
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    const auto y = parse_int(text.substr(0, 4));
    const auto m = parse_int(text.substr(5, 2));
    const auto d = parse_int(text.substr(8, 2));
    if (!y || !m || !d) return std::nullopt;
    const std::chrono::year_month_day ymd{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*m)},
                                          std::chrono::day{static_cast<unsigned>(*d)}};
    if (!ymd.ok()) return std::nullopt;
    return std::chrono::sys_days{ymd}.time_since_epoch().count();
}

std::string format_iso_date(std::int64_t epoch_day) {
    const std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{epoch_day}}};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::int64_t iso_week_monday(std::int64_t epoch_day) {
    // 1970-01-01 was a Thursday; Monday-based weekday index of that day is 3.
    const std::int64_t dow = ((epoch_day + 3) % 7 + 7) % 7;
    return epoch_day - dow;
}

}  // namespace anchorlab
