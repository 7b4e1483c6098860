#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace lst {

// Calendar date stored as a serial day count (days since 1970-01-01).
// Arithmetic in whole days; parsing/formatting is strict ISO-8601 (YYYY-MM-DD).
class Date {
public:
    Date() = default;
    explicit Date(std::int32_t serial) : serial_(serial) {}

    static Date from_civil(int year, unsigned month, unsigned day);
    static std::optional<Date> parse(std::string_view iso);

    std::int32_t serial() const { return serial_; }
    std::string to_string() const;

    Date operator+(int days) const { return Date(serial_ + days); }
    Date operator-(int days) const { return Date(serial_ - days); }
    int operator-(Date other) const { return serial_ - other.serial_; }
    Date& operator++() { ++serial_; return *this; }

    friend auto operator<=>(Date, Date) = default;

private:
    std::int32_t serial_{0};
};

}  // namespace lst
