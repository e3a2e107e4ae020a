#pragma once

#include <initializer_list>
#include <string>
#include <string_view>

namespace fracpow {

/// Locale-independent rendering with 17 significant digits.
std::string format_double(double value);

/// Joins already-formatted fields with commas.
std::string csv_join(std::initializer_list<std::string_view> fields);

}  // namespace fracpow
