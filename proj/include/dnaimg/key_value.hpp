#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dnaimg {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// `key = value` lines; '#' starts a comment, blank lines are skipped.
/// Throws UsageError on a line without '=' or a repeated key.
KeyValues parse_key_values(std::string_view text);

/// Whole-string conversions; throw UsageError naming `key` on failure.
double parse_double(const std::string& key, const std::string& value);
std::uint64_t parse_uint(const std::string& key, const std::string& value);
/// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace dnaimg
