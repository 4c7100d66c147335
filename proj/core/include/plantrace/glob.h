#pragma once

#include <string>
#include <string_view>

namespace plantrace {

// Shell-style match: `*` and `?` stop at '/', `**` spans directories.
bool glob_match(std::string_view pattern, std::string_view text);

// Path match for classifier patterns. Patterns without '/' are tested against
// the basename; patterns with '/' against every suffix of `path` that starts at
// a directory boundary, so "tests/**" matches "pkg/tests/unit/test_a.py".
bool path_matches(std::string_view pattern, std::string_view path);

// Strips "./" prefixes and duplicate slashes.
std::string normalize_path(std::string_view path);

}  // namespace plantrace
