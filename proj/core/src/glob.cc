#include "plantrace/glob.h"

#include <vector>

namespace plantrace {

namespace {

bool match_from(std::string_view p, std::string_view t) {
  std::size_t pi = 0;
  std::size_t ti = 0;
  while (pi < p.size()) {
    if (p[pi] == '*') {
      const bool deep = pi + 1 < p.size() && p[pi + 1] == '*';
      std::size_t next = pi + (deep ? 2 : 1);
      // "**/" also matches zero directories.
      if (deep && next < p.size() && p[next] == '/' &&
          match_from(p.substr(next + 1), t.substr(ti))) {
        return true;
      }
      for (std::size_t k = ti; k <= t.size(); ++k) {
        if (match_from(p.substr(next), t.substr(k))) return true;
        if (k < t.size() && !deep && t[k] == '/') break;
      }
      return false;
    }
    if (ti >= t.size()) return false;
    if (p[pi] == '?') {
      if (t[ti] == '/') return false;
    } else if (p[pi] != t[ti]) {
      return false;
    }
    ++pi;
    ++ti;
  }
  return ti == t.size();
}

}  // namespace

bool glob_match(std::string_view pattern, std::string_view text) {
  return match_from(pattern, text);
}

std::string normalize_path(std::string_view path) {
  std::string out;
  out.reserve(path.size());
  for (char c : path) {
    if (c == '/' && !out.empty() && out.back() == '/') continue;
    out.push_back(c);
  }
  while (out.starts_with("./")) out.erase(0, 2);
  std::string::size_type pos;
  while ((pos = out.find("/./")) != std::string::npos) out.erase(pos, 2);
  return out;
}

bool path_matches(std::string_view pattern, std::string_view path) {
  const std::string norm = normalize_path(path);
  std::string_view view = norm;
  if (pattern.find('/') == std::string_view::npos) {
    const auto slash = view.rfind('/');
    return glob_match(pattern, slash == std::string_view::npos ? view : view.substr(slash + 1));
  }
  if (glob_match(pattern, view)) return true;
  for (std::size_t i = 0; i < view.size(); ++i) {
    if (view[i] == '/' && glob_match(pattern, view.substr(i + 1))) return true;
  }
  return false;
}

}  // namespace plantrace
