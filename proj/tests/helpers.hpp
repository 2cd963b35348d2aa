#pragma once

#include <string>

#include "mifkit/groupspec.hpp"

inline std::string group_path(const std::string& name) {
  return std::string(MIFKIT_SOURCE_DIR) + "/groups/" + name;
}

inline mifkit::GroupSpec load_group(const std::string& name) {
  return mifkit::load_group_spec(group_path(name));
}

inline std::string fixture_path(const std::string& name) {
  return std::string(MIFKIT_SOURCE_DIR) + "/tests/fixtures/" + name;
}
