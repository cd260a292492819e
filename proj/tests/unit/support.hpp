#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "homog1d/errors.hpp"

namespace homog1d::test {

/// Code of the homog1d::Error thrown by `f`, or nullopt if nothing was thrown.
template <class F>
std::optional<ErrorCode> error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("homog1d_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace homog1d::test
