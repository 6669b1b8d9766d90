#pragma once

#include <functional>

#include <gtest/gtest.h>

#include "gamekg/error.hpp"

namespace gamekg::testing {

/// Code of the gamekg::Error thrown by `f`; records a failure if none is.
inline ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected a gamekg::Error";
  return ErrorCode::io;
}

}  // namespace gamekg::testing
