#pragma once

#include <doctest.h>

#include <functional>

#include "rigc/error.hpp"

/// Code of the rigc::Error thrown by f; fails the test if nothing is thrown.
inline rigc::ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const rigc::Error& e) {
    return e.code();
  }
  FAIL("expected a rigc::Error");
  return rigc::ErrorCode::InvalidConfig;
}
