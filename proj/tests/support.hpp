#pragma once

#include <doctest.h>

#include <functional>

#include "delone/errors.hpp"

// Error code raised by f, failing the test if nothing is thrown.
inline delone::ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const delone::Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return delone::ErrorCode::InvalidArgument;
}
