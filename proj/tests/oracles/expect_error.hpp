#pragma once

#include <gtest/gtest.h>

#include <optional>

#include "ranknexus/error.hpp"

namespace testing_support {

// The ranknexus::Error thrown by fn, if any.
template <typename Fn>
std::optional<ranknexus::Error> CatchError(Fn&& fn) {
  try {
    fn();
  } catch (const ranknexus::Error& e) {
    return e;
  }
  return std::nullopt;
}

}  // namespace testing_support

#define EXPECT_RN_ERROR(stmt, expected_code)                                  \
  do {                                                                        \
    auto rn_err_ = ::testing_support::CatchError([&] { (void)(stmt); });      \
    if (!rn_err_) {                                                           \
      ADD_FAILURE() << "expected " << ::ranknexus::ToString(expected_code);   \
    } else {                                                                  \
      EXPECT_EQ(rn_err_->code(), expected_code) << rn_err_->what();           \
    }                                                                         \
  } while (0)
