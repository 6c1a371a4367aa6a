#pragma once

#include <random>

#include <doctest.h>

#include "heegrank/error.hpp"

// Fails unless fn throws heegrank::Error with the given code.
#define CHECK_ERROR_CODE(expr, expected)                                      \
  do {                                                                        \
    bool thrown_ = false;                                                     \
    try {                                                                     \
      (void)(expr);                                                           \
    } catch (const heegrank::Error& err_) {                                   \
      thrown_ = true;                                                         \
      CHECK_MESSAGE(err_.code() == (expected), err_.what());                  \
    }                                                                         \
    CHECK_MESSAGE(thrown_, "expected " << heegrank::to_string(expected));     \
  } while (0)

// Fixed seeds keep the property tests reproducible.
inline std::mt19937_64 seeded_rng(unsigned salt = 0) { return std::mt19937_64(20240601u + salt); }
