// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "numerics/error.hpp"

namespace gibbs::numerics {

enum class PrecisionMode { Double, DoubleDouble };

inline std::string to_string(PrecisionMode p) {
  return p == PrecisionMode::Double ? "double" : "dd";
}

inline PrecisionMode parse_precision(const std::string& s) {
  if (s == "double") return PrecisionMode::Double;
  if (s == "dd" || s == "double-double") return PrecisionMode::DoubleDouble;
  throw InputError("unknown precision mode '" + s + "' (expected double or dd)");
}

}  // namespace gibbs::numerics
