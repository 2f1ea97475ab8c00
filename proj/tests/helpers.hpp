#pragma once

#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "katufrac/katufrac.hpp"

namespace testing_util {

inline katufrac::FunctionSpec corpus(const std::string& name, const katufrac::Interval& range) {
  return katufrac::get(name, range).spec;
}

/// Corpus entry for the composite operators on iv, i.e. on [a^rho, b^rho].
inline katufrac::FunctionSpec corpus_for(const std::string& name, const katufrac::Interval& iv,
                                         double rho) {
  return corpus(name, iv.powered(rho));
}

inline katufrac::FunctionSpec fn(const std::string& name, katufrac::RealFn f) {
  katufrac::FunctionSpec s;
  s.name = name;
  s.eval = std::move(f);
  return s;
}

inline ::testing::AssertionResult rel_near(double actual, double expected, double rel) {
  const double scale = std::max(std::abs(expected), 1e-300);
  const double err = std::abs(actual - expected) / scale;
  if (err <= rel) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "actual " << actual << " expected " << expected
                                       << " relative error " << err << " > " << rel;
}

}  // namespace testing_util
