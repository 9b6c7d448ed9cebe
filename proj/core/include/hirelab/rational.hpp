// Copyright 2026 The hirelab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace hirelab {

// All payoff and probability comparisons in the game logic are exact.
using Rational = boost::rational<long long>;

// Renders "3" for integers, "3/4" otherwise.
std::string to_string(const Rational& r);

// Parses "3", "-3" or "3/4". Throws std::invalid_argument on malformed
// input or a zero denominator.
Rational parse_rational(const std::string& s);

double to_double(const Rational& r);

}  // namespace hirelab
