/*
 * Copyright 2026 the otalearn authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <vector>

#include "otalearn/automaton.hpp"
#include "otalearn/rational.hpp"

namespace otal {

// Splits [0, infinity) into one guard interval per input value, such that the
// i-th interval contains the i-th value, the intervals are pairwise disjoint,
// their union is [0, infinity), and all endpoints are integers. The input
// must be strictly increasing and start at 0, otherwise
// PartitionPreconditionViolated is raised.
//
// With values mu_0 = 0 < mu_1 < ... < mu_n (and mu_{n+1} taken as infinity,
// which counts as an integer), the interval for mu_i is
//   [mu_i, mu_{i+1})           if both are integers,
//   (floor(mu_i), mu_{i+1})    if only mu_{i+1} is,
//   [mu_i, floor(mu_{i+1})]    if only mu_i is,
//   (floor(mu_i), floor(mu_{i+1})]  if neither is.
std::vector<Guard> partition_cover(const std::vector<Rat>& values);

} // namespace otal
