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

#include <cstdint>

#include "otalearn/automaton.hpp"

namespace otal {

struct GeneratorConfig {
    int locations = 4;
    int alphabet = 4;
    int kappa = 20;
    std::uint64_t seed = 1;
    // Expected fraction of guard intervals that carry a transition.  1.0
    // roughly matches hand-written examples; lower values give sparser
    // automata with more behaviour ending in the trap.
    double density = 1.0;
};

// Draws a random deterministic automaton.  The result always has at least
// one accepting location and at least one transition out of the initial
// location, so the language is not trivially fixed by the shape alone.
// The same config yields the same automaton on every platform.
Ota generate_automaton(const GeneratorConfig& config);

}  // namespace otal

