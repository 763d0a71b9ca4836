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

#include "otalearn/automaton.hpp"

namespace otal {

struct EquivResult {
    bool equivalent = true;
    // Meaningful only when !equivalent. The empty word is a possible witness.
    DelayWord witness;
    // '-': the first automaton accepts the witness and the second rejects;
    // '+': the other way around.
    char sign = '+';
};

// Decides timed-language equivalence of two deterministic one-clock automata
// over the same alphabet by walking the synchronous product of their
// completions through the two-clock region graph, carrying one concrete
// witness valuation per region state. Returns a canonical shortest
// counterexample when the languages differ: breadth-first layers with a fixed
// edge order (the time successor first, then actions in alphabet order),
// preferring a word the first automaton wrongly accepts.
EquivResult check_equivalence(const Ota& a, const Ota& b);

} // namespace otal
