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

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "otalearn/words.hpp"

namespace otal {

// Clock constraint over [0, infinity): an interval with integer endpoints.
// An absent upper bound means unbounded (always paired with an open end).
struct Guard {
    long long lower = 0;
    bool lower_closed = true;
    std::optional<long long> upper;
    bool upper_closed = false;

    bool contains(const Rat& v) const;
    static Guard full() { return {}; }

    bool operator==(const Guard&) const = default;
};

std::string guard_text(const Guard& g);   // "[2,4)", "(1,3)", "[0,+)"

struct Transition {
    int source = 0;
    std::string action;
    Guard guard;
    bool reset = true;
    int target = 0;

    bool operator==(const Transition&) const = default;
};

// One-clock timed automaton with named locations addressed by index.
// `sink` marks a known trap location (the one a completion adds); runs with
// the accelerating trick treat entering it as leaving the original automaton.
struct Ota {
    std::vector<std::string> alphabet;
    std::vector<std::string> locations;
    int initial = 0;
    std::set<int> accepting;
    std::vector<Transition> transitions;
    std::optional<int> sink;

    bool is_accepting(int loc) const { return accepting.count(loc) > 0; }
    int location_id(const std::string& name) const;
};

struct Validation {
    bool deterministic = true;
    bool complete = true;
    long long kappa = 0;   // largest finite guard constant, 0 if none
};

// Structural and semantic validation. Malformed input (dangling indices,
// unknown actions, duplicate names, empty alphabet) raises StructuralError;
// overlap/coverage results are reported, not raised.
Validation validate(const Ota& a);

long long kappa_of(const Ota& a);

// The maximal sub-intervals of [0, infinity) not covered by any guard at
// (loc, action), in increasing order. Empty when the pair is total.
std::vector<Guard> uncovered(const Ota& a, int loc, const std::string& action);

// Completion: adds a non-accepting trap location plus transitions (reset on)
// for every uncovered cell, and self-loops on the trap, only when some cell
// is actually uncovered. The result's `sink` marks the trap. Already-complete
// automata come back unchanged. Raises NotDeterministic on overlapping guards.
Ota complete(const Ota& a);

// Collapses locations that behave identically on every clock value they can
// actually hold: same acceptance and, per action, the same (successor class,
// reset) step function above the location's reachable clock infimum. Values a
// location can never carry are ignored, which lets copies of one behavior
// entered at different clocks collapse. The quotient accepts the same timed
// language; guards are tidied by unioning adjacent agreeing intervals.
Ota merge_equivalent_locations(const Ota& a);

struct DelayRun {
    ResetDelayWord annotated;
    Verdict verdict = Verdict::reject;
    std::vector<int> path;     // indices of fired transitions
};

struct LogicalRun {
    ResetLogicalWord annotated;
    Verdict verdict = Verdict::reject;
    std::vector<int> path;
};

// Runs a delay word from the initial location. With `trick` set, a step with
// no enabled transition (or a step into the marked sink) stops the run with
// verdict x; without it the automaton must be total on the reached steps.
// Resets from a stopping step onward are reported as set. Raises InvalidWord
// on negative delays.
DelayRun run_delay(const Ota& a, const DelayWord& w, bool trick);

// Runs a logical word. A word that stops being a possible clock history is
// classified x with the trick and rejected without it; the annotation rule
// for resets after the stop is the same as for run_delay.
LogicalRun run_logical(const Ota& a, const LogicalWord& w, bool trick);

} // namespace otal
