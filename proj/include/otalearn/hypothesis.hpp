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
#include "otalearn/table.hpp"

namespace otal {

// Finite-automaton view of a prepared table: one location per S row, one
// edge per non-empty table word, labelled by its last step (action, clock
// value, reset).
struct DfaEdge {
    int source = 0;
    ResetTimedStep label;
    int target = 0;

    bool operator==(const DfaEdge&) const = default;
};

struct TableDfa {
    int locations = 0;
    int initial = 0;
    std::vector<char> accepting;
    std::vector<DfaEdge> edges;
    // Location of every table word, combined S-then-R indexing.
    std::vector<int> word_location;
    // Location whose S row is uniformly x (the learned trap), -1 if none.
    int exit_location = -1;
};

// Builds the location/edge view of a prepared table. TableNotPrepared when
// some R row matches no S row; HypothesisConflict when two table words
// induce the same (location, action, clock value) with a different reset or
// target, which under guessed resets marks the instance as bad.
//
// Two table words can share (location, action, clock value) while their
// observed resets honestly differ: the merged rows may sit in different
// states of the target. With merge_reset_ties the first edge wins and the
// later one is dropped; rows that disagree on the target location still
// throw, since the consistency sweep is supposed to have separated those.
TableDfa build_dfa(const ObsTable& t, bool merge_reset_ties = false);

// Folds the edge clock values of each (location, action) into an interval
// partition of [0, infinity), yielding a complete deterministic one-clock
// automaton. Locations are named q0, q1, ... in S order; `sink` is set to the
// all-x location when there is one.
Ota build_hypothesis(const TableDfa& dfa, const std::vector<std::string>& alphabet);

// Convenience composition of build_dfa and build_hypothesis.
Ota table_to_hypothesis(const ObsTable& t, bool merge_reset_ties = false);

} // namespace otal
