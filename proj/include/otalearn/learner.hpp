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

#include <functional>
#include <string>

#include "otalearn/automaton.hpp"
#include "otalearn/table.hpp"
#include "otalearn/teacher.hpp"

namespace otal {

struct LearnStats {
    std::string mode;                 // "smart" or "normal"
    long long membership_count = 0;   // distinct questions that reached the teacher
    long long equivalence_count = 0;
    int locations_learned = 0;        // hypothesis locations, trap excluded
    int table_rows = 0;
    int table_columns = 0;
    long long explored_instances = -1;   // normal mode only (-1 = not applicable)
    long long discarded_instances = -1;
    long long cache_hits = -1;
    double wall_time_ms = 0.0;
};

struct LearnResult {
    Ota hypothesis;
    LearnStats stats;
    ObsTable table;   // the final (winning) table
};

// The trick setting lives in the teacher; the smart learner only relays its
// answers, so it needs no flag of its own.
struct SmartOptions {
    // Test hooks: called after every table change with a step tag ("init",
    // "closed", "consistent", "evidence", "ctx"), and at every equivalence
    // query with the submitted hypothesis.
    std::function<void(const char* step, const ObsTable& t)> on_step;
    std::function<void(const Ota& hypothesis, const ObsTable& t)> on_hypothesis;
};

// Learns a deterministic one-clock automaton from a smart teacher: fixpoint
// of closed/consistent/evidence-closed repairs, hypothesis construction,
// equivalence query, counterexample processing.
LearnResult learn_smart(SmartTeacher& teacher, const SmartOptions& options = {});

// Why guessed table instances were thrown away, one counter per reason.
// Their sum is what the stats report as discarded_instances.
struct NormalDiscards {
    long long invalid_conversion = 0;   // a guess implies a negative delay
    long long duplicate_prefix = 0;     // same word with two different reset guesses
    long long partition_violation = 0;  // guessed cells break hypothesis construction
    long long duplicate_instance = 0;   // identical instance already inserted
};

struct NormalOptions {
    bool trick = true;
    bool evidence_closed = false;     // off by default in the guessing search
    long long max_explored = 1000000;
    long long max_resident = 1000000;
    // Test hook: called for every instance inserted into the frontier.
    std::function<void(const ObsTable& t, long long guess_count)> on_insert;
    // When set, receives the per-reason discard counts.
    NormalDiscards* discards = nullptr;
};

// Learns from a normal teacher by searching over reset guesses: a frontier
// of table instances ordered by how many bits were guessed, cheapest first.
LearnResult learn_normal(NormalTeacher& teacher, const NormalOptions& options = {});

} // namespace otal
