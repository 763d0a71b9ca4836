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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "otalearn/rational.hpp"

namespace otal {

// Classification of a word by an automaton: accepted, rejected, or "exited"
// (the word left the original automaton, or is not even a well-formed clock
// history). Printed as '+', '-', 'x'.
enum class Verdict : char {
    accept = '+',
    reject = '-',
    exited = 'x',
};

inline char verdict_char(Verdict v) { return static_cast<char>(v); }

// One action of a timed word. For delay words `time` is the delay since the
// previous action, for logical words it is the clock value read at the action.
struct TimedStep {
    std::string action;
    Rat time;

    bool operator==(const TimedStep&) const = default;
};

// A timed step together with the clock-reset flag taken after the action.
struct ResetTimedStep {
    std::string action;
    Rat time;
    bool reset = true;

    bool operator==(const ResetTimedStep&) const = default;
};

using DelayWord = std::vector<TimedStep>;
using LogicalWord = std::vector<TimedStep>;
using ResetDelayWord = std::vector<ResetTimedStep>;
using ResetLogicalWord = std::vector<ResetTimedStep>;

// Drops the reset annotations.
LogicalWord project(const ResetLogicalWord& w);
DelayWord project_delay(const ResetDelayWord& w);

// Attaches reset flags to a plain word (sizes must match).
ResetLogicalWord attach_resets(const LogicalWord& w, const std::vector<bool>& resets);

// Converts a reset-delay word into the logical view: each action is labelled
// with the clock value it observes, given the recorded resets. Raises
// InvalidWord on a negative delay.
ResetLogicalWord to_logical(const ResetDelayWord& w);

// Inverse of to_logical. Raises InvalidWord when some delay would have to be
// negative, i.e. the logical word is not a possible clock history.
ResetDelayWord to_delay(const ResetLogicalWord& w);

// Index of the first step at which the word stops being a possible clock
// history: a negative value, or a clock value below the running clock (no
// reset in between). nullopt when the word is valid throughout.
std::optional<std::size_t> first_invalid(const ResetLogicalWord& w);

inline bool is_valid(const ResetLogicalWord& w) { return !first_invalid(w).has_value(); }

// Region-respecting rounding: every fractional clock value becomes
// floor + 1/10; integers and resets are untouched.
ResetLogicalWord normalize(const ResetLogicalWord& w);

// The clock region of a single value: the point [n,n] for integers, the open
// unit interval (n,n+1) otherwise.
struct PointRegion {
    long long lower = 0;
    bool is_point = true;

    bool operator==(const PointRegion&) const = default;
};

PointRegion region_of(const Rat& v);

// Position of an action in the alphabet; StructuralError if absent.
std::size_t action_index(const std::vector<std::string>& alphabet, const std::string& action);

// Canonical word order: shorter words first, equal lengths pointwise by
// (alphabet position, time value, reset) with "no reset" before "reset".
bool canonical_less(const ResetLogicalWord& a, const ResetLogicalWord& b,
                    const std::vector<std::string>& alphabet);
bool canonical_less(const LogicalWord& a, const LogicalWord& b,
                    const std::vector<std::string>& alphabet);

// Text forms: "(a,1.1)(b,0)" and "(a,1.1,N)(b,0,R)"; the empty word renders
// as the empty string. Parsing lives in serialize.hpp.
std::string word_text(const DelayWord& w);
std::string word_text(const ResetDelayWord& w);

} // namespace otal
