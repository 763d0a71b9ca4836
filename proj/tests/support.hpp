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

#include <stdexcept>
#include <string>

#include "otalearn/automaton.hpp"
#include "otalearn/words.hpp"

namespace otal::test {

inline Rat q(const std::string& text) {
    auto r = Rat::parse_decimal(text);
    if (!r) throw std::runtime_error("bad rational literal " + text);
    return *r;
}

inline TimedStep ts(const std::string& action, const std::string& time) {
    return {action, q(time)};
}

inline ResetTimedStep rs(const std::string& action, const std::string& time, char reset) {
    return {action, q(time), reset == 'R'};
}

// The two-location automaton used throughout the examples: an accepting
// location reached by 'a' in (1,3) without reset, a 'b' self-loop on the
// initial location, and a guarded 'b' loop on the accepting one.
inline Ota fig_automaton() {
    Ota a;
    a.alphabet = {"a", "b"};
    a.locations = {"q0", "q1"};
    a.initial = 0;
    a.accepting = {1};
    a.transitions = {
        {0, "a", {1, false, 3, false}, false, 1},
        {0, "b", Guard::full(), true, 0},
        {1, "b", {2, true, 4, false}, true, 1},
    };
    return a;
}

// Eleven-location connection-protocol model, the larger worked case study.
inline Ota tcp_automaton() {
    Ota a;
    a.alphabet = {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j"};
    a.locations = {"CLOSED",   "LISTEN",    "SYN_SENT", "SYN_RCVD", "ESTAB",   "FINWAIT1",
                   "CLOSEWAIT", "CLOSING",  "FINWAIT2", "LASTACK",  "TIMEWAIT"};
    a.initial = 0;
    a.accepting = {0, 4};
    auto id = [&](const char* name) { return a.location_id(name); };
    a.transitions = {
        {id("CLOSED"), "a", Guard::full(), true, id("LISTEN")},
        {id("LISTEN"), "f", {1, true, std::nullopt, false}, true, id("CLOSED")},
        {id("LISTEN"), "b", {0, true, 2, true}, false, id("SYN_RCVD")},
        {id("LISTEN"), "c", {0, true, 1, true}, false, id("SYN_SENT")},
        {id("SYN_SENT"), "b", {0, true, 2, true}, false, id("SYN_RCVD")},
        {id("SYN_SENT"), "d", {0, true, 5, true}, true, id("ESTAB")},
        {id("CLOSED"), "j", Guard::full(), true, id("SYN_SENT")},
        {id("SYN_RCVD"), "e", {0, true, 5, true}, true, id("ESTAB")},
        {id("SYN_RCVD"), "f", Guard::full(), true, id("FINWAIT1")},
        {id("ESTAB"), "f", Guard::full(), false, id("FINWAIT1")},
        {id("ESTAB"), "g", Guard::full(), false, id("CLOSEWAIT")},
        {id("FINWAIT1"), "h", {0, true, 3, false}, false, id("FINWAIT2")},
        {id("FINWAIT1"), "g", {0, true, 4, false}, false, id("CLOSING")},
        {id("FINWAIT2"), "g", {0, true, 7, false}, true, id("TIMEWAIT")},
        {id("CLOSEWAIT"), "f", Guard::full(), false, id("LASTACK")},
        {id("CLOSING"), "h", {0, true, 7, false}, true, id("TIMEWAIT")},
        {id("SYN_SENT"), "f", {1, true, std::nullopt, false}, true, id("CLOSED")},
        {id("LASTACK"), "h", {2, true, 7, false}, true, id("CLOSED")},
        {id("TIMEWAIT"), "i", {2, true, 2, true}, true, id("CLOSED")},
    };
    return a;
}

} // namespace otal::test
