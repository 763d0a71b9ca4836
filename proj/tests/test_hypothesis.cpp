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

#include <doctest.h>

#include "otalearn/errors.hpp"
#include "otalearn/hypothesis.hpp"
#include "support.hpp"

using namespace otal;
using otal::test::q;
using otal::test::rs;

namespace {

// Handcrafted tables: cells carry only verdicts (the annotation is the row
// itself), which is all the construction reads.
void add_row(ObsTable& t, bool core, const ResetLogicalWord& w,
             const std::vector<Verdict>& values) {
    std::vector<Cell> cells;
    for (Verdict v : values) cells.push_back({v, w});
    if (core) {
        t.s_words.push_back(w);
        t.s_cells.push_back(std::move(cells));
    } else {
        t.r_words.push_back(w);
        t.r_cells.push_back(std::move(cells));
    }
}

}  // namespace

TEST_CASE("a two-location table folds into a complete automaton") {
    ObsTable t;
    t.alphabet = {"a"};
    t.suffixes = {{}};
    add_row(t, true, {}, {Verdict::reject});
    add_row(t, true, {rs("a", "1", 'N')}, {Verdict::accept});
    add_row(t, false, {rs("a", "0", 'R')}, {Verdict::reject});
    add_row(t, false, {rs("a", "1", 'N'), rs("a", "0", 'R')}, {Verdict::reject});

    TableDfa dfa = build_dfa(t);
    CHECK(dfa.locations == 2);
    CHECK(dfa.initial == 0);
    CHECK(dfa.accepting == std::vector<char>{0, 1});
    CHECK(dfa.exit_location == -1);
    REQUIRE(dfa.edges.size() == 3);
    CHECK(dfa.edges[0] == DfaEdge{0, rs("a", "1", 'N'), 1});
    CHECK(dfa.edges[1] == DfaEdge{0, rs("a", "0", 'R'), 0});
    CHECK(dfa.edges[2] == DfaEdge{1, rs("a", "0", 'R'), 0});
    CHECK(dfa.word_location == std::vector<int>{0, 1, 0, 0});

    Ota h = build_hypothesis(dfa, t.alphabet);
    CHECK(h.locations == std::vector<std::string>{"q0", "q1"});
    CHECK(h.accepting == std::set<int>{1});
    CHECK_FALSE(h.sink.has_value());
    REQUIRE(h.transitions.size() == 3);
    CHECK(h.transitions[0] == Transition{0, "a", {0, true, 1, false}, true, 0});
    CHECK(h.transitions[1] == Transition{0, "a", {1, true, std::nullopt, false}, false, 1});
    CHECK(h.transitions[2] == Transition{1, "a", Guard::full(), true, 0});

    Validation v = validate(h);
    CHECK(v.deterministic);
    CHECK(v.complete);

    CHECK(table_to_hypothesis(t).transitions == h.transitions);
}

TEST_CASE("fractional clock values open their guard boundaries") {
    ObsTable t;
    t.alphabet = {"a"};
    t.suffixes = {{}};
    add_row(t, true, {}, {Verdict::reject});
    add_row(t, true, {rs("a", "1.1", 'N')}, {Verdict::accept});
    add_row(t, false, {rs("a", "0", 'R')}, {Verdict::reject});
    add_row(t, false, {rs("a", "3", 'R')}, {Verdict::reject});
    add_row(t, false, {rs("a", "1.1", 'N'), rs("a", "0", 'R')}, {Verdict::reject});

    Ota h = table_to_hypothesis(t);
    // values 0, 1.1, 3 at (q0, a) split [0,inf) as [0,1], (1,3), [3,inf)
    REQUIRE(h.transitions.size() == 4);
    CHECK(h.transitions[0] == Transition{0, "a", {0, true, 1, true}, true, 0});
    CHECK(h.transitions[1] == Transition{0, "a", {1, false, 3, false}, false, 1});
    CHECK(h.transitions[2] == Transition{0, "a", {3, true, std::nullopt, false}, true, 0});
    CHECK(h.transitions[3] == Transition{1, "a", Guard::full(), true, 0});
}

TEST_CASE("an all-x core row becomes the designated trap location") {
    ObsTable t;
    t.alphabet = {"a"};
    t.suffixes = {{}};
    add_row(t, true, {}, {Verdict::reject});
    add_row(t, true, {rs("a", "0", 'R')}, {Verdict::exited});
    add_row(t, false, {rs("a", "0", 'R'), rs("a", "0", 'R')}, {Verdict::exited});

    TableDfa dfa = build_dfa(t);
    CHECK(dfa.exit_location == 1);

    Ota h = build_hypothesis(dfa, t.alphabet);
    REQUIRE(h.sink.has_value());
    CHECK(*h.sink == 1);
    CHECK_FALSE(h.is_accepting(1));
    CHECK(validate(h).complete);
}

TEST_CASE("mixed verdict rows are not a trap") {
    ObsTable t;
    t.alphabet = {"a"};
    t.suffixes = {{}, {{"a", Rat(1)}}};
    add_row(t, true, {}, {Verdict::reject, Verdict::accept});
    add_row(t, true, {rs("a", "0", 'R')}, {Verdict::exited, Verdict::reject});
    add_row(t, false, {rs("a", "0", 'R'), rs("a", "0", 'R')},
            {Verdict::exited, Verdict::reject});
    add_row(t, false, {rs("a", "1", 'N')}, {Verdict::reject, Verdict::accept});

    TableDfa dfa = build_dfa(t);
    CHECK(dfa.exit_location == -1);
    CHECK_FALSE(build_hypothesis(dfa, t.alphabet).sink.has_value());
}

TEST_CASE("an R row matching no core row cannot build") {
    ObsTable t;
    t.alphabet = {"a"};
    t.suffixes = {{}};
    add_row(t, true, {}, {Verdict::reject});
    add_row(t, false, {rs("a", "1", 'N')}, {Verdict::accept});
    CHECK_THROWS_AS(build_dfa(t), TableNotPrepared);
}

TEST_CASE("same source and clock value with different outcomes is a conflict") {
    ObsTable t;
    t.alphabet = {"a"};
    t.suffixes = {{}};
    add_row(t, true, {}, {Verdict::reject});
    add_row(t, true, {rs("a", "1", 'N')}, {Verdict::accept});
    add_row(t, false, {rs("a", "0", 'R')}, {Verdict::reject});
    add_row(t, false, {rs("a", "1", 'N'), rs("a", "0", 'R')}, {Verdict::reject});
    // (a,0,R)(a,1,N) starts at the same location as eps, fires a at the same
    // clock value 1, but lands on a rejecting row while (a,1,N) accepts
    add_row(t, false, {rs("a", "0", 'R'), rs("a", "1", 'N')}, {Verdict::reject});
    CHECK_THROWS_AS(build_dfa(t), HypothesisConflict);

    SUBCASE("and a reset disagreement at one clock value is too") {
        t.r_words.pop_back();
        t.r_cells.pop_back();
        add_row(t, false, {rs("a", "0", 'R'), rs("a", "1", 'R')}, {Verdict::accept});
        CHECK_THROWS_AS(build_dfa(t), HypothesisConflict);
    }
}

TEST_CASE("a location with no observations at an action cannot build") {
    ObsTable t;
    t.alphabet = {"a"};
    t.suffixes = {{}};
    add_row(t, true, {}, {Verdict::reject});
    add_row(t, true, {rs("a", "1", 'N')}, {Verdict::accept});
    add_row(t, false, {rs("a", "0", 'R')}, {Verdict::reject});
    // no extension of (a,1,N) at all: q1 has no observed a values
    TableDfa dfa = build_dfa(t);
    CHECK_THROWS_AS(build_hypothesis(dfa, t.alphabet), TableNotPrepared);
}

TEST_CASE("observed values that start above zero violate the cover rule") {
    ObsTable t;
    t.alphabet = {"a"};
    t.suffixes = {{}};
    add_row(t, true, {}, {Verdict::reject});
    add_row(t, true, {rs("a", "1", 'N')}, {Verdict::accept});
    add_row(t, false, {rs("a", "1", 'N'), rs("a", "0", 'R')}, {Verdict::reject});
    // q0's only a value is 1, so the partition cannot start at 0
    CHECK_THROWS_AS(table_to_hypothesis(t), PartitionPreconditionViolated);
}
