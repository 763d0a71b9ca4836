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

#include "otalearn/equivalence.hpp"
#include "otalearn/errors.hpp"
#include "otalearn/teacher.hpp"
#include "support.hpp"

using namespace otal;
using otal::test::fig_automaton;
using otal::test::rs;
using otal::test::ts;

TEST_CASE("the teacher insists on a deterministic target") {
    Ota bad = fig_automaton();
    bad.transitions.push_back({0, "a", {2, true, 5, false}, true, 0});
    CHECK_THROWS_AS(Teacher(bad, true), NotDeterministic);
}

TEST_CASE("membership answers come from simulating the completed target") {
    Teacher t(fig_automaton(), true);
    CHECK(t.alphabet() == std::vector<std::string>{"a", "b"});

    auto [w1, v1] = t.membership_logical({ts("a", "1.1")});
    CHECK(v1 == Verdict::accept);
    CHECK(w1 == ResetLogicalWord{rs("a", "1.1", 'N')});

    auto [w2, v2] = t.membership_logical({ts("b", "0")});
    CHECK(v2 == Verdict::reject);
    CHECK(w2 == ResetLogicalWord{rs("b", "0", 'R')});

    // leaves the original target, so the sink trick reports an exit
    auto [w3, v3] = t.membership_logical({ts("a", "3")});
    CHECK(v3 == Verdict::exited);
    CHECK(w3 == ResetLogicalWord{rs("a", "3", 'R')});

    CHECK(t.membership_delay({ts("a", "1.1"), ts("b", "0.9")}) == Verdict::accept);
    CHECK(t.membership_delay({ts("a", "3")}) == Verdict::exited);
    CHECK(t.membership_queries == 5);
    CHECK(t.equivalence_queries == 0);
}

TEST_CASE("without the sink trick leaving the target is an ordinary reject") {
    Teacher t(fig_automaton(), false);
    CHECK(t.membership_logical({ts("a", "3")}).second == Verdict::reject);
    CHECK(t.membership_delay({ts("a", "3")}) == Verdict::reject);
}

TEST_CASE("the completed target is complete and keeps the language") {
    Teacher t(fig_automaton(), true);
    const Ota& c = t.completed_target();
    CHECK(c.locations.size() == 3);
    CHECK(c.transitions.size() == 10);
    CHECK(validate(c).complete);
    CHECK(check_equivalence(c, fig_automaton()).equivalent);
}

TEST_CASE("equivalence hands back an annotated counterexample") {
    Teacher t(fig_automaton(), true);

    Ota empty;
    empty.alphabet = {"a", "b"};
    empty.locations = {"q0"};
    empty.initial = 0;
    CtxAnswer miss = t.equivalence(empty);
    REQUIRE_FALSE(miss.equivalent);
    CHECK(miss.sign == '+');
    CHECK(miss.ctx == ResetDelayWord{rs("a", "1.5", 'N')});

    Ota loud = fig_automaton();
    loud.accepting = {0, 1};
    CtxAnswer extra = t.equivalence(loud);
    REQUIRE_FALSE(extra.equivalent);
    CHECK(extra.sign == '-');
    CHECK(extra.ctx.empty());

    CtxAnswer same = t.equivalence(fig_automaton());
    CHECK(same.equivalent);
    CHECK(t.equivalence_queries == 3);
    CHECK(t.membership_queries == 0);
}
