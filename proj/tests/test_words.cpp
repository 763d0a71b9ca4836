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
#include "otalearn/words.hpp"
#include "support.hpp"

using namespace otal;
using otal::test::q;
using otal::test::rs;
using otal::test::ts;

TEST_CASE("logical view accumulates the clock between resets") {
    ResetDelayWord w{rs("a", "1", 'R'), rs("a", "2", 'N'), rs("a", "3", 'N')};
    ResetLogicalWord logical = to_logical(w);
    REQUIRE(logical.size() == 3);
    CHECK(logical[0].time == q("1"));
    CHECK(logical[1].time == q("2"));
    CHECK(logical[2].time == q("5"));
    CHECK(to_delay(logical) == w);
}

TEST_CASE("delay view subtracts the previous clock value") {
    ResetLogicalWord logical{rs("a", "1.1", 'N'), rs("b", "4", 'R'), rs("b", "0.5", 'N')};
    ResetDelayWord delays = to_delay(logical);
    CHECK(delays[0].time == q("1.1"));
    CHECK(delays[1].time == q("2.9"));
    CHECK(delays[2].time == q("0.5"));
    CHECK(to_logical(delays) == logical);
}

TEST_CASE("impossible clock histories are rejected by the conversion") {
    // No reset after 1.1, so a later clock value of 0.9 cannot happen.
    ResetLogicalWord bad{rs("a", "1.1", 'N'), rs("b", "0.9", 'R')};
    CHECK(first_invalid(bad) == std::size_t{1});
    CHECK_FALSE(is_valid(bad));
    CHECK_THROWS_AS(to_delay(bad), InvalidWord);

    ResetLogicalWord good{rs("a", "1.1", 'R'), rs("b", "0.9", 'R')};
    CHECK(is_valid(good));
    CHECK(to_delay(good)[1].time == q("0.9"));

    ResetDelayWord negative{rs("a", "1", 'R')};
    negative[0].time = q("1") - q("2");
    CHECK_THROWS_AS(to_logical(negative), InvalidWord);
}

TEST_CASE("equal clock values without a reset are a valid stutter") {
    ResetLogicalWord w{rs("a", "2", 'N'), rs("a", "2", 'N')};
    CHECK(is_valid(w));
    CHECK(to_delay(w)[1].time == q("0"));
}

TEST_CASE("normalization shifts fractional values to the tenth past the floor") {
    ResetLogicalWord w{rs("b", "2.75", 'N'), rs("a", "3", 'R'), rs("a", "0.5", 'N')};
    ResetLogicalWord n = normalize(w);
    CHECK(n[0].time == q("2.1"));
    CHECK(n[0].reset == false);
    CHECK(n[1].time == q("3"));
    CHECK(n[2].time == q("0.1"));
    SUBCASE("normalization preserves validity") {
        ResetLogicalWord v{rs("a", "1.2", 'N'), rs("a", "1.9", 'N')};
        CHECK(is_valid(v));
        CHECK(is_valid(normalize(v)));
    }
}

TEST_CASE("single-value clock regions") {
    CHECK(region_of(q("3")) == PointRegion{3, true});
    CHECK(region_of(q("2.75")) == PointRegion{2, false});
    CHECK(region_of(q("0")) == PointRegion{0, true});
    CHECK(region_of(q("0.1")) == PointRegion{0, false});
}

TEST_CASE("canonical order: length, then action, time, reset") {
    std::vector<std::string> ab{"a", "b"};
    ResetLogicalWord eps;
    ResetLogicalWord a0n{rs("a", "0", 'N')};
    ResetLogicalWord a0r{rs("a", "0", 'R')};
    ResetLogicalWord a1{rs("a", "1", 'N')};
    ResetLogicalWord b0{rs("b", "0", 'N')};
    ResetLogicalWord longer{rs("a", "0", 'N'), rs("a", "0", 'N')};

    CHECK(canonical_less(eps, a0n, ab));
    CHECK(canonical_less(a0n, a0r, ab));
    CHECK(canonical_less(a0r, a1, ab));
    CHECK(canonical_less(a1, b0, ab));
    CHECK(canonical_less(b0, longer, ab));
    CHECK_FALSE(canonical_less(a0n, a0n, ab));
    CHECK_FALSE(canonical_less(longer, b0, ab));
}

TEST_CASE("word rendering") {
    CHECK(word_text(DelayWord{ts("a", "1.1"), ts("b", "0")}) == "(a,1.1)(b,0)");
    CHECK(word_text(ResetDelayWord{rs("a", "1.1", 'N'), rs("b", "2", 'R')}) ==
          "(a,1.1,N)(b,2,R)");
    CHECK(word_text(DelayWord{}) == "");
}

TEST_CASE("projection and reattachment of resets") {
    ResetLogicalWord w{rs("a", "1.1", 'N'), rs("b", "2", 'R')};
    LogicalWord p = project(w);
    CHECK(p == LogicalWord{ts("a", "1.1"), ts("b", "2")});
    CHECK(attach_resets(p, {false, true}) == w);
    CHECK_THROWS_AS(attach_resets(p, {false}), InternalError);
}
