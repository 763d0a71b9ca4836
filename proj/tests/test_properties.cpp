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

// Randomized checks of the invariants the algorithms lean on. Seeds are
// fixed so failures reproduce.

#include "doctest.h"

#include <random>
#include <vector>

#include "otalearn/automaton.hpp"
#include "otalearn/equivalence.hpp"
#include "otalearn/generator.hpp"
#include "otalearn/learner.hpp"
#include "otalearn/partition.hpp"
#include "otalearn/teacher.hpp"
#include "otalearn/words.hpp"

#include "support.hpp"

using namespace otal;

namespace {

Ota random_automaton(std::mt19937& rng, int max_locations = 5, int max_alphabet = 3) {
    GeneratorConfig cfg;
    cfg.locations = 1 + static_cast<int>(rng() % max_locations);
    cfg.alphabet = 1 + static_cast<int>(rng() % max_alphabet);
    cfg.kappa = 2 + static_cast<int>(rng() % 7);
    cfg.seed = rng();
    cfg.density = rng() % 3 == 0 ? 0.6 : 1.0;
    return generate_automaton(cfg);
}

Rat random_time(std::mt19937& rng, long long bound) {
    static const long long dens[] = {1, 1, 2, 5, 10};
    long long den = dens[rng() % 5];
    long long num = static_cast<long long>(rng() % static_cast<unsigned long>(bound * den + 1));
    return Rat(num, den);
}

DelayWord random_word(std::mt19937& rng, const std::vector<std::string>& alphabet,
                      long long kappa, std::size_t max_len = 8) {
    DelayWord w;
    std::size_t len = rng() % (max_len + 1);
    for (std::size_t i = 0; i < len; ++i) {
        w.push_back({alphabet[rng() % alphabet.size()], random_time(rng, kappa + 2)});
    }
    return w;
}

} // namespace

TEST_CASE("interval partitions cover, stay disjoint, and keep their value") {
    std::mt19937 rng(1001);
    for (int round = 0; round < 1000; ++round) {
        // Strictly increasing values in pairwise distinct clock regions; two
        // values inside the same unit interval cannot be told apart by the
        // integer endpoints a partition is allowed to use.
        std::vector<Rat> values{0};
        std::size_t extra = rng() % 8;
        for (std::size_t i = 0; i < extra; ++i) {
            Rat prev = values.back();
            if (prev.is_integer() && rng() % 2 == 0) {
                values.push_back(prev + Rat(1 + static_cast<long long>(rng() % 10), 10));
            } else {
                values.push_back(Rat(prev.floor() + 1 + static_cast<long long>(rng() % 3)));
            }
        }

        std::vector<Guard> parts = partition_cover(values);
        REQUIRE(parts.size() == values.size());
        CHECK(parts.front().lower == 0);
        CHECK(parts.front().lower_closed);
        CHECK(!parts.back().upper.has_value());
        for (std::size_t i = 0; i < values.size(); ++i) {
            CHECK(parts[i].contains(values[i]));
        }
        for (int probe = 0; probe < 20; ++probe) {
            Rat v = random_time(rng, 12);
            int inside = 0;
            for (const auto& g : parts) {
                if (g.contains(v)) ++inside;
            }
            CHECK(inside == 1);
        }
    }
}

TEST_CASE("normalizing a clock history never changes the run") {
    std::mt19937 rng(1002);
    for (int round = 0; round < 1000; ++round) {
        Ota c = complete(random_automaton(rng));
        bool trick = rng() % 2 == 0 && c.sink.has_value();
        DelayWord dw = random_word(rng, c.alphabet, kappa_of(c));
        LogicalRun before =
            run_logical(c, project(to_logical(run_delay(c, dw, trick).annotated)), trick);
        LogicalRun after = run_logical(
            c, project(normalize(to_logical(run_delay(c, dw, trick).annotated))), trick);
        CHECK(before.verdict == after.verdict);
        CHECK(before.path == after.path);
    }
}

TEST_CASE("hypotheses are complete, deterministic, and match their table") {
    std::mt19937 rng(1003);
    long long agreements = 0;
    for (int round = 0; round < 60; ++round) {
        Ota target = random_automaton(rng, 4, 2);
        bool trick = round % 2 == 0;
        Teacher teacher(target, trick);
        SmartOptions opt;
        opt.on_hypothesis = [&](const Ota& h, const ObsTable& t) {
            Validation v = validate(h);
            CHECK(v.deterministic);
            CHECK(v.complete);
            for (std::size_t row = 0; row < t.rows(); ++row) {
                const ResetLogicalWord& w = t.word_at(static_cast<int>(row));
                if (!is_valid(w)) continue;
                Verdict got = run_delay(h, project_delay(to_delay(w)), trick).verdict;
                CHECK(got == t.cells_at(static_cast<int>(row))[0].v);
                ++agreements;
            }
        };
        learn_smart(teacher, opt);
    }
    CHECK(agreements >= 1000);
}

TEST_CASE("shifting all fractional parts together preserves the run") {
    std::mt19937 rng(1004);
    for (int round = 0; round < 1000; ++round) {
        Ota c = complete(random_automaton(rng));
        bool trick = rng() % 2 == 0 && c.sink.has_value();
        DelayWord dw = random_word(rng, c.alphabet, kappa_of(c));
        LogicalWord base = project(to_logical(run_delay(c, dw, trick).annotated));
        LogicalRun reference = run_logical(c, base, trick);

        Rat low = 1;    // room below: the smallest fractional part
        Rat high = 1;   // room above: one minus the largest fractional part
        bool any = false;
        for (const auto& s : base) {
            if (s.time.is_integer()) continue;
            any = true;
            Rat f = s.time.frac();
            if (f < low) low = f;
            Rat r = Rat(1) - f;
            if (r < high) high = r;
        }
        if (!any) continue;

        for (int sample = 0; sample < 5; ++sample) {
            // delta uniform in (-low, high), endpoints excluded.
            long long k = 1 + static_cast<long long>(rng() % 999);
            Rat span = low + high;
            Rat delta = Rat(span.num() * k, span.den() * 1000) - low;
            LogicalWord shifted = base;
            for (auto& s : shifted) {
                if (!s.time.is_integer()) s.time = s.time + delta;
            }
            LogicalRun run = run_logical(c, shifted, trick);
            CHECK(run.verdict == reference.verdict);
            CHECK(run.path == reference.path);
        }
    }
}

TEST_CASE("delay and logical forms convert back and forth") {
    std::mt19937 rng(1005);
    std::vector<std::string> alphabet{"a", "b", "c"};
    for (int round = 0; round < 1000; ++round) {
        ResetDelayWord dw;
        std::size_t len = rng() % 9;
        for (std::size_t i = 0; i < len; ++i) {
            dw.push_back({alphabet[rng() % 3], random_time(rng, 6), rng() % 2 == 0});
        }
        CHECK(to_delay(to_logical(dw)) == dw);

        ResetLogicalWord lw = to_logical(dw);
        CHECK(to_logical(to_delay(lw)) == lw);
        CHECK(is_valid(lw));
    }
}

TEST_CASE("inequivalence witnesses really separate the automata") {
    std::mt19937 rng(1006);
    int separated = 0;
    while (separated < 1000) {
        Ota a = random_automaton(rng, 4, 2);
        Ota b = random_automaton(rng, 4, 2);
        if (a.alphabet != b.alphabet) continue;
        EquivResult r = check_equivalence(a, b);
        if (r.equivalent) continue;

        Verdict va = run_delay(complete(a), r.witness, false).verdict;
        Verdict vb = run_delay(complete(b), r.witness, false).verdict;
        CHECK(va != vb);
        CHECK((va == Verdict::accept) == (r.sign == '-'));
        CHECK((vb == Verdict::accept) == (r.sign == '+'));
        ++separated;
    }
}

TEST_CASE("sampled words agree with an equivalence verdict") {
    std::mt19937 rng(1007);
    Ota base = random_automaton(rng, 5, 3);

    // Language preserving rewrites: reorder locations, split a guard.
    Ota renamed = base;
    int n = static_cast<int>(base.locations.size());
    auto remap = [&](int q) { return n - 1 - q; };
    for (int q = 0; q < n; ++q) renamed.locations[q] = base.locations[remap(q)];
    renamed.initial = remap(base.initial);
    renamed.accepting.clear();
    for (int q : base.accepting) renamed.accepting.insert(remap(q));
    for (auto& t : renamed.transitions) {
        t.source = remap(t.source);
        t.target = remap(t.target);
    }

    Ota split = base;
    for (std::size_t i = 0; i < split.transitions.size(); ++i) {
        Guard g = split.transitions[i].guard;
        long long cut = g.lower + 1;
        if (g.upper && *g.upper <= cut) continue;
        Transition upper_half = split.transitions[i];
        split.transitions[i].guard.upper = cut;
        split.transitions[i].guard.upper_closed = false;
        upper_half.guard.lower = cut;
        upper_half.guard.lower_closed = true;
        split.transitions.push_back(upper_half);
        break;
    }

    for (const Ota* other : {&renamed, &split}) {
        REQUIRE(check_equivalence(base, *other).equivalent);
        Ota ca = complete(base);
        Ota cb = complete(*other);
        for (int i = 0; i < 2500; ++i) {
            DelayWord w = random_word(rng, base.alphabet, kappa_of(base) + 1);
            CHECK(run_delay(ca, w, false).verdict == run_delay(cb, w, false).verdict);
        }
    }
}
