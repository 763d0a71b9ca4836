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

#include "otalearn/generator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "otalearn/errors.hpp"

namespace otal {
namespace {

// xorshift64* seeded through splitmix64.  std::mt19937 would also do, but
// its distribution helpers are not pinned down by the standard; keeping
// every draw in integer arithmetic means identical automata on every
// platform and toolchain.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        state_ = z ^ (z >> 31);
        if (state_ == 0) state_ = 0x1234567887654321ULL;
    }

    std::uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1DULL;
    }

    // Uniform draw from [0, n) without floating point.
    std::uint64_t next_below(std::uint64_t n) {
        if (n == 0) throw InternalError("next_below(0)");
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    bool next_bit() { return (next() >> 63) != 0; }

  private:
    std::uint64_t state_;
};

std::string action_name(int i) {
    std::string name;
    name.push_back(static_cast<char>('a' + i % 26));
    if (i >= 26) name += std::to_string(i / 26);
    return name;
}

}  // namespace

Ota generate_automaton(const GeneratorConfig& config) {
    if (config.locations < 1 || config.alphabet < 1 || config.kappa < 0)
        throw StructuralError("generator needs at least one location and action");
    Rng rng(config.seed);

    Ota a;
    for (int i = 0; i < config.alphabet; ++i)
        a.alphabet.push_back(action_name(i));
    for (int i = 0; i < config.locations; ++i)
        a.locations.push_back("q" + std::to_string(i));
    a.initial = 0;

    const int n = config.locations;
    const int kappa = config.kappa;

    // Keeping a cell's interval costs one transition; derive the keep
    // probability so that the expected transition count per cell matches
    // density regardless of how many cuts were drawn.  The divisor is the
    // expected number of intervals per cell for the cut scheme below.
    double expected_parts = kappa == 0 ? 1.0 : (kappa == 1 ? 5.0 / 3.0 : 2.0);
    long long keep_mill =
        std::llround(1000.0 * config.density / expected_parts);
    keep_mill = std::clamp(keep_mill, 0LL, 1000LL);

    for (int q = 0; q < n; ++q) {
        for (const std::string& action : a.alphabet) {
            // Split [0,inf) at up to two integer cuts below kappa+1.
            int want = 1 + static_cast<int>(rng.next_below(3));
            want = std::min(want, kappa + 1);
            std::vector<long long> cuts;
            while (static_cast<int>(cuts.size()) < want - 1) {
                long long c = 1 + static_cast<long long>(
                                      rng.next_below(static_cast<std::uint64_t>(kappa)));
                if (std::find(cuts.begin(), cuts.end(), c) == cuts.end())
                    cuts.push_back(c);
            }
            std::sort(cuts.begin(), cuts.end());

            // Each cut boundary is closed on a random side.
            std::vector<Guard> parts;
            long long lo = 0;
            bool lo_closed = true;
            for (long long c : cuts) {
                bool left_closed = rng.next_bit();
                parts.push_back({lo, lo_closed, c, left_closed});
                lo = c;
                lo_closed = !left_closed;
            }
            parts.push_back({lo, lo_closed, std::nullopt, false});

            for (const Guard& g : parts) {
                if (rng.next_below(1000) >= static_cast<std::uint64_t>(keep_mill))
                    continue;
                Transition t;
                t.source = q;
                t.action = action;
                t.guard = g;
                t.reset = rng.next_bit();
                t.target = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
                a.transitions.push_back(t);
            }
        }
    }

    for (int i = 0; i < n; ++i)
        if (rng.next_bit()) a.accepting.insert(i);
    if (a.accepting.empty())
        a.accepting.insert(static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n))));

    // A start location with no way out makes the language a constant; give
    // it one catch-all transition in that case.
    bool initial_moves = false;
    for (const Transition& t : a.transitions)
        if (t.source == a.initial) initial_moves = true;
    if (!initial_moves) {
        Transition t;
        t.source = a.initial;
        t.action = a.alphabet[0];
        t.guard = Guard::full();
        t.reset = rng.next_bit();
        t.target = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        a.transitions.push_back(t);
    }

    validate(a);
    return a;
}

}  // namespace otal
