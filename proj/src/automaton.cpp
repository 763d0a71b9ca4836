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

#include "otalearn/automaton.hpp"

#include <algorithm>
#include <limits>

#include "otalearn/errors.hpp"

namespace otal {

bool Guard::contains(const Rat& v) const {
    Rat lo(lower);
    if (lower_closed ? v < lo : v <= lo) return false;
    if (upper.has_value()) {
        Rat hi(*upper);
        if (upper_closed ? hi < v : hi <= v) return false;
    }
    return true;
}

std::string guard_text(const Guard& g) {
    std::string out;
    out += g.lower_closed ? '[' : '(';
    out += std::to_string(g.lower);
    out += ',';
    if (g.upper.has_value()) {
        out += std::to_string(*g.upper);
        out += g.upper_closed ? ']' : ')';
    } else {
        out += '+';
        out += ')';
    }
    return out;
}

int Ota::location_id(const std::string& name) const {
    for (std::size_t i = 0; i < locations.size(); ++i) {
        if (locations[i] == name) return static_cast<int>(i);
    }
    return -1;
}

namespace {

void check_structure(const Ota& a) {
    if (a.alphabet.empty()) {
        throw StructuralError("automaton has an empty alphabet");
    }
    for (std::size_t i = 0; i < a.alphabet.size(); ++i) {
        if (a.alphabet[i].empty()) {
            throw StructuralError("empty action name");
        }
        for (std::size_t j = i + 1; j < a.alphabet.size(); ++j) {
            if (a.alphabet[i] == a.alphabet[j]) {
                throw StructuralError("duplicate action '" + a.alphabet[i] + "'");
            }
        }
    }
    if (a.locations.empty()) {
        throw StructuralError("automaton has no locations");
    }
    for (std::size_t i = 0; i < a.locations.size(); ++i) {
        for (std::size_t j = i + 1; j < a.locations.size(); ++j) {
            if (a.locations[i] == a.locations[j]) {
                throw StructuralError("duplicate location '" + a.locations[i] + "'");
            }
        }
    }
    int n = static_cast<int>(a.locations.size());
    if (a.initial < 0 || a.initial >= n) {
        throw StructuralError("initial location out of range");
    }
    for (int q : a.accepting) {
        if (q < 0 || q >= n) {
            throw StructuralError("accepting location out of range");
        }
    }
    if (a.sink.has_value() && (*a.sink < 0 || *a.sink >= n)) {
        throw StructuralError("sink location out of range");
    }
    for (const auto& t : a.transitions) {
        if (t.source < 0 || t.source >= n || t.target < 0 || t.target >= n) {
            throw StructuralError("transition endpoint out of range");
        }
        action_index(a.alphabet, t.action);
        if (t.guard.lower < 0) {
            throw StructuralError("guard with negative bound");
        }
        if (t.guard.upper.has_value()) {
            if (*t.guard.upper < t.guard.lower ||
                (*t.guard.upper == t.guard.lower && !(t.guard.lower_closed && t.guard.upper_closed))) {
                throw StructuralError("empty guard " + guard_text(t.guard));
            }
        }
    }
}

// Sorted indices of the transitions at (loc, action).
std::vector<std::size_t> cell_transitions(const Ota& a, int loc, const std::string& action) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < a.transitions.size(); ++i) {
        if (a.transitions[i].source == loc && a.transitions[i].action == action) {
            out.push_back(i);
        }
    }
    std::sort(out.begin(), out.end(), [&](std::size_t x, std::size_t y) {
        const Guard& g = a.transitions[x].guard;
        const Guard& h = a.transitions[y].guard;
        if (g.lower != h.lower) return g.lower < h.lower;
        return g.lower_closed && !h.lower_closed;
    });
    return out;
}

bool overlap(const Guard& first, const Guard& second) {
    // first starts no later than second
    if (!first.upper.has_value()) return true;
    if (*first.upper > second.lower) return true;
    if (*first.upper == second.lower && first.upper_closed && second.lower_closed) return true;
    return false;
}

} // namespace

std::vector<Guard> uncovered(const Ota& a, int loc, const std::string& action) {
    std::vector<Guard> gaps;
    // cursor = infimum of the uncovered remainder; cursor_open means the
    // infimum point itself is already covered.
    long long cursor = 0;
    bool cursor_open = false;
    bool done = false;
    for (std::size_t idx : cell_transitions(a, loc, action)) {
        const Guard& g = a.transitions[idx].guard;
        if (done) break;
        if (cursor < g.lower) {
            gaps.push_back({cursor, !cursor_open, g.lower, !g.lower_closed});
        } else if (cursor == g.lower && !cursor_open && !g.lower_closed) {
            gaps.push_back({cursor, true, cursor, true});
        }
        if (!g.upper.has_value()) {
            done = true;
        } else {
            cursor = *g.upper;
            cursor_open = g.upper_closed;
        }
    }
    if (!done) {
        gaps.push_back({cursor, !cursor_open, std::nullopt, false});
    }
    return gaps;
}

Validation validate(const Ota& a) {
    check_structure(a);
    Validation v;
    for (const auto& t : a.transitions) {
        if (t.guard.lower > v.kappa) v.kappa = t.guard.lower;
        if (t.guard.upper.has_value() && *t.guard.upper > v.kappa) v.kappa = *t.guard.upper;
    }
    for (int q = 0; q < static_cast<int>(a.locations.size()); ++q) {
        for (const auto& action : a.alphabet) {
            auto cell = cell_transitions(a, q, action);
            for (std::size_t i = 0; i + 1 < cell.size(); ++i) {
                if (overlap(a.transitions[cell[i]].guard, a.transitions[cell[i + 1]].guard)) {
                    v.deterministic = false;
                }
            }
            if (!uncovered(a, q, action).empty()) {
                v.complete = false;
            }
        }
    }
    return v;
}

long long kappa_of(const Ota& a) {
    return validate(a).kappa;
}

Ota complete(const Ota& a) {
    Validation v = validate(a);
    if (!v.deterministic) {
        throw NotDeterministic("cannot complete an automaton with overlapping guards");
    }
    Ota out = a;
    if (v.complete) return out;

    std::string name = "sink";
    while (out.location_id(name) >= 0) name += '_';
    int sink = static_cast<int>(out.locations.size());
    out.locations.push_back(name);
    out.sink = sink;

    for (int q = 0; q < sink; ++q) {
        for (const auto& action : a.alphabet) {
            for (const Guard& gap : uncovered(a, q, action)) {
                out.transitions.push_back({q, action, gap, true, sink});
            }
        }
    }
    for (const auto& action : a.alphabet) {
        out.transitions.push_back({sink, action, Guard::full(), true, sink});
    }
    return out;
}

namespace {

struct Piece {
    Guard guard;
    int cls = 0;
    bool reset = true;
};

// Outgoing behavior of one (location, action) pair as a step function over
// the clock axis: guards sorted by left end, with adjacent pieces that agree
// on successor class and reset unioned into one.
std::vector<Piece> action_pieces(const Ota& a, int loc, const std::string& action,
                                 const std::vector<int>& cls) {
    std::vector<Piece> pieces;
    for (const auto& t : a.transitions) {
        if (t.source == loc && t.action == action) {
            pieces.push_back({t.guard, cls[static_cast<std::size_t>(t.target)], t.reset});
        }
    }
    std::sort(pieces.begin(), pieces.end(), [](const Piece& l, const Piece& r) {
        if (l.guard.lower != r.guard.lower) return l.guard.lower < r.guard.lower;
        return l.guard.lower_closed && !r.guard.lower_closed;
    });
    std::vector<Piece> merged;
    for (const Piece& piece : pieces) {
        if (!merged.empty()) {
            Piece& last = merged.back();
            bool meets = last.guard.upper.has_value() &&
                         *last.guard.upper == piece.guard.lower &&
                         (last.guard.upper_closed != piece.guard.lower_closed);
            if (meets && last.cls == piece.cls && last.reset == piece.reset) {
                last.guard.upper = piece.guard.upper;
                last.guard.upper_closed = piece.guard.upper_closed;
                continue;
            }
        }
        merged.push_back(piece);
    }
    return merged;
}

// Clock bounds and interval ends encoded on the doubled integer line:
// 2v for a closed end at v, 2v +/- 1 for the open side, so comparisons of
// "attained at v" versus "strictly past v" are plain integer comparisons.
constexpr long long kUnreachable = std::numeric_limits<long long>::max() / 4;

long long infimum_code(long long value, bool attained) { return 2 * value + (attained ? 0 : 1); }

// Largest clock the guard admits, as a code comparable with infimum codes:
// a value v satisfies "v in [lb, infinity)" for lb code L exactly when
// 2v >= L, so the guard admits such a value iff its top code is >= L.
long long guard_top_code(const Guard& g) {
    if (!g.upper.has_value()) return kUnreachable;
    return 2 * *g.upper - (g.upper_closed ? 0 : 1);
}

// Infimum of the clock values each location can hold, as a code: clock 0 at
// the initial location, the entry value's infimum across incoming edges, and
// closure under the fact that time only moves the clock up.
std::vector<long long> reach_infima(const Ota& a) {
    std::vector<long long> lb(a.locations.size(), kUnreachable);
    lb[static_cast<std::size_t>(a.initial)] = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& t : a.transitions) {
            long long src = lb[static_cast<std::size_t>(t.source)];
            if (src >= kUnreachable) continue;
            if (guard_top_code(t.guard) < src) continue;   // never fireable
            long long entry = 0;
            if (!t.reset) {
                entry = std::max(src, infimum_code(t.guard.lower, t.guard.lower_closed));
            }
            auto& dst = lb[static_cast<std::size_t>(t.target)];
            if (entry < dst) {
                dst = entry;
                changed = true;
            }
        }
    }
    return lb;
}

// The pieces restricted to clock values with code >= bound, ends clipped.
std::vector<Piece> clip_pieces(std::vector<Piece> pieces, long long bound) {
    std::vector<Piece> out;
    for (Piece& piece : pieces) {
        if (guard_top_code(piece.guard) < bound) continue;
        long long start = infimum_code(piece.guard.lower, piece.guard.lower_closed);
        if (start < bound) {
            piece.guard.lower = bound / 2;
            piece.guard.lower_closed = bound % 2 == 0;
        }
        out.push_back(piece);
    }
    return out;
}

bool pieces_equal(const std::vector<Piece>& l, const std::vector<Piece>& r) {
    if (l.size() != r.size()) return false;
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (!(l[i].guard == r[i].guard) || l[i].cls != r[i].cls || l[i].reset != r[i].reset) {
            return false;
        }
    }
    return true;
}

} // namespace

Ota merge_equivalent_locations(const Ota& a) {
    Validation v = validate(a);
    if (!v.deterministic) {
        throw NotDeterministic("cannot merge locations of an automaton with overlapping guards");
    }
    std::size_t n = a.locations.size();
    std::vector<long long> lb = reach_infima(a);

    // Two locations are interchangeable when they accept alike and give the
    // same (successor class, reset) answer at every action and clock value
    // both can actually hold. Values below a location's reachable infimum
    // never occur in a run through it, so they are excluded from comparison;
    // this is what lets copies of one behavior entered at different clocks
    // collapse even though their learned guards start at different values.
    std::vector<int> cls(n);
    for (std::size_t q = 0; q < n; ++q) cls[q] = a.is_accepting(static_cast<int>(q)) ? 1 : 0;

    auto agree = [&](int qi, int qj) {
        long long bound = std::max(lb[static_cast<std::size_t>(qi)],
                                   lb[static_cast<std::size_t>(qj)]);
        for (const auto& action : a.alphabet) {
            if (!pieces_equal(clip_pieces(action_pieces(a, qi, action, cls), bound),
                              clip_pieces(action_pieces(a, qj, action, cls), bound))) {
                return false;
            }
        }
        return true;
    };

    while (true) {
        // Split every class into maximal groups of pairwise-agreeing members.
        // Agreement at differing infima is not transitive, so a candidate is
        // checked against the whole group, not just its first member.
        std::vector<std::vector<std::vector<int>>> grouped(
            *std::max_element(cls.begin(), cls.end()) + 1);
        for (std::size_t q = 0; q < n; ++q) {
            auto& groups = grouped[static_cast<std::size_t>(cls[q])];
            std::vector<int>* home = nullptr;
            for (auto& g : groups) {
                bool ok = true;
                for (int member : g) {
                    if (!agree(member, static_cast<int>(q))) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    home = &g;
                    break;
                }
            }
            if (home) {
                home->push_back(static_cast<int>(q));
            } else {
                groups.push_back({static_cast<int>(q)});
            }
        }
        std::vector<int> next(n);
        int next_count = 0;
        bool stable = true;
        for (const auto& groups : grouped) {
            for (const auto& g : groups) {
                for (int member : g) {
                    next[static_cast<std::size_t>(member)] = next_count;
                }
                ++next_count;
            }
        }
        for (std::size_t q = 0; q + 1 < n; ++q) {
            for (std::size_t r = q + 1; r < n; ++r) {
                if ((cls[q] == cls[r]) != (next[q] == next[r])) stable = false;
            }
        }
        cls = std::move(next);
        if (stable) break;
    }

    std::size_t count = 0;
    for (std::size_t q = 0; q < n; ++q) {
        count = std::max(count, static_cast<std::size_t>(cls[q]) + 1);
    }

    // Each class keeps its lowest-numbered member's name and position, but
    // its transitions come from the member with the lowest reachable infimum:
    // that member's pieces are defined on every value any member can hold,
    // and agree with each member's own pieces wherever that member runs.
    std::vector<int> name_rep(count, -1);
    std::vector<int> piece_rep(count, -1);
    for (std::size_t q = 0; q < n; ++q) {
        std::size_t c = static_cast<std::size_t>(cls[q]);
        if (name_rep[c] < 0) name_rep[c] = static_cast<int>(q);
        if (piece_rep[c] < 0 ||
            lb[q] < lb[static_cast<std::size_t>(piece_rep[c])]) {
            piece_rep[c] = static_cast<int>(q);
        }
    }
    std::vector<int> order;
    for (std::size_t c = 0; c < count; ++c) order.push_back(name_rep[c]);
    std::sort(order.begin(), order.end());
    std::vector<int> new_index(count, -1);
    for (std::size_t c = 0; c < count; ++c) {
        new_index[c] = static_cast<int>(
            std::lower_bound(order.begin(), order.end(), name_rep[c]) - order.begin());
    }

    Ota out;
    out.alphabet = a.alphabet;
    out.locations.resize(count);
    out.initial = new_index[static_cast<std::size_t>(cls[static_cast<std::size_t>(a.initial)])];
    for (std::size_t c = 0; c < count; ++c) {
        std::size_t slot = static_cast<std::size_t>(new_index[c]);
        out.locations[slot] = a.locations[static_cast<std::size_t>(name_rep[c])];
        if (a.is_accepting(name_rep[c])) out.accepting.insert(static_cast<int>(slot));
    }
    if (a.sink.has_value()) {
        out.sink = new_index[static_cast<std::size_t>(cls[static_cast<std::size_t>(*a.sink)])];
    }
    for (std::size_t c = 0; c < count; ++c) {
        int src = new_index[c];
        for (const auto& action : a.alphabet) {
            for (const Piece& piece : action_pieces(a, piece_rep[c], action, cls)) {
                out.transitions.push_back(
                    {src, action, piece.guard, piece.reset,
                     new_index[static_cast<std::size_t>(piece.cls)]});
            }
        }
    }
    return out;
}

namespace {

// The unique enabled transition at (loc, action, clock value), or -1.
// NotDeterministic if more than one matches.
int enabled_transition(const Ota& a, int loc, const std::string& action, const Rat& value) {
    int found = -1;
    for (std::size_t i = 0; i < a.transitions.size(); ++i) {
        const auto& t = a.transitions[i];
        if (t.source == loc && t.action == action && t.guard.contains(value)) {
            if (found >= 0) {
                throw NotDeterministic("overlapping guards at location '" + a.locations[loc] +
                                       "' on action '" + action + "'");
            }
            found = static_cast<int>(i);
        }
    }
    return found;
}

} // namespace

DelayRun run_delay(const Ota& a, const DelayWord& w, bool trick) {
    DelayRun run;
    run.annotated.reserve(w.size());
    int loc = a.initial;
    Rat clock = 0;
    bool stopped = false;
    for (const auto& step : w) {
        if (step.time.is_negative()) {
            throw InvalidWord("negative delay in word " + word_text(w));
        }
        if (stopped) {
            run.annotated.push_back({step.action, step.time, true});
            continue;
        }
        Rat value = clock + step.time;
        int idx = enabled_transition(a, loc, step.action, value);
        bool exits = idx < 0 || (a.sink.has_value() && a.transitions[idx].target == *a.sink);
        if (trick && exits) {
            stopped = true;
            run.verdict = Verdict::exited;
            run.annotated.push_back({step.action, step.time, true});
            continue;
        }
        if (idx < 0) {
            throw StructuralError("no enabled transition at location '" + a.locations[loc] +
                                  "' on action '" + step.action + "' at clock " + value.str());
        }
        const auto& t = a.transitions[idx];
        run.annotated.push_back({step.action, step.time, t.reset});
        run.path.push_back(idx);
        loc = t.target;
        clock = t.reset ? Rat(0) : value;
    }
    if (!stopped) {
        run.verdict = a.is_accepting(loc) ? Verdict::accept : Verdict::reject;
    }
    return run;
}

LogicalRun run_logical(const Ota& a, const LogicalWord& w, bool trick) {
    LogicalRun run;
    run.annotated.reserve(w.size());
    int loc = a.initial;
    Rat clock = 0;
    bool stopped = false;
    for (const auto& step : w) {
        if (stopped) {
            run.annotated.push_back({step.action, step.time, true});
            continue;
        }
        if (step.time.is_negative() || step.time < clock) {
            // Not a possible clock history from here on.
            stopped = true;
            run.annotated.push_back({step.action, step.time, true});
            continue;
        }
        int idx = enabled_transition(a, loc, step.action, step.time);
        bool exits = idx < 0 || (a.sink.has_value() && a.transitions[idx].target == *a.sink);
        if (trick && exits) {
            stopped = true;
            run.annotated.push_back({step.action, step.time, true});
            continue;
        }
        if (idx < 0) {
            throw StructuralError("no enabled transition at location '" + a.locations[loc] +
                                  "' on action '" + step.action + "' at clock " + step.time.str());
        }
        const auto& t = a.transitions[idx];
        run.annotated.push_back({step.action, step.time, t.reset});
        run.path.push_back(idx);
        loc = t.target;
        clock = t.reset ? Rat(0) : step.time;
    }
    if (stopped) {
        // Without the trick the only stop reason is an impossible clock
        // history, which a complete automaton simply rejects.
        run.verdict = trick ? Verdict::exited : Verdict::reject;
    } else {
        run.verdict = a.is_accepting(loc) ? Verdict::accept : Verdict::reject;
    }
    return run;
}

} // namespace otal
