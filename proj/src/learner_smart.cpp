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

#include <chrono>
#include <map>
#include <optional>
#include <vector>

#include "otalearn/errors.hpp"
#include "otalearn/hypothesis.hpp"
#include "otalearn/learner.hpp"

namespace otal {

namespace {

// Lexicographic key for memoizing membership answers per logical word.
struct LogicalKey {
    LogicalWord w;

    bool operator<(const LogicalKey& o) const {
        if (w.size() != o.w.size()) return w.size() < o.w.size();
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i].action != o.w[i].action) return w[i].action < o.w[i].action;
            if (w[i].time != o.w[i].time) {
                return w[i].time < o.w[i].time;
            }
        }
        return false;
    }
};

// Two table words whose rows agree over the current suffixes while their
// continuations at one (action, clock value) were answered with opposite
// resets. Such a pair survives the consistency sweep, because consistency
// only compares the rows the continuations land in, yet the hypothesis
// cannot carry both resets on one transition.
struct ResetTie {
    ResetLogicalWord left;
    ResetLogicalWord right;
    std::string action;
    Rat time;
};

std::vector<ResetTie> reset_ties(const ObsTable& t) {
    std::vector<ResetTie> ties;
    for (std::size_t i = 0; i < t.rows(); ++i) {
        const ResetLogicalWord& a = t.word_at(static_cast<int>(i));
        if (a.empty()) continue;
        for (std::size_t j = i + 1; j < t.rows(); ++j) {
            const ResetLogicalWord& b = t.word_at(static_cast<int>(j));
            if (b.empty()) continue;
            if (a.back().action != b.back().action) continue;
            if (a.back().time != b.back().time) continue;
            if (a.back().reset == b.back().reset) continue;
            ResetLogicalWord pa(a.begin(), a.end() - 1);
            ResetLogicalWord pb(b.begin(), b.end() - 1);
            int ia = t.find(pa);
            int ib = t.find(pb);
            if (ia < 0 || ib < 0) continue;
            if (t.row_values(ia) != t.row_values(ib)) continue;
            ties.push_back({std::move(pa), std::move(pb), a.back().action, a.back().time});
        }
    }
    return ties;
}

// Looks for a short suffix telling the two words of a tie apart, asking the
// teacher directly rather than waiting for a counterexample. The opposite
// resets mean the words sit in different states of the target, and the clock
// left behind differs (zero against the shared continuation value), so a
// one-step probe below that value blocks on one side only and splits the
// rows in most cases. Probes stay on region representatives up to one past
// the largest constant the table has seen.
std::optional<LogicalWord> find_split_suffix(const ObsTable& t, const ResetTie& tie,
                                             const SmartMembership& mem) {
    long long bound = 1;
    auto widen = [&](const Rat& v) {
        if (v.floor() + 1 > bound) bound = v.floor() + 1;
    };
    for (std::size_t i = 0; i < t.rows(); ++i) {
        for (const auto& s : t.word_at(static_cast<int>(i))) widen(s.time);
    }
    for (const auto& e : t.suffixes) {
        for (const auto& s : e) widen(s.time);
    }
    std::vector<Rat> values;
    for (long long n = 0; n <= bound; ++n) {
        values.push_back(Rat(n));
        values.push_back(Rat(2 * n + 1, 2));
    }
    const LogicalWord base_left = project_delay(tie.left);
    const LogicalWord base_right = project_delay(tie.right);
    // Probe the words themselves first; only if every one-step probe agrees,
    // step through the shared continuation and probe behind it.
    for (int behind = 0; behind < 2; ++behind) {
        LogicalWord left = base_left;
        LogicalWord right = base_right;
        LogicalWord suffix;
        if (behind) {
            left.push_back({tie.action, tie.time});
            right.push_back({tie.action, tie.time});
            suffix.push_back({tie.action, tie.time});
        }
        for (const Rat& v : values) {
            for (const auto& act : t.alphabet) {
                LogicalWord probe_left = left;
                probe_left.push_back({act, v});
                LogicalWord probe_right = right;
                probe_right.push_back({act, v});
                if (mem(probe_left).second != mem(probe_right).second) {
                    suffix.push_back({act, v});
                    return suffix;
                }
            }
        }
    }
    return std::nullopt;
}

// Resolves one reset tie by extending E with a splitting suffix. False when
// no probed suffix separates any tied pair; the caller then merges the tie,
// which is safe exactly when the pair is indistinguishable, and a wrong
// merge surfaces through the next equivalence query.
bool split_reset_tie(ObsTable& t, const SmartMembership& mem) {
    for (const ResetTie& tie : reset_ties(t)) {
        if (auto suffix = find_split_suffix(t, tie, mem)) {
            Defect d;
            d.kind = Defect::Kind::inconsistent;
            d.new_suffix = *suffix;
            make_consistent(t, d, mem);
            return true;
        }
    }
    return false;
}

} // namespace

LearnResult learn_smart(SmartTeacher& teacher, const SmartOptions& options) {
    auto started = std::chrono::steady_clock::now();

    std::map<LogicalKey, std::pair<ResetLogicalWord, Verdict>> memo;
    long long asked = 0;
    SmartMembership mem = [&](const LogicalWord& w) {
        auto it = memo.find(LogicalKey{w});
        if (it != memo.end()) return it->second;
        auto answer = teacher.membership_logical(w);
        ++asked;
        memo.emplace(LogicalKey{w}, answer);
        return answer;
    };

    ObsTable t = init_table(teacher.alphabet(), mem);
    if (options.on_step) options.on_step("init", t);

    long long equivalence_count = 0;
    Ota hypothesis;
    while (true) {
        // Repair sweep: at most one repair per condition, re-checking each
        // condition on the table the previous repair produced, until a full
        // sweep changes nothing.
        while (true) {
            bool changed = false;
            if (auto d = check_unclosed(t)) {
                make_closed(t, *d, mem);
                if (options.on_step) options.on_step("closed", t);
                changed = true;
            }
            if (auto d = check_inconsistent(t)) {
                make_consistent(t, *d, mem);
                if (options.on_step) options.on_step("consistent", t);
                changed = true;
            }
            if (auto d = check_evidence(t)) {
                make_evidence_closed(t, *d, mem);
                if (options.on_step) options.on_step("evidence", t);
                changed = true;
            }
            if (!changed) break;
        }
        verify_table_invariants(t);

        try {
            hypothesis = table_to_hypothesis(t);
        } catch (const HypothesisConflict&) {
            if (split_reset_tie(t, mem)) {
                if (options.on_step) options.on_step("consistent", t);
                continue;
            }
            hypothesis = table_to_hypothesis(t, true);
        }
        // Rows that differ only through clock regions the table happened to
        // visit give rise to copies of one behavior with split guards; the
        // quotient hides the copies from the equivalence check, so a single
        // counterexample repairs the shared behavior instead of one copy.
        hypothesis = merge_equivalent_locations(hypothesis);
        if (options.on_hypothesis) options.on_hypothesis(hypothesis, t);

        CtxAnswer answer = teacher.equivalence(hypothesis);
        ++equivalence_count;
        if (answer.equivalent) break;
        process_counterexample(t, answer.ctx, mem);
        if (options.on_step) options.on_step("ctx", t);
    }

    LearnResult result;
    result.hypothesis = hypothesis;
    result.table = std::move(t);
    result.stats.mode = "smart";
    result.stats.membership_count = asked;
    result.stats.equivalence_count = equivalence_count;
    int locations = static_cast<int>(result.hypothesis.locations.size());
    result.stats.locations_learned =
        result.hypothesis.sink.has_value() ? locations - 1 : locations;
    result.stats.table_rows = static_cast<int>(result.table.rows());
    result.stats.table_columns = static_cast<int>(result.table.columns());
    result.stats.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
    return result;
}

} // namespace otal
