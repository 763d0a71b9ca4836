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

#include "otalearn/hypothesis.hpp"

#include <algorithm>
#include <map>

#include "otalearn/errors.hpp"
#include "otalearn/partition.hpp"

namespace otal {

TableDfa build_dfa(const ObsTable& t, bool merge_reset_ties) {
    TableDfa dfa;
    dfa.locations = static_cast<int>(t.s_words.size());
    dfa.accepting.resize(t.s_words.size(), 0);

    std::vector<std::vector<Verdict>> s_rows;
    s_rows.reserve(t.s_words.size());
    for (std::size_t i = 0; i < t.s_words.size(); ++i) {
        s_rows.push_back(t.row_values(static_cast<int>(i)));
        dfa.accepting[i] = s_rows.back().front() == Verdict::accept ? 1 : 0;
        bool all_exit = std::all_of(s_rows.back().begin(), s_rows.back().end(),
                                    [](Verdict v) { return v == Verdict::exited; });
        if (all_exit) dfa.exit_location = static_cast<int>(i);
    }

    dfa.word_location.resize(t.rows());
    for (std::size_t i = 0; i < t.rows(); ++i) {
        auto row = t.row_values(static_cast<int>(i));
        auto it = std::find(s_rows.begin(), s_rows.end(), row);
        if (it == s_rows.end()) {
            throw TableNotPrepared("row matches no S row");
        }
        dfa.word_location[i] = static_cast<int>(it - s_rows.begin());
    }
    dfa.initial = dfa.word_location[0];

    for (std::size_t i = 0; i < t.rows(); ++i) {
        const ResetLogicalWord& w = t.word_at(static_cast<int>(i));
        if (w.empty()) continue;
        ResetLogicalWord parent(w.begin(), w.end() - 1);
        int pi = t.find(parent);
        if (pi < 0) {
            throw UnknownPrefix("row without its parent prefix");
        }
        DfaEdge edge{dfa.word_location[static_cast<std::size_t>(pi)], w.back(),
                     dfa.word_location[i]};
        bool duplicate = false;
        for (const auto& e : dfa.edges) {
            if (e.source != edge.source || e.label.action != edge.label.action ||
                e.label.time != edge.label.time) {
                continue;
            }
            if (e.target != edge.target ||
                (e.label.reset != edge.label.reset && !merge_reset_ties)) {
                throw HypothesisConflict(
                    "table words disagree at one (location, action, clock value)");
            }
            duplicate = true;
            break;
        }
        if (!duplicate) dfa.edges.push_back(edge);
    }
    return dfa;
}

Ota build_hypothesis(const TableDfa& dfa, const std::vector<std::string>& alphabet) {
    Ota h;
    h.alphabet = alphabet;
    for (int q = 0; q < dfa.locations; ++q) {
        h.locations.push_back("q" + std::to_string(q));
        if (dfa.accepting[static_cast<std::size_t>(q)]) h.accepting.insert(q);
    }
    h.initial = dfa.initial;
    if (dfa.exit_location >= 0) h.sink = dfa.exit_location;

    for (int q = 0; q < dfa.locations; ++q) {
        for (const auto& action : alphabet) {
            // Clock values seen from this location on this action, with the
            // reset/target each one commits to.
            std::map<Rat, std::pair<bool, int>> seen;
            for (const auto& e : dfa.edges) {
                if (e.source != q || e.label.action != action) continue;
                seen.emplace(e.label.time, std::make_pair(e.label.reset, e.target));
            }
            if (seen.empty()) {
                throw TableNotPrepared("location without the zero extension on '" + action + "'");
            }
            std::vector<Rat> values;
            values.reserve(seen.size());
            for (const auto& [time, rt] : seen) {
                (void)rt;
                values.push_back(time);
            }
            std::vector<Guard> guards = partition_cover(values);
            std::size_t k = 0;
            for (const auto& [time, rt] : seen) {
                h.transitions.push_back({q, action, guards[k], rt.first, rt.second});
                ++k;
            }
        }
    }
    return h;
}

Ota table_to_hypothesis(const ObsTable& t, bool merge_reset_ties) {
    return build_hypothesis(build_dfa(t, merge_reset_ties), t.alphabet);
}

} // namespace otal
