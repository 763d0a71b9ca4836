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

#include "otalearn/table.hpp"

#include <algorithm>

#include "otalearn/errors.hpp"

namespace otal {

namespace {

LogicalWord concat(const LogicalWord& a, const LogicalWord& b) {
    LogicalWord out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

// Steps visible in the stored annotation already decide some verdicts: a
// value below the running clock with no reset before it means the word left
// every possible clock history, so the answer is x and the remaining resets
// read as set, with no need to ask the teacher. Only invalidity inside the
// suffix (whose resets are unknown until answered) still needs a query.
bool breaks_inside(const ResetLogicalWord& prefix) {
    for (std::size_t i = 1; i < prefix.size(); ++i) {
        if (!prefix[i - 1].reset && prefix[i].time < prefix[i - 1].time) return true;
    }
    return false;
}

bool breaks_at_join(const ResetLogicalWord& prefix, const LogicalWord& suffix) {
    return !prefix.empty() && !suffix.empty() && !prefix.back().reset &&
           suffix.front().time < prefix.back().time;
}

Cell exited_cell(const ResetLogicalWord& prefix, const LogicalWord& suffix, bool trick) {
    ResetLogicalWord annotated = prefix;
    for (const auto& s : suffix) annotated.push_back({s.action, s.time, true});
    return {trick ? Verdict::exited : Verdict::reject, std::move(annotated)};
}

Cell query_cell(const ResetLogicalWord& prefix, const LogicalWord& suffix,
                const SmartMembership& mem, bool trick) {
    if (breaks_inside(prefix) || breaks_at_join(prefix, suffix)) {
        return exited_cell(prefix, suffix, trick);
    }
    auto [annotated, verdict] = mem(concat(project(prefix), suffix));
    if (annotated.size() != prefix.size() + suffix.size()) {
        throw InternalError("membership annotation has the wrong length");
    }
    // The prefix part of the annotation must reproduce the stored row word:
    // rows are exactly the annotations of their own projections.
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (annotated[i] != prefix[i]) {
            throw InternalInvariantViolation("row word disagrees with its run annotation");
        }
    }
    return {verdict, std::move(annotated)};
}

std::vector<Cell> query_row(const ResetLogicalWord& prefix, const ObsTable& t,
                            const SmartMembership& mem) {
    std::vector<Cell> cells;
    cells.reserve(t.suffixes.size());
    for (const auto& e : t.suffixes) {
        cells.push_back(query_cell(prefix, e, mem, t.trick));
    }
    return cells;
}

// Indices 0..rows-1 (combined S-then-R indexing) sorted canonically.
std::vector<int> canonical_order(const ObsTable& t) {
    std::vector<int> idx(t.rows());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return canonical_less(t.word_at(a), t.word_at(b), t.alphabet);
    });
    return idx;
}

} // namespace

int ObsTable::find(const ResetLogicalWord& w) const {
    for (std::size_t i = 0; i < s_words.size(); ++i) {
        if (s_words[i] == w) return static_cast<int>(i);
    }
    for (std::size_t i = 0; i < r_words.size(); ++i) {
        if (r_words[i] == w) return static_cast<int>(s_words.size() + i);
    }
    return -1;
}

int ObsTable::find_projection(const LogicalWord& w) const {
    auto matches = [&](const ResetLogicalWord& cand) {
        if (cand.size() != w.size()) return false;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (cand[i].action != w[i].action || cand[i].time != w[i].time) return false;
        }
        return true;
    };
    for (std::size_t i = 0; i < s_words.size(); ++i) {
        if (matches(s_words[i])) return static_cast<int>(i);
    }
    for (std::size_t i = 0; i < r_words.size(); ++i) {
        if (matches(r_words[i])) return static_cast<int>(s_words.size() + i);
    }
    return -1;
}

const ResetLogicalWord& ObsTable::word_at(int idx) const {
    std::size_t i = static_cast<std::size_t>(idx);
    if (i < s_words.size()) return s_words[i];
    return r_words[i - s_words.size()];
}

const std::vector<Cell>& ObsTable::cells_at(int idx) const {
    std::size_t i = static_cast<std::size_t>(idx);
    if (i < s_words.size()) return s_cells[i];
    return r_cells[i - s_words.size()];
}

std::vector<Cell>& ObsTable::cells_at(int idx) {
    std::size_t i = static_cast<std::size_t>(idx);
    if (i < s_cells.size()) return s_cells[i];
    return r_cells[i - s_cells.size()];
}

std::vector<Verdict> ObsTable::row_values(int idx) const {
    const auto& cells = cells_at(idx);
    std::vector<Verdict> out;
    out.reserve(cells.size());
    for (const auto& c : cells) out.push_back(c.v);
    return out;
}

std::optional<Defect> check_unclosed(const ObsTable& t) {
    std::vector<std::vector<Verdict>> s_rows;
    s_rows.reserve(t.s_words.size());
    for (std::size_t i = 0; i < t.s_words.size(); ++i) {
        s_rows.push_back(t.row_values(static_cast<int>(i)));
    }
    const ResetLogicalWord* best = nullptr;
    for (std::size_t j = 0; j < t.r_words.size(); ++j) {
        auto row = t.row_values(static_cast<int>(t.s_words.size() + j));
        if (std::find(s_rows.begin(), s_rows.end(), row) != s_rows.end()) continue;
        const ResetLogicalWord& w = t.r_words[j];
        if (!best || canonical_less(w, *best, t.alphabet)) best = &w;
    }
    if (!best) return std::nullopt;
    Defect d;
    d.kind = Defect::Kind::unclosed;
    d.row_word = *best;
    return d;
}

std::optional<Defect> check_inconsistent(const ObsTable& t) {
    std::vector<int> order = canonical_order(t);
    // Group rows by value vector, then look for a pair of equal-row words
    // whose extensions by the same logical action have different rows.
    for (std::size_t x = 0; x < order.size(); ++x) {
        for (std::size_t y = x + 1; y < order.size(); ++y) {
            int ix = order[x];
            int iy = order[y];
            if (t.row_values(ix) != t.row_values(iy)) continue;
            const ResetLogicalWord& wx = t.word_at(ix);
            const ResetLogicalWord& wy = t.word_at(iy);
            // Extensions of wx in canonical order.
            std::vector<int> ext;
            for (std::size_t k = 0; k < t.rows(); ++k) {
                const ResetLogicalWord& cand = t.word_at(static_cast<int>(k));
                if (cand.size() != wx.size() + 1) continue;
                if (!std::equal(wx.begin(), wx.end(), cand.begin())) continue;
                ext.push_back(static_cast<int>(k));
            }
            std::sort(ext.begin(), ext.end(), [&](int a, int b) {
                return canonical_less(t.word_at(a), t.word_at(b), t.alphabet);
            });
            for (int ek : ext) {
                const ResetTimedStep& last = t.word_at(ek).back();
                // The matching extension of wy under the same logical action.
                ResetLogicalWord wy_ext_t = wy;
                wy_ext_t.push_back({last.action, last.time, true});
                ResetLogicalWord wy_ext_n = wy;
                wy_ext_n.push_back({last.action, last.time, false});
                int other = t.find(wy_ext_t);
                if (other < 0) other = t.find(wy_ext_n);
                if (other < 0) continue;
                auto va = t.row_values(ek);
                auto vb = t.row_values(other);
                if (va == vb) continue;
                for (std::size_t col = 0; col < va.size(); ++col) {
                    if (va[col] != vb[col]) {
                        Defect d;
                        d.kind = Defect::Kind::inconsistent;
                        d.new_suffix.push_back({last.action, last.time});
                        d.new_suffix = concat(d.new_suffix, t.suffixes[col]);
                        return d;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<Defect> check_evidence(const ObsTable& t) {
    std::vector<int> s_order;
    for (std::size_t i = 0; i < t.s_words.size(); ++i) s_order.push_back(static_cast<int>(i));
    std::sort(s_order.begin(), s_order.end(), [&](int a, int b) {
        return canonical_less(t.s_words[static_cast<std::size_t>(a)],
                              t.s_words[static_cast<std::size_t>(b)], t.alphabet);
    });
    for (int si : s_order) {
        const auto& cells = t.s_cells[static_cast<std::size_t>(si)];
        for (std::size_t col = 1; col < cells.size(); ++col) {
            const ResetLogicalWord& annotated = cells[col].annotated;
            if (t.find(annotated) < 0) {
                Defect d;
                d.kind = Defect::Kind::evidence;
                d.evidence_word = annotated;
                return d;
            }
        }
    }
    return std::nullopt;
}

Defect find_defect(const ObsTable& t, bool with_evidence) {
    if (auto d = check_unclosed(t)) return *d;
    if (auto d = check_inconsistent(t)) return *d;
    if (with_evidence) {
        if (auto d = check_evidence(t)) return *d;
    }
    return {};
}

bool is_prepared(const ObsTable& t, bool with_evidence) {
    return find_defect(t, with_evidence).kind == Defect::Kind::none;
}

void verify_table_invariants(const ObsTable& t) {
    if (t.s_words.empty() || !t.s_words.front().empty()) {
        throw InternalInvariantViolation("S must start with the empty word");
    }
    if (t.suffixes.empty() || !t.suffixes.front().empty()) {
        throw InternalInvariantViolation("E must start with the empty suffix");
    }
    if (t.s_cells.size() != t.s_words.size() || t.r_cells.size() != t.r_words.size()) {
        throw InternalInvariantViolation("cell matrix shape mismatch");
    }
    for (const auto& cells : t.s_cells) {
        if (cells.size() != t.suffixes.size()) {
            throw InternalInvariantViolation("cell matrix shape mismatch");
        }
    }
    for (const auto& cells : t.r_cells) {
        if (cells.size() != t.suffixes.size()) {
            throw InternalInvariantViolation("cell matrix shape mismatch");
        }
    }
    // Distinct S rows (the table stays reduced).
    for (std::size_t i = 0; i < t.s_words.size(); ++i) {
        for (std::size_t j = i + 1; j < t.s_words.size(); ++j) {
            if (t.row_values(static_cast<int>(i)) == t.row_values(static_cast<int>(j))) {
                throw InternalInvariantViolation("two S words with identical rows");
            }
        }
    }
    // No duplicate words and no projection duplicates.
    for (std::size_t i = 0; i < t.rows(); ++i) {
        for (std::size_t j = i + 1; j < t.rows(); ++j) {
            const auto& a = t.word_at(static_cast<int>(i));
            const auto& b = t.word_at(static_cast<int>(j));
            if (project(a) == project(b)) {
                throw InternalInvariantViolation("two rows share a logical word");
            }
        }
    }
    // Prefix closure over S union R.
    for (std::size_t i = 0; i < t.rows(); ++i) {
        const auto& w = t.word_at(static_cast<int>(i));
        if (w.empty()) continue;
        ResetLogicalWord parent(w.begin(), w.end() - 1);
        if (t.find(parent) < 0) {
            throw InternalInvariantViolation("row without its parent prefix");
        }
    }
}

ObsTable init_table(const std::vector<std::string>& alphabet, const SmartMembership& mem) {
    ObsTable t;
    t.alphabet = alphabet;
    t.suffixes.push_back({});
    t.s_words.push_back({});
    t.s_cells.push_back(query_row({}, t, mem));
    for (const auto& action : alphabet) {
        LogicalWord one{{action, Rat(0)}};
        auto [annotated, verdict] = mem(one);
        (void)verdict;
        t.r_words.push_back(annotated);
        t.r_cells.push_back(query_row(annotated, t, mem));
    }
    return t;
}

void make_closed(ObsTable& t, const Defect& d, const SmartMembership& mem) {
    if (d.kind != Defect::Kind::unclosed) {
        throw InternalError("make_closed on a defect of the wrong kind");
    }
    int idx = t.find(d.row_word);
    if (idx < 0 || static_cast<std::size_t>(idx) < t.s_words.size()) {
        throw UnknownPrefix("defect row is not in R");
    }
    std::size_t r_idx = static_cast<std::size_t>(idx) - t.s_words.size();
    t.s_words.push_back(t.r_words[r_idx]);
    t.s_cells.push_back(t.r_cells[r_idx]);
    t.r_words.erase(t.r_words.begin() + static_cast<std::ptrdiff_t>(r_idx));
    t.r_cells.erase(t.r_cells.begin() + static_cast<std::ptrdiff_t>(r_idx));

    const ResetLogicalWord moved = t.s_words.back();
    for (const auto& action : t.alphabet) {
        LogicalWord extended = project(moved);
        extended.push_back({action, Rat(0)});
        auto [annotated, verdict] = mem(extended);
        (void)verdict;
        // words have one run each, so the extension's annotation must agree
        // with the stored row it extends
        if (annotated.size() != extended.size() ||
            !std::equal(moved.begin(), moved.end(), annotated.begin())) {
            throw InternalInvariantViolation("extension annotation disagrees with its row");
        }
        if (t.find(annotated) >= 0) continue;   // already present via a counterexample
        t.r_words.push_back(annotated);
        t.r_cells.push_back(query_row(annotated, t, mem));
    }
}

void make_consistent(ObsTable& t, const Defect& d, const SmartMembership& mem) {
    if (d.kind != Defect::Kind::inconsistent) {
        throw InternalError("make_consistent on a defect of the wrong kind");
    }
    for (const auto& e : t.suffixes) {
        if (e == d.new_suffix) {
            throw InternalInvariantViolation("distinguishing suffix already in E");
        }
    }
    t.suffixes.push_back(d.new_suffix);
    for (std::size_t i = 0; i < t.s_words.size(); ++i) {
        t.s_cells[i].push_back(query_cell(t.s_words[i], d.new_suffix, mem));
    }
    for (std::size_t i = 0; i < t.r_words.size(); ++i) {
        t.r_cells[i].push_back(query_cell(t.r_words[i], d.new_suffix, mem));
    }
}

void make_evidence_closed(ObsTable& t, const Defect& d, const SmartMembership& mem) {
    if (d.kind != Defect::Kind::evidence) {
        throw InternalError("make_evidence_closed on a defect of the wrong kind");
    }
    for (std::size_t len = 1; len <= d.evidence_word.size(); ++len) {
        ResetLogicalWord prefix(d.evidence_word.begin(),
                                d.evidence_word.begin() + static_cast<std::ptrdiff_t>(len));
        if (t.find(prefix) >= 0) continue;
        t.r_words.push_back(prefix);
        t.r_cells.push_back(query_row(prefix, t, mem));
    }
}

int process_counterexample(ObsTable& t, const ResetDelayWord& ctx, const SmartMembership& mem) {
    ResetLogicalWord logical = normalize(to_logical(ctx));
    int added = 0;
    for (std::size_t len = 1; len <= logical.size(); ++len) {
        ResetLogicalWord prefix(logical.begin(), logical.begin() + static_cast<std::ptrdiff_t>(len));
        if (t.find(prefix) >= 0) continue;
        t.r_words.push_back(prefix);
        t.r_cells.push_back(query_row(prefix, t, mem));
        ++added;
    }
    if (added == 0) {
        throw InternalInvariantViolation("counterexample added no rows");
    }
    return added;
}

} // namespace otal
