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

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "otalearn/words.hpp"

namespace otal {

// Answer to a membership question on a logical word: the word with the reset
// annotation its run induces, and the verdict.
using SmartMembership =
    std::function<std::pair<ResetLogicalWord, Verdict>(const LogicalWord&)>;

// One table entry: the verdict for row-word + suffix, plus the full
// reset-annotated form of that concatenation (the prefix part always equals
// the row word; the suffix part records how the clock behaved there). The
// annotation is what evidence-closedness inspects.
struct Cell {
    Verdict v = Verdict::reject;
    ResetLogicalWord annotated;
};

// Observation table. Rows are reset-logical words split into the core S and
// the boundary R; columns are logical suffixes (suffixes[0] is always the
// empty word). s_cells/r_cells are indexed [row][column].
struct ObsTable {
    std::vector<std::string> alphabet;
    // Verdict convention of the backing teacher: with the exit acceleration a
    // word that leaves every possible clock history answers x, without it the
    // same word answers reject. Cells whose invalidity is already visible in
    // the stored annotations are filled locally under this convention instead
    // of being queried.
    bool trick = true;
    std::vector<ResetLogicalWord> s_words;
    std::vector<ResetLogicalWord> r_words;
    std::vector<LogicalWord> suffixes;
    std::vector<std::vector<Cell>> s_cells;
    std::vector<std::vector<Cell>> r_cells;

    std::size_t rows() const { return s_words.size() + r_words.size(); }
    std::size_t columns() const { return suffixes.size(); }

    // Combined row index: 0..|S|-1 for S, then |S|.. for R; -1 if absent.
    int find(const ResetLogicalWord& w) const;
    // Same, but matching on the projection only (any resets).
    int find_projection(const LogicalWord& w) const;

    const ResetLogicalWord& word_at(int idx) const;
    const std::vector<Cell>& cells_at(int idx) const;
    std::vector<Cell>& cells_at(int idx);

    // The verdict vector of a row, in column order.
    std::vector<Verdict> row_values(int idx) const;
};

// A reason the table is not yet fit for hypothesis construction. Checks are
// ordered; each carries the data its repair needs.
struct Defect {
    enum class Kind {
        none,
        unclosed,       // row_word: R word whose row matches no S row
        inconsistent,   // new_suffix: distinguishing suffix to append to E
        evidence,       // evidence_word: annotated word whose prefixes are missing
    };
    Kind kind = Kind::none;
    ResetLogicalWord row_word;
    LogicalWord new_suffix;
    ResetLogicalWord evidence_word;
};

// Individual condition checks; each returns the canonically smallest defect.
std::optional<Defect> check_unclosed(const ObsTable& t);
std::optional<Defect> check_inconsistent(const ObsTable& t);
std::optional<Defect> check_evidence(const ObsTable& t);

// First defect in the order unclosed, inconsistent, evidence. The evidence
// check only runs when with_evidence is set.
Defect find_defect(const ObsTable& t, bool with_evidence);

bool is_prepared(const ObsTable& t, bool with_evidence);

// Structural invariants that hold by construction: distinct S rows, every
// stored word valid as an annotation target exactly once (no projection
// duplicates), prefix closure, epsilon in S and E. Raises
// InternalInvariantViolation when broken.
void verify_table_invariants(const ObsTable& t);

// Fresh table over the alphabet: S = {eps}, E = {eps}, R = the annotated
// one-letter words (sigma, 0) for each action.
ObsTable init_table(const std::vector<std::string>& alphabet, const SmartMembership& mem,
                    bool trick = true);

// Repairs (teacher-backed): move the defect row to S and add its one-letter
// extensions / append the distinguishing suffix and fill the new column /
// add the missing prefixes of the evidence word.
void make_closed(ObsTable& t, const Defect& d, const SmartMembership& mem);
void make_consistent(ObsTable& t, const Defect& d, const SmartMembership& mem);
void make_evidence_closed(ObsTable& t, const Defect& d, const SmartMembership& mem);

// Adds every missing prefix of normalize(to_logical(ctx)) as a new R row.
// Returns the number of rows added; a counterexample that adds nothing means
// the caller's bookkeeping is broken and raises InternalInvariantViolation.
int process_counterexample(ObsTable& t, const ResetDelayWord& ctx, const SmartMembership& mem);

} // namespace otal
