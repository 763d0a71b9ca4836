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

#include "otalearn/teacher.hpp"

#include "otalearn/equivalence.hpp"
#include "otalearn/errors.hpp"

namespace otal {

Teacher::Teacher(const Ota& target, bool trick) : trick_(trick) {
    Validation v = validate(target);
    if (!v.deterministic) {
        throw NotDeterministic("teacher requires a deterministic target");
    }
    completed_ = complete(target);
}

const std::vector<std::string>& Teacher::alphabet() const {
    return completed_.alphabet;
}

std::pair<ResetLogicalWord, Verdict> Teacher::membership_logical(const LogicalWord& w) {
    ++membership_queries;
    LogicalRun run = run_logical(completed_, w, trick_);
    return {std::move(run.annotated), run.verdict};
}

Verdict Teacher::membership_delay(const DelayWord& w) {
    ++membership_queries;
    return run_delay(completed_, w, trick_).verdict;
}

CtxAnswer Teacher::equivalence(const Ota& hypothesis) {
    ++equivalence_queries;
    EquivResult r = check_equivalence(hypothesis, completed_);
    CtxAnswer answer;
    answer.equivalent = r.equivalent;
    if (!r.equivalent) {
        answer.sign = r.sign;
        // Annotate the counterexample with the target's resets; positions
        // after a point where the word leaves the original target are
        // reported as reset, matching the membership annotations.
        answer.ctx = run_delay(completed_, r.witness, trick_).annotated;
    }
    return answer;
}

} // namespace otal
