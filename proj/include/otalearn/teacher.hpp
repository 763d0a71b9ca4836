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

#include <utility>
#include <vector>

#include "otalearn/automaton.hpp"
#include "otalearn/words.hpp"

namespace otal {

// Equivalence answer handed to a learner. For the smart teacher the
// counterexample carries the target's reset annotation; a normal teacher
// leaves the resets meaningless (the learner must ignore them).
struct CtxAnswer {
    bool equivalent = true;
    ResetDelayWord ctx;
    char sign = '+';   // '-': the hypothesis over-accepts, '+': it under-accepts
};

// What the smart learner needs: membership on logical words answered with
// run annotations, and annotated equivalence.
class SmartTeacher {
public:
    virtual ~SmartTeacher() = default;
    virtual const std::vector<std::string>& alphabet() const = 0;
    virtual std::pair<ResetLogicalWord, Verdict> membership_logical(const LogicalWord& w) = 0;
    virtual CtxAnswer equivalence(const Ota& hypothesis) = 0;
};

// What the normal learner gets: verdicts on plain delay words, equivalence
// without annotations.
class NormalTeacher {
public:
    virtual ~NormalTeacher() = default;
    virtual const std::vector<std::string>& alphabet() const = 0;
    virtual Verdict membership_delay(const DelayWord& w) = 0;
    virtual CtxAnswer equivalence(const Ota& hypothesis) = 0;
};

// Self-contained teacher over a known target automaton, usable in both
// roles. Membership simulates the completed target exactly; equivalence runs
// the region-product check. With `trick` enabled, words that leave the
// original (uncompleted) target are classified x.
class Teacher : public SmartTeacher, public NormalTeacher {
public:
    Teacher(const Ota& target, bool trick);

    const std::vector<std::string>& alphabet() const override;
    std::pair<ResetLogicalWord, Verdict> membership_logical(const LogicalWord& w) override;
    Verdict membership_delay(const DelayWord& w) override;
    CtxAnswer equivalence(const Ota& hypothesis) override;

    const Ota& completed_target() const { return completed_; }

    long long membership_queries = 0;
    long long equivalence_queries = 0;

private:
    Ota completed_;
    bool trick_;
};

} // namespace otal
