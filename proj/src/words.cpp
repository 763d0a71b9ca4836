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

#include "otalearn/words.hpp"

#include "otalearn/errors.hpp"

namespace otal {

LogicalWord project(const ResetLogicalWord& w) {
    LogicalWord out;
    out.reserve(w.size());
    for (const auto& s : w) out.push_back({s.action, s.time});
    return out;
}

DelayWord project_delay(const ResetDelayWord& w) {
    DelayWord out;
    out.reserve(w.size());
    for (const auto& s : w) out.push_back({s.action, s.time});
    return out;
}

ResetLogicalWord attach_resets(const LogicalWord& w, const std::vector<bool>& resets) {
    if (w.size() != resets.size()) {
        throw InternalError("attach_resets: size mismatch");
    }
    ResetLogicalWord out;
    out.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        out.push_back({w[i].action, w[i].time, resets[i]});
    }
    return out;
}

ResetLogicalWord to_logical(const ResetDelayWord& w) {
    ResetLogicalWord out;
    out.reserve(w.size());
    Rat clock = 0;
    for (const auto& s : w) {
        if (s.time.is_negative()) {
            throw InvalidWord("negative delay in word " + word_text(w));
        }
        Rat value = clock + s.time;
        out.push_back({s.action, value, s.reset});
        clock = s.reset ? Rat(0) : value;
    }
    return out;
}

ResetDelayWord to_delay(const ResetLogicalWord& w) {
    ResetDelayWord out;
    out.reserve(w.size());
    Rat clock = 0;
    for (const auto& s : w) {
        Rat delay = s.time - clock;
        if (delay.is_negative()) {
            throw InvalidWord("logical word is not a clock history");
        }
        out.push_back({s.action, delay, s.reset});
        clock = s.reset ? Rat(0) : s.time;
    }
    return out;
}

std::optional<std::size_t> first_invalid(const ResetLogicalWord& w) {
    Rat clock = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i].time.is_negative() || w[i].time < clock) {
            return i;
        }
        clock = w[i].reset ? Rat(0) : w[i].time;
    }
    return std::nullopt;
}

ResetLogicalWord normalize(const ResetLogicalWord& w) {
    ResetLogicalWord out;
    out.reserve(w.size());
    for (const auto& s : w) {
        if (s.time.is_integer()) {
            out.push_back(s);
        } else {
            out.push_back({s.action, Rat(10 * s.time.floor() + 1, 10), s.reset});
        }
    }
    return out;
}

PointRegion region_of(const Rat& v) {
    return {v.floor(), v.is_integer()};
}

std::size_t action_index(const std::vector<std::string>& alphabet, const std::string& action) {
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        if (alphabet[i] == action) return i;
    }
    throw StructuralError("action '" + action + "' is not in the alphabet");
}

namespace {

// -1, 0, 1 comparison of single steps under the canonical order.
int cmp_step(const std::string& action_a, const Rat& time_a, bool reset_a,
             const std::string& action_b, const Rat& time_b, bool reset_b,
             const std::vector<std::string>& alphabet) {
    std::size_t ia = action_index(alphabet, action_a);
    std::size_t ib = action_index(alphabet, action_b);
    if (ia != ib) return ia < ib ? -1 : 1;
    if (time_a != time_b) return time_a < time_b ? -1 : 1;
    if (reset_a != reset_b) return reset_a ? 1 : -1;
    return 0;
}

} // namespace

bool canonical_less(const ResetLogicalWord& a, const ResetLogicalWord& b,
                    const std::vector<std::string>& alphabet) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = cmp_step(a[i].action, a[i].time, a[i].reset,
                         b[i].action, b[i].time, b[i].reset, alphabet);
        if (c != 0) return c < 0;
    }
    return false;
}

bool canonical_less(const LogicalWord& a, const LogicalWord& b,
                    const std::vector<std::string>& alphabet) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = cmp_step(a[i].action, a[i].time, false,
                         b[i].action, b[i].time, false, alphabet);
        if (c != 0) return c < 0;
    }
    return false;
}

std::string word_text(const DelayWord& w) {
    std::string out;
    for (const auto& s : w) {
        out += '(';
        out += s.action;
        out += ',';
        out += s.time.decimal();
        out += ')';
    }
    return out;
}

std::string word_text(const ResetDelayWord& w) {
    std::string out;
    for (const auto& s : w) {
        out += '(';
        out += s.action;
        out += ',';
        out += s.time.decimal();
        out += ',';
        out += s.reset ? 'R' : 'N';
        out += ')';
    }
    return out;
}

} // namespace otal
