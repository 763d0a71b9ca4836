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

#include <string>

#include "otalearn/automaton.hpp"
#include "otalearn/learner.hpp"
#include "otalearn/words.hpp"

namespace otal {

// Guard text, e.g. "[2,4)" or "(1,+)".  The right end is '+' for unbounded.
Guard parse_guard(const std::string& text);

// Word kinds as they appear on the command line and in files.
enum class WordKind { delay, logical, reset_delay, reset_logical };

// "delay" | "logical" | "reset-delay" | "reset-logical"
WordKind parse_word_kind(const std::string& text);
std::string word_kind_text(WordKind kind);

// Words are sequences of parenthesised steps: "(a,1.1)(b,0)" for plain
// words, "(a,1.1,N)(b,2,R)" for reset-annotated ones.  The empty string is
// the empty word.  parse_plain_word rejects reset fields, parse_reset_word
// requires them; handing the wrong kind over is a KindMismatch.
DelayWord parse_plain_word(const std::string& text);
ResetDelayWord parse_reset_word(const std::string& text);

// JSON automaton documents.
std::string automaton_to_json(const Ota& a);
Ota automaton_from_json(const std::string& text);

// JSON run statistics.
std::string stats_to_json(const LearnStats& s);

}  // namespace otal

