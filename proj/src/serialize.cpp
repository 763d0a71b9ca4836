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

#include "otalearn/serialize.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>

#include <json.hpp>

#include "otalearn/errors.hpp"

namespace otal {
namespace {

using nlohmann::json;

// A hand-rolled cursor over the input keeps error offsets exact; the
// grammars here are too small to justify a parser library.
class Cursor {
  public:
    explicit Cursor(const std::string& text) : text_(text) {}

    std::size_t pos() const { return pos_; }
    bool done() const { return pos_ >= text_.size(); }

    char peek() const {
        if (done()) fail("unexpected end of input");
        return text_[pos_];
    }

    char take() {
        char c = peek();
        ++pos_;
        return c;
    }

    void expect(char c) {
        if (done() || text_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string take_while(int (*pred)(int)) {
        std::size_t start = pos_;
        while (!done() && pred(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return text_.substr(start, pos_ - start);
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what, pos_);
    }

  private:
    const std::string& text_;
    std::size_t pos_ = 0;
};

long long parse_nat(Cursor& c) {
    std::string digits = c.take_while(std::isdigit);
    if (digits.empty()) c.fail("expected a number");
    if (digits.size() > 18) c.fail("number too large");
    return std::stoll(digits);
}

Rat parse_time(Cursor& c) {
    std::size_t start = c.pos();
    std::string digits = c.take_while(std::isdigit);
    if (digits.empty()) c.fail("expected a number");
    std::string text = digits;
    if (!c.done() && c.peek() == '.') {
        c.take();
        std::string frac = c.take_while(std::isdigit);
        if (frac.empty()) c.fail("expected digits after '.'");
        text += '.';
        text += frac;
    }
    auto r = Rat::parse_decimal(text);
    if (!r) throw ParseError("bad number", start);
    return *r;
}

std::string parse_ident(Cursor& c) {
    std::string name = c.take_while(std::isalnum);
    if (name.empty()) c.fail("expected an action name");
    return name;
}

struct Step {
    std::string action;
    Rat time;
    bool has_reset = false;
    bool reset = false;
};

Step parse_step(Cursor& c, bool want_reset) {
    Step s;
    c.expect('(');
    s.action = parse_ident(c);
    c.expect(',');
    s.time = parse_time(c);
    if (!c.done() && c.peek() == ',') {
        if (!want_reset) c.fail("word carries reset marks");
        c.take();
        char m = c.done() ? '\0' : c.take();
        if (m == 'R')
            s.reset = true;
        else if (m == 'N')
            s.reset = false;
        else
            c.fail("expected 'R' or 'N'");
        s.has_reset = true;
    } else if (want_reset) {
        c.fail("word is missing reset marks");
    }
    c.expect(')');
    return s;
}

json guard_to_json(const Guard& g) { return guard_text(g); }

std::string json_type_name(const json& j) { return j.type_name(); }

const json& need(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(std::string("missing field \"") + key + "\"", 0);
    return *it;
}

}  // namespace

Guard parse_guard(const std::string& text) {
    Cursor c(text);
    Guard g;
    char open = c.peek();
    if (open == '[')
        g.lower_closed = true;
    else if (open == '(')
        g.lower_closed = false;
    else
        c.fail("expected '[' or '('");
    c.take();
    g.lower = parse_nat(c);
    c.expect(',');
    if (!c.done() && c.peek() == '+') {
        c.take();
        g.upper.reset();
        c.expect(')');
        g.upper_closed = false;
    } else {
        g.upper = parse_nat(c);
        char close = c.peek();
        if (close == ']')
            g.upper_closed = true;
        else if (close == ')')
            g.upper_closed = false;
        else
            c.fail("expected ']' or ')'");
        c.take();
    }
    if (!c.done()) c.fail("trailing text after guard");
    if (g.upper) {
        bool empty = *g.upper < g.lower ||
                     (*g.upper == g.lower && !(g.lower_closed && g.upper_closed));
        if (empty) c.fail("empty guard interval");
    }
    return g;
}

WordKind parse_word_kind(const std::string& text) {
    if (text == "delay") return WordKind::delay;
    if (text == "logical") return WordKind::logical;
    if (text == "reset-delay") return WordKind::reset_delay;
    if (text == "reset-logical") return WordKind::reset_logical;
    throw KindMismatch("unknown word kind: " + text);
}

std::string word_kind_text(WordKind kind) {
    switch (kind) {
        case WordKind::delay: return "delay";
        case WordKind::logical: return "logical";
        case WordKind::reset_delay: return "reset-delay";
        case WordKind::reset_logical: return "reset-logical";
    }
    throw InternalError("bad word kind");
}

DelayWord parse_plain_word(const std::string& text) {
    Cursor c(text);
    DelayWord w;
    while (!c.done()) {
        Step s = parse_step(c, false);
        w.push_back({s.action, s.time});
    }
    return w;
}

ResetDelayWord parse_reset_word(const std::string& text) {
    Cursor c(text);
    ResetDelayWord w;
    while (!c.done()) {
        Step s = parse_step(c, true);
        w.push_back({s.action, s.time, s.reset});
    }
    return w;
}

std::string automaton_to_json(const Ota& a) {
    // Documents refer to locations by name, so files stay readable and
    // reordering the location list does not change the language.
    json doc;
    doc["alphabet"] = a.alphabet;
    doc["locations"] = a.locations;
    doc["initial"] = a.locations.at(static_cast<std::size_t>(a.initial));
    json acc = json::array();
    for (int l : a.accepting)
        acc.push_back(a.locations.at(static_cast<std::size_t>(l)));
    doc["accepting"] = acc;
    json trans = json::array();
    for (const Transition& t : a.transitions) {
        json e;
        e["source"] = a.locations.at(static_cast<std::size_t>(t.source));
        e["action"] = t.action;
        e["guard"] = guard_to_json(t.guard);
        e["reset"] = t.reset;
        e["target"] = a.locations.at(static_cast<std::size_t>(t.target));
        trans.push_back(e);
    }
    doc["transitions"] = trans;
    return doc.dump(2) + "\n";
}

Ota automaton_from_json(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw ParseError("not valid JSON", 0);
    if (!doc.is_object())
        throw ParseError("expected a JSON object, got " + json_type_name(doc), 0);
    Ota a;
    for (const auto& s : need(doc, "alphabet")) {
        if (!s.is_string()) throw ParseError("alphabet entries must be strings", 0);
        a.alphabet.push_back(s.get<std::string>());
    }
    std::map<std::string, int> index;
    for (const auto& s : need(doc, "locations")) {
        if (!s.is_string()) throw ParseError("location names must be strings", 0);
        std::string name = s.get<std::string>();
        if (!index.emplace(name, static_cast<int>(a.locations.size())).second)
            throw ParseError("duplicate location name \"" + name + "\"", 0);
        a.locations.push_back(name);
    }
    auto location = [&](const json& j, const char* where) {
        if (!j.is_string())
            throw ParseError(std::string(where) + " must be a location name", 0);
        auto it = index.find(j.get<std::string>());
        if (it == index.end())
            throw ParseError("unknown location \"" + j.get<std::string>() + "\"", 0);
        return it->second;
    };
    a.initial = location(need(doc, "initial"), "initial");
    for (const auto& l : need(doc, "accepting"))
        a.accepting.insert(location(l, "accepting entry"));
    for (const auto& e : need(doc, "transitions")) {
        if (!e.is_object()) throw ParseError("transitions must be objects", 0);
        Transition t;
        t.source = location(need(e, "source"), "source");
        t.target = location(need(e, "target"), "target");
        const json& act = need(e, "action");
        const json& grd = need(e, "guard");
        const json& rst = need(e, "reset");
        if (!act.is_string()) throw ParseError("action must be a string", 0);
        if (!grd.is_string()) throw ParseError("guard must be a string", 0);
        if (!rst.is_boolean()) throw ParseError("reset must be a boolean", 0);
        t.action = act.get<std::string>();
        t.guard = parse_guard(grd.get<std::string>());
        t.reset = rst.get<bool>();
        a.transitions.push_back(t);
    }
    validate(a);   // reject structurally broken documents right away
    return a;
}

std::string stats_to_json(const LearnStats& s) {
    json doc;
    doc["mode"] = s.mode;
    doc["membership_count"] = s.membership_count;
    doc["equivalence_count"] = s.equivalence_count;
    doc["locations_learned"] = s.locations_learned;
    doc["table_rows"] = s.table_rows;
    doc["table_columns"] = s.table_columns;
    if (s.explored_instances >= 0) doc["explored_instances"] = s.explored_instances;
    if (s.discarded_instances >= 0) doc["discarded_instances"] = s.discarded_instances;
    if (s.cache_hits >= 0) doc["cache_hits"] = s.cache_hits;
    doc["wall_time_ms"] = s.wall_time_ms;
    return doc.dump(2) + "\n";
}

}  // namespace otal
