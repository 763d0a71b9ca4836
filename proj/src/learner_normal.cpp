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

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "otalearn/errors.hpp"
#include "otalearn/hypothesis.hpp"
#include "otalearn/learner.hpp"

namespace otal {

namespace {

struct DelayLess {
    bool operator()(const DelayWord& a, const DelayWord& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].action != b[i].action) return a[i].action < b[i].action;
            if (a[i].time != b[i].time) return a[i].time < b[i].time;
        }
        return false;
    }
};

// A table plus what the search needs to know about it: how many reset bits
// were freely chosen to build it, a tie-breaking insertion number, and where
// its repair sweep stands. Tracking the sweep position makes a chain of pops
// apply repairs in exactly the order the smart learner would (closed, then
// consistent, then evidence, restarting from the top only after a sweep that
// changed something), which keeps the two learners' tables comparable.
struct Instance {
    ObsTable table;
    long long guesses = 0;
    long long index = 0;
    int next_check = 0;
    bool sweep_changed = false;
};

struct PopOrder {
    bool operator()(const Instance& a, const Instance& b) const {
        if (a.guesses != b.guesses) return a.guesses > b.guesses;
        return a.index > b.index;
    }
};

// The clock region's representative: integers stay, fractions round to
// floor + 1/10.
Rat region_value(const Rat& v) {
    return v.is_integer() ? v : Rat(v.floor()) + Rat(1, 10);
}

// One candidate filling of a single cell, with the number of freely chosen
// bits it took.
struct CellOption {
    Cell cell;
    long long cost = 0;
};

// The choices for the last reset of a new row, along with the verdict of its
// epsilon cell.
struct RowOption {
    bool reset = true;
    Verdict v = Verdict::reject;
    long long cost = 0;
};

// One fully annotated row: its word, its cells over all current suffixes,
// and the bits guessed to produce them.
struct RowPackage {
    ResetLogicalWord word;
    std::vector<Cell> cells;
    long long cost = 0;
};

// A partially assembled child instance during a repair.
struct Partial {
    ObsTable table;
    long long cost = 0;
};

class Search {
public:
    Search(NormalTeacher& teacher, const NormalOptions& options)
        : teacher_(teacher), opt_(options) {}

    LearnResult run();

private:
    Verdict member(const DelayWord& w) {
        auto it = member_cache_.find(w);
        if (it != member_cache_.end()) {
            ++cache_hits_;
            return it->second;
        }
        Verdict v = teacher_.membership_delay(w);
        ++membership_misses_;
        member_cache_.emplace(w, v);
        return v;
    }

    Verdict forced() const {
        return opt_.trick ? Verdict::exited : Verdict::reject;
    }

    std::vector<CellOption> fill_cell(const ResetLogicalWord& p, Verdict p_eps,
                                      const LogicalWord& e);
    std::vector<RowOption> extension_options(const ResetLogicalWord& moved,
                                             Verdict moved_eps, const std::string& action);
    std::vector<RowPackage> row_packages(const ResetLogicalWord& w, Verdict eps_v,
                                         const std::vector<LogicalWord>& suffixes);

    void seed();
    void insert(Instance&& inst);
    std::string instance_key(const Instance& inst) const;
    static std::string hypothesis_key(const Ota& h);

    std::vector<Instance> repair_closed(const Instance& inst, const Defect& d);
    std::vector<Instance> repair_consistent(const Instance& inst, const Defect& d);
    std::vector<Instance> repair_evidence(const Instance& inst, const Defect& d);
    std::vector<Instance> process_ctx(const Instance& inst, const DelayWord& ctx);

    NormalTeacher& teacher_;
    NormalOptions opt_;
    std::priority_queue<Instance, std::vector<Instance>, PopOrder> frontier_;
    std::map<DelayWord, Verdict, DelayLess> member_cache_;
    std::map<std::string, CtxAnswer> ctx_cache_;
    std::set<std::string> seen_;
    NormalDiscards discards_;
    long long next_index_ = 0;
    long long explored_ = 0;
    long long membership_misses_ = 0;
    long long equivalence_misses_ = 0;
    long long cache_hits_ = 0;
};

// All ways to fill the cell (p, e). Bits inside the suffix are free choices,
// except the final one: no delay conversion ever reads it, so it is only
// enumerated when evidence-closedness (which turns annotations back into
// rows) is on. A position that cannot follow its predecessor's clock freezes
// the rest of the word: reset bits on, no query, forced verdict, exactly the
// way the smart teacher annotates impossible clock histories.
std::vector<CellOption> Search::fill_cell(const ResetLogicalWord& p, Verdict p_eps,
                                          const LogicalWord& e) {
    std::vector<CellOption> out;
    bool invalid = !is_valid(p);
    if (invalid || p_eps == Verdict::exited) {
        if (invalid) ++discards_.invalid_conversion;
        CellOption o;
        o.cell.v = forced();
        o.cell.annotated = p;
        for (const auto& s : e) o.cell.annotated.push_back({s.action, s.time, true});
        out.push_back(std::move(o));
        return out;
    }

    struct Frame {
        ResetLogicalWord w;
        long long cost = 0;
    };
    std::vector<Frame> live;
    live.push_back({p, 0});
    for (std::size_t i = 0; i < e.size(); ++i) {
        std::vector<Frame> next;
        bool last = i + 1 == e.size();
        for (auto& f : live) {
            bool blocked =
                !f.w.empty() && !f.w.back().reset && e[i].time < f.w.back().time;
            if (blocked) {
                ++discards_.invalid_conversion;
                CellOption o;
                o.cell.v = forced();
                o.cell.annotated = std::move(f.w);
                for (std::size_t j = i; j < e.size(); ++j)
                    o.cell.annotated.push_back({e[j].action, e[j].time, true});
                o.cost = f.cost;
                out.push_back(std::move(o));
                continue;
            }
            if (last && !opt_.evidence_closed) {
                Frame g{std::move(f.w), f.cost};
                g.w.push_back({e[i].action, e[i].time, true});
                next.push_back(std::move(g));
            } else {
                for (bool bit : {false, true}) {
                    Frame g{f.w, f.cost + 1};
                    g.w.push_back({e[i].action, e[i].time, bit});
                    next.push_back(std::move(g));
                }
            }
        }
        live = std::move(next);
    }
    for (auto& f : live) {
        CellOption o;
        o.cell.v = member(project_delay(to_delay(f.w)));
        o.cell.annotated = std::move(f.w);
        o.cost = f.cost;
        out.push_back(std::move(o));
    }
    return out;
}

// Last-bit choices for the extension moved + (action, 0). The delay image of
// the word does not depend on that bit, so one query covers both choices;
// with the sink trick an exit verdict pins the bit to "reset" for free, and
// an impossible junction is frozen without asking anything.
std::vector<RowOption> Search::extension_options(const ResetLogicalWord& moved,
                                                 Verdict moved_eps,
                                                 const std::string& action) {
    ResetLogicalWord w = moved;
    w.push_back({action, 0, true});
    if (!is_valid(w)) {
        ++discards_.invalid_conversion;
        return {{true, forced(), 0}};
    }
    if (moved_eps == Verdict::exited) return {{true, forced(), 0}};
    Verdict v = member(project_delay(to_delay(w)));
    if (opt_.trick && v == Verdict::exited) return {{true, v, 0}};
    return {{false, v, 1}, {true, v, 1}};
}

std::vector<RowPackage> Search::row_packages(const ResetLogicalWord& w, Verdict eps_v,
                                             const std::vector<LogicalWord>& suffixes) {
    std::vector<RowPackage> packs;
    packs.push_back({w, {Cell{eps_v, w}}, 0});
    for (std::size_t col = 1; col < suffixes.size(); ++col) {
        auto opts = fill_cell(w, eps_v, suffixes[col]);
        std::vector<RowPackage> next;
        next.reserve(packs.size() * opts.size());
        for (const auto& pk : packs) {
            for (const auto& o : opts) {
                RowPackage n = pk;
                n.cells.push_back(o.cell);
                n.cost += o.cost;
                next.push_back(std::move(n));
            }
        }
        packs = std::move(next);
    }
    return packs;
}

// Initial instances: S = {eps}, one (sigma, 0) row per action, every
// combination of their last bits (minus the ones an exit verdict decides).
void Search::seed() {
    ObsTable base;
    base.alphabet = teacher_.alphabet();
    base.suffixes.push_back({});
    base.s_words.push_back({});
    Verdict eps_v = member({});
    base.s_cells.push_back({Cell{eps_v, {}}});

    std::vector<Partial> parts;
    parts.push_back({std::move(base), 0});
    for (const auto& action : teacher_.alphabet()) {
        auto opts = extension_options({}, eps_v, action);
        std::vector<Partial> next;
        next.reserve(parts.size() * opts.size());
        for (const auto& part : parts) {
            for (const auto& o : opts) {
                Partial n = part;
                ResetLogicalWord w{{action, 0, o.reset}};
                n.table.r_words.push_back(w);
                n.table.r_cells.push_back({Cell{o.v, w}});
                n.cost += o.cost;
                next.push_back(std::move(n));
            }
        }
        parts = std::move(next);
    }
    for (auto& part : parts) {
        Instance inst;
        inst.table = std::move(part.table);
        inst.guesses = part.cost;
        insert(std::move(inst));
    }
}

void Search::insert(Instance&& inst) {
    std::string key = instance_key(inst);
    if (!seen_.insert(std::move(key)).second) {
        ++discards_.duplicate_instance;
        return;
    }
    if (static_cast<long long>(frontier_.size()) >= opt_.max_resident) {
        throw ResourceLimit("resident table instances exceed the configured cap");
    }
    inst.index = next_index_++;
    if (opt_.on_insert) opt_.on_insert(inst.table, inst.guesses);
    frontier_.push(std::move(inst));
}

std::string Search::instance_key(const Instance& inst) const {
    std::ostringstream os;
    os << inst.next_check << '|' << inst.sweep_changed << '|';
    const ObsTable& t = inst.table;
    os << "S";
    for (const auto& w : t.s_words) os << '|' << word_text(w);
    os << "#R";
    for (const auto& w : t.r_words) os << '|' << word_text(w);
    os << "#E";
    for (const auto& e : t.suffixes) os << '|' << word_text(e);
    os << "#V";
    auto cells = [&](const std::vector<std::vector<Cell>>& m) {
        for (const auto& row : m) {
            os << '|';
            for (const auto& c : row) {
                os << static_cast<char>(c.v);
                if (opt_.evidence_closed) os << word_text(c.annotated) << ';';
            }
        }
    };
    cells(t.s_cells);
    cells(t.r_cells);
    return os.str();
}

std::string Search::hypothesis_key(const Ota& h) {
    std::ostringstream os;
    os << h.locations.size() << '|' << h.initial << '|';
    for (int a : h.accepting) os << a << ',';
    std::vector<std::string> edges;
    edges.reserve(h.transitions.size());
    for (const auto& t : h.transitions) {
        std::ostringstream e;
        e << t.source << ' ' << t.action << ' ' << guard_text(t.guard) << ' '
          << t.reset << ' ' << t.target;
        edges.push_back(e.str());
    }
    std::sort(edges.begin(), edges.end());
    for (const auto& e : edges) os << e << '|';
    return os.str();
}

std::vector<Instance> Search::repair_closed(const Instance& inst, const Defect& d) {
    Instance base = inst;
    ObsTable& t = base.table;
    auto it = std::find(t.r_words.begin(), t.r_words.end(), d.row_word);
    if (it == t.r_words.end()) {
        throw InternalInvariantViolation("unclosed defect row is not in the table");
    }
    std::size_t idx = static_cast<std::size_t>(it - t.r_words.begin());
    ResetLogicalWord moved = t.r_words[idx];
    std::vector<Cell> moved_cells = t.r_cells[idx];
    t.r_words.erase(t.r_words.begin() + idx);
    t.r_cells.erase(t.r_cells.begin() + idx);
    t.s_words.push_back(moved);
    t.s_cells.push_back(moved_cells);
    Verdict moved_eps = moved_cells[0].v;

    std::vector<Partial> parts;
    parts.push_back({std::move(base.table), 0});
    for (const auto& action : inst.table.alphabet) {
        ResetLogicalWord probe = moved;
        probe.push_back({action, 0, true});
        int existing = parts.front().table.find_projection(project(probe));
        if (existing >= 0) {
            const ResetLogicalWord& ex = parts.front().table.word_at(existing);
            if (!std::equal(moved.begin(), moved.end(), ex.begin())) {
                // The extension already exists under a different spelling of
                // the moved prefix; the instance contradicts itself.
                ++discards_.duplicate_prefix;
                return {};
            }
            continue;
        }
        auto opts = extension_options(moved, moved_eps, action);
        std::vector<RowPackage> packs;
        for (const auto& o : opts) {
            ResetLogicalWord w = moved;
            w.push_back({action, 0, o.reset});
            for (auto pk : row_packages(w, o.v, inst.table.suffixes)) {
                pk.cost += o.cost;
                packs.push_back(std::move(pk));
            }
        }
        std::vector<Partial> next;
        next.reserve(parts.size() * packs.size());
        for (const auto& part : parts) {
            for (const auto& pk : packs) {
                Partial n = part;
                n.table.r_words.push_back(pk.word);
                n.table.r_cells.push_back(pk.cells);
                n.cost += pk.cost;
                next.push_back(std::move(n));
            }
        }
        parts = std::move(next);
    }

    std::vector<Instance> children;
    children.reserve(parts.size());
    for (auto& part : parts) {
        Instance child;
        child.table = std::move(part.table);
        child.guesses = inst.guesses + part.cost;
        children.push_back(std::move(child));
    }
    return children;
}

std::vector<Instance> Search::repair_consistent(const Instance& inst, const Defect& d) {
    Instance base = inst;
    base.table.suffixes.push_back(d.new_suffix);

    std::vector<Partial> parts;
    parts.push_back({std::move(base.table), 0});
    std::size_t rows = inst.table.rows();
    for (std::size_t row = 0; row < rows; ++row) {
        const ResetLogicalWord& w = inst.table.word_at(static_cast<int>(row));
        Verdict eps_v = inst.table.cells_at(static_cast<int>(row))[0].v;
        auto opts = fill_cell(w, eps_v, d.new_suffix);
        std::vector<Partial> next;
        next.reserve(parts.size() * opts.size());
        for (const auto& part : parts) {
            for (const auto& o : opts) {
                Partial n = part;
                n.table.cells_at(static_cast<int>(row)).push_back(o.cell);
                n.cost += o.cost;
                next.push_back(std::move(n));
            }
        }
        parts = std::move(next);
    }

    std::vector<Instance> children;
    children.reserve(parts.size());
    for (auto& part : parts) {
        Instance child;
        child.table = std::move(part.table);
        child.guesses = inst.guesses + part.cost;
        children.push_back(std::move(child));
    }
    return children;
}

std::vector<Instance> Search::repair_evidence(const Instance& inst, const Defect& d) {
    const ResetLogicalWord& evidence = d.evidence_word;
    std::vector<Partial> parts;
    parts.push_back({inst.table, 0});
    std::vector<ResetLogicalWord> added;
    for (std::size_t len = 1; len <= evidence.size(); ++len) {
        ResetLogicalWord prefix(evidence.begin(), evidence.begin() + len);
        const ObsTable& t = parts.front().table;
        if (t.find(prefix) >= 0) continue;
        if (t.find_projection(project(prefix)) >= 0) {
            // Same word, different resets: the annotation contradicts a row.
            ++discards_.duplicate_prefix;
            return {};
        }
        Verdict eps_v =
            is_valid(prefix) ? member(project_delay(to_delay(prefix))) : forced();
        auto packs = row_packages(prefix, eps_v, inst.table.suffixes);
        std::vector<Partial> next;
        next.reserve(parts.size() * packs.size());
        for (const auto& part : parts) {
            for (const auto& pk : packs) {
                Partial n = part;
                n.table.r_words.push_back(pk.word);
                n.table.r_cells.push_back(pk.cells);
                n.cost += pk.cost;
                next.push_back(std::move(n));
            }
        }
        parts = std::move(next);
    }

    std::vector<Instance> children;
    children.reserve(parts.size());
    for (auto& part : parts) {
        Instance child;
        child.table = std::move(part.table);
        child.guesses = inst.guesses + part.cost;
        children.push_back(std::move(child));
    }
    return children;
}

// Turns a plain counterexample into table rows. The resets along the word
// are unknown: while the walked prefix matches existing rows their stored
// bits are followed; past the last match every bit is a fresh guess. With
// the sink trick, membership on the raw delay prefixes reveals where the
// word leaves the target, and from there on all bits are pinned to reset.
// Values are tracked raw for the clock recurrence and rounded to region
// representatives for storage and lookup.
std::vector<Instance> Search::process_ctx(const Instance& inst, const DelayWord& ctx) {
    struct Walk {
        long long cost = 0;
        Rat mu = 0;
        bool prev_reset = true;
        bool exited = false;
        ResetLogicalWord norm;
        std::vector<ResetLogicalWord> added;
    };
    std::vector<Walk> walks;
    walks.push_back({});

    // Only the table needs consulting: rows are prefix-closed with unique
    // projections, so once one position misses, every longer one does too.
    auto lookup = [&](const LogicalWord& projection) -> const ResetLogicalWord* {
        int found = inst.table.find_projection(projection);
        if (found >= 0) return &inst.table.word_at(found);
        return nullptr;
    };

    bool exited_probe = false;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        if (opt_.trick && !exited_probe) {
            DelayWord prefix(ctx.begin(), ctx.begin() + static_cast<long>(i) + 1);
            exited_probe = member(prefix) == Verdict::exited;
        }
        std::vector<Walk> next;
        for (auto& w : walks) {
            Rat raw = ctx[i].time + (w.prev_reset ? Rat(0) : w.mu);
            Rat norm_time = region_value(raw);
            LogicalWord projection = project(w.norm);
            projection.push_back({ctx[i].action, norm_time});
            if (const ResetLogicalWord* row = lookup(projection)) {
                if (!std::equal(w.norm.begin(), w.norm.end(), row->begin())) {
                    throw InternalInvariantViolation(
                        "counterexample prefix matches a row spelled differently");
                }
                bool bit = (*row)[i].reset;
                if (exited_probe && !bit) {
                    // The table insists on keeping a clock the target resets
                    // here; the whole instance is provably wrong.
                    ++discards_.duplicate_prefix;
                    return {};
                }
                w.exited = w.exited || exited_probe;
                w.mu = raw;
                w.prev_reset = bit;
                w.norm.push_back({ctx[i].action, norm_time, bit});
                next.push_back(std::move(w));
                continue;
            }
            if (exited_probe || w.exited) {
                w.exited = true;
                w.mu = raw;
                w.prev_reset = true;
                w.norm.push_back({ctx[i].action, norm_time, true});
                w.added.push_back(w.norm);
                next.push_back(std::move(w));
                continue;
            }
            for (bool bit : {false, true}) {
                Walk g = w;
                g.cost += 1;
                g.mu = raw;
                g.prev_reset = bit;
                g.norm.push_back({ctx[i].action, norm_time, bit});
                g.added.push_back(g.norm);
                next.push_back(std::move(g));
            }
        }
        walks = std::move(next);
    }

    std::vector<Instance> children;
    for (auto& w : walks) {
        if (w.added.empty()) {
            // Nothing new: this instance would just repeat its hypothesis.
            ++discards_.duplicate_prefix;
            continue;
        }
        std::vector<Partial> parts;
        parts.push_back({inst.table, w.cost});
        for (const auto& row : w.added) {
            Verdict eps_v = member(project_delay(to_delay(row)));
            auto packs = row_packages(row, eps_v, inst.table.suffixes);
            std::vector<Partial> next;
            next.reserve(parts.size() * packs.size());
            for (const auto& part : parts) {
                for (const auto& pk : packs) {
                    Partial n = part;
                    n.table.r_words.push_back(pk.word);
                    n.table.r_cells.push_back(pk.cells);
                    n.cost += pk.cost;
                    next.push_back(std::move(n));
                }
            }
            parts = std::move(next);
        }
        for (auto& part : parts) {
            Instance child;
            child.table = std::move(part.table);
            child.guesses = inst.guesses + part.cost;
            children.push_back(std::move(child));
        }
    }
    return children;
}

LearnResult Search::run() {
    auto started = std::chrono::steady_clock::now();
    seed();

    while (!frontier_.empty()) {
        Instance inst = frontier_.top();
        frontier_.pop();
        ++explored_;
        if (explored_ > opt_.max_explored) {
            throw ResourceLimit("explored table instances exceed the configured cap");
        }

        // Resume this instance's repair sweep where it left off.
        int fired = -1;
        std::optional<Defect> defect;
        int pos = inst.next_check;
        bool changed = inst.sweep_changed;
        while (true) {
            for (int c = pos; c < 3 && fired < 0; ++c) {
                if (c == 2 && !opt_.evidence_closed) continue;
                std::optional<Defect> d = c == 0   ? check_unclosed(inst.table)
                                          : c == 1 ? check_inconsistent(inst.table)
                                                   : check_evidence(inst.table);
                if (d) {
                    fired = c;
                    defect = std::move(d);
                }
            }
            if (fired >= 0 || !changed) break;
            pos = 0;
            changed = false;
        }

        if (fired >= 0) {
            std::vector<Instance> children =
                fired == 0   ? repair_closed(inst, *defect)
                : fired == 1 ? repair_consistent(inst, *defect)
                             : repair_evidence(inst, *defect);
            for (auto& child : children) {
                child.next_check = fired + 1;
                child.sweep_changed = true;
                insert(std::move(child));
            }
            continue;
        }

        verify_table_invariants(inst.table);
        Ota hypothesis;
        try {
            hypothesis = table_to_hypothesis(inst.table);
        } catch (const HypothesisConflict&) {
            ++discards_.partition_violation;
            continue;
        } catch (const PartitionPreconditionViolated&) {
            ++discards_.partition_violation;
            continue;
        }
        // Same quotient the smart learner applies: copies of one behavior
        // split across clock regions collapse before the teacher sees them.
        hypothesis = merge_equivalent_locations(hypothesis);

        CtxAnswer answer;
        std::string key = hypothesis_key(hypothesis);
        auto cached = ctx_cache_.find(key);
        if (cached != ctx_cache_.end()) {
            ++cache_hits_;
            answer = cached->second;
        } else {
            answer = teacher_.equivalence(hypothesis);
            ++equivalence_misses_;
            ctx_cache_.emplace(std::move(key), answer);
        }

        if (answer.equivalent) {
            LearnResult result;
            result.hypothesis = std::move(hypothesis);
            result.table = std::move(inst.table);
            result.stats.mode = "normal";
            result.stats.membership_count = membership_misses_;
            result.stats.equivalence_count = equivalence_misses_;
            int locations = static_cast<int>(result.hypothesis.locations.size());
            result.stats.locations_learned =
                result.hypothesis.sink.has_value() ? locations - 1 : locations;
            result.stats.table_rows = static_cast<int>(result.table.rows());
            result.stats.table_columns = static_cast<int>(result.table.columns());
            result.stats.explored_instances = explored_;
            result.stats.discarded_instances =
                discards_.invalid_conversion + discards_.duplicate_prefix +
                discards_.partition_violation + discards_.duplicate_instance;
            result.stats.cache_hits = cache_hits_;
            result.stats.wall_time_ms = std::chrono::duration<double, std::milli>(
                                            std::chrono::steady_clock::now() - started)
                                            .count();
            if (opt_.discards) *opt_.discards = discards_;
            return result;
        }

        for (auto& child : process_ctx(inst, project_delay(answer.ctx))) {
            child.next_check = 0;
            child.sweep_changed = false;
            insert(std::move(child));
        }
    }
    throw InternalError("the guessing search ran out of table instances");
}

} // namespace

LearnResult learn_normal(NormalTeacher& teacher, const NormalOptions& options) {
    Search search(teacher, options);
    return search.run();
}

} // namespace otal
