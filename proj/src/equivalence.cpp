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

#include "otalearn/equivalence.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <vector>

#include "otalearn/errors.hpp"

namespace otal {

namespace {

// Number of clock regions for one clock bounded by k: the points 0..k, the
// open unit intervals between and below them, and everything beyond k.
long long side_classes(long long k) { return 2 * k + 2; }

// Region index of a single clock value. Values strictly above k (including
// fractional values with floor k) share the "beyond" class 2k+1.
long long side_code(const Rat& v, long long k) {
    long long f = v.floor();
    bool frac = !v.is_integer();
    if (f > k || (f == k && frac)) return 2 * k + 1;
    return 2 * f + (frac ? 1 : 0);
}

bool side_beyond(const Rat& v, long long k) {
    return side_code(v, k) == 2 * k + 1;
}

// Distance from v to the next integer (1 when v is an integer).
Rat integer_gap(const Rat& v) {
    if (v.is_integer()) return Rat(1);
    return Rat(v.floor() + 1) - v;
}

struct Product {
    const Ota& a;
    const Ota& b;
    long long ka = 0;
    long long kb = 0;
    long long region_classes = 0;

    long long encode(int qa, int qb, const Rat& x, const Rat& y) const {
        long long sa = side_code(x, ka);
        long long sb = side_code(y, kb);
        int cmp = 1;
        if (!side_beyond(x, ka) && !side_beyond(y, kb)) {
            Rat fx = x.frac();
            Rat fy = y.frac();
            cmp = fx < fy ? 0 : (fy < fx ? 2 : 1);
        }
        long long region = (sa * side_classes(kb) + sb) * 3 + cmp;
        long long loc = static_cast<long long>(qa) * static_cast<long long>(b.locations.size()) +
                        static_cast<long long>(qb);
        return loc * region_classes + region;
    }
};

struct Node {
    long long parent = -1;
    int edge = -2;     // -1: time step, >= 0: alphabet index
    int qa = 0;
    int qb = 0;
    Rat x;
    Rat y;
};

// The unique enabled transition in a complete deterministic automaton.
const Transition& step_transition(const Ota& a, int loc, const std::string& action,
                                  const Rat& value) {
    const Transition* found = nullptr;
    for (const auto& t : a.transitions) {
        if (t.source == loc && t.action == action && t.guard.contains(value)) {
            if (found) {
                throw InternalError("product walk hit overlapping guards");
            }
            found = &t;
        }
    }
    if (!found) {
        throw InternalError("product walk hit a missing transition");
    }
    return *found;
}

// Time successor of the witness pair: nothing once both clocks are beyond
// their bounds; otherwise advance to the adjacent region, halving into the
// open interval whenever some relevant clock sits on an integer.
std::optional<std::pair<Rat, Rat>> time_successor(const Product& p, const Rat& x, const Rat& y) {
    bool ta = !side_beyond(x, p.ka);
    bool tb = !side_beyond(y, p.kb);
    if (!ta && !tb) return std::nullopt;
    std::optional<Rat> min_gap;
    bool on_integer = false;
    if (ta) {
        Rat g = integer_gap(x);
        if (!min_gap || g < *min_gap) min_gap = g;
        on_integer = on_integer || x.is_integer();
    }
    if (tb) {
        Rat g = integer_gap(y);
        if (!min_gap || g < *min_gap) min_gap = g;
        on_integer = on_integer || y.is_integer();
    }
    Rat delta = on_integer ? min_gap->half() : *min_gap;
    return std::make_pair(x + delta, y + delta);
}

} // namespace

EquivResult check_equivalence(const Ota& a, const Ota& b) {
    std::vector<std::string> sorted_a = a.alphabet;
    std::vector<std::string> sorted_b = b.alphabet;
    std::sort(sorted_a.begin(), sorted_a.end());
    std::sort(sorted_b.begin(), sorted_b.end());
    if (sorted_a != sorted_b) {
        throw StructuralError("equivalence check over different alphabets");
    }

    Ota ac = complete(a);
    Ota bc = complete(b);
    Product p{ac, bc, kappa_of(ac), kappa_of(bc), 0};
    p.region_classes = side_classes(p.ka) * side_classes(p.kb) * 3;
    long long state_cap = static_cast<long long>(ac.locations.size()) *
                          static_cast<long long>(bc.locations.size()) * p.region_classes;

    std::unordered_map<long long, Node> nodes;
    std::vector<long long> layer;

    auto is_bad = [&](int qa, int qb) { return ac.is_accepting(qa) != bc.is_accepting(qb); };

    long long root = p.encode(ac.initial, bc.initial, Rat(0), Rat(0));
    nodes[root] = Node{-1, -2, ac.initial, bc.initial, Rat(0), Rat(0)};
    layer.push_back(root);

    std::optional<long long> found;
    if (is_bad(ac.initial, bc.initial)) found = root;

    // Layers count actions, not region steps, so the reported witness is a
    // shortest disagreeing word. Within a layer every configuration reachable
    // by letting time pass is enumerated in increasing clock order before any
    // action fires; the first disagreement therefore sits at the lowest clock
    // region the hypothesis gets wrong, which for integer-bounded guards is
    // the misplaced boundary itself. Witnesses picked this way tend to reuse
    // clock regions the learner has already catalogued instead of dragging it
    // through every region below the true boundary.
    while (!found && !layer.empty()) {
        std::vector<long long> stations;
        for (long long key : layer) {
            stations.push_back(key);
            Node base = nodes[key];
            Rat x = base.x;
            Rat y = base.y;
            long long prev = key;
            while (auto succ = time_successor(p, x, y)) {
                x = succ->first;
                y = succ->second;
                long long nk = p.encode(base.qa, base.qb, x, y);
                if (nodes.count(nk)) break;
                nodes[nk] = Node{prev, -1, base.qa, base.qb, x, y};
                stations.push_back(nk);
                prev = nk;
                // A pure time step never changes locations, so it cannot
                // newly break acceptance agreement.
            }
            if (static_cast<long long>(nodes.size()) > state_cap) {
                throw InternalError("product exceeded its region-graph bound");
            }
        }
        std::vector<long long> next;
        for (long long skey : stations) {
            if (found) break;
            Node cur = nodes[skey];
            for (std::size_t ai = 0; ai < ac.alphabet.size(); ++ai) {
                const std::string& action = ac.alphabet[ai];
                const Transition& ta = step_transition(ac, cur.qa, action, cur.x);
                const Transition& tb = step_transition(bc, cur.qb, action, cur.y);
                Rat nx = ta.reset ? Rat(0) : cur.x;
                Rat ny = tb.reset ? Rat(0) : cur.y;
                long long nk = p.encode(ta.target, tb.target, nx, ny);
                if (nodes.count(nk)) continue;
                nodes[nk] = Node{skey, static_cast<int>(ai), ta.target, tb.target, nx, ny};
                next.push_back(nk);
                if (is_bad(ta.target, tb.target)) {
                    found = nk;
                    break;
                }
            }
            if (static_cast<long long>(nodes.size()) > state_cap) {
                throw InternalError("product exceeded its region-graph bound");
            }
        }
        layer = std::move(next);
    }

    EquivResult result;
    if (!found) return result;

    result.equivalent = false;
    result.sign = ac.is_accepting(nodes[*found].qa) ? '-' : '+';

    // Rebuild the edge sequence root -> bad state.
    std::vector<long long> chain;
    for (long long k = *found; k != root; k = nodes[k].parent) chain.push_back(k);
    std::reverse(chain.begin(), chain.end());

    Rat pending = 0;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const Node& node = nodes[chain[i]];
        const Node& prev = nodes[node.parent];
        if (node.edge == -1) {
            pending = pending + (node.x - prev.x);
        } else {
            result.witness.push_back({ac.alphabet[static_cast<std::size_t>(node.edge)], pending});
            pending = 0;
        }
    }
    if (!pending.is_zero() || (!chain.empty() && nodes[chain.back()].edge < 0)) {
        throw InternalError("counterexample path does not end on an action");
    }

    Verdict va = run_delay(ac, result.witness, false).verdict;
    Verdict vb = run_delay(bc, result.witness, false).verdict;
    bool one_accepts = (va == Verdict::accept) != (vb == Verdict::accept);
    if (!one_accepts) {
        throw InternalError("counterexample word fails replay");
    }
    return result;
}

} // namespace otal
