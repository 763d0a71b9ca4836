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

#include "otalearn/partition.hpp"

#include "otalearn/errors.hpp"

namespace otal {

std::vector<Guard> partition_cover(const std::vector<Rat>& values) {
    if (values.empty()) {
        throw PartitionPreconditionViolated("no values to partition over");
    }
    if (!values.front().is_zero()) {
        throw PartitionPreconditionViolated("first partition value must be 0");
    }
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        if (!(values[i] < values[i + 1])) {
            throw PartitionPreconditionViolated("partition values must be strictly increasing");
        }
    }

    std::vector<Guard> out;
    out.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const Rat& cur = values[i];
        Guard g;
        g.lower = cur.floor();
        g.lower_closed = cur.is_integer();
        if (i + 1 < values.size()) {
            const Rat& next = values[i + 1];
            g.upper = next.floor();
            g.upper_closed = !next.is_integer();
            bool empty = *g.upper < g.lower ||
                         (*g.upper == g.lower && !(g.lower_closed && g.upper_closed));
            if (empty) {
                // Two fractional values inside one unit interval: no integer
                // boundary can separate them.
                throw PartitionPreconditionViolated(
                    "values " + cur.str() + " and " + next.str() + " cannot be separated");
            }
        }
        out.push_back(g);
    }
    return out;
}

} // namespace otal
