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

#include <optional>
#include <string>

namespace otal {

// Exact rational number on 64-bit numerator/denominator kept in reduced form
// with a positive denominator. All intermediate products run through 128-bit
// arithmetic; a result that does not fit 64 bits raises InternalError instead
// of wrapping. Time values in this code base stay tiny, so hitting the limit
// means a logic error, not a range problem.
class Rat {
public:
    Rat() = default;
    Rat(long long value) : num_(value) {}    // intentionally implicit
    Rat(long long num, long long den);

    // Parses a non-negative decimal literal such as "0", "3", "1.1", "0.25".
    // Returns nullopt on any deviation from that shape.
    static std::optional<Rat> parse_decimal(const std::string& text);

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    long long floor() const;
    Rat frac() const;      // value minus floor, in [0,1)
    Rat half() const;      // value / 2

    // Canonical decimal rendering ("3", "1.1", "0.25"). Valid only when the
    // denominator divides a power of ten; anything else raises InternalError
    // because no value produced by parsing, normalization, or the region walk
    // can have another shape.
    std::string decimal() const;
    std::string str() const;   // debug rendering num/den

    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat operator-() const;

    bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const;
    bool operator>(const Rat& o) const { return o < *this; }
    bool operator<=(const Rat& o) const { return !(o < *this); }
    bool operator>=(const Rat& o) const { return !(*this < o); }

private:
    long long num_ = 0;
    long long den_ = 1;
};

} // namespace otal
