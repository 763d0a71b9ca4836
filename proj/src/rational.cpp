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

#include "otalearn/rational.hpp"

#include <cctype>
#include <limits>
#include <numeric>

#include "otalearn/errors.hpp"

namespace otal {

namespace {

using int128 = __int128;

long long narrow(int128 v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min()) {
        throw InternalError("rational arithmetic overflow");
    }
    return static_cast<long long>(v);
}

int128 gcd128(int128 a, int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

Rat::Rat(long long num, long long den) {
    if (den == 0) {
        throw InternalError("rational with zero denominator");
    }
    if (den < 0) {
        num = narrow(-static_cast<int128>(num));
        den = narrow(-static_cast<int128>(den));
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num_ = num;
    den_ = den;
}

std::optional<Rat> Rat::parse_decimal(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::size_t i = 0;
    std::size_t int_begin = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == int_begin) return std::nullopt;
    int128 num = 0;
    for (std::size_t k = int_begin; k < i; ++k) {
        num = num * 10 + (text[k] - '0');
        if (num > std::numeric_limits<long long>::max()) return std::nullopt;
    }
    int128 den = 1;
    if (i < text.size()) {
        if (text[i] != '.') return std::nullopt;
        ++i;
        std::size_t frac_begin = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == frac_begin || i != text.size()) return std::nullopt;
        for (std::size_t k = frac_begin; k < i; ++k) {
            num = num * 10 + (text[k] - '0');
            den = den * 10;
            if (num > std::numeric_limits<long long>::max() ||
                den > std::numeric_limits<long long>::max()) {
                return std::nullopt;
            }
        }
    }
    return Rat(static_cast<long long>(num), static_cast<long long>(den));
}

long long Rat::floor() const {
    if (num_ >= 0) return num_ / den_;
    long long q = num_ / den_;
    if (q * den_ != num_) --q;
    return q;
}

Rat Rat::frac() const {
    return *this - Rat(floor());
}

Rat Rat::half() const {
    int128 n = num_;
    int128 d = static_cast<int128>(den_) * 2;
    int128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    Rat r;
    r.num_ = narrow(n);
    r.den_ = narrow(d);
    return r;
}

std::string Rat::decimal() const {
    long long d = den_;
    int twos = 0;
    int fives = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++twos;
    }
    while (d % 5 == 0) {
        d /= 5;
        ++fives;
    }
    if (d != 1) {
        throw InternalError("rational " + str() + " has no finite decimal form");
    }
    int digits = twos > fives ? twos : fives;
    int128 scaled = num_;
    for (int k = 0; k < digits - twos; ++k) scaled *= 2;
    for (int k = 0; k < digits - fives; ++k) scaled *= 5;
    bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    int128 pow10 = 1;
    for (int k = 0; k < digits; ++k) pow10 *= 10;
    int128 whole = scaled / pow10;
    int128 rest = scaled % pow10;
    std::string out;
    if (negative) out += '-';
    {
        std::string w;
        if (whole == 0) w = "0";
        while (whole > 0) {
            w += static_cast<char>('0' + static_cast<int>(whole % 10));
            whole /= 10;
        }
        for (auto it = w.rbegin(); it != w.rend(); ++it) out += *it;
    }
    if (digits > 0) {
        std::string f(static_cast<std::size_t>(digits), '0');
        for (int k = digits - 1; k >= 0; --k) {
            f[static_cast<std::size_t>(k)] = static_cast<char>('0' + static_cast<int>(rest % 10));
            rest /= 10;
        }
        out += '.';
        out += f;
    }
    return out;
}

std::string Rat::str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) {
        s += '/';
        s += std::to_string(den_);
    }
    return s;
}

Rat Rat::operator+(const Rat& o) const {
    int128 n = static_cast<int128>(num_) * o.den_ + static_cast<int128>(o.num_) * den_;
    int128 d = static_cast<int128>(den_) * o.den_;
    int128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    Rat r;
    r.num_ = narrow(n);
    r.den_ = narrow(d);
    return r;
}

Rat Rat::operator-(const Rat& o) const {
    return *this + (-o);
}

Rat Rat::operator-() const {
    Rat r;
    r.num_ = narrow(-static_cast<int128>(num_));
    r.den_ = den_;
    return r;
}

bool Rat::operator<(const Rat& o) const {
    return static_cast<int128>(num_) * o.den_ < static_cast<int128>(o.num_) * den_;
}

} // namespace otal
