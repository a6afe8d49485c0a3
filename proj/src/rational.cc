// Copyright 2026 The qfree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qfree/rational.h"

#include <cmath>

#include "qfree/common.h"

namespace qfree {

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) {
        throw InputError("non-finite value cannot be made rational");
    }
    Rational q(x);
    q.canonicalize();
    return q;
}

Rational rational_from_decimal(const std::string &text) {
    if (text.find('/') != std::string::npos) {
        try {
            Rational q(text, 10);
            if (q.get_den() == 0) {
                throw InputError("zero denominator in '" + text + "'");
            }
            q.canonicalize();
            return q;
        } catch (const std::invalid_argument &) {
            throw InputError("malformed rational '" + text + "'");
        }
    }
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        neg = text[i] == '-';
        i++;
    }
    std::string digits;
    long exponent = 0;
    bool seen_digit = false;
    bool seen_point = false;
    for (; i < text.size(); i++) {
        const char ch = text[i];
        if (ch >= '0' && ch <= '9') {
            digits.push_back(ch);
            seen_digit = true;
            if (seen_point) {
                exponent--;
            }
        } else if (ch == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) {
        throw InputError("malformed decimal '" + text + "'");
    }
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') {
            throw InputError("malformed decimal '" + text + "'");
        }
        const std::string tail = text.substr(i + 1);
        std::size_t used = 0;
        long e = 0;
        try {
            e = std::stol(tail, &used);
        } catch (const std::exception &) {
            throw InputError("malformed exponent in '" + text + "'");
        }
        if (used != tail.size() || e > 4000 || e < -4000) {
            throw InputError("malformed exponent in '" + text + "'");
        }
        exponent += e;
    }
    BigInt num(digits, 10);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational q = exponent < 0 ? Rational(num, scale) : Rational(num * scale);
    q.canonicalize();
    return neg ? Rational(-q) : q;
}

std::string to_string(const Rational &q) {
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) {
        return c.get_num().get_str();
    }
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

double to_double(const Rational &q) {
    return q.get_d();
}

BigInt binomial(unsigned n, unsigned k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

std::uint64_t ceil_ratio(const Rational &frac, std::uint64_t count, std::uint64_t scale) {
    Rational target = frac * Rational(BigInt(std::to_string(count))) / Rational(BigInt(std::to_string(scale)));
    target.canonicalize();
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), target.get_num_mpz_t(), target.get_den_mpz_t());
    if (q < 0) {
        return 0;
    }
    return q.get_ui();
}

}  // namespace qfree
