// Copyright 2026 The qsep Authors
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

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qsep {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised for malformed textual input (numbers, bitstrings, state files).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact complex number with rational real and imaginary parts.
class ExactComplex {
  public:
    ExactComplex() = default;
    ExactComplex(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
    ExactComplex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
    ExactComplex(long long v) : re_(v) {}  // NOLINT(google-explicit-constructor)

    const Rational &re() const { return re_; }
    const Rational &im() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    ExactComplex conj() const { return {re_, -im_}; }
    /// |z|^2, exact.
    Rational norm() const { return re_ * re_ + im_ * im_; }

    ExactComplex operator-() const { return {-re_, -im_}; }

    ExactComplex &operator+=(const ExactComplex &o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    ExactComplex &operator-=(const ExactComplex &o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    ExactComplex &operator*=(const ExactComplex &o) {
        if (im_.is_zero() && o.im_.is_zero()) {
            re_ *= o.re_;
            return *this;
        }
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    ExactComplex &operator/=(const ExactComplex &o) {
        if (o.is_zero()) {
            throw std::domain_error("ExactComplex: division by zero");
        }
        if (o.im_.is_zero()) {
            re_ /= o.re_;
            im_ /= o.re_;
            return *this;
        }
        Rational d = o.norm();
        Rational r = (re_ * o.re_ + im_ * o.im_) / d;
        Rational i = (im_ * o.re_ - re_ * o.im_) / d;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend ExactComplex operator+(ExactComplex a, const ExactComplex &b) { return a += b; }
    friend ExactComplex operator-(ExactComplex a, const ExactComplex &b) { return a -= b; }
    friend ExactComplex operator*(ExactComplex a, const ExactComplex &b) { return a *= b; }
    friend ExactComplex operator/(ExactComplex a, const ExactComplex &b) { return a /= b; }

    friend bool operator==(const ExactComplex &a, const ExactComplex &b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

  private:
    Rational re_{0};
    Rational im_{0};
};

inline std::string to_string(const Rational &r) {
    if (denominator(r) == 1) {
        return numerator(r).str();
    }
    return numerator(r).str() + "/" + denominator(r).str();
}

/// "a", "a+bi" style rendering used in human-readable reports.
inline std::string to_string(const ExactComplex &z) {
    if (z.is_real()) {
        return to_string(z.re());
    }
    if (z.re().is_zero()) {
        return to_string(z.im()) + "i";
    }
    std::string im = to_string(z.im());
    if (im.front() != '-') {
        im = "+" + im;
    }
    return "(" + to_string(z.re()) + im + "i)";
}

inline std::ostream &operator<<(std::ostream &out, const ExactComplex &z) { return out << to_string(z); }

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

inline BigInt pow10(long long e) {
    BigInt r = 1;
    for (long long i = 0; i < e; ++i) {
        r *= 10;
    }
    return r;
}

}  // namespace detail

/// Parses "p", "p/q", or a finite decimal such as "-0.25" or "1.5e-3", exactly.
inline Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    auto fail = [&]() -> ParseError { return ParseError("invalid number '" + std::string(text) + "'"); };

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!detail::all_digits(num) || !detail::all_digits(den)) {
            throw fail();
        }
        num.remove_prefix(std::min(num.find_first_not_of('0'), num.size() - 1));
        den.remove_prefix(std::min(den.find_first_not_of('0'), den.size() - 1));
        BigInt d{std::string(den)};
        if (d == 0) {
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        }
        value = Rational(BigInt(std::string(num)), d);
    } else {
        std::string_view mantissa = s;
        long long exponent = 0;
        if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            mantissa = s.substr(0, e);
            auto exp_text = s.substr(e + 1);
            bool exp_negative = false;
            if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
                exp_negative = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            if (!detail::all_digits(exp_text) || exp_text.size() > 4) {
                throw fail();
            }
            exponent = std::stoll(std::string(exp_text));
            if (exp_negative) {
                exponent = -exponent;
            }
        }
        std::string_view int_part = mantissa;
        std::string_view frac_part;
        if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
            int_part = mantissa.substr(0, dot);
            frac_part = mantissa.substr(dot + 1);
        }
        if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !detail::all_digits(int_part)) ||
            (!frac_part.empty() && !detail::all_digits(frac_part))) {
            throw fail();
        }
        std::string digits = std::string(int_part) + std::string(frac_part);
        // cpp_int reads a leading 0 as an octal prefix.
        digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
        exponent -= static_cast<long long>(frac_part.size());
        BigInt num{digits};
        if (exponent >= 0) {
            value = Rational(num * detail::pow10(exponent));
        } else {
            value = Rational(num, detail::pow10(-exponent));
        }
    }
    return negative ? Rational(-value) : value;
}

}  // namespace qsep
