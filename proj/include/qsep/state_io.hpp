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

#include <istream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qsep/pure_state.hpp"

namespace qsep {

/// Parses the line-oriented state format:
///
///     # comment
///     <bitstring> <re> [<im>]
///
/// Numbers are rationals ("-1/2", "3") or finite decimals ("0.25"), all exact.
inline PureState parse_state(std::string_view text) {
    std::vector<Term> terms;
    unsigned n = 0;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::vector<std::string> tok{std::istream_iterator<std::string>(fields), std::istream_iterator<std::string>()};
        if (tok.empty()) {
            continue;
        }
        auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
        if (tok.size() < 2 || tok.size() > 3) {
            throw ParseError(where() + "expected '<bitstring> <re> [<im>]'");
        }
        BasisLabel label = [&] {
            try {
                return BasisLabel::parse(tok[0]);
            } catch (const ParseError &e) {
                throw ParseError(where() + e.what());
            }
        }();
        if (n == 0) {
            n = label.n();
        } else if (label.n() != n) {
            throw ParseError(where() + "bitstring length " + std::to_string(label.n()) + " differs from " +
                             std::to_string(n));
        }
        try {
            Rational re = parse_rational(tok[1]);
            Rational im = tok.size() == 3 ? parse_rational(tok[2]) : Rational(0);
            terms.push_back({label.bits(), ExactComplex(std::move(re), std::move(im))});
        } catch (const ParseError &e) {
            throw ParseError(where() + e.what());
        }
    }
    if (terms.empty()) {
        throw ParseError("no terms in state text");
    }
    return {n, std::move(terms)};
}

inline PureState read_state(std::istream &in) {
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_state(text);
}

/// Text form accepted by parse_state; the imaginary part is written only when nonzero.
inline std::string serialize_state(const PureState &s) {
    std::string out;
    for (const auto &t : s.terms()) {
        out += BasisLabel::to_bitstring(t.bits, s.n());
        out += ' ';
        out += to_string(t.coeff.re());
        if (!t.coeff.is_real()) {
            out += ' ';
            out += to_string(t.coeff.im());
        }
        out += '\n';
    }
    return out;
}

inline nlohmann::json terms_to_json(const PureState &s) {
    auto terms = nlohmann::json::array();
    for (const auto &t : s.terms()) {
        terms.push_back({{"basis", BasisLabel::to_bitstring(t.bits, s.n())},
                         {"re", to_string(t.coeff.re())},
                         {"im", to_string(t.coeff.im())}});
    }
    return terms;
}

/// Structured form: {"n": N, "terms": [{"basis": "...", "re": "p/q", "im": "p/q"}, ...]}.
inline nlohmann::json state_to_json(const PureState &s) { return {{"n", s.n()}, {"terms", terms_to_json(s)}}; }

inline PureState state_from_json(const nlohmann::json &j) {
    auto number = [](const nlohmann::json &v) -> Rational {
        if (v.is_string()) {
            return parse_rational(v.get<std::string>());
        }
        if (v.is_number_integer()) {
            return Rational(v.get<long long>());
        }
        if (v.is_number()) {
            return parse_rational(v.dump());
        }
        throw ParseError("coefficient must be a string or number");
    };
    if (!j.is_object() || !j.contains("n") || !j.contains("terms") || !j["terms"].is_array() ||
        !j["n"].is_number_integer()) {
        throw ParseError("state object needs integer 'n' and array 'terms'");
    }
    const long long n_raw = j["n"].get<long long>();
    if (n_raw < 1 || n_raw > kMaxQubits) {
        throw StateError("qubit count " + std::to_string(n_raw) + " outside 1.." + std::to_string(kMaxQubits));
    }
    const auto n = static_cast<unsigned>(n_raw);
    std::vector<Term> terms;
    for (const auto &t : j["terms"]) {
        if (!t.is_object() || !t.contains("basis") || !t["basis"].is_string() || !t.contains("re")) {
            throw ParseError("term needs string 'basis' and 're'");
        }
        BasisLabel label = BasisLabel::parse(t["basis"].get<std::string>());
        if (label.n() != n) {
            throw ParseError("basis '" + label.str() + "' does not have n=" + std::to_string(n) + " bits");
        }
        Rational re = number(t["re"]);
        Rational im = t.contains("im") ? number(t["im"]) : Rational(0);
        terms.push_back({label.bits(), ExactComplex(std::move(re), std::move(im))});
    }
    return {n, std::move(terms)};
}

/// Accepts either the line format or the structured form (detected by a leading '{').
inline PureState parse_state_any(std::string_view text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception &e) {
            throw ParseError(std::string("malformed structured state: ") + e.what());
        }
        return state_from_json(j);
    }
    return parse_state(text);
}

}  // namespace qsep
