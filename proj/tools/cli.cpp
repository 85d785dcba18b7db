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

#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qsep/qsep.hpp"

namespace qsep::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kSloccNote = "family labels are not SLOCC invariants (Bell is family 3, C2 is family 4)";

enum class Format { kText, kJson };

struct InputOptions {
    std::string file;
    std::string gen;
    unsigned n = 0;
    unsigned k = 0;
    std::size_t m = 0;
    std::vector<unsigned> blocks;
    std::uint64_t seed = 0;
};

struct RunConfig {
    InputOptions input;
    std::string format = "text";
    unsigned workers = 1;
    bool timing = true;
    bool prime_shortcut = true;
    bool m4_fast_path = true;
    unsigned max_n = 10;
    std::size_t count = 1;
    bool float_rank = false;
    std::string output;
    std::string n_range = "2..12";
};

/// Carries an exit code out of a command body.
struct Failure {
    ExitCode code;
    std::string message;
};

Format format_of(const RunConfig &c) { return c.format == "text" ? Format::kText : Format::kJson; }

SearchOptions search_options(const RunConfig &c) {
    SearchOptions o;
    o.prime_shortcut = c.prime_shortcut;
    o.m4_fast_path = c.m4_fast_path;
    o.workers = c.workers;
    return o;
}

zoo::GeneratorSpec generator_spec(const InputOptions &in, std::uint64_t seed) {
    auto kind = zoo::parse_kind(in.gen);
    if (!kind) {
        throw Failure{kUsage, "unknown generator kind '" + in.gen + "'"};
    }
    zoo::GeneratorSpec spec;
    spec.kind = *kind;
    spec.n = in.n;
    spec.k = in.k;
    spec.m = in.m;
    spec.blocks = in.blocks;
    spec.seed = seed;
    return spec;
}

std::string read_file(const std::string &path) {
    if (path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream f(path);
    if (!f) {
        throw Failure{kUsage, "cannot open '" + path + "'"};
    }
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

/// The input states: one from a file, or `count` generated with consecutive seeds.
std::vector<PureState> load_inputs(const RunConfig &c) {
    const InputOptions &in = c.input;
    if (in.file.empty() == in.gen.empty()) {
        throw Failure{kUsage, "give exactly one of FILE or --gen KIND"};
    }
    std::vector<PureState> out;
    if (!in.file.empty()) {
        out.push_back(parse_state_any(read_file(in.file)));
        return out;
    }
    for (std::size_t i = 0; i < c.count; ++i) {
        out.push_back(zoo::generate(generator_spec(in, in.seed + i)));
    }
    return out;
}

Json subset_json(const QubitSubset &s) {
    Json a = Json::array();
    for (unsigned q : s.indices()) {
        a.push_back(q);
    }
    return a;
}

Json terms_json(const PureState &s) {
    Json a = Json::array();
    for (const auto &t : s.terms()) {
        a.push_back({{"basis", BasisLabel::to_bitstring(t.bits, s.n())},
                     {"re", to_string(t.coeff.re())},
                     {"im", to_string(t.coeff.im())}});
    }
    return a;
}

void write_terms(std::ostream &out, const PureState &s, const std::string &indent) {
    for (const auto &t : s.terms()) {
        out << indent << BasisLabel::to_bitstring(t.bits, s.n()) << ' ' << to_string(t.coeff) << '\n';
    }
}

Json report_json(const PureState &s, const ClassificationReport &r) {
    Json j;
    j["n"] = s.n();
    j["m"] = s.m();
    j["family"] = family_number(r.family);
    j["separable"] = r.separable();
    j["fast_path"] = std::string(fast_path_name(r.fast_path));
    if (r.witness) {
        j["witness"] = {{"subset", subset_json(r.witness->subset)},
                        {"left_terms", terms_json(r.witness->left)},
                        {"right_terms", terms_json(r.witness->right)},
                        {"scale_convention", std::string(kWitnessScaleConvention)}};
    } else {
        j["witness"] = nullptr;
    }
    j["search"] = {{"subsets_examined", r.search.subsets_examined},
                   {"canonical_forms", r.search.canonical_forms},
                   {"rank1_hits", r.search.rank1_hits}};
    j["note"] = std::string(kSloccNote);
    return j;
}

void report_text(std::ostream &out, const PureState &s, const ClassificationReport &r) {
    out << "state: n=" << s.n() << " m=" << s.m() << '\n';
    out << "family: " << family_number(r.family) << (r.separable() ? " (separable)" : " (genuinely entangled)")
        << '\n';
    out << "fast path: " << fast_path_name(r.fast_path) << '\n';
    if (r.witness) {
        const auto &w = *r.witness;
        out << "witness subset: " << w.subset.str() << '\n';
        out << "  left factor on " << w.subset.str() << ":\n";
        write_terms(out, w.left, "    ");
        out << "  right factor on " << w.subset.complement().str() << ":\n";
        write_terms(out, w.right, "    ");
        out << "  scale: " << kWitnessScaleConvention << '\n';
    } else {
        out << "witness: none\n";
    }
    out << "search: subsets examined " << r.search.subsets_examined << ", canonical forms " << r.search.canonical_forms
        << ", rank-1 hits " << r.search.rank1_hits << '\n';
    out << "note: " << kSloccNote << '\n';
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string fixed(double v, int digits) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

int cmd_classify(const RunConfig &c, std::ostream &out) {
    const auto states = load_inputs(c);
    const bool json = format_of(c) == Format::kJson;
    Json all = Json::array();
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto &s = states[i];
        const auto start = std::chrono::steady_clock::now();
        const auto report = classify(s, search_options(c));
        const double ms = elapsed_ms(start);
        if (json) {
            Json j = report_json(s, report);
            if (c.timing) {
                j["timing"] = {{"timing_ms", ms}};
            }
            all.push_back(std::move(j));
        } else {
            if (i > 0) {
                out << '\n';
            }
            report_text(out, s, report);
            if (c.timing) {
                out << "timing: " << fixed(ms, 3) << " ms\n";
            }
        }
    }
    if (json) {
        out << (all.size() == 1 ? all[0] : all).dump(2) << '\n';
    }
    return kOk;
}

int cmd_factorize(const RunConfig &c, std::ostream &out) {
    const auto states = load_inputs(c);
    const bool json = format_of(c) == Format::kJson;
    Json all = Json::array();
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto &s = states[i];
        const auto start = std::chrono::steady_clock::now();
        const FactorTree tree = factorize_fully(s, c.workers);
        const double ms = elapsed_ms(start);
        if (json) {
            Json j;
            j["n"] = s.n();
            j["m"] = s.m();
            Json factors = Json::array();
            for (const auto &f : tree.factors) {
                factors.push_back({{"subset", subset_json(f.subset)}, {"terms", terms_json(f.state)}});
            }
            j["factors"] = std::move(factors);
            if (c.timing) {
                j["timing"] = {{"timing_ms", ms}};
            }
            all.push_back(std::move(j));
        } else {
            if (i > 0) {
                out << '\n';
            }
            out << "state: n=" << s.n() << " m=" << s.m() << '\n';
            out << "factors: " << tree.factors.size() << '\n';
            for (const auto &f : tree.factors) {
                out << "  on " << f.subset.str() << ":\n";
                write_terms(out, f.state, "    ");
            }
            if (c.timing) {
                out << "timing: " << fixed(ms, 3) << " ms\n";
            }
        }
    }
    if (json) {
        out << (all.size() == 1 ? all[0] : all).dump(2) << '\n';
    }
    return kOk;
}

int cmd_verify(const RunConfig &c, std::ostream &out) {
    if (c.max_n > kMaxDenseQubits) {
        throw Failure{kUsage, "--max-n may not exceed " + std::to_string(kMaxDenseQubits)};
    }
    const auto states = load_inputs(c);
    for (const auto &s : states) {
        if (s.n() > c.max_n) {
            throw Failure{kInvariantViolation,
                          "state has n=" + std::to_string(s.n()) + " > --max-n " + std::to_string(c.max_n)};
        }
    }
    const RankMode mode = c.float_rank ? RankMode::kFloat : RankMode::kExact;
    std::size_t agree = 0;
    std::size_t cuts_checked = 0;
    Json disagreements = Json::array();
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto &s = states[i];
        const Family primary = classify(s, search_options(c)).family;
        const DenseState dense = dense_vector(s);
        const Family reference = oracle_classify(dense);
        std::vector<std::string> bad_cuts;
        SubsetEnumerator cuts(s.n());
        while (auto cut = cuts.next()) {
            ++cuts_checked;
            const bool split = split_at(s, *cut).has_value();
            const bool rank_one = schmidt_rank(dense, *cut, mode) == 1;
            if (split != rank_one) {
                bad_cuts.push_back(cut->str());
            }
        }
        if (primary == reference && bad_cuts.empty()) {
            ++agree;
            continue;
        }
        Json d = {{"index", i},
                  {"primary_family", family_number(primary)},
                  {"oracle_family", family_number(reference)},
                  {"disagreeing_cuts", bad_cuts},
                  {"state", state_to_json(s)}};
        disagreements.push_back(std::move(d));
    }
    if (format_of(c) == Format::kJson) {
        Json j{{"checked", states.size()},
               {"agree", agree},
               {"cuts_checked", cuts_checked},
               {"rank_mode", c.float_rank ? "float" : "exact"},
               {"disagreements", disagreements}};
        out << j.dump(2) << '\n';
    } else {
        for (const auto &d : disagreements) {
            out << "disagree: state " << d["index"].get<std::size_t>() << " primary family "
                << d["primary_family"].get<int>() << ", oracle family " << d["oracle_family"].get<int>() << ", cuts "
                << d["disagreeing_cuts"].dump() << '\n';
        }
        out << "cuts checked: " << cuts_checked << '\n';
        out << "agree: " << agree << '/' << states.size() << '\n';
    }
    return agree == states.size() ? kOk : kDisagreement;
}

int cmd_gen(const RunConfig &c, const std::string &kind, std::ostream &out) {
    InputOptions in = c.input;
    in.gen = kind;
    const PureState s = zoo::generate(generator_spec(in, in.seed));
    const std::string text =
        format_of(c) == Format::kJson ? state_to_json(s).dump(2) + "\n" : serialize_state(s);
    if (c.output.empty() || c.output == "-") {
        out << text;
        return kOk;
    }
    std::ofstream f(c.output);
    if (!f || !(f << text)) {
        throw Failure{kUsage, "cannot write '" + c.output + "'"};
    }
    return kOk;
}

std::pair<unsigned, unsigned> parse_range(const std::string &text) {
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            throw std::invalid_argument("range");
        }
        const auto a = static_cast<unsigned>(std::stoul(text.substr(0, dots)));
        const auto b = static_cast<unsigned>(std::stoul(text.substr(dots + 2)));
        if (a < 2 || b < a || b > kMaxQubits) {
            throw std::invalid_argument("range");
        }
        return {a, b};
    } catch (const std::exception &) {
        throw Failure{kUsage, "--n-range must look like A..B with 2 <= A <= B <= 63"};
    }
}

int cmd_bench(const RunConfig &c, std::ostream &out) {
    const auto [lo, hi] = parse_range(c.n_range);
    struct Row {
        std::string kind;
        unsigned n;
        std::size_t m;
        int family;
        std::size_t examined;
        double ms;
    };
    std::vector<Row> rows;
    auto time_one = [&](const std::string &kind, const PureState &s) {
        const auto start = std::chrono::steady_clock::now();
        const auto r = classify(s, search_options(c));
        rows.push_back({kind, s.n(), s.m(), family_number(r.family), r.search.subsets_examined, elapsed_ms(start)});
    };
    for (unsigned n = lo; n <= hi; ++n) {
        time_one("ghz", zoo::ghz(n));
        time_one("w", zoo::w(n));
        if (n >= 3 && n <= 24) {
            time_one("dicke2", zoo::dicke(n, 2));
        }
        if (n <= 14) {
            time_one("linear_cluster", zoo::linear_cluster(n));
        }
        if (n >= 4) {
            time_one("random_product", zoo::random_product({n / 2, n - n / 2}, c.input.seed + n));
        }
    }
    if (format_of(c) == Format::kJson) {
        Json a = Json::array();
        for (const auto &r : rows) {
            a.push_back({{"kind", r.kind},
                         {"n", r.n},
                         {"m", r.m},
                         {"family", r.family},
                         {"subsets_examined", r.examined},
                         {"timing", {{"timing_ms", r.ms}}}});
        }
        out << a.dump(2) << '\n';
        return kOk;
    }
    out << std::left << std::setw(16) << "kind" << std::right << std::setw(4) << "n" << std::setw(10) << "m"
        << std::setw(8) << "family" << std::setw(12) << "subsets" << std::setw(12) << "ms" << '\n';
    for (const auto &r : rows) {
        out << std::left << std::setw(16) << r.kind << std::right << std::setw(4) << r.n << std::setw(10) << r.m
            << std::setw(8) << r.family << std::setw(12) << r.examined << std::setw(12) << fixed(r.ms, 3) << '\n';
    }
    return kOk;
}

void add_input_options(CLI::App *cmd, RunConfig &c) {
    cmd->add_option("file", c.input.file, "State file ('-' for stdin)");
    cmd->add_option("--gen", c.input.gen, "Generate the input: ghz, w, dicke, c4, linear_cluster, bell, c2, "
                                          "random_product, random_sparse (linear_cluster at n=4 is a local rotation of c4, not c4 itself)");
    cmd->add_option("--count", c.count, "Number of generated states (consecutive seeds)")->check(CLI::PositiveNumber);
}

void add_generator_params(CLI::App *cmd, RunConfig &c) {
    cmd->add_option("--n", c.input.n, "Qubit count");
    cmd->add_option("--k", c.input.k, "Dicke excitation count");
    cmd->add_option("--m", c.input.m, "Term count (random_sparse)");
    cmd->add_option("--blocks", c.input.blocks, "Block sizes (random_product), e.g. 2,3")->delimiter(',');
    cmd->add_option("--seed", c.input.seed, "Generator seed");
}

void add_common(CLI::App *cmd, RunConfig &c) {
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--workers", c.workers, "Threads for the subset scan")->check(CLI::Range(1u, 256u));
}

void add_search_flags(CLI::App *cmd, RunConfig &c) {
    cmd->add_flag("!--no-prime-shortcut", c.prime_shortcut, "Scan even when m is prime");
    cmd->add_flag("!--no-m4", c.m4_fast_path, "Skip the four-term complementary-pair test");
    cmd->add_flag("!--no-timing", c.timing, "Omit timing from reports");
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Separability and entanglement-family classification of sparse qubit states", "qsep"};
    app.require_subcommand(1);
    RunConfig c;
    std::string gen_kind;

    auto *classify_cmd = app.add_subcommand("classify", "Classify a state into families 1-4");
    add_input_options(classify_cmd, c);
    add_generator_params(classify_cmd, c);
    add_common(classify_cmd, c);
    add_search_flags(classify_cmd, c);

    auto *factorize_cmd = app.add_subcommand("factorize", "Split a state into unsplittable tensor factors");
    add_input_options(factorize_cmd, c);
    add_generator_params(factorize_cmd, c);
    add_common(factorize_cmd, c);
    factorize_cmd->add_flag("!--no-timing", c.timing, "Omit timing from reports");

    auto *verify_cmd = app.add_subcommand("verify", "Cross-check against the dense Schmidt-rank oracle");
    add_input_options(verify_cmd, c);
    add_generator_params(verify_cmd, c);
    add_common(verify_cmd, c);
    verify_cmd->add_option("--max-n", c.max_n, "Largest qubit count accepted (<= 14)");
    verify_cmd->add_flag("--float-rank", c.float_rank, "Floating-point rank in the oracle (speed comparison only)");
    verify_cmd->add_flag("!--no-prime-shortcut", c.prime_shortcut, "Scan even when m is prime");
    verify_cmd->add_flag("!--no-m4", c.m4_fast_path, "Skip the four-term complementary-pair test");

    auto *gen_cmd = app.add_subcommand("gen", "Write a generated state");
    gen_cmd->add_option("kind", gen_kind, "Generator kind; linear_cluster at n=4 is a local rotation of c4")->required();
    add_generator_params(gen_cmd, c);
    gen_cmd->add_option("-o,--output", c.output, "Output file (stdout when omitted)");
    gen_cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));

    auto *bench_cmd = app.add_subcommand("bench", "Timing table over named states");
    bench_cmd->add_option("--n-range", c.n_range, "Qubit counts A..B");
    bench_cmd->add_option("--seed", c.input.seed, "Seed for random products");
    add_common(bench_cmd, c);
    add_search_flags(bench_cmd, c);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (classify_cmd->parsed()) {
            return cmd_classify(c, out);
        }
        if (factorize_cmd->parsed()) {
            return cmd_factorize(c, out);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(c, out);
        }
        if (gen_cmd->parsed()) {
            return cmd_gen(c, gen_kind, out);
        }
        return cmd_bench(c, out);
    } catch (const Failure &f) {
        err << "error: " << f.message << '\n';
        return f.code;
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << '\n';
        return kParseError;
    } catch (const StateError &e) {
        err << "invalid input: " << e.what() << '\n';
        return kInvariantViolation;
    } catch (const PreconditionError &e) {
        err << "invalid input: " << e.what() << '\n';
        return kInvariantViolation;
    }
}

}  // namespace qsep::cli
