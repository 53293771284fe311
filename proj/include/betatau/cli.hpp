#pragma once

#include <betatau/critical.hpp>
#include <betatau/survivor.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace betatau::cli {

using json = nlohmann::ordered_json;

struct CliConfig {
    long precision_bits = default_precision;
    int max_depth = 8;
    std::size_t max_factor_len = 16;
    std::string output_format;  // text | json | csv; empty picks the command default
    std::string output_path;
    bool strict = false;
};

namespace detail {

// A failure attributed to one command-line flag.
struct flag_error : domain_error {
    flag_error(const std::string& flag, const std::string& what) : domain_error(flag + ": " + what) {}
};

inline BinaryWord parse_word(const std::string& flag, const std::string& text)
{
    if (text.empty()) throw flag_error(flag, "empty word");
    try {
        return BinaryWord(text);
    } catch (const domain_error& e) {
        throw flag_error(flag, e.what());
    }
}

inline EventuallyPeriodicSeq parse_seq(const std::string& flag, const std::string& text)
{
    try {
        return EventuallyPeriodicSeq::parse(text);
    } catch (const domain_error& e) {
        throw flag_error(flag, e.what());
    }
}

inline HighPrecReal parse_real(const std::string& flag, const std::string& text, mpfr_prec_t prec)
{
    try {
        return HighPrecReal::parse(text, prec);
    } catch (const domain_error& e) {
        throw flag_error(flag, e.what());
    }
}

inline std::vector<BinaryWord> parse_factor_list(const std::string& flag, const std::string& text)
{
    std::vector<BinaryWord> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_word(flag, item));
    if (out.empty()) throw flag_error(flag, "empty factor list");
    return out;
}

inline LambdaWord resolve_lambda(const BinaryWord& word, const std::string& factors)
{
    if (!factors.empty()) {
        LambdaWord lw;
        try {
            lw = lambda_product(parse_factor_list("--factors", factors));
        } catch (const flag_error&) {
            throw;
        } catch (const domain_error& e) {
            throw flag_error("--factors", e.what());
        }
        if (!(lw.product == word))
            throw flag_error("--factors", "product " + lw.product.str() + " differs from --word " + word.str());
        return lw;
    }
    if (is_nondegenerate_farey(word)) return lambda_product({word});
    if (word.size() <= default_max_lambda_len)
        for (auto& lw : lambda_enumerate(word.size()))
            if (lw.product == word) return lw;
    throw flag_error("--word", "\"" + word.str() + "\" has no factorization into Farey words up to length " +
                                   std::to_string(default_max_lambda_len) + "; pass --factors");
}

inline double num(const HighPrecReal& x) { return std::stod(x.to_string(15)); }

inline json words_json(const std::vector<BinaryWord>& ws)
{
    json a = json::array();
    for (auto& w : ws) a.push_back(w.str());
    return a;
}

inline json to_json(const IntervalRecord& r)
{
    return json{{"word", r.word.product.str()},
                {"factors", words_json(r.word.factors)},
                {"beta_left", num(r.beta_left.value)},
                {"beta_star", num(r.beta_star.value)},
                {"beta_right", num(r.beta_right.value)},
                {"residuals", {num(r.residuals[0]), num(r.residuals[1]), num(r.residuals[2])}}};
}

inline json to_json(const ClassificationResult& c)
{
    json j{{"kind", to_string(c.kind)}, {"chain", words_json(c.chain)}};
    j["terminal_word"] = c.terminal_word ? json(c.terminal_word->product.str()) : json(nullptr);
    j["depth_reached"] = c.depth_reached;
    j["precision_flag"] = c.precision_flag;
    if (c.pending) j["pending"] = c.pending->str();
    return j;
}

inline std::string regime_label(const ClassificationResult& c)
{
    std::string s = to_string(c.kind);
    if (c.terminal_word) s += "(" + c.terminal_word->product.str() + ")";
    return s;
}

inline json to_json(const TauResult& r)
{
    return json{{"beta", num(r.beta.value)},     {"tau", num(r.tau)},
                {"tau_lo", num(r.tau_lo)},       {"tau_hi", num(r.tau_hi)},
                {"error_bound", num(r.error_bound)}, {"regime", to_string(r.regime.kind)},
                {"classification", to_json(r.regime)}, {"witness", r.witness_str()}};
}

struct Output {
    std::ostream& out;
    std::ofstream file;
    std::ostream* stream;

    Output(std::ostream& o, const std::string& path) : out(o), stream(&o)
    {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw flag_error("--out", "cannot open \"" + path + "\" for writing");
            stream = &file;
        }
    }
    std::ostream& operator*() { return *stream; }
};

inline Base parse_base(const std::string& beta, const std::string& delta, mpfr_prec_t prec)
{
    if (!delta.empty()) {
        auto seq = parse_seq("--delta", delta);
        try {
            return Base::from_delta(seq, prec);
        } catch (const domain_error& e) {
            throw flag_error("--delta", e.what());
        }
    }
    if (beta.empty()) throw flag_error("--beta", "required (or give --delta)");
    auto b = parse_real("--beta", beta, prec);
    if (b <= 1L || b > 2L) throw flag_error("--beta", "must lie in (1, 2]");
    return Base::numeric(std::move(b));
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    using namespace detail;
    CliConfig cfg;
    if (const char* env = std::getenv("BETATAU_PRECISION")) {
        try {
            cfg.precision_bits = std::stol(env);
        } catch (...) {
            err << "BETATAU_PRECISION: not an integer\n";
            return 2;
        }
    }

    CLI::App app{"critical hole size of the doubling-type beta-transformation", "betatau"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may also follow the subcommand
    app.add_option("--precision", cfg.precision_bits, "mantissa bits (>= 64)");
    app.add_option("--max-depth", cfg.max_depth, "classification depth");
    app.add_option("--max-factor-len", cfg.max_factor_len, "longest Farey factor searched");
    app.add_option("--format", cfg.output_format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--out", cfg.output_path, "write output to this file");
    app.add_flag("--strict", cfg.strict, "exit 3 when the outcome is Unresolved");

    int level = 0;
    auto* farey = app.add_subcommand("farey", "list the Farey words F_n");
    farey->add_option("--level", level)->required();

    std::string word, factors;
    auto* lyndon = app.add_subcommand("lyndon", "Lyndon and Farey tests for a word");
    lyndon->add_option("--check", word)->required();

    std::vector<std::string> sub_args;
    auto* sub = app.add_subcommand("sub", "substitution product W1 • W2 • ...");
    sub->add_option("words", sub_args)->required()->expected(2, -1);

    auto* interval = app.add_subcommand("interval", "Lyndon interval endpoints");
    interval->add_option("--word", word)->required();
    interval->add_option("--factors", factors);

    std::string beta, delta;
    auto* classify_cmd = app.add_subcommand("classify", "locate beta in the partition of (1,2]");
    classify_cmd->add_option("--beta", beta);
    classify_cmd->add_option("--delta", delta, "exact quasi-greedy expansion, e.g. (10)");

    auto* tau_cmd = app.add_subcommand("tau", "critical value tau(beta)");
    tau_cmd->add_option("--beta", beta);
    tau_cmd->add_option("--delta", delta);

    std::string from, to, step;
    auto* curve = app.add_subcommand("curve", "tau on a grid");
    curve->add_option("--from", from)->required();
    curve->add_option("--to", to)->required();
    curve->add_option("--step", step)->required();

    auto* jump = app.add_subcommand("jump", "jump of tau at beta_r^S");
    jump->add_option("--word", word)->required();
    jump->add_option("--factors", factors);

    auto* table1 = app.add_subcommand("table1", "Thue-Morse bases and their critical values");

    std::string t_abs, t_rel;
    std::size_t n = 0, digits = 256;
    auto* dim = app.add_subcommand("dim", "survivor-set word counts and dimension estimate");
    dim->add_option("--beta", beta);
    dim->add_option("--delta", delta);
    auto* t_opt = dim->add_option("--t", t_abs, "hole size");
    dim->add_option("--t-rel", t_rel, "hole size as a multiple of tau(beta)")->excludes(t_opt);
    dim->add_option("--n", n)->required();
    dim->add_option("--digits", digits, "boundary digits N");

    std::uint64_t m = 0;
    auto* facts = app.add_subcommand("factorizations", "ordered factorization count f_m");
    facts->add_option("--m", m)->required();

    auto* tm = app.add_subcommand("thuemorse", "Thue-Morse base for a Farey word");
    tm->add_option("--word", word)->required();

    std::vector<const char*> argv{"betatau"};
    for (auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (cfg.precision_bits < 64) throw flag_error("--precision", "must be at least 64 bits");
        if (cfg.max_depth < 1 || cfg.max_depth > 64) throw flag_error("--max-depth", "must lie in [1, 64]");
        if (cfg.max_factor_len < 2 || cfg.max_factor_len > 64)
            throw flag_error("--max-factor-len", "must lie in [2, 64]");
        auto prec = static_cast<mpfr_prec_t>(cfg.precision_bits);
        ClassifyOptions opt;
        opt.max_depth = cfg.max_depth;
        opt.max_factor_len = cfg.max_factor_len;
        Output o(out, cfg.output_path);
        auto fmt = [&](const char* dflt) { return cfg.output_format.empty() ? std::string(dflt) : cfg.output_format; };
        int code = 0;

        if (*farey) {
            if (level < 0) throw flag_error("--level", "must be nonnegative");
            if (level > default_max_farey_level)
                throw flag_error("--level", "exceeds cap " + std::to_string(default_max_farey_level));
            auto fl = farey_level(level);
            if (fmt("text") == "json") {
                *o << json{{"level", level}, {"words", words_json(fl.words)}}.dump() << "\n";
            } else {
                for (std::size_t i = 0; i < fl.words.size(); ++i) *o << (i ? " " : "") << fl.words[i];
                *o << "\n";
            }
        } else if (*lyndon) {
            BinaryWord w = parse_word("--check", word);
            auto ff = is_farey(w);
            json j{{"word", w.str()},          {"lyndon", is_lyndon(w)},
                   {"farey", ff.farey},        {"largest_rotation", largest_rotation(w).str()},
                   {"smallest_rotation", smallest_rotation(w).str()}};
            if (ff.form) j["form"] = ff.form, j["p"] = ff.p;
            if (!ff.inner.empty()) j["inner"] = ff.inner.str();
            if (ff.farey) {
                auto q = farey_frequency(w);
                j["frequency"] = std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
            }
            if (fmt("text") == "json") {
                *o << j.dump() << "\n";
            } else {
                *o << w << " lyndon=" << (is_lyndon(w) ? "yes" : "no") << " farey=" << (ff.farey ? "yes" : "no");
                if (ff.form) *o << " form=" << ff.form << " p=" << ff.p;
                if (!ff.inner.empty()) *o << " inner=" << ff.inner;
                *o << " L=" << largest_rotation(w) << "\n";
            }
        } else if (*sub) {
            std::string result;
            BinaryWord acc = parse_word("words", sub_args[0]);
            for (std::size_t i = 1; i < sub_args.size(); ++i) {
                const auto& a = sub_args[i];
                bool last = i + 1 == sub_args.size();
                try {
                    if (last && a.find('(') != std::string::npos) {
                        result = substitute(acc, parse_seq("words", a)).str();
                    } else {
                        acc = substitute(acc, parse_word("words", a));
                    }
                } catch (const flag_error&) {
                    throw;
                } catch (const domain_error& e) {
                    throw flag_error("words", e.what());
                }
            }
            if (result.empty()) result = acc.str();
            if (fmt("text") == "json") *o << json{{"product", result}}.dump() << "\n";
            else *o << result << "\n";
        } else if (*interval) {
            auto lw = resolve_lambda(parse_word("--word", word), factors);
            auto rec = lyndon_interval(lw, prec);
            if (fmt("json") == "json") {
                *o << to_json(rec).dump() << "\n";
            } else {
                *o << rec.word.product << " beta_left=" << rec.beta_left.value << " beta_star=" << rec.beta_star.value
                   << " beta_right=" << rec.beta_right.value << "\n";
            }
        } else if (*classify_cmd) {
            Base b = parse_base(beta, delta, prec);
            auto c = classify(b, opt);
            if (c.kind == Regime::Unresolved && cfg.strict) code = 3;
            if (fmt("json") == "json") {
                json j{{"beta", num(b.value)}};
                j.update(to_json(c));
                *o << j.dump() << "\n";
            } else {
                *o << "beta=" << b.value << " " << regime_label(c) << "\n";
            }
        } else if (*tau_cmd) {
            Base b = parse_base(beta, delta, prec);
            auto r = betatau::tau(b, opt);
            if (r.regime.kind == Regime::Unresolved && cfg.strict) code = 3;
            if (fmt("json") == "json") {
                *o << to_json(r).dump() << "\n";
            } else {
                *o << "beta=" << r.beta.value << " tau=" << r.tau << " [" << r.tau_lo << ", " << r.tau_hi
                   << "] regime=" << regime_label(r.regime) << " witness=" << r.witness_str() << "\n";
            }
        } else if (*curve) {
            auto lo = parse_real("--from", from, prec);
            auto hi = parse_real("--to", to, prec);
            auto h = parse_real("--step", step, prec);
            if (!(lo > 1L)) throw flag_error("--from", "must exceed 1");
            if (hi > 2L) throw flag_error("--to", "must not exceed 2");
            if (!(lo < hi)) throw flag_error("--to", "must exceed --from");
            if (h.sign() <= 0) throw flag_error("--step", "must be positive");
            auto rows = tau_curve(lo, hi, h, opt);
            std::string f = fmt("csv");
            if (f == "csv") *o << "beta,tau,tau_lo,tau_hi,regime,witness\n";
            for (const auto& row : rows) {
                const auto& r = row.result;
                if (r.regime.kind == Regime::Unresolved && cfg.strict) code = 3;
                if (f == "json") {
                    json j = to_json(r);
                    j["near_jump"] = row.near_jump ? json(row.near_jump->str()) : json(nullptr);
                    *o << j.dump() << "\n";
                } else if (f == "csv") {
                    if (row.near_jump)
                        *o << "# near_jump S=" << *row.near_jump << " beta_r=" << row.jump_at->to_string(15) << "\n";
                    *o << r.beta.value.to_string(15) << "," << r.tau.to_string(15) << ","
                       << r.tau_lo.to_string(15) << "," << r.tau_hi.to_string(15) << ","
                       << to_string(r.regime.kind) << "," << r.witness_str() << "\n";
                } else {
                    *o << r.beta.value.to_string(15) << "  " << r.tau.to_string(15) << "  "
                       << regime_label(r.regime) << (row.near_jump ? "  near_jump" : "") << "\n";
                }
            }
        } else if (*jump) {
            auto lw = resolve_lambda(parse_word("--word", word), factors);
            auto jr = tau_jump(lw, prec);
            if (fmt("json") == "json") {
                *o << json{{"word", lw.product.str()},
                           {"beta_right", num(jr.beta_right.value)},
                           {"tau_at", num(jr.tau_at)},
                           {"right_limit", num(jr.right_limit)},
                           {"jump", num(jr.right_limit - jr.tau_at)}}
                          .dump()
                   << "\n";
            } else {
                *o << lw.product << " beta_r=" << jr.beta_right.value << " tau=" << jr.tau_at
                   << " right_limit=" << jr.right_limit << "\n";
            }
        } else if (*table1) {
            const auto& words = table1_words();
            std::vector<std::optional<ThueMorseRecord>> slots(words.size());
            parallel_for(words.size(), [&](std::size_t i) { slots[i] = thue_morse_base(words[i], prec); });
            std::string f = fmt("text");
            if (f == "csv") *o << "s,beta,tau\n";
            for (auto& s : slots) {
                if (f == "json")
                    *o << json{{"s", s->word.str()}, {"beta", num(s->beta_inf)}, {"tau", num(s->tau)}}.dump() << "\n";
                else if (f == "csv")
                    *o << s->word << "," << s->beta_inf.to_string(15) << "," << s->tau.to_string(15) << "\n";
                else
                    *o << s->word << "  " << s->beta_inf.to_string(6) << "  " << s->tau.to_string(6) << "\n";
            }
        } else if (*dim) {
            Base b = parse_base(beta, delta, prec);
            HighPrecReal t(prec);
            if (!t_rel.empty()) t = parse_real("--t-rel", t_rel, prec) * betatau::tau(b, opt).tau;
            else if (!t_abs.empty()) t = parse_real("--t", t_abs, prec);
            else throw flag_error("--t", "required (or give --t-rel)");
            if (t.sign() < 0 || t >= 1L) throw flag_error(t_rel.empty() ? "--t" : "--t-rel", "hole must lie in [0, 1)");
            if (n < 1 || n > 64) throw flag_error("--n", "must lie in [1, 64]");
            if (digits < n) throw flag_error("--digits", "must be at least --n");
            auto p = count_admissible(b, t, n, digits);
            if (fmt("json") == "json") {
                *o << json{{"beta", num(b.value)},
                           {"t", num(t)},
                           {"n", n},
                           {"digits_used", p.digits_used},
                           {"count", p.count.str()},
                           {"count_lower", p.count_lower.str()},
                           {"entropy_naive", p.entropy_naive},
                           {"entropy_estimate", p.entropy_estimate},
                           {"dim_estimate", p.dim_estimate},
                           {"dim_lower", p.dim_lower},
                           {"dim_upper", p.dim_upper}}
                          .dump()
                   << "\n";
            } else {
                *o << "beta=" << b.value << " t=" << t << " n=" << n << " count=" << p.count
                   << " dim_estimate=" << p.dim_estimate << " [" << p.dim_lower << ", " << p.dim_upper << "]\n";
            }
        } else if (*facts) {
            if (m < 1 || m > 1000000) throw flag_error("--m", "must lie in [1, 10^6]");
            auto f = count_ordered_factorizations(m);
            if (fmt("text") == "json") *o << json{{"m", m}, {"f", f.str()}}.dump() << "\n";
            else *o << f << "\n";
        } else if (*tm) {
            BinaryWord s = parse_word("--word", word);
            if (!is_nondegenerate_farey(s)) throw flag_error("--word", "\"" + word + "\" is not a non-degenerate Farey word");
            auto r = thue_morse_base(s, prec);
            if (fmt("json") == "json") {
                *o << json{{"s", s.str()},
                           {"beta", num(r.beta_inf)},
                           {"beta_error", num(r.beta_error)},
                           {"tau", num(r.tau)},
                           {"tau_error", num(r.tau_error)},
                           {"chain_value", num(r.chain_value)},
                           {"chain_error", num(r.chain_error)}}
                          .dump()
                   << "\n";
            } else {
                *o << s << " beta=" << r.beta_inf << " tau=" << r.tau << "\n";
            }
        }
        return code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, out, err);
}

} // namespace betatau::cli
