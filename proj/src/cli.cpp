#include "betafreq/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>

#include "betafreq/dimension.hpp"
#include "betafreq/ergodic.hpp"
#include "betafreq/normalize.hpp"
#include "betafreq/probability.hpp"
#include "betafreq/version.hpp"

namespace betafreq {

namespace {

using Json = nlohmann::ordered_json;

Json field_json(const FieldElement& x) {
    Json j;
    Json coeffs = Json::array();
    for (const auto& c : x.coeffs()) coeffs.push_back(rat_to_string(c));
    j["coeffs"] = coeffs;
    j["decimal"] = x.to_double();
    return j;
}

Json bracket_json(const ProbabilityBracket& b, int order, std::uint64_t seed) {
    Json j;
    j["version"] = kVersion;
    j["beta_order"] = order;
    j["seed"] = seed;
    j["event"] = b.event;
    j["lower"] = rat_to_string(b.lower);
    j["upper"] = rat_to_string(b.upper);
    j["undecided"] = rat_to_string(b.undecided);
    j["depth"] = b.depth;
    return j;
}

Json report_json(const FrequencyReport& r) {
    Json j;
    j["version"] = kVersion;
    j["beta_order"] = r.beta_order;
    j["length"] = r.length;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["estimate"] = r.estimate;
    j["stderr"] = r.stderr_;
    j["reference_parry"] = r.reference_parry;
    j["reference_parry_exact"] = r.reference_parry_exact;
    if (r.reference_bernoulli)
        j["reference_bernoulli"] = rat_to_string(*r.reference_bernoulli);
    return j;
}

Json dimension_json(const DimensionResult& d, int order, std::uint64_t seed) {
    Json j;
    j["version"] = kVersion;
    j["beta_order"] = order;
    j["seed"] = seed;
    j["gamma"] = rat_to_string(d.gamma);
    j["max_entropy"] = d.max_entropy;
    j["lyapunov"] = d.lyapunov;
    j["dimension"] = d.dimension;
    j["transitions"] = d.transitions;
    return j;
}

Json certificate_json(const SingularityCertificate& c, std::uint64_t seed) {
    Json j;
    j["version"] = kVersion;
    j["beta_order"] = c.order;
    j["seed"] = seed;
    j["bernoulli_exact"] = rat_to_string(c.bernoulli_exact);
    j["bernoulli_lower"] = rat_to_string(c.bernoulli_lower);
    j["bernoulli_upper"] = rat_to_string(c.bernoulli_upper);
    j["alpha1"] = field_json(c.alpha1);
    j["separated"] = c.separated;
    j["separation_sign"] = c.separation_sign;
    j["interval_separated"] = c.interval_separated;
    j["dimension_bound"] = c.dimension_bound;
    j["dimension_bound_sup"] = c.dimension_bound_sup;
    j["verdict"] = c.verdict;
    return j;
}

// "y1=1,y2=1" / "y0=1" / "y-1=0,y0=0" / "x0=1": comma- or &-separated digit
// constraints, all-future, all-past, or the center coordinate.
struct ParsedEvent {
    enum Side { future, past, center } side = future;
    std::vector<std::pair<int, Bit>> constraints;
};

ParsedEvent parse_event(const std::string& spec) {
    ParsedEvent ev;
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : spec) {
        if (ch == ',' || ch == '&') {
            parts.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);

    if (parts.size() == 1 && (parts[0] == "x0=1" || parts[0] == "x0=0")) {
        ev.side = ParsedEvent::center;
        ev.constraints.emplace_back(0, parts[0].back() == '1' ? 1 : 0);
        return ev;
    }
    bool any_future = false, any_past = false;
    for (const auto& p : parts) {
        const auto eq = p.find('=');
        if (p.size() < 4 || p[0] != 'y' || eq == std::string::npos)
            throw std::invalid_argument("cannot parse event term '" + p + "'");
        const int off = std::stoi(p.substr(1, eq - 1));
        const std::string rhs = p.substr(eq + 1);
        if (rhs != "0" && rhs != "1")
            throw std::invalid_argument("digit must be 0 or 1 in '" + p + "'");
        ev.constraints.emplace_back(off, rhs == "1" ? 1 : 0);
        (off >= 1 ? any_future : any_past) = true;
    }
    if (any_future && any_past)
        throw std::invalid_argument("event mixes past and future coordinates");
    ev.side = any_future ? ParsedEvent::future : ParsedEvent::past;
    return ev;
}

std::string fixed(double v, int digits = 10) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"digit frequencies of greedy beta-expansions for multinacci bases"};
    app.set_version_flag("--version", std::string(kVersion));
    app.set_config("--config", "", "key = value file with defaults; flags override");
    app.fallthrough();

    int beta_order = 2;
    int depth = 40;
    std::int64_t length = 1000000;
    int trials = 10;
    std::uint64_t seed = 1;
    int threads = 1;
    bool json_out = false;
    bool csv_out = false;
    app.add_option("--beta-order", beta_order, "multinacci order n >= 2")->capture_default_str();
    app.add_option("--depth", depth, "cylinder enumeration depth")->capture_default_str();
    app.add_option("--length", length, "Monte Carlo sequence length")->capture_default_str();
    app.add_option("--trials", trials, "Monte Carlo trials")->capture_default_str();
    app.add_option("--seed", seed, "random seed, echoed in reports")->capture_default_str();
    app.add_option("--threads", threads, "parallelism cap")->capture_default_str();
    app.add_flag("--json", json_out, "machine-readable output");
    app.add_flag("--csv", csv_out, "CSV output for grid scans");
    app.require_subcommand(0, 1);

    std::string word_arg;
    std::ptrdiff_t radius = 0;
    bool use_blocks = false;
    auto* cmd_normalize = app.add_subcommand("normalize", "rewrite a word to greedy normal form");
    cmd_normalize->add_option("word", word_arg, "0/1 word; '|' marks the origin of a two-sided word");
    cmd_normalize->add_option("--radius", radius, "stability radius for two-sided windows");
    cmd_normalize->add_flag("--blocks", use_blocks, "normalize through the block decomposition");

    std::string event_spec = "x0=1";
    auto* cmd_prob = app.add_subcommand("exact-prob", "certified digit-probability bracket");
    cmd_prob->add_option("--event", event_spec, "y1=1 | y1=1,y2=1 | y0=1 | y-1=0,y0=0 | x0=1")
        ->capture_default_str();

    auto* cmd_fb = app.add_subcommand("freq-bernoulli", "digit-1 frequency of normalized coin flips");
    auto* cmd_fl = app.add_subcommand("freq-lebesgue", "digit-1 frequency of greedy orbits");

    int omega_L = 40;
    bool omega_list = false;
    std::string omega_variant = "context";
    auto* cmd_omega = app.add_subcommand("omega", "blockwise word statistics and frequency interval");
    cmd_omega->add_option("--truncation", omega_L, "word-length cutoff L")->capture_default_str();
    cmd_omega->add_flag("--list", omega_list, "list the words (small L only)");
    cmd_omega->add_option("--variant", omega_variant, "context | standalone | raw")
        ->capture_default_str();

    std::string gamma_str = "5/18";
    int grid = 0;
    auto* cmd_dim = app.add_subcommand("dimension", "dimension of the digit-frequency level set");
    cmd_dim->add_option("--gamma", gamma_str, "frequency as p/q")->capture_default_str();
    cmd_dim->add_option("--grid", grid, "evaluate on a grid of this many points (CSV)");

    int cert_L = 48;
    auto* cmd_cert = app.add_subcommand("certificate", "singularity certificate for the base");
    cmd_cert->add_option("--truncation", cert_L, "blockwise interval cutoff")->capture_default_str();

    int max_order = 4;
    auto* cmd_report = app.add_subcommand("report", "full reproduction report");
    cmd_report->add_option("--max-order", max_order, "multinacci table up to this order")
        ->capture_default_str();

    std::vector<const char*> argv;
    argv.push_back("betafreq");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        const BetaParams params = BetaParams::multinacci(beta_order);

        if (cmd_normalize->parsed()) {
            std::string input = word_arg;
            if (cmd_normalize->count("word") == 0) std::getline(std::cin, input);
            if (input.find('|') != std::string::npos) {
                const TwoSidedWord w = two_sided_from_string(input);
                const TwoSidedNormalization res = normalize_two_sided(w, params, radius);
                if (json_out) {
                    Json j;
                    j["version"] = kVersion;
                    j["beta_order"] = beta_order;
                    j["word"] = two_sided_to_string(res.word);
                    j["stable"] = res.stable;
                    j["any_final"] = res.any_final;
                    if (res.any_final) {
                        j["final_lo"] = res.final_lo;
                        j["final_hi"] = res.final_hi;
                    }
                    out << j.dump() << "\n";
                } else {
                    out << two_sided_to_string(res.word) << "\n";
                    if (res.any_final)
                        out << "final coordinates: [" << res.final_lo << ", " << res.final_hi
                            << "] stable at radius " << radius << ": "
                            << (res.stable ? "yes" : "no") << "\n";
                    else
                        out << "no separators: all digits provisional\n";
                }
            } else {
                const BitWord w = word_from_string(input);
                const BitWord nf =
                    use_blocks ? normalize_via_blocks(w, params, threads) : normalize(w, params);
                out << word_to_string(nf) << "\n";
            }
            return 0;
        }

        if (cmd_prob->parsed()) {
            const ParsedEvent ev = parse_event(event_spec);
            if (ev.side == ParsedEvent::center) {
                const CenterDigitReport rep = prob_center_digit(depth, params);
                ProbabilityBracket b = rep.x0_one;
                if (ev.constraints[0].second == 0) {
                    // complement
                    std::swap(b.lower, b.upper);
                    b.lower = Rat(1) - b.lower;
                    b.upper = Rat(1) - b.upper;
                    b.lower.canonicalize();
                    b.upper.canonicalize();
                    b.event = "x0=0";
                }
                out << bracket_json(b, beta_order, seed).dump() << "\n";
            } else if (ev.side == ParsedEvent::future) {
                out << bracket_json(prob_future_digit(future_event(ev.constraints), depth, params),
                                    beta_order, seed)
                           .dump()
                    << "\n";
            } else {
                out << bracket_json(prob_past_digit(past_event(ev.constraints), depth, params),
                                    beta_order, seed)
                           .dump()
                    << "\n";
            }
            return 0;
        }

        if (cmd_fb->parsed() || cmd_fl->parsed()) {
            const FrequencyReport rep =
                cmd_fb->parsed() ? mc_frequency_bernoulli(length, trials, seed, params, threads)
                                 : mc_frequency_lebesgue(length, trials, seed, params, threads);
            if (json_out) {
                out << report_json(rep).dump() << "\n";
            } else {
                out << (cmd_fb->parsed() ? "bernoulli" : "lebesgue") << " digit-1 frequency: "
                    << fixed(rep.estimate) << " +- " << fixed(rep.stderr_)
                    << "  (length " << rep.length << ", trials " << rep.trials << ", seed "
                    << rep.seed << ")\n";
                out << "reference parry alpha(1) = " << fixed(rep.reference_parry) << "\n";
                if (rep.reference_bernoulli)
                    out << "reference bernoulli     = " << rat_to_string(*rep.reference_bernoulli)
                        << " = " << fixed(rep.reference_bernoulli->get_d()) << "\n";
            }
            return 0;
        }

        if (cmd_omega->parsed()) {
            OmegaVariant variant = OmegaVariant::normalized_in_context;
            if (omega_variant == "standalone") variant = OmegaVariant::normalized_standalone;
            else if (omega_variant == "raw") variant = OmegaVariant::raw_digits;
            else if (omega_variant != "context")
                throw std::invalid_argument("variant must be context, standalone or raw");
            const OmegaEnumeration en = enumerate_omega(params, omega_L, omega_list ? 24 : 0);
            const OmegaFrequency fr = omega_frequency(params, omega_L, variant);
            if (json_out) {
                Json j;
                j["version"] = kVersion;
                j["beta_order"] = beta_order;
                j["seed"] = seed;
                j["truncation"] = omega_L;
                j["captured_mass"] = rat_to_string(en.captured_mass);
                j["tail_mass"] = rat_to_string(en.tail_mass);
                j["expected_length"] = rat_to_string(en.expected_length);
                j["variant"] = omega_variant;
                j["freq_lower"] = rat_to_string(fr.lower);
                j["freq_upper"] = rat_to_string(fr.upper);
                j["freq_lower_decimal"] = fr.lower.get_d();
                j["freq_upper_decimal"] = fr.upper.get_d();
                if (omega_list) {
                    Json words = Json::array();
                    for (const auto& [w, wt] : en.words)
                        words.push_back({{"word", word_to_string(w)}, {"weight", rat_to_string(wt)}});
                    j["words"] = words;
                }
                out << j.dump() << "\n";
            } else {
                out << "words up to L=" << omega_L << ": captured mass "
                    << rat_to_string(en.captured_mass) << " = " << fixed(en.captured_mass.get_d())
                    << ", tail " << fixed(en.tail_mass.get_d()) << "\n";
                out << "expected word length: " << rat_to_string(en.expected_length) << "\n";
                out << "digit-1 frequency in [" << fixed(fr.lower.get_d(), 12) << ", "
                    << fixed(fr.upper.get_d(), 12) << "]\n";
                if (omega_list)
                    for (const auto& [w, wt] : en.words)
                        out << "  " << word_to_string(w) << "  " << rat_to_string(wt) << "\n";
            }
            return 0;
        }

        if (cmd_dim->parsed()) {
            if (grid > 0) {
                const Rat gmax = max_digit_frequency(params);
                out << "gamma,entropy,dimension\n";
                for (int i = 0; i <= grid; ++i) {
                    Rat g = gmax * Rat(i) / Rat(grid);
                    g.canonicalize();
                    const DimensionResult d = dim_A_gamma(g, params);
                    out << rat_to_string(g) << "," << fixed(d.max_entropy, 12) << ","
                        << fixed(d.dimension, 12) << "\n";
                }
                return 0;
            }
            const DimensionResult d = dim_A_gamma(rat_from_string(gamma_str), params);
            if (json_out || !csv_out) {
                out << dimension_json(d, beta_order, seed).dump() << "\n";
            }
            return 0;
        }

        if (cmd_cert->parsed()) {
            const SingularityCertificate c = singularity_certificate(params, cert_L);
            if (json_out) {
                out << certificate_json(c, seed).dump() << "\n";
            } else {
                out << "order " << c.order << ": bernoulli frequency "
                    << rat_to_string(c.bernoulli_exact) << " = " << fixed(c.bernoulli_exact.get_d())
                    << ", interval [" << fixed(c.bernoulli_lower.get_d(), 12) << ", "
                    << fixed(c.bernoulli_upper.get_d(), 12) << "]\n";
                out << "alpha(1) = " << c.alpha1.to_string() << " = " << fixed(c.alpha1_value)
                    << "\n";
                out << "separated: " << (c.separated ? "yes" : "no")
                    << " (sign " << c.separation_sign << "), interval separated: "
                    << (c.interval_separated ? "yes" : "no") << "\n";
                out << "dimension bound: " << fixed(c.dimension_bound, 12) << " (sup over interval "
                    << fixed(c.dimension_bound_sup, 12) << ")\n";
                out << "verdict: " << c.verdict << "\n";
            }
            return 0;
        }

        if (cmd_report->parsed()) {
            out << "betafreq " << kVersion << " reproduction report (seed " << seed << ")\n\n";
            out << "== golden mean (order 2) ==\n";
            const BetaParams golden = BetaParams::multinacci(2);
            const GoldenClosedForms cf = golden_exact_digit_probabilities(golden);
            out << "closed forms: P(y1=1)=" << rat_to_string(cf.p_y1_one)
                << "  P(y1=y2=1)=" << rat_to_string(cf.p_y1_y2_one)
                << "  P(y0=1)=" << rat_to_string(cf.p_y0_one)
                << "  P(y-1=y0=0)=" << rat_to_string(cf.p_ym1_y0_zero)
                << "  P(x0=1)=" << rat_to_string(cf.p_x0_one) << "\n";
            const CenterDigitReport center = prob_center_digit(depth, golden);
            out << "center bracket at depth " << depth << ": ["
                << rat_to_string(center.x0_one.lower) << ", " << rat_to_string(center.x0_one.upper)
                << "], width " << fixed(center.x0_one.width().get_d(), 14) << "\n";
            const FieldElement a1 = parry_digit_one_frequency(golden);
            out << "alpha(1) = " << a1.to_string() << " = " << fixed(a1.to_double()) << "\n";
            const FrequencyReport fb = mc_frequency_bernoulli(length, trials, seed, golden, threads);
            const FrequencyReport fl = mc_frequency_lebesgue(length, trials, seed, golden, threads);
            out << "monte carlo bernoulli: " << fixed(fb.estimate) << " +- " << fixed(fb.stderr_)
                << "\n";
            out << "monte carlo lebesgue:  " << fixed(fl.estimate) << " +- " << fixed(fl.stderr_)
                << "\n";
            const SingularityCertificate gc = singularity_certificate(golden, cert_L);
            out << "dimension bound at 5/18: " << fixed(gc.dimension_bound, 12) << "\n\n";
            out << "== multinacci table ==\n";
            out << "order  bernoulli[exact]      alpha(1)      separated  dim bound\n";
            for (int n = 2; n <= max_order; ++n) {
                const BetaParams p = BetaParams::multinacci(n);
                const SingularityCertificate c = singularity_certificate(p, cert_L);
                out << n << "      " << rat_to_string(c.bernoulli_exact) << " = "
                    << fixed(c.bernoulli_exact.get_d(), 8) << "  " << fixed(c.alpha1_value, 8)
                    << "  " << (c.separated ? "yes" : "no ") << "        "
                    << fixed(c.dimension_bound, 8) << "\n";
            }
            return 0;
        }

        err << "no subcommand given\n\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace betafreq
