#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gsp4lfun/analytic.hpp"
#include "gsp4lfun/json_io.hpp"
#include "gsp4lfun/primes.hpp"
#include "gsp4lfun/parallel.hpp"
#include "gsp4lfun/verify.hpp"
#include "gsp4lfun/version.hpp"

using namespace gsp4lfun;

namespace {

Json make_report(const std::string& command, Json parameters) {
    Json report;
    report["command"] = command;
    report["version"] = kVersion;
    report["parameters"] = std::move(parameters);
    return report;
}

void emit(const Json& report) { std::cout << report.dump(2) << "\n"; }

Json complex_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json series_json(const CoefficientSeries& s, const std::string& kind) {
    Json j;
    j["type"] = "series";
    j["kind"] = kind;
    j["length"] = s.length();
    j["multiplicative"] = s.multiplicative;
    Json values = Json::object();
    for (long n = 1; n <= s.length(); ++n) values[std::to_string(n)] = complex_json(s.at(n));
    j["values"] = std::move(values);
    return j;
}

void write_json_file(const Json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump();
    if (!out) throw std::runtime_error("write failure: " + path);
}

std::vector<long> parse_long_list(const std::string& csv) {
    std::vector<long> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stol(item));
    return out;
}

const char* verdict_name(ClassifyReport::Verdict v) {
    switch (v) {
        case ClassifyReport::Verdict::P: return "P";
        case ClassifyReport::Verdict::G: return "G";
        default: return "inconclusive";
    }
}

const char* verdict_name(ComparisonReport::Verdict v) {
    switch (v) {
        case ComparisonReport::Verdict::ConsistentWithEqual: return "consistent-with-equal";
        case ComparisonReport::Verdict::Distinct: return "distinct";
        default: return "insufficient";
    }
}

std::map<long, double> spin_values(const ParamodularEigenform& form, long prime_bound) {
    std::map<long, double> out;
    for (long p : primes_up_to(prime_bound)) {
        if (form.level() % p == 0) continue;
        if (form.packet() == Packet::P && form.sk_source()) {
            if (p > form.sk_source()->precision()) continue;
        } else if (!form.hecke().count(p)) {
            continue;
        }
        out[p] = spin_prime_coeff(form, p);
    }
    return out;
}

}

int main(int argc, char** argv) {
    CLI::App app{"degree-2 Siegel/paramodular L-function engine"};
    app.require_subcommand(1);

    int threads = 0;
    if (const char* env = std::getenv("GSP4LFUN_THREADS")) threads = std::atoi(env);
    app.add_option("--threads", threads, "worker cap (default: GSP4LFUN_THREADS or all cores)");

    // --- eigenform -------------------------------------------------------
    auto* cmd_eigenform = app.add_subcommand("eigenform", "generate an eigenform data file");
    std::string eigen_kind = "gl2";
    int eigen_weight = 18;
    long eigen_coeffs = 10000;
    std::string eigen_out = "eigenform.json";
    cmd_eigenform->add_option("kind", eigen_kind, "family (gl2)")->required();
    cmd_eigenform->add_option("--weight", eigen_weight, "form weight")->required();
    cmd_eigenform->add_option("--coeffs", eigen_coeffs, "expansion precision");
    cmd_eigenform->add_option("--out", eigen_out, "output file")->required();

    // --- synthesize-g ----------------------------------------------------
    auto* cmd_synth = app.add_subcommand("synthesize-g", "deterministic general-type test form");
    std::uint64_t synth_seed = 1;
    int synth_k = 10;
    long synth_primes = 10000;
    std::string synth_out = "G.json";
    cmd_synth->add_option("--seed", synth_seed, "seed");
    cmd_synth->add_option("--k", synth_k, "weight k");
    cmd_synth->add_option("--primes", synth_primes, "prime bound");
    cmd_synth->add_option("--out", synth_out, "output file")->required();

    // --- sk-lift ---------------------------------------------------------
    auto* cmd_lift = app.add_subcommand("sk-lift", "Saito-Kurokawa lift of a gl2 eigenform");
    std::string lift_from, lift_out = "lift.json";
    long lift_primes = 10000;
    cmd_lift->add_option("--from", lift_from, "gl2 eigenform file")->required();
    cmd_lift->add_option("--primes", lift_primes, "Hecke data prime bound");
    cmd_lift->add_option("--out", lift_out, "output file")->required();

    // --- coeffs ----------------------------------------------------------
    auto* cmd_coeffs = app.add_subcommand("coeffs", "series coefficients of a form");
    std::string coeffs_form, coeffs_kind = "spin", coeffs_out;
    long coeffs_length = 100;
    cmd_coeffs->add_option("--form", coeffs_form, "gsp4 form file")->required();
    cmd_coeffs->add_option("--kind", coeffs_kind, "spin or std");
    cmd_coeffs->add_option("--length", coeffs_length, "series length");
    cmd_coeffs->add_option("--out", coeffs_out, "output file (default: stdout only)");

    // --- euler -----------------------------------------------------------
    auto* cmd_euler = app.add_subcommand("euler", "local factor of a form at a prime");
    std::string euler_form, euler_kind = "spin";
    long euler_prime = 2;
    cmd_euler->add_option("--form", euler_form, "gsp4 form file")->required();
    cmd_euler->add_option("--prime", euler_prime, "prime");
    cmd_euler->add_option("--kind", euler_kind, "spin or std");

    // --- classify ----------------------------------------------------------
    auto* cmd_classify = app.add_subcommand("classify", "packet-type classification");
    std::string classify_form, classify_out;
    long classify_primes = 10000;
    double classify_tau_p = 0.25, classify_tau_g = 0.05;
    cmd_classify->add_option("--form", classify_form, "gsp4 form file")->required();
    cmd_classify->add_option("--primes", classify_primes, "prime bound");
    cmd_classify->add_option("--tau-p", classify_tau_p, "lift verdict threshold");
    cmd_classify->add_option("--tau-g", classify_tau_g, "general verdict threshold");
    cmd_classify->add_option("--out", classify_out, "report file");

    // --- compare -----------------------------------------------------------
    auto* cmd_compare = app.add_subcommand("compare", "strong-multiplicity-one comparison");
    std::string compare_a, compare_b, compare_kind = "spin";
    long compare_primes = 10000;
    double compare_tol = 1e-6, compare_threshold = 0.0;
    cmd_compare->add_option("--a", compare_a, "first form")->required();
    cmd_compare->add_option("--b", compare_b, "second form")->required();
    cmd_compare->add_option("--kind", compare_kind, "spin, std, or hecke");
    cmd_compare->add_option("--primes", compare_primes, "prime bound");
    cmd_compare->add_option("--tolerance", compare_tol, "per-prime tolerance");
    cmd_compare->add_option("--threshold", compare_threshold, "distinct once density < 1 - t");

    // --- char --------------------------------------------------------------
    auto* cmd_char = app.add_subcommand("char", "Dirichlet character data");
    long char_q = 1;
    long char_index = -1;
    std::string char_out;
    cmd_char->add_option("--q", char_q, "modulus")->required();
    cmd_char->add_option("--index", char_index, "character index (omit to list all)");
    cmd_char->add_option("--out", char_out, "output file");

    // --- central-value -------------------------------------------------------
    auto* cmd_central = app.add_subcommand("central-value", "twisted central value");
    std::string central_form, central_gl2, central_char;
    double central_x = 1.0, central_cpi_re = 1.0, central_cpi_im = 0.0;
    cmd_central->add_option("--form", central_form, "gsp4 form file");
    cmd_central->add_option("--gl2-form", central_gl2, "gl2 form file");
    cmd_central->add_option("--char", central_char, "character address q:index")->required();
    cmd_central->add_option("--x", central_x, "balance parameter X >= 1");
    cmd_central->add_option("--c-pi-re", central_cpi_re, "Re c_pi");
    cmd_central->add_option("--c-pi-im", central_cpi_im, "Im c_pi");

    // --- first-moment ---------------------------------------------------------
    auto* cmd_moment = app.add_subcommand("first-moment", "family-averaged twisted values");
    std::string moment_form, moment_family;
    long moment_prime = 2;
    double moment_x = 1.0;
    double family_q = 0.0, family_p1 = 0.0, family_p2 = 0.0, family_min_factor = 1.0;
    long family_max_factors = -1;
    double family_kappa = 1.0, family_nu = 0.5, family_delta = 0.25;
    cmd_moment->add_option("--form", moment_form, "gsp4 form file")->required();
    cmd_moment->add_option("--prime", moment_prime, "twisting prime p");
    cmd_moment->add_option("--x", moment_x, "balance parameter");
    cmd_moment->add_option("--family", moment_family, "explicit family, comma-separated");
    cmd_moment->add_option("--family-Q", family_q, "family size parameter Q");
    cmd_moment->add_option("--family-p1", family_p1, "override window P1");
    cmd_moment->add_option("--family-p2", family_p2, "override window P2");
    cmd_moment->add_option("--family-min-factor", family_min_factor, "minimum prime factor of m");
    cmd_moment->add_option("--family-max-factors", family_max_factors, "max distinct factors of m");
    cmd_moment->add_option("--family-kappa", family_kappa, "kappa");
    cmd_moment->add_option("--family-nu", family_nu, "nu");
    cmd_moment->add_option("--family-delta", family_delta, "delta");

    // --- verify -----------------------------------------------------------------
    auto* cmd_verify = app.add_subcommand("verify", "run property suites");
    std::string verify_suite = "all";
    VerifyOptions vopt;
    cmd_verify->add_option("--suite", verify_suite,
                           "identities, lemma34, orthogonality, afe, selberg, all");
    cmd_verify->add_option("--trials", vopt.trials, "random trials per identity");
    cmd_verify->add_option("--seed", vopt.seed, "random seed");
    cmd_verify->add_option("--selberg-x", vopt.selberg_x, "prime-sum range");
    cmd_verify->add_option("--lemma-trials", vopt.lemma_trials, "tuple count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    set_thread_cap(threads);

    try {
        if (*cmd_eigenform) {
            if (eigen_kind != "gl2")
                throw std::invalid_argument("eigenform: only the gl2 family is supported");
            EllipticEigenform f = eigenform_one_dim(eigen_weight, eigen_coeffs);
            write_eigenform(f, eigen_out);
            Json report = make_report("eigenform", {{"kind", eigen_kind},
                                                    {"weight", eigen_weight},
                                                    {"coeffs", eigen_coeffs},
                                                    {"out", eigen_out},
                                                    {"threads", threads}});
            report["outputs"] = Json::array({eigen_out});
            emit(report);
        } else if (*cmd_synth) {
            ParamodularEigenform f = synthesize_G_form(synth_seed, synth_k, synth_primes);
            write_paramodular(f, synth_out);
            Json report = make_report("synthesize-g", {{"seed", synth_seed},
                                                       {"k", synth_k},
                                                       {"primes", synth_primes},
                                                       {"out", synth_out},
                                                       {"threads", threads}});
            report["outputs"] = Json::array({synth_out});
            emit(report);
        } else if (*cmd_lift) {
            EllipticEigenform f = read_eigenform(lift_from);
            ParamodularEigenform lift = sk_lift(f, lift_primes);
            ParamodularEigenform::Data d = lift.data();
            d.sk_source_path = lift_from;
            write_paramodular(ParamodularEigenform(std::move(d)), lift_out);
            Json report = make_report("sk-lift", {{"from", lift_from},
                                                  {"primes", lift_primes},
                                                  {"out", lift_out},
                                                  {"threads", threads}});
            report["outputs"] = Json::array({lift_out});
            emit(report);
        } else if (*cmd_coeffs) {
            ParamodularEigenform f = read_paramodular(coeffs_form);
            CoefficientSeries s;
            if (coeffs_kind == "spin")
                s = spin_coeffs(f, coeffs_length);
            else if (coeffs_kind == "std")
                s = std_coeffs(f, coeffs_length);
            else
                throw std::invalid_argument("coeffs: kind must be spin or std");
            Json series = series_json(s, coeffs_kind);
            Json exceptional = Json::array();
            for (long p : primes_up_to(coeffs_length))
                if (f.level() % p == 0) exceptional.push_back(p);
            series["exceptional_set"] = exceptional;
            if (!coeffs_out.empty()) write_json_file(series, coeffs_out);
            Json report = make_report("coeffs", {{"form", coeffs_form},
                                                 {"kind", coeffs_kind},
                                                 {"length", coeffs_length},
                                                 {"out", coeffs_out},
                                                 {"threads", threads}});
            report["result"] = std::move(series);
            emit(report);
        } else if (*cmd_euler) {
            ParamodularEigenform f = read_paramodular(euler_form);
            EulerFactor factor;
            if (f.level() % euler_prime == 0) {
                const auto& ram = euler_kind == "spin" ? f.ramified_spin() : f.ramified_std();
                auto it = ram.find(euler_prime);
                factor = it != ram.end() ? it->second
                                         : EulerFactor(euler_prime, {Complex(1.0)});
            } else {
                SpinSatake sp = form_spin_satake(f, euler_prime);
                if (euler_kind == "spin")
                    factor = spin_factor_satake(sp);
                else if (euler_kind == "std")
                    factor = std_factor(sp);
                else
                    throw std::invalid_argument("euler: kind must be spin or std");
            }
            Json coeffs = Json::array();
            for (const Complex& c : factor.coeffs) coeffs.push_back(complex_json(c));
            Json report = make_report("euler", {{"form", euler_form},
                                                {"prime", euler_prime},
                                                {"kind", euler_kind},
                                                {"threads", threads}});
            report["result"] = {{"prime", factor.prime},
                                {"degree", factor.degree()},
                                {"coefficients", std::move(coeffs)}};
            emit(report);
        } else if (*cmd_classify) {
            ParamodularEigenform f = read_paramodular(classify_form);
            ClassifyOptions copt{classify_tau_p, classify_tau_g};
            ClassifyReport rep = classify_packet(spin_values(f, classify_primes), copt);
            Json margins = Json::array();
            for (const auto& m : rep.margins)
                margins.push_back({{"p", m.p},
                                   {"abs_a", m.abs_a},
                                   {"lift_bound", m.lift_bound},
                                   {"general_bound", m.general_bound}});
            Json result = {{"verdict", verdict_name(rep.verdict)},
                           {"primes_used", rep.primes_used},
                           {"rho_p", rep.rho_p},
                           {"general_violations", rep.general_violations},
                           {"margins", std::move(margins)}};
            if (!classify_out.empty()) write_json_file(result, classify_out);
            Json report = make_report("classify", {{"form", classify_form},
                                                   {"primes", classify_primes},
                                                   {"tau_p", classify_tau_p},
                                                   {"tau_g", classify_tau_g},
                                                   {"out", classify_out},
                                                   {"threads", threads}});
            report["result"] = std::move(result);
            emit(report);
        } else if (*cmd_compare) {
            ParamodularEigenform a = read_paramodular(compare_a);
            ParamodularEigenform b = read_paramodular(compare_b);
            CompareKind kind;
            if (compare_kind == "spin")
                kind = CompareKind::Spin;
            else if (compare_kind == "std")
                kind = CompareKind::Std;
            else if (compare_kind == "hecke")
                kind = CompareKind::Hecke;
            else
                throw std::invalid_argument("compare: kind must be spin, std, or hecke");
            CompareOptions copt;
            copt.tolerance = compare_tol;
            copt.threshold = compare_threshold;
            ComparisonReport rep = compare_eigenforms(a, b, compare_primes, kind, copt);
            Json result = {{"verdict", verdict_name(rep.verdict)},
                           {"primes_compared", rep.primes_compared},
                           {"agreements", rep.agreements},
                           {"density", rep.density}};
            if (rep.first_disagreement) result["first_disagreement"] = *rep.first_disagreement;
            Json report = make_report("compare", {{"a", compare_a},
                                                  {"b", compare_b},
                                                  {"kind", compare_kind},
                                                  {"primes", compare_primes},
                                                  {"tolerance", compare_tol},
                                                  {"threshold", compare_threshold},
                                                  {"threads", threads}});
            report["result"] = std::move(result);
            emit(report);
        } else if (*cmd_char) {
            Json result;
            if (char_index >= 0) {
                result = character_to_json(DirichletCharacter(char_q, char_index));
            } else {
                result = Json::array();
                for (const auto& chi : characters_mod(char_q))
                    result.push_back(character_to_json(chi));
            }
            if (!char_out.empty()) write_json_file(result, char_out);
            Json report = make_report("char", {{"q", char_q},
                                               {"index", char_index},
                                               {"out", char_out},
                                               {"threads", threads}});
            report["result"] = std::move(result);
            emit(report);
        } else if (*cmd_central) {
            DirichletCharacter chi = parse_character_address(central_char);
            AfeOptions opt;
            opt.c_pi = Complex(central_cpi_re, central_cpi_im);
            Complex value;
            std::string mode;
            if (!central_gl2.empty()) {
                EllipticEigenform f = read_eigenform(central_gl2);
                value = afe_gl2_central(f, chi, central_x, opt);
                mode = "gl2";
            } else if (!central_form.empty()) {
                ParamodularEigenform f = read_paramodular(central_form);
                value = afe_gsp4_central(f, chi, central_x, opt);
                mode = "gsp4";
            } else {
                throw std::invalid_argument("central-value: provide --form or --gl2-form");
            }
            Json report = make_report("central-value", {{"form", central_form},
                                                        {"gl2_form", central_gl2},
                                                        {"char", central_char},
                                                        {"x", central_x},
                                                        {"c_pi", complex_json(opt.c_pi)},
                                                        {"threads", threads}});
            report["result"] = {{"mode", mode}, {"value", complex_json(value)}};
            emit(report);
        } else if (*cmd_moment) {
            ParamodularEigenform f = read_paramodular(moment_form);
            std::vector<long> family;
            Json family_info;
            if (!moment_family.empty()) {
                family = parse_long_list(moment_family);
                family_info = {{"explicit", moment_family}};
            } else {
                FamilyParams params;
                params.big_q = family_q;
                params.kappa = family_kappa;
                params.nu = family_nu;
                params.delta = family_delta;
                if (family_p1 > 0.0 || family_p2 > 0.0) {
                    FamilyOverrides ov;
                    ov.p1 = family_p1;
                    ov.p2 = family_p2;
                    ov.min_prime_factor = family_min_factor;
                    ov.max_distinct_factors = family_max_factors;
                    params.overrides = ov;
                }
                FamilyResult fr = family_Q(params);
                family = fr.q;
                family_info = {{"Q", family_q},
                               {"empty_under_defaults", fr.empty_under_defaults},
                               {"size", static_cast<long>(family.size())}};
            }
            AfeOptions opt;
            Complex value = first_moment(f, family, moment_prime, moment_x, opt);
            Json report = make_report("first-moment", {{"form", moment_form},
                                                       {"prime", moment_prime},
                                                       {"x", moment_x},
                                                       {"family", family},
                                                       {"family_info", family_info},
                                                       {"threads", threads}});
            report["result"] = {{"value", complex_json(value)}};
            emit(report);
        } else if (*cmd_verify) {
            std::vector<CheckResult> checks = run_verify_suite(verify_suite, vopt);
            bool all_pass = true;
            Json items = Json::array();
            for (const auto& c : checks) {
                all_pass = all_pass && c.pass;
                items.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
            }
            Json report = make_report("verify", {{"suite", verify_suite},
                                                 {"trials", vopt.trials},
                                                 {"seed", vopt.seed},
                                                 {"selberg_x", vopt.selberg_x},
                                                 {"lemma_trials", vopt.lemma_trials},
                                                 {"threads", threads}});
            report["result"] = {{"checks", std::move(items)}, {"pass", all_pass}};
            emit(report);
            return all_pass ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
