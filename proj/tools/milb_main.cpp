// SPDX-License-Identifier: Apache-2.0
//
// milb: mutual-information lower bounds for pilot-limited multi-user MIMO uplinks
// Copyright (C) 2026 milb authors

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include <milb/milb.hpp>

namespace
{

// JSON config files: a top-level object whose keys are the long option names
// of the subcommand (e.g. {"k": 40, "p-db-range": "0:40:2"}). CLI11 applies
// set_config files on the root command only, so --config is expanded into
// ordinary tokens before parsing instead; keys that were also given as
// explicit flags are dropped, which yields the flags-override-file precedence.
std::vector<std::string> expand_config_args(const std::vector<std::string> &args)
{
    std::string path;
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i)
    {
        if (args[i] == "--config")
        {
            if (i + 1 == args.size())
                throw std::invalid_argument("--config needs a file path");
            path = args[++i];
        }
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
        else
            out.push_back(args[i]);
    }
    if (path.empty())
        return out;

    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    if (!j.is_object())
        throw std::invalid_argument("config file must contain a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        const std::string flag = "--" + it.key();
        const auto given = [&](const std::string &a)
        { return a == flag || a.rfind(flag + "=", 0) == 0; };
        if (std::any_of(out.begin(), out.end(), given))
            continue;
        if (it->is_boolean())
        {
            if (it->get<bool>())
                out.push_back(flag);
        }
        else if (it->is_string())
        {
            out.push_back(flag);
            out.push_back(it->get<std::string>());
        }
        else if (it->is_number())
        {
            out.push_back(flag);
            out.push_back(it->dump());
        }
        else
            throw std::invalid_argument("config key \"" + it.key() + "\" must be a scalar");
    }
    return out;
}

void attach_config(CLI::App *sub)
{
    // consumed by expand_config_args before parsing; registered so the
    // option shows up in --help
    sub->add_option("--config", "JSON file with defaults; explicit flags override");
}

void write_output(const std::string &path, const std::string &body)
{
    if (path.empty())
    {
        std::cout << body;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open output path: " + path);
    os << body;
    if (!os)
        throw std::runtime_error("failed writing output: " + path);
}

// "start:stop" or "start:stop:step" (step defaults to 1)
void parse_range(const std::string &s, double &start, double &stop, double &step)
{
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true)
    {
        const std::size_t colon = s.find(':', pos);
        parts.push_back(s.substr(pos, colon - pos));
        if (colon == std::string::npos)
            break;
        pos = colon + 1;
    }
    if (parts.size() < 2 || parts.size() > 3)
        throw std::invalid_argument("range must be start:stop or start:stop:step, got '" + s + "'");
    try
    {
        start = std::stod(parts[0]);
        stop = std::stod(parts[1]);
        step = parts.size() == 3 ? std::stod(parts[2]) : 1.0;
    }
    catch (const std::exception &)
    {
        throw std::invalid_argument("range has a non-numeric field: '" + s + "'");
    }
}

std::string breakdown_json(const milb::VarianceBreakdown &b)
{
    using milb::fmt_double;
    std::string s = "{\"scheme\":\"";
    s += milb::scheme_name(b.scheme);
    s += "\",\"tr_r1\":" + fmt_double(b.tr_r1) + ",\"tr_r2\":" + fmt_double(b.tr_r2) +
         ",\"tr_r3\":" + fmt_double(b.tr_r3) + ",\"tr_r4\":" + fmt_double(b.tr_r4) +
         ",\"tr_r5\":" + fmt_double(b.tr_r5) + ",\"tr_r6\":" + fmt_double(b.tr_r6) +
         ",\"sigma_v2\":" + fmt_double(b.sigma_v2) + "}";
    return s;
}

struct ScalarArgs
{
    double p_db = 0.0;
    int k = 0;
    int l = 30;
    int n = 60;
    double sigma2 = 1.0;
    bool per_channel_use = false;
    std::string out;
};

void add_scalar_opts(CLI::App *sub, ScalarArgs &a)
{
    sub->add_option("--p-db", a.p_db, "transmit power in dB, 10*log10(P/sigma2)")->required();
    sub->add_option("--k", a.k, "user count K")->required();
    sub->add_option("--l", a.l, "coherence length L")->capture_default_str();
    sub->add_option("--n", a.n, "BS antenna count N")->capture_default_str();
    sub->add_option("--sigma2", a.sigma2, "noise variance")->capture_default_str();
    sub->add_flag("--per-channel-use", a.per_channel_use,
                  "report MILB divided by L instead of per coherence block");
    sub->add_option("--out", a.out, "output path (default: stdout)");
    attach_config(sub);
}

int cmd_optimal_alpha(const ScalarArgs &a, bool explain)
{
    const double P = milb::db_to_linear(a.p_db, a.sigma2);
    const milb::AlphaSearch as = milb::alpha_search(P, a.k, a.l, a.sigma2);

    milb::SystemConfig cfg;
    cfg.K = a.k;
    cfg.L = a.l;
    cfg.N = a.n;
    cfg.P = P;
    cfg.sigma2 = a.sigma2;
    cfg.alpha = as.alpha_star;
    const milb::MilbPoint pt = milb::milb_sp(cfg);
    const double norm = a.per_channel_use ? 1.0 / a.l : 1.0;

    using milb::fmt_double;
    std::string body = "# {\"command\":\"optimal-alpha\",\"P_db\":" + fmt_double(a.p_db) +
                       ",\"K\":" + milb::fmt_int(a.k) + ",\"L\":" + milb::fmt_int(a.l) +
                       ",\"N\":" + milb::fmt_int(a.n) + ",\"sigma2\":" + fmt_double(a.sigma2) +
                       ",\"normalization\":\"" +
                       (a.per_channel_use ? "per-channel-use" : "per-block") + "\"}\n";
    body += "{\"alpha_star\":" + fmt_double(as.alpha_star);
    body += ",\"g_residual\":" + fmt_double(as.residual);
    body += ",\"rho\":" + fmt_double(as.rho_star);
    body += ",\"milb_nats\":" + fmt_double(pt.milb_nats * norm);
    body += ",\"milb_bits\":" + fmt_double(pt.milb_bits * norm);
    body += ",\"multiple_roots\":";
    body += as.multiple_roots ? "true" : "false";
    body += ",\"roots\":[";
    for (std::size_t i = 0; i < as.roots.size(); ++i)
        body += (i ? "," : "") + fmt_double(as.roots[i]);
    body += "],\"quartic\":{\"c4\":" + fmt_double(as.g.c4) + ",\"c3\":" + fmt_double(as.g.c3) +
            ",\"c2\":" + fmt_double(as.g.c2) + ",\"c1\":" + fmt_double(as.g.c1) +
            ",\"c0\":" + fmt_double(as.g.c0) + "}";
    if (explain)
        body += ",\"breakdown\":" +
                breakdown_json(milb::trace_terms_sp(as.alpha_star, P, a.k, a.l, a.n, a.sigma2));
    body += "}\n";
    write_output(a.out, body);
    return 0;
}

int cmd_optimal_lp(const ScalarArgs &a)
{
    const double P = milb::db_to_linear(a.p_db, a.sigma2);
    const milb::LpSearch ls = milb::optimal_lp(P, a.k, a.l, a.n, a.sigma2);
    const double norm = a.per_channel_use ? 1.0 / a.l : 1.0;

    using milb::fmt_double;
    using milb::fmt_int;
    std::string body = "# {\"command\":\"optimal-lp\",\"P_db\":" + fmt_double(a.p_db) +
                       ",\"K\":" + fmt_int(a.k) + ",\"L\":" + fmt_int(a.l) +
                       ",\"N\":" + fmt_int(a.n) + ",\"sigma2\":" + fmt_double(a.sigma2) +
                       ",\"normalization\":\"" +
                       (a.per_channel_use ? "per-channel-use" : "per-block") + "\"}\n";
    body += "{\"lp_star\":" + fmt_int(ls.lp_star);
    body += ",\"rho\":" + fmt_double(ls.best.rho);
    body += ",\"milb_nats\":" + fmt_double(ls.best.milb_nats * norm);
    body += ",\"milb_bits\":" + fmt_double(ls.best.milb_bits * norm);
    body += ",\"table\":[";
    for (std::size_t i = 0; i < ls.table.size(); ++i)
    {
        const auto &pt = ls.table[i];
        body += i ? "," : "";
        body += "{\"Lp\":" + fmt_int(pt.cfg.Lp) + ",\"rho\":" + fmt_double(pt.rho) +
                ",\"milb_nats\":" + fmt_double(pt.milb_nats * norm) +
                ",\"milb_bits\":" + fmt_double(pt.milb_bits * norm) + "}";
    }
    body += "]}\n";
    write_output(a.out, body);
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"milb: mutual-information lower bounds for pilot-limited multi-user MIMO "
                 "uplinks.\ndB convention: P_db = 10*log10(P/sigma2), i.e. power relative to the "
                 "noise floor.\nExit codes: 0 success, 1 validation failure, 2 usage error."};
    app.require_subcommand(1);

    // ---- sweep ----
    auto *sweep = app.add_subcommand(
        "sweep", "MILB across transmit power (fixed K) or user count (fixed power)");
    std::string sw_scheme = "both", sw_axis = "power-db", sw_pdb_range = "0:40:2",
                sw_k_range = "31:60:1", sw_out, sw_format = "csv";
    milb::SweepSpec spec;
    auto *sw_k = sweep->add_option("--k", spec.K, "user count K (power axis)");
    auto *sw_pdb = sweep->add_option("--p-db", spec.P_db, "fixed power in dB (users axis)");
    sweep->add_option("--scheme", sw_scheme, "sp | rp | both")->capture_default_str()
        ->check(CLI::IsMember({"sp", "rp", "both"}));
    sweep->add_option("--axis", sw_axis, "power-db | users")->capture_default_str()
        ->check(CLI::IsMember({"power-db", "users"}));
    sweep->add_option("--l", spec.L, "coherence length L")->capture_default_str();
    sweep->add_option("--n", spec.N, "BS antenna count N")->capture_default_str();
    sweep->add_option("--sigma2", spec.sigma2, "noise variance")->capture_default_str();
    sweep->add_option("--p-db-range", sw_pdb_range, "power axis start:stop[:step] in dB")->capture_default_str();
    sweep->add_option("--k-range", sw_k_range, "users axis start:stop[:step]")->capture_default_str();
    auto *sw_alpha = sweep->add_option("--alpha", spec.alpha, "fixed SP power split");
    auto *sw_lp = sweep->add_option("--lp", spec.Lp, "fixed RP pilot length");
    auto *sw_opt = sweep->add_flag("--optimal", "re-solve alpha*/Lp* per point (default when no "
                                                "--alpha/--lp given)");
    sw_opt->excludes(sw_alpha)->excludes(sw_lp);
    sweep->add_flag("--per-channel-use", spec.per_channel_use,
                    "report MILB divided by L instead of per coherence block");
    sweep->add_option("--trials", spec.trials,
                      "Monte Carlo trials per point (0: closed form only)")->capture_default_str();
    sweep->add_option("--seed", spec.seed, "master seed for Monte Carlo rows")->capture_default_str();
    sweep->add_option("--out", sw_out, "output path (default: stdout)");
    sweep->add_option("--format", sw_format, "csv | json")->capture_default_str()
        ->check(CLI::IsMember({"csv", "json"}));
    attach_config(sweep);

    // ---- optimal-alpha ----
    auto *oa = app.add_subcommand("optimal-alpha",
                                  "SP power split maximizing the MILB, with diagnostics");
    ScalarArgs oa_args;
    bool oa_explain = false;
    add_scalar_opts(oa, oa_args);
    oa->add_flag("--explain", oa_explain, "include the interference variance breakdown");

    // ---- optimal-lp ----
    auto *ol = app.add_subcommand("optimal-lp",
                                  "RP pilot length maximizing the MILB, with the full table");
    ScalarArgs ol_args;
    add_scalar_opts(ol, ol_args);

    // ---- validate ----
    auto *val = app.add_subcommand(
        "validate", "Monte-Carlo-vs-closed-form checks and density invariants; exit 1 on failure");
    std::string val_suite = "all", val_out;
    long val_trials = 10000;
    std::uint64_t val_seed = 1;
    val->add_option("--suite", val_suite, "all | variances | traces | milb | density")->capture_default_str()
        ->check(CLI::IsMember({"all", "variances", "traces", "milb", "density"}));
    val->add_option("--trials", val_trials, "Monte Carlo trials per check")->capture_default_str();
    val->add_option("--seed", val_seed, "master seed")->capture_default_str();
    val->add_option("--out", val_out, "report path (default: stdout)");
    attach_config(val);

    // ---- pilot-dump ----
    auto *pd = app.add_subcommand("pilot-dump", "dump a pilot matrix as CSV (re,im, row-major)");
    int pd_k = 0, pd_len = 0;
    std::string pd_out;
    pd->add_option("--k", pd_k, "user count K")->required();
    pd->add_option("--len", pd_len, "pilot length (<= K)")->required();
    pd->add_option("--out", pd_out, "output path (default: stdout)");
    attach_config(pd);

    try
    {
        std::vector<std::string> args = expand_config_args({argv + 1, argv + argc});
        std::reverse(args.begin(), args.end());
        app.parse(args);

        if (app.got_subcommand(sweep))
        {
            spec.scheme = sw_scheme == "sp"   ? milb::SchemeSelect::sp
                          : sw_scheme == "rp" ? milb::SchemeSelect::rp
                                              : milb::SchemeSelect::both;
            spec.axis = sw_axis == "users" ? milb::SweepAxis::users : milb::SweepAxis::power_db;
            if (spec.axis == milb::SweepAxis::power_db && sw_k->count() == 0)
                throw std::invalid_argument("sweep over power needs a fixed --k");
            if (spec.axis == milb::SweepAxis::users && sw_pdb->count() == 0)
                throw std::invalid_argument("sweep over users needs a fixed --p-db");
            parse_range(spec.axis == milb::SweepAxis::power_db ? sw_pdb_range : sw_k_range,
                        spec.start, spec.stop, spec.step);
            spec.optimal = sw_alpha->count() == 0 && sw_lp->count() == 0;
            if (!spec.optimal)
            {
                if (spec.scheme != milb::SchemeSelect::rp && sw_alpha->count() == 0)
                    throw std::invalid_argument("fixed allocation with an SP sweep needs --alpha");
                if (spec.scheme != milb::SchemeSelect::sp && sw_lp->count() == 0)
                    throw std::invalid_argument("fixed allocation with an RP sweep needs --lp");
            }
            const milb::SweepResult res = milb::run_sweep(spec);
            write_output(sw_out, sw_format == "csv" ? milb::sweep_csv(res)
                                                    : milb::sweep_json(res) + "\n");
            return 0;
        }
        if (app.got_subcommand(oa))
            return cmd_optimal_alpha(oa_args, oa_explain);
        if (app.got_subcommand(ol))
            return cmd_optimal_lp(ol_args);
        if (app.got_subcommand(val))
        {
            const milb::ValidateReport rep = milb::run_validate(val_suite, val_trials, val_seed);
            std::cerr << "# {\"command\":\"validate\",\"suite\":\"" << rep.suite
                      << "\",\"trials\":" << rep.trials << ",\"seed\":" << rep.seed << "}\n";
            for (const auto &c : rep.checks)
                std::cerr << (c.pass ? "PASS " : "FAIL ") << c.suite << "/" << c.name
                          << " observed=" << milb::fmt_double(c.observed)
                          << " expected=" << milb::fmt_double(c.expected)
                          << " band=" << milb::fmt_double(c.band)
                          << (c.note.empty() ? "" : " (" + c.note + ")") << "\n";
            write_output(val_out, milb::report_json(rep) + "\n");
            return rep.all_pass() ? 0 : 1;
        }
        if (app.got_subcommand(pd))
        {
            const milb::PilotMatrix p = milb::gen_mwbe_pilots(pd_k, pd_len);
            const std::string body = "# {\"command\":\"pilot-dump\",\"K\":" + milb::fmt_int(pd_k) +
                                     ",\"len\":" + milb::fmt_int(pd_len) + "}\n" +
                                     milb::pilot_csv(p);
            write_output(pd_out, body);
            return 0;
        }
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
