// SPDX-License-Identifier: Apache-2.0
//
// milb: mutual-information lower bounds for pilot-limited multi-user MIMO uplinks
// Copyright (C) 2026 milb authors

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "allocation.hpp"
#include "mutual_info.hpp"
#include "rng.hpp"
#include "serialize.hpp"
#include "simulator.hpp"
#include "system_config.hpp"

namespace milb
{

enum class SweepAxis
{
    power_db,
    users
};

enum class SchemeSelect
{
    sp,
    rp,
    both
};

// Declarative sweep over transmit power (dB, fixed K) or user count (fixed
// power). dB is relative to the noise floor: P_db = 10 log10(P / sigma2).
struct SweepSpec
{
    SchemeSelect scheme = SchemeSelect::both;
    SweepAxis axis = SweepAxis::power_db;
    int K = 40;       // fixed user count (power axis)
    double P_db = 20; // fixed power (users axis)
    int L = 30;
    int N = 60;
    double sigma2 = 1.0;
    double start = 0.0;
    double stop = 40.0;
    double step = 2.0;
    bool optimal = true; // re-solve alpha*/Lp* per point; else use alpha/Lp below
    double alpha = 0.5;
    int Lp = 1;
    bool per_channel_use = false; // divide the per-block values by L
    long trials = 0;              // 0: closed form; > 0: Monte Carlo rows
    std::uint64_t seed = 1;
};

struct SweepRow
{
    Scheme scheme = Scheme::sp;
    int K = 0, L = 0, N = 0;
    double P_db = 0.0;
    double alpha_or_lp = 0.0;
    double rho = 0.0;
    double milb_nats = 0.0;
    double milb_bits = 0.0;
    std::string method = "closed-form";
    double stderr_ = 0.0;
    long trials = 0;
    std::uint64_t seed = 0;
};

struct SweepResult
{
    SweepSpec spec;
    std::vector<std::string> warnings; // emitted as comment lines, run proceeds
    std::vector<std::string> rejected; // axis points dropped up front, with reason
    std::vector<SweepRow> rows;
};

inline double db_to_linear(double p_db, double sigma2)
{
    return sigma2 * std::pow(10.0, p_db / 10.0);
}

inline double linear_to_db(double P, double sigma2)
{
    return 10.0 * std::log10(P / sigma2);
}

namespace detail
{

inline std::vector<double> axis_values(const SweepSpec &spec)
{
    if (!(spec.step > 0.0))
        throw std::invalid_argument("sweep: step must be > 0");
    if (spec.stop < spec.start)
        throw std::invalid_argument("sweep: stop must be >= start");
    std::vector<double> vals;
    for (int i = 0;; ++i)
    {
        const double v = spec.start + i * spec.step;
        if (v > spec.stop + 1e-9 * spec.step)
            break;
        vals.push_back(spec.axis == SweepAxis::users ? std::round(v) : v);
    }
    return vals;
}

} // namespace detail

// Resolved-spec echo, embedded in every output (comment lines for CSV, the
// "config" object for JSON).
inline std::string sweep_spec_json(const SweepSpec &spec)
{
    std::string s = "{";
    s += "\"scheme\":" + json_quote(spec.scheme == SchemeSelect::both
                                        ? "both"
                                        : scheme_name(spec.scheme == SchemeSelect::sp ? Scheme::sp
                                                                                      : Scheme::rp));
    s += ",\"axis\":" + json_quote(spec.axis == SweepAxis::power_db ? "power-db" : "users");
    if (spec.axis == SweepAxis::power_db)
        s += ",\"K\":" + fmt_int(spec.K);
    else
        s += ",\"P_db\":" + fmt_double(spec.P_db);
    s += ",\"L\":" + fmt_int(spec.L);
    s += ",\"N\":" + fmt_int(spec.N);
    s += ",\"sigma2\":" + fmt_double(spec.sigma2);
    s += ",\"range\":{\"start\":" + fmt_double(spec.start) + ",\"stop\":" + fmt_double(spec.stop) +
         ",\"step\":" + fmt_double(spec.step) + "}";
    if (spec.optimal)
        s += ",\"allocation\":\"optimal\"";
    else
    {
        s += ",\"allocation\":\"fixed\"";
        if (spec.scheme != SchemeSelect::rp)
            s += ",\"alpha\":" + fmt_double(spec.alpha);
        if (spec.scheme != SchemeSelect::sp)
            s += ",\"Lp\":" + fmt_int(spec.Lp);
    }
    s += ",\"normalization\":";
    s += spec.per_channel_use ? "\"per-channel-use\"" : "\"per-block\"";
    s += ",\"trials\":" + fmt_int(spec.trials);
    s += ",\"seed\":" + fmt_uint(spec.seed);
    s += "}";
    return s;
}

// Evaluates the sweep. Power-axis points share a fixed K; a K < L there is a
// warning (the closed forms are total in K) and the run proceeds. Users-axis
// points with K < L are rejected up front with a listing; an empty remainder
// is a usage error. N < L is always a hard error.
inline SweepResult run_sweep(const SweepSpec &spec)
{
    if (spec.L < 1)
        throw std::invalid_argument("sweep: L must be >= 1");
    if (spec.N < spec.L)
        throw std::invalid_argument("sweep: N must be >= L");
    if (!(spec.sigma2 > 0.0))
        throw std::invalid_argument("sweep: sigma2 must be > 0");

    SweepResult res;
    res.spec = spec;

    std::vector<double> vals = detail::axis_values(spec);
    if (spec.axis == SweepAxis::users)
    {
        std::vector<double> kept;
        for (double v : vals)
        {
            const int k = static_cast<int>(v);
            if (k < spec.L)
                res.rejected.push_back("K=" + fmt_int(k) + " rejected: K >= L required (L=" +
                                       fmt_int(spec.L) + ")");
            else
                kept.push_back(v);
        }
        if (kept.empty())
        {
            std::string msg = "sweep: every axis point rejected:";
            for (const auto &r : res.rejected)
                msg += "\n  " + r;
            throw std::invalid_argument(msg);
        }
        vals = std::move(kept);
    }
    else if (spec.K < spec.L)
    {
        res.warnings.push_back("K=" + fmt_int(spec.K) + " < L=" + fmt_int(spec.L) +
                               ": outside the massive-connectivity premise; closed forms are "
                               "formal extensions");
    }

    std::vector<Scheme> schemes;
    if (spec.scheme != SchemeSelect::rp)
        schemes.push_back(Scheme::sp);
    if (spec.scheme != SchemeSelect::sp)
        schemes.push_back(Scheme::rp);

    std::uint64_t row_idx = 0;
    for (Scheme sc : schemes)
        for (double v : vals)
        {
            SystemConfig cfg;
            cfg.K = spec.axis == SweepAxis::users ? static_cast<int>(v) : spec.K;
            cfg.L = spec.L;
            cfg.N = spec.N;
            cfg.sigma2 = spec.sigma2;
            cfg.P = db_to_linear(spec.axis == SweepAxis::power_db ? v : spec.P_db, spec.sigma2);
            cfg.scheme = sc;

            SweepRow row;
            row.scheme = sc;
            row.K = cfg.K;
            row.L = cfg.L;
            row.N = cfg.N;
            row.P_db = linear_to_db(cfg.P, cfg.sigma2);

            MilbPoint pt;
            if (sc == Scheme::sp)
            {
                cfg.alpha = spec.optimal
                                ? alpha_search(cfg.P, cfg.K, cfg.L, cfg.sigma2).alpha_star
                                : spec.alpha;
                pt = milb_sp(cfg);
                row.alpha_or_lp = cfg.alpha;
            }
            else
            {
                if (spec.optimal)
                {
                    LpSearch ls = optimal_lp(cfg.P, cfg.K, cfg.L, cfg.N, cfg.sigma2);
                    cfg.Lp = ls.lp_star;
                    pt = ls.best;
                }
                else
                {
                    cfg.Lp = spec.Lp;
                    pt = milb_rp(cfg);
                }
                row.alpha_or_lp = cfg.Lp;
            }
            row.rho = pt.rho;
            row.milb_nats = pt.milb_nats;
            row.milb_bits = pt.milb_bits;
            row.seed = spec.seed;

            if (spec.trials > 0)
            {
                const std::uint64_t point_seed = trial_seed(spec.seed, row_idx);
                const TrialStats st =
                    mc_milb(cfg, spec.trials, point_seed, McMode::gaussian_equivalent);
                row.milb_nats = st.mean;
                row.milb_bits = st.mean / M_LN2;
                row.method = "monte-carlo";
                row.stderr_ = st.stderr_;
                row.trials = spec.trials;
                row.seed = point_seed;
            }
            if (spec.per_channel_use)
            {
                row.milb_nats /= cfg.L;
                row.milb_bits /= cfg.L;
                row.stderr_ /= cfg.L;
            }
            res.rows.push_back(row);
            ++row_idx;
        }
    return res;
}

inline std::string sweep_csv(const SweepResult &res)
{
    std::string out = "# " + sweep_spec_json(res.spec) + "\n";
    for (const auto &w : res.warnings)
        out += "# warning: " + w + "\n";
    for (const auto &r : res.rejected)
        out += "# rejected: " + r + "\n";
    out += "scheme,K,L,N,P_db,alpha_or_Lp,rho,milb_nats,milb_bits,method,stderr,trials,seed\n";
    for (const auto &row : res.rows)
    {
        out += scheme_name(row.scheme);
        out += ',' + fmt_int(row.K) + ',' + fmt_int(row.L) + ',' + fmt_int(row.N);
        out += ',' + fmt_double(row.P_db);
        out += ',' + (row.scheme == Scheme::rp ? fmt_int(static_cast<long long>(row.alpha_or_lp))
                                               : fmt_double(row.alpha_or_lp));
        out += ',' + fmt_double(row.rho);
        out += ',' + fmt_double(row.milb_nats) + ',' + fmt_double(row.milb_bits);
        out += ',' + row.method;
        out += ',' + fmt_double(row.stderr_) + ',' + fmt_int(row.trials) + ',' + fmt_uint(row.seed);
        out += '\n';
    }
    return out;
}

inline std::string sweep_json(const SweepResult &res)
{
    std::string out = "{\"config\":" + sweep_spec_json(res.spec);
    out += ",\"warnings\":[";
    for (std::size_t i = 0; i < res.warnings.size(); ++i)
        out += (i ? "," : "") + json_quote(res.warnings[i]);
    out += "],\"rejected\":[";
    for (std::size_t i = 0; i < res.rejected.size(); ++i)
        out += (i ? "," : "") + json_quote(res.rejected[i]);
    out += "],\"rows\":[";
    for (std::size_t i = 0; i < res.rows.size(); ++i)
    {
        const auto &row = res.rows[i];
        out += i ? "," : "";
        out += "{\"scheme\":" + json_quote(scheme_name(row.scheme));
        out += ",\"K\":" + fmt_int(row.K) + ",\"L\":" + fmt_int(row.L) +
               ",\"N\":" + fmt_int(row.N);
        out += ",\"P_db\":" + fmt_double(row.P_db);
        out += ",\"alpha_or_Lp\":";
        out += row.scheme == Scheme::rp ? fmt_int(static_cast<long long>(row.alpha_or_lp))
                                        : fmt_double(row.alpha_or_lp);
        out += ",\"rho\":" + fmt_double(row.rho);
        out += ",\"milb_nats\":" + fmt_double(row.milb_nats);
        out += ",\"milb_bits\":" + fmt_double(row.milb_bits);
        out += ",\"method\":" + json_quote(row.method);
        out += ",\"stderr\":" + fmt_double(row.stderr_);
        out += ",\"trials\":" + fmt_int(row.trials);
        out += ",\"seed\":" + fmt_uint(row.seed) + "}";
    }
    out += "]}";
    return out;
}

} // namespace milb
