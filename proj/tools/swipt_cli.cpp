// SPDX-License-Identifier: Apache-2.0
//
// Batch driver: each subcommand runs one Monte Carlo experiment and writes a
// CSV table to --out (stdout by default).

#include "swipt/error.hpp"
#include "swipt/experiments.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace swipt;

struct Options {
    int users = 5;
    int tx = 3;
    int rx = 3;
    double snr_db = 10.0;
    std::uint64_t slots = 0;  // 0: per-subcommand default
    std::uint64_t seed = 1;
    std::string alpha;
    std::string id_users;
    std::string eh_users;
    std::string mode = "inst";
    std::string out;
    int restarts = 8;
    double leak_tol = 1e-8;
    int ia_max_iters = 5000;
    std::uint64_t calib_slots = 5000;
    int alpha_points = 21;
    int bound_user = 0;
    bool per_user = false;
    bool serial = false;
};

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what)
{
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::stringstream one(item);
        T value{};
        if (!(one >> value) || !(one >> std::ws).eof())
            throw ConfigError(std::string("cannot parse ") + what + " value '" + item + "'");
        out.push_back(value);
    }
    if (out.empty())
        throw ConfigError(std::string("empty ") + what + " list");
    return out;
}

ExperimentSpec make_spec(const Options& o, const std::string& name)
{
    ExperimentSpec spec;
    spec.name = name;
    spec.cfg.users = o.users;
    spec.cfg.tx_antennas = o.tx;
    spec.cfg.rx_antennas = o.rx;
    spec.snr_db = o.snr_db;
    spec.seed = o.seed;
    spec.slots = o.slots ? o.slots : (name == "bounds" ? 10000 : 5000);
    spec.calibration_slots = o.calib_slots;
    spec.bound_user = o.bound_user;
    spec.ia.leak_tol = o.leak_tol;
    spec.ia.max_iters = o.ia_max_iters;
    spec.pa.restarts = o.restarts;
    spec.policy = o.serial ? ParallelPolicy::serial : ParallelPolicy::openmp;
    if (o.mode == "inst")
        spec.mode = PowerMode::instantaneous;
    else if (o.mode == "expected")
        spec.mode = PowerMode::expected;
    else
        throw ConfigError("mode must be inst or expected");

    if (!o.alpha.empty()) {
        const auto a = parse_list<double>(o.alpha, "alpha");
        const bool profile = name == "pso-pa" || (name == "pso" && o.per_user);
        if (profile)
            spec.user_alpha = a.size() == 1 ? std::vector<double>(static_cast<std::size_t>(o.users), a[0]) : a;
        else
            spec.alphas = a;
    } else if (name == "region" || name == "pso") {
        spec.alphas = default_alpha_grid(o.alpha_points);
    }
    if (!o.id_users.empty() && !o.eh_users.empty())
        throw ConfigError("give either --id-users or --eh-users, not both");
    if (!o.id_users.empty())
        spec.id_users = parse_list<int>(o.id_users, "id-users");
    if (!o.eh_users.empty())
        for (int l : parse_list<int>(o.eh_users, "eh-users"))
            spec.id_users.push_back(o.users - l);
    spec.validate();
    return spec;
}

Table calibrate_table(const ExperimentSpec& spec, const Calibration& c)
{
    Table t;
    t.header = {"snr_db", "p_t", "mean_gain", "slots", "unconverged"};
    t.rows.push_back({spec.snr_db, c.p_t, c.mean_gain, static_cast<long long>(c.slots),
                      static_cast<long long>(c.unconverged)});
    return t;
}

Table run(const Options& o, const std::string& name)
{
    ExperimentSpec spec = make_spec(o, name);
    if (name == "calibrate") {
        const std::uint64_t n = o.slots ? o.slots : spec.calibration_slots;
        return calibrate_table(spec, calibrate_power(spec.cfg, spec.snr_db, spec.seed, n, spec.ia, spec.policy));
    }
    const Calibration c =
        calibrate_power(spec.cfg, spec.snr_db, spec.seed, spec.calibration_slots, spec.ia, spec.policy);
    spec.cfg.p_t = c.p_t;
    const auto slots = build_slots(spec.cfg, spec.seed, spec.slots, spec.ia, spec.policy);
    if (name == "bounds")
        return run_bounds_experiment(spec, slots);
    if (name == "selection")
        return run_selection_sweep(spec, slots);
    if (name == "pso")
        return o.per_user ? run_pso_user_profile(spec, slots) : run_pso_alpha_sweep(spec, slots);
    if (name == "pso-pa")
        return run_pa_profile(spec, slots);
    return run_power_rate_region(spec, slots);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"SWIPT interference-alignment Monte Carlo experiments"};
    app.set_config("--config", "", "flat key=value file; command-line flags take precedence");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1, 1);

    Options o;
    app.add_option("--users", o.users, "number of users K")->capture_default_str();
    app.add_option("--tx-antennas", o.tx, "transmit antennas M")->capture_default_str();
    app.add_option("--rx-antennas", o.rx, "receive antennas N")->capture_default_str();
    app.add_option("--snr-db", o.snr_db, "target average received SNR in dB")->capture_default_str();
    app.add_option("--slots", o.slots, "Monte Carlo slots (default 10000 for bounds, 5000 otherwise)");
    app.add_option("--seed", o.seed, "experiment seed")->capture_default_str();
    app.add_option("--alpha", o.alpha, "alpha value or comma list");
    app.add_option("--id-users", o.id_users, "dedicated ID receiver count(s), comma list");
    app.add_option("--eh-users", o.eh_users, "dedicated EH receiver count(s), comma list");
    app.add_option("--mode", o.mode, "harvested power: inst or expected")
        ->check(CLI::IsMember({"inst", "expected"}))
        ->capture_default_str();
    app.add_option("--out", o.out, "output CSV path (stdout when empty)");
    app.add_option("--restarts", o.restarts, "power-allocation starts per slot")->capture_default_str();
    app.add_option("--leak-tol", o.leak_tol, "IA leakage tolerance")->capture_default_str();
    app.add_option("--ia-max-iters", o.ia_max_iters, "IA iteration cap")->capture_default_str();
    app.add_option("--calib-slots", o.calib_slots, "slots used to calibrate P_t")->capture_default_str();
    app.add_option("--alpha-points", o.alpha_points, "uniform alpha grid size when --alpha is absent")
        ->capture_default_str();
    app.add_option("--bound-user", o.bound_user, "receiver reported by bounds (0-based)")->capture_default_str();
    app.add_flag("--per-user", o.per_user, "pso: treat --alpha as a per-user profile");
    app.add_flag("--serial", o.serial, "run the serial reference kernels");

    app.add_subcommand("calibrate", "estimate P_t for the target SNR")->fallthrough();
    app.add_subcommand("bounds", "harvested power against its upper bound")->fallthrough();
    app.add_subcommand("selection", "RRS and PRRS over dedicated ID counts")->fallthrough();
    app.add_subcommand("pso", "closed-form power splitting over alpha")->fallthrough();
    app.add_subcommand("pso-pa", "joint splitting and power allocation, per user")->fallthrough();
    app.add_subcommand("region", "power-rate region of all four methods")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        const Table table = run(o, name);
        if (o.out.empty()) {
            write_csv(std::cout, table);
            std::cout.flush();
            if (!std::cout)
                throw Error("failed writing to stdout");
        } else {
            std::ofstream file(o.out, std::ios::binary);
            if (!file)
                throw Error("cannot open " + o.out + " for writing");
            write_csv(file, table);
            file.close();
            if (!file)
                throw Error("failed writing " + o.out);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "swipt: %s: %s\n", name.c_str(), e.what());
        return 1;
    }
    return 0;
}
