// SPDX-License-Identifier: Apache-2.0
//
// gratewave: 2D Green's-function MIMO channel simulator for engineered rooms
// Copyright (C) 2026 The gratewave authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include "gratewave/commands.hpp"
#include "gratewave/errors.hpp"
#include "gratewave/greens.hpp"
#include "gratewave/materials.hpp"
#include "gratewave/mimo.hpp"
#include "gratewave/spectrum.hpp"
#include "gratewave/stats.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

using namespace gratewave;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace
{

struct Outcome
{
    bool pass = false;
    std::string detail;
};

struct Criterion
{
    const char *name;
    double budget_s;
    std::function<Outcome()> run;
};

std::string fmt(const char *f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const double kF = 2.4e9;
const double kWl = constants::c0 / kF;

fs::path scratch(const std::string &name)
{
    const fs::path d = fs::temp_directory_path() / ("gratewave_acceptance_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string find_artifact(const RunResult &r, const std::string &suffix)
{
    for (const auto &p : r.artifacts)
        if (p.size() >= suffix.size() && p.compare(p.size() - suffix.size(), suffix.size(), suffix) == 0 &&
            fs::path(p).filename() != "manifest.json")
            return p;
    throw std::runtime_error("artifact with suffix " + suffix + " not found");
}

// 1. Free-space SISO link budget at 15 wavelengths.
Outcome snr_calibration()
{
    const RoomGeometry room{30 * kWl, 30 * kWl, kF};
    const ArrayLayout tx{{5 * kWl, 15 * kWl}, 1, 0.0, 0.0};
    const ArrayLayout rx{{20 * kWl, 15 * kWl}, 1, 0.0, 0.0};
    const PowerBudget budget{1.0, 1e4};
    const ChannelMatrix h = build_channel_matrix(tx, rx, room, FreeSpace{}, {});
    const double snr_db = 10.0 * std::log10(budget.p_tx * std::norm(h(0, 0)) / budget.p_noise);
    const double c = capacity(h, budget).capacity;
    const bool ok = std::abs(snr_db - 12.0) <= 0.3 && std::abs(c - 4.07) <= 0.1;
    return {ok, "SNR " + fmt("%.3f", snr_db) + " dB (12 +/- 0.3), C " + fmt("%.4f", c) + " b/s/Hz (4.07 +/- 0.1)"};
}

// 2. Image series against the cavity eigenfunction expansion.
Outcome pec_oracle()
{
    const RoomGeometry room{3 * kWl, 3 * kWl, kF};
    PathTraceLimits lim;
    lim.artificial_loss = 1e-3;
    lim.max_image_order = 40;
    const Complex k{room.k0(), -room.k0() * lim.artificial_loss};
    const Point src{0.37 * room.length_x, 0.52 * room.length_y};
    const SamplingGrid grid = SamplingGrid::uniform(room, 25);
    const double guard = guard_radius(room);
    double num = 0.0, den = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        const Point p = grid.point(i);
        if (distance(p, src) < guard)
            continue;
        const Complex ref = oracle::cavity_mode_sum(p, src, room.length_x, room.length_y, k, 6000);
        num += std::norm(greens_pec(p, src, room, lim) - ref);
        den += std::norm(ref);
        ++used;
    }
    const double rel_rms = std::sqrt(num / den);
    const double interior_rms = std::sqrt(den / double(used));

    const double eps = 1e-6 * room.length_x;
    double wall_sq = 0.0;
    int wall_n = 0;
    for (int i = 0; i < 25; ++i)
    {
        const double t = (i + 0.5) / 25.0;
        for (Point p : {Point{eps, t * room.length_y}, Point{room.length_x - eps, t * room.length_y},
                        Point{t * room.length_x, eps}, Point{t * room.length_x, room.length_y - eps}})
        {
            wall_sq += std::norm(greens_pec(p, src, room, lim));
            ++wall_n;
        }
    }
    const double wall_ratio = std::sqrt(wall_sq / wall_n) / interior_rms;
    return {rel_rms < 0.02 && wall_ratio <= 0.05,
            "RMS mismatch " + fmt("%.3e", rel_rms) + " (< 2e-2) over " + std::to_string(used) +
                " points, wall residual " + fmt("%.3e", wall_ratio) + " of interior RMS (<= 5e-2)"};
}

// 3. Grating equation and cutoff classification.
Outcome grating_equation()
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> th(-0.5 * std::numbers::pi + 1e-3, 0.5 * std::numbers::pi - 1e-3);
    std::uniform_real_distribution<double> per(0.2, 6.0);
    double worst = 0.0;
    int class_errors = 0;
    for (int trial = 0; trial < 100; ++trial)
    {
        const double ti = th(rng), p = per(rng) * kWl;
        const auto orders = grating_orders(ti, p, kWl);
        std::map<int, double> listed;
        for (const auto &o : orders)
        {
            listed[o.m] = o.theta;
            worst = std::max(worst, std::abs(o.theta - std::asin(std::sin(ti) - o.m * kWl / p)));
        }
        for (int m = -100; m <= 100; ++m)
        {
            const bool propagates = std::abs(std::sin(ti) - m * kWl / p) < 1.0;
            if (propagates != (listed.count(m) == 1))
                ++class_errors;
        }
    }
    const auto sub = grating_orders(0.0, 0.25 * kWl, kWl);
    const bool sub_ok = sub.size() == 1 && sub[0].m == 0;
    return {worst <= 1e-12 && class_errors == 0 && sub_ok,
            "max |angle error| " + fmt("%.2e", worst) + " (<= 1e-12), classification errors " +
                std::to_string(class_errors) + ", p = 0.25 lambda keeps " + std::to_string(sub.size()) +
                " order(s)"};
}

// 4. Water filling against brute-force search and the optimality conditions.
Outcome waterfill_oracle()
{
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> modes(2, 6);
    std::uniform_real_distribution<double> gain_db(-20.0, 20.0);
    const PowerBudget budget{1.0, 1.0};
    double worst_gap = 0.0, worst_kkt = 0.0;
    for (int trial = 0; trial < 1000; ++trial)
    {
        const int n = modes(rng);
        std::vector<double> sv(static_cast<std::size_t>(n)), a(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
        {
            a[std::size_t(i)] = std::pow(10.0, gain_db(rng) / 10.0);
            sv[std::size_t(i)] = std::sqrt(a[std::size_t(i)] * n); // a = P_T sigma^2 / (N_T P_N)
        }
        const WaterfillResult wf = waterfill(sv, budget, n);
        double ref = oracle::waterfill_exchange(a, n);
        if (n <= 3)
            ref = std::max(ref, oracle::waterfill_grid(a, n));
        worst_gap = std::max(worst_gap, std::abs(wf.capacity - ref));

        const double mu = wf.water_level;
        double kkt = 0.0, total = 0.0;
        for (int i = 0; i < n; ++i)
        {
            const double g = wf.gammas[std::size_t(i)], inv = 1.0 / a[std::size_t(i)];
            total += g;
            if (g < 0.0)
                kkt = std::max(kkt, -g);
            else if (g > 0.0)
                kkt = std::max(kkt, std::abs(g + inv - mu) / mu);
            else
                kkt = std::max(kkt, std::max(0.0, mu - inv) / mu);
        }
        kkt = std::max(kkt, std::abs(total - n) / n);
        worst_kkt = std::max(worst_kkt, kkt);
    }
    return {worst_gap < 1e-5 && worst_kkt < 1e-9,
            "max |C - brute force| " + fmt("%.2e", worst_gap) + " bits (< 1e-5), max KKT residual " +
                fmt("%.2e", worst_kkt) + " (< 1e-9) over 1000 cases"};
}

// 5. Slab reflection limits and transfer-matrix agreement.
Outcome slab_limits()
{
    const RoomGeometry room{1.0, 1.0, kF};
    double thin = 0.0, half_wave = 0.0, tm = 0.0;
    DrywallMaterial t;
    t.thickness = 1e-15; // thin-slab residual scales like d / cos^2(theta) near grazing
    DrywallMaterial lossless;
    lossless.loss_tangent = 0.0;
    const DrywallMaterial def;
    for (int k = 0; k < 19; ++k)
    {
        const double th = k * (89.0 / 18.0) * std::numbers::pi / 180.0;
        thin = std::max(thin, std::abs(slab_reflection(th, t, room)));
        const double s = std::sin(th);
        lossless.thickness = std::numbers::pi / (room.k0() * std::sqrt(lossless.eps_real - s * s));
        half_wave = std::max(half_wave, std::abs(slab_reflection(th, lossless, room)));
        tm = std::max(tm, std::abs(slab_reflection(th, def, room) - oracle::slab_transfer_matrix(th, def, kF)));
    }
    return {thin < 1e-10 && half_wave < 1e-10 && tm < 1e-10,
            "thin |G| " + fmt("%.2e", thin) + ", half-wave |G| " + fmt("%.2e", half_wave) +
                ", transfer-matrix gap " + fmt("%.2e", tm) + " (all < 1e-10, 19 angles)"};
}

std::map<std::string, double> compare_walls(int elements)
{
    Scenario sc = default_scenario();
    sc.tx.element_count = elements;
    sc.rx.element_count = elements;
    sc.compare.grid_points = 11;
    const fs::path dir = scratch("compare");
    RunOptions opt;
    opt.out_dir = dir.string();
    opt.scale = 1.0 / 3.0;
    const RunResult r = run_command("compare-walls", sc, opt);
    std::istringstream csv(slurp(find_artifact(r, ".csv")));
    std::string line;
    std::getline(csv, line);
    std::map<std::string, double> out;
    while (std::getline(csv, line))
    {
        std::istringstream ls(line);
        std::string wall, mean;
        std::getline(ls, wall, ',');
        std::getline(ls, mean, ',');
        out[wall] = std::stod(mean);
    }
    fs::remove_all(dir);
    return out;
}

// 6. Mean capacity improvement ordering and MIMO vs SISO spread.
Outcome capacity_ordering()
{
    auto mimo = compare_walls(6);
    auto siso = compare_walls(1);
    const bool order = mimo["pec"] > mimo["grating"] && mimo["grating"] > mimo["drywall"] && mimo["drywall"] > 0.0;
    const double spread_mimo = mimo["pec"] - mimo["drywall"], spread_siso = siso["pec"] - siso["drywall"];
    return {order && spread_mimo > spread_siso,
            "MIMO dC: pec " + fmt("%.3f", mimo["pec"]) + " > grating " + fmt("%.3f", mimo["grating"]) +
                " > drywall " + fmt("%.3f", mimo["drywall"]) + " > 0; spread MIMO " + fmt("%.3f", spread_mimo) +
                " > SISO " + fmt("%.3f", spread_siso)};
}

// 7. Recovery of synthetic fading parameters.
Outcome fading_recovery()
{
    std::string detail;
    bool ok = true;
    std::uint64_t seed = 1000;
    for (double k : {0.5, 1.0, 5.0})
    {
        const auto sel = select_model(rms_normalize(oracle::rician_samples(k, 100000, ++seed)));
        const double err = std::abs(sel.rician.k_factor - k) / k;
        ok &= err <= 0.1 && sel.selected.model == FadingModel::rician;
        detail += "K=" + fmt("%g", k) + "->" + fmt("%.3f", sel.rician.k_factor) + "(" +
                  model_name(sel.selected.model) + ") ";
    }
    for (double q : {0.2, 0.3, 0.6})
    {
        const auto sel = select_model(rms_normalize(oracle::hoyt_samples(q, 100000, ++seed)));
        const double err = std::abs(sel.hoyt.q - q) / q;
        ok &= err <= 0.1 && sel.selected.model == FadingModel::hoyt;
        detail += "q=" + fmt("%g", q) + "->" + fmt("%.3f", sel.hoyt.q) + "(" + model_name(sel.selected.model) +
                  ") ";
    }
    return {ok, detail + "(10% tolerance, family must match)"};
}

json ring_report(const WallModel &wall)
{
    Scenario sc = default_scenario();
    sc.wall = wall;
    sc.fit_stats.room_sizes = {10 * kWl};
    sc.fit_stats.r_min = 3 * kWl;
    sc.fit_stats.r_max = 3.2 * kWl;
    const fs::path dir = scratch("rings");
    RunOptions opt;
    opt.out_dir = dir.string();
    const RunResult r = run_command("fit-stats", sc, opt);
    const json report = json::parse(slurp(find_artifact(r, ".json")));
    fs::remove_all(dir);
    return report;
}

// 8. Model assignment on simulated ring ensembles.
Outcome fading_assignment()
{
    const json free = ring_report(FreeSpace{});
    const json pec = ring_report(PecWalls{});
    const double k = free["rician"]["params"]["K"].get<double>();
    const bool free_ok = free["model"] == "rician" && k > 10.0;
    const double ll_h = pec["loglik_hoyt"].get<double>(), ll_r = pec["loglik_rician"].get<double>();
    const bool pec_ok = pec["model"] == "hoyt" && ll_h > ll_r;
    return {free_ok && pec_ok,
            "free space: " + free["model"].get<std::string>() + " K=" + fmt("%.1f", k) + " (> 10, " +
                std::to_string(free["n_samples"].get<int>()) + " samples); PEC: " + pec["model"].get<std::string>() +
                " q=" + fmt("%.3f", pec["hoyt"]["params"]["q"].get<double>()) + ", loglik Hoyt " +
                fmt("%.1f", ll_h) + " vs Rician " + fmt("%.1f", ll_r)};
}

int spectrum_lobes(const WallModel &wall)
{
    Scenario sc = default_scenario();
    sc.wall = wall;
    const fs::path dir = scratch("spectrum");
    RunOptions opt;
    opt.out_dir = dir.string();
    const RunResult r = run_command("angular-spectrum", sc, opt);
    const int lobes = json::parse(slurp(find_artifact(r, ".json")))["lobes_above_10_percent"].get<int>();
    fs::remove_all(dir);
    return lobes;
}

// 9. Angular spectrum: plane-wave localisation, cylindrical-wave lobes, grating vs drywall richness.
Outcome angular_spectrum_sanity()
{
    const double k0 = 2.0 * std::numbers::pi / kWl;
    const int n = 256, pad = 4;
    int plane_fail = 0;
    for (double deg = -70.0; deg <= 70.0; deg += 10.0)
    {
        const double st = std::sin(deg * std::numbers::pi / 180.0);
        const auto ap = sample_aperture([&](Point p) { return std::exp(Complex{0.0, -k0 * st * p.x}); }, {0.0, 0.0},
                                        {(n - 1) * kWl / 2.0, 0.0}, n, kWl);
        const auto spec = angular_spectrum(ap, kWl, SpectrumWindow::none, pad);
        const auto peak = std::max_element(spec.magnitude.begin(), spec.magnitude.end()) - spec.magnitude.begin();
        const double bin = kWl / (ap.spacing() * n * pad);
        if (std::abs(spec.sin_theta[std::size_t(peak)] - st) > bin)
            ++plane_fail;
    }

    // Line source one wavelength in front of a 30 lambda aperture.
    const Point src{15.0 * kWl, kWl};
    const auto cyl = sample_aperture([&](Point p) { return greens_free_space(p, src, k0); }, {0.0, 0.0},
                                     {30.0 * kWl, 0.0}, n, kWl);
    const int cyl_lobes = count_lobes(angular_spectrum(cyl, kWl, SpectrumWindow::none, pad), 0.1);

    GratingSpec g;
    g.period = 2.0 * kWl;
    const int grating = spectrum_lobes(GratingWalls{g});
    const int drywall = spectrum_lobes(DrywallWalls{});
    return {plane_fail == 0 && cyl_lobes > 1 && grating >= drywall,
            "plane-wave misses " + std::to_string(plane_fail) + "/15; cylindrical-wave lobes " +
                std::to_string(cyl_lobes) + " (> 1); scattered lobes grating " + std::to_string(grating) +
                " >= drywall " + std::to_string(drywall)};
}

// 10. Special functions against series and asymptotic forms.
Outcome special_functions()
{
    double j = 0.0, y = 0.0, i0 = 0.0;
    for (int k = 0; k <= 2000; ++k)
    {
        const double x = 0.01 + (10.0 - 0.01) * k / 2000.0;
        j = std::max(j, std::abs(specfun::bessel_j0(x) - oracle::j0_series(x)));
        y = std::max(y, std::abs(specfun::bessel_y0(x) - oracle::y0_series(x)));
        i0 = std::max(i0, std::abs(std::exp(specfun::log_bessel_i0(x)) - oracle::i0_series(x)));
    }
    // Two-term asymptotic expansion and the standard library, both relative.
    double hank = 0.0;
    for (double x = 100.0 + 1e-3; x <= 2000.0; x *= 1.01)
    {
        const double p = 1.0 - 9.0 / (128.0 * x * x), q = -1.0 / (8.0 * x) + 75.0 / (1024.0 * x * x * x);
        const Complex asym = std::sqrt(2.0 / (std::numbers::pi * x)) * Complex{p, -q} *
                             std::exp(Complex{0.0, -(x - 0.25 * std::numbers::pi)});
        const Complex lib{std::cyl_bessel_j(0.0, x), -std::cyl_neumann(0.0, x)};
        const Complex h = specfun::hankel2_0(x);
        hank = std::max({hank, std::abs(h - asym) / std::abs(asym), std::abs(h - lib) / std::abs(lib)});
    }
    const double xs = specfun::kAsymptoticSwitch, below = std::nextafter(xs, 0.0);
    double cont = std::abs(specfun::bessel_j0(below) - specfun::bessel_j0(xs));
    cont = std::max(cont, std::abs(specfun::bessel_y0(below) - specfun::bessel_y0(xs)));
    cont = std::max(cont, std::abs(specfun::log_bessel_i0(std::nextafter(20.0, 0.0)) - specfun::log_bessel_i0(20.0)));
    return {j < 1e-9 && y < 1e-9 && i0 < 1e-9 && hank < 1e-3 && cont < 1e-9,
            "J0 " + fmt("%.1e", j) + ", Y0 " + fmt("%.1e", y) + ", I0 " + fmt("%.1e", i0) +
                " (< 1e-9 on [0.01, 10]); Hankel asymptotic " + fmt("%.1e", hank) + " (< 1e-3, x > 100); jump " +
                fmt("%.1e", cont) + " (< 1e-9)"};
}

// 11. Byte-identical artifacts for different worker counts.
Outcome determinism()
{
    int compared = 0, mismatched = 0;
    for (const char *wall : {"pec", "grating"})
    {
        Scenario sc = load_scenario(std::string(GRATEWAVE_SOURCE_DIR) + "/configs/mimo_" + wall + ".json");
        sc.compare.grid_points = 5;
        sc.fit_stats.room_sizes = {sc.room.length_x};
        for (const auto &cmd : command_names())
        {
            const fs::path a = scratch("det_a"), b = scratch("det_b");
            RunOptions oa, ob;
            oa.out_dir = a.string();
            oa.exec = {false, 1};
            oa.scale = 1.0 / 3.0;
            ob = oa;
            ob.out_dir = b.string();
            ob.exec = {true, 4};
            const auto ra = run_command(cmd, sc, oa);
            const auto rb = run_command(cmd, sc, ob);
            if (ra.artifacts.size() != rb.artifacts.size())
                ++mismatched;
            for (std::size_t i = 0; i + 1 < std::min(ra.artifacts.size(), rb.artifacts.size()); ++i)
            {
                ++compared;
                if (fs::path(ra.artifacts[i]).filename() != fs::path(rb.artifacts[i]).filename() ||
                    slurp(ra.artifacts[i]) != slurp(rb.artifacts[i]))
                    ++mismatched;
            }
            fs::remove_all(a);
            fs::remove_all(b);
        }
    }
    return {mismatched == 0 && compared > 0,
            std::to_string(compared) + " artifacts compared (1 vs 4 workers, all commands, PEC and grating), " +
                std::to_string(mismatched) + " differ"};
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {"SNR calibration", 1.0, snr_calibration},
        {"PEC oracle equivalence", 30.0, pec_oracle},
        {"Grating equation exactness", 1e9, grating_equation},
        {"Water-filling oracle", 10.0, waterfill_oracle},
        {"Slab reflection limits", 1e9, slab_limits},
        {"Capacity ordering", 600.0, capacity_ordering},
        {"Fading-fit recovery", 30.0, fading_recovery},
        {"Fading-model assignment", 300.0, fading_assignment},
        {"Angular-spectrum sanity", 1e9, angular_spectrum_sanity},
        {"Special functions", 1e9, special_functions},
        {"Determinism", 1e9, determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        const auto &c = criteria[i];
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = c.run();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string timing = fmt("%.2f s", secs);
        if (c.budget_s < 1e8)
        {
            timing += " (budget " + fmt("%g", c.budget_s) + " s)";
            if (secs >= c.budget_s)
            {
                o.pass = false;
                o.detail += "; runtime over budget";
            }
        }
        std::printf("%s %2zu %s: %s [%s]\n", o.pass ? "PASS" : "FAIL", i + 1, c.name, o.detail.c_str(),
                    timing.c_str());
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
