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

#include "gratewave/commands.hpp"
#include "gratewave/beam_trace.hpp"
#include "gratewave/errors.hpp"
#include "gratewave/io.hpp"
#include "gratewave/stats.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace gratewave
{
namespace
{

using json = nlohmann::json;
using io::format_number;
namespace fs = std::filesystem;

// Tracks written files so a failed run can remove them.
class Artifacts
{
public:
    Artifacts(std::string dir, std::string command, std::string hash)
        : dir_(std::move(dir)), command_(std::move(command)), hash_(std::move(hash))
    {
    }

    std::string path(const std::string &label, const std::string &ext) const
    {
        return (fs::path(dir_) / (command_ + "-" + label + "-" + hash_ + "." + ext)).string();
    }

    void text(const std::string &label, const std::string &ext, const std::string &content)
    {
        const std::string p = path(label, ext);
        written_.push_back(p);
        io::write_text(p, content);
    }

    void pgm(const std::string &label, const io::ScalarImage &image, json sidecar)
    {
        const std::string p = path(label, "pgm");
        written_.push_back(p);
        const io::PgmScaling sc = io::write_pgm16(p, image);
        sidecar["width"] = image.width;
        sidecar["height"] = image.height;
        sidecar["min"] = sc.min;
        sidecar["max"] = sc.max;
        sidecar["levels"] = "masked -> 0, min -> 1, max -> 65535, linear";
        sidecar["row_order"] = "first row is the largest y";
        text(label, "pgm.json", sidecar.dump(2) + "\n");
    }

    void manifest(const std::string &content)
    {
        const std::string p = (fs::path(dir_) / "manifest.json").string();
        written_.push_back(p);
        io::write_text(p, content);
    }

    void remove_all() noexcept
    {
        for (const auto &p : written_)
        {
            std::error_code ec;
            fs::remove(p, ec);
        }
        written_.clear();
    }

    const std::vector<std::string> &written() const { return written_; }

private:
    std::string dir_, command_, hash_;
    std::vector<std::string> written_;
};

struct Timer
{
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
};

struct Context
{
    const Scenario &sc;
    const RunOptions &opt;
    Artifacts &out;
    json &summary; // command-specific manifest entries
};

void note(const RunOptions &opt, const std::string &msg)
{
    if (opt.log)
        *opt.log << msg << '\n';
}

GreensEvaluator tx_evaluator(const Scenario &sc, const WallModel &wall)
{
    return GreensEvaluator(sc.room, wall, sc.limits, sc.tx.element_positions());
}

DrywallMaterial scenario_material(const Scenario &sc)
{
    if (const auto *d = std::get_if<DrywallWalls>(&sc.wall))
        return d->material;
    if (const auto *g = std::get_if<GratingWalls>(&sc.wall))
        return g->spec.dielectric;
    return {};
}

GratingSpec scenario_grating(const Scenario &sc)
{
    if (const auto *g = std::get_if<GratingWalls>(&sc.wall))
        return g->spec;
    GratingSpec g;
    g.period = 2.0 * sc.wavelength();
    g.dielectric = scenario_material(sc);
    return g;
}

io::ScalarImage image_of(const SamplingGrid &grid, std::vector<double> values, std::vector<std::uint8_t> masked)
{
    return {grid.nx, grid.ny, std::move(values), std::move(masked)};
}

std::string field_csv(const FieldGrid &f)
{
    std::ostringstream os;
    os << "x_m,y_m,re,im,masked\n";
    for (std::size_t i = 0; i < f.values.size(); ++i)
    {
        const Point p = f.grid.point(i);
        os << format_number(p.x) << ',' << format_number(p.y) << ',' << format_number(f.values[i].real()) << ','
           << format_number(f.values[i].imag()) << ',' << int(f.masked[i]) << '\n';
    }
    return os.str();
}

void write_field(Context &ctx, const std::string &label, const FieldGrid &f)
{
    ctx.out.text(label, "csv", field_csv(f));
    std::vector<double> db(f.values.size(), 0.0);
    std::vector<std::uint8_t> masked = f.masked;
    for (std::size_t i = 0; i < db.size(); ++i)
    {
        const double mag = std::abs(f.values[i]);
        if (mag > 0.0)
            db[i] = 20.0 * std::log10(mag);
        else
            masked[i] = 1;
    }
    ctx.out.pgm(label, image_of(f.grid, db, masked), {{"quantity", "|E_z|"}, {"units", "dB(V/m)"}});
}

std::string capacity_csv(const CapacityGrid &c)
{
    std::ostringstream os;
    os << "x_m,y_m,capacity_bps_hz,masked\n";
    for (std::size_t i = 0; i < c.values.size(); ++i)
    {
        const Point p = c.grid.point(i);
        os << format_number(p.x) << ',' << format_number(p.y) << ',' << format_number(c.values[i]) << ','
           << int(c.masked[i]) << '\n';
    }
    return os.str();
}

SamplingGrid receiver_grid(const Scenario &sc)
{
    if (sc.compare.grid_points > 0)
        return SamplingGrid::uniform(sc.room, sc.compare.grid_points);
    return SamplingGrid::covering(sc.room, sc.grid_spacing);
}

void cmd_field_map(Context &ctx)
{
    const Scenario &sc = ctx.sc;
    const SamplingGrid grid = SamplingGrid::covering(sc.room, sc.grid_spacing);
    const auto weights = sc.tx_weights();
    const FieldGrid total = field_map(tx_evaluator(sc, sc.wall), weights, grid, ctx.opt.exec);
    const std::string tag = wall_tag(sc.wall);
    write_field(ctx, tag, total);
    if (!std::holds_alternative<FreeSpace>(sc.wall))
    {
        const FieldGrid incident = field_map(tx_evaluator(sc, FreeSpace{}), weights, grid, ctx.opt.exec);
        write_field(ctx, tag + "-scattered", scattered_field(total, incident));
    }
    ctx.summary["grid"] = {{"nx", grid.nx}, {"ny", grid.ny}, {"spacing_m", grid.spacing}};
}

void cmd_capacity_map(Context &ctx)
{
    const Scenario &sc = ctx.sc;
    const SamplingGrid grid = SamplingGrid::covering(sc.room, sc.grid_spacing);
    const CapacityGrid c = capacity_map(tx_evaluator(sc, sc.wall), sc.rx, sc.budget, grid, ctx.opt.exec);
    const std::string tag = wall_tag(sc.wall);
    ctx.out.text(tag, "csv", capacity_csv(c));
    ctx.out.pgm(tag, image_of(grid, c.values, c.masked), {{"quantity", "capacity"}, {"units", "bit/s/Hz"}});
    ctx.summary["grid"] = {{"nx", grid.nx}, {"ny", grid.ny}, {"spacing_m", grid.spacing}};
}

void cmd_capacity_vs_distance(Context &ctx)
{
    const Scenario &sc = ctx.sc;
    const auto curve = capacity_vs_distance(tx_evaluator(sc, sc.wall), sc.tx.center, sc.rx, sc.budget,
                                            sc.distance_sweep.theta_tr, sc.distance_sweep.distances, ctx.opt.exec);
    std::ostringstream os;
    os << "distance_m,distance_lambda,capacity_bps_hz,masked\n";
    for (const auto &s : curve)
        os << format_number(s.distance) << ',' << format_number(s.distance / sc.wavelength()) << ','
           << format_number(s.capacity) << ',' << int(s.masked) << '\n';
    ctx.out.text(wall_tag(sc.wall), "csv", os.str());
}

void cmd_modes(Context &ctx)
{
    const Scenario &sc = ctx.sc;
    const auto modes = mode_analysis(tx_evaluator(sc, sc.wall), sc.tx.center, sc.rx, sc.budget,
                                     sc.distance_sweep.theta_tr, sc.distance_sweep.distances, ctx.opt.exec);
    json arr = json::array();
    for (const auto &m : modes)
    {
        if (m.masked)
            continue;
        arr.push_back({{"distance", m.distance},
                       {"sigmas", m.normalized_sigmas},
                       {"gammas", m.gammas},
                       {"useful_modes", m.useful_modes}});
    }
    ctx.out.text(wall_tag(sc.wall), "json", arr.dump(2) + "\n");
}

// Envelope samples drawn from the configured synthetic model.
std::vector<double> synthetic_samples(const FitStatsOptions &f, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> out(std::size_t(f.synthetic_samples));
    if (f.synthetic_model == "rician")
    {
        // Unit mean power: s^2 + 2 sigma^2 = 1.
        const double k = f.synthetic_parameter;
        const double s = std::sqrt(k / (k + 1.0));
        const double sigma = std::sqrt(0.5 / (k + 1.0));
        for (double &v : out)
        {
            const double i = s + sigma * normal(rng);
            const double q = sigma * normal(rng);
            v = std::hypot(i, q);
        }
    }
    else
    {
        const double q = f.synthetic_parameter;
        const double sx = std::sqrt(1.0 / (1.0 + q * q));
        const double sy = q * sx;
        for (double &v : out)
        {
            const double x = sx * normal(rng);
            const double y = sy * normal(rng);
            v = std::hypot(x, y);
        }
    }
    return out;
}

void cmd_fit_stats(Context &ctx)
{
    const Scenario &sc = ctx.sc;
    const FitStatsOptions &f = sc.fit_stats;
    EnvelopeEnsemble ens;
    json rings = json::array();
    if (!f.synthetic_model.empty())
    {
        ens = rms_normalize(synthetic_samples(f, sc.seed));
        ens.wall = "synthetic-" + f.synthetic_model;
    }
    else
    {
        std::vector<EnvelopeEnsemble> parts;
        for (double size : f.room_sizes)
        {
            RoomGeometry room{size, size, sc.room.frequency};
            const Point center{size / 6.0, size / 2.0};
            const GreensEvaluator eval(room, sc.wall, sc.limits, {center});
            const long half = long(std::ceil(f.r_max / f.grid_spacing));
            const SamplingGrid grid{center - Point{double(half) * f.grid_spacing, double(half) * f.grid_spacing},
                                    f.grid_spacing, int(2 * half + 1), int(2 * half + 1)};
            auto in_ring = [&](Point p) {
                const double r = distance(p, center);
                return r >= f.r_min && r <= f.r_max;
            };
            const FieldGrid field = field_map(eval, {Complex{1.0, 0.0}}, grid, ctx.opt.exec, in_ring);
            EnvelopeEnsemble part = rms_normalize(ring_ensemble(field, center, f.r_min, f.r_max));
            part.r_min = f.r_min;
            part.r_max = f.r_max;
            part.center = center;
            part.wall = wall_tag(sc.wall);
            rings.push_back({{"room_size_m", size}, {"center", {center.x, center.y}}, {"samples", part.samples.size()}});
            parts.push_back(std::move(part));
        }
        ens = pool_ensembles(parts);
    }

    const ModelSelection sel = select_model(ens);
    const EmpiricalPdf pdf = empirical_pdf(ens, f.bins);
    auto fit_json = [](const FadingFit &fit) {
        json j = {{"model", model_name(fit.model)},
                  {"log_likelihood", fit.log_likelihood},
                  {"bounded", fit.bounded},
                  {"sweeps", fit.sweeps}};
        if (fit.model == FadingModel::rician)
            j["params"] = {{"s", fit.s}, {"sigma", fit.sigma}, {"K", fit.k_factor}};
        else
            j["params"] = {{"q", fit.q}, {"omega", fit.omega}};
        return j;
    };
    json report = {{"wall", ens.wall},
                   {"model", model_name(sel.selected.model)},
                   {"params", fit_json(sel.selected)["params"]},
                   {"K_or_q", sel.selected.derived()},
                   {"loglik_rician", sel.rician.log_likelihood},
                   {"loglik_hoyt", sel.hoyt.log_likelihood},
                   {"n_samples", ens.samples.size()},
                   {"bins", pdf.bin_count},
                   {"freedman_diaconis_bins", pdf.freedman_diaconis_bins},
                   {"rician", fit_json(sel.rician)},
                   {"hoyt", fit_json(sel.hoyt)},
                   {"rings", rings}};
    const std::string label = f.synthetic_model.empty() ? wall_tag(sc.wall) : ens.wall;
    ctx.out.text(label, "json", report.dump(2) + "\n");

    std::ostringstream os;
    os << "bin_left,bin_right,density\n";
    for (int j = 0; j < pdf.bin_count; ++j)
        os << format_number(pdf.bin_edges[j]) << ',' << format_number(pdf.bin_edges[j + 1]) << ','
           << format_number(pdf.densities[j]) << '\n';
    ctx.out.text(label, "csv", os.str());
}

// Line parallel to `side`, `offset` in front of it, inset by `offset` at both ends.
std::pair<Point, Point> aperture_line(const RoomGeometry &room, WallSide side, double offset)
{
    const WallLine w = wall_lines(room)[std::size_t(side)];
    const Point shift = offset * w.inward_normal;
    return {w.origin + shift + offset * w.tangent, w.origin + shift + (w.length - offset) * w.tangent};
}

void cmd_angular_spectrum(Context &ctx)
{
    const Scenario &sc = ctx.sc;
    const SpectrumOptions &o = sc.spectrum;
    const auto [start, end] = aperture_line(sc.room, o.wall, o.offset);
    ApertureSampling ap = sample_aperture([](Point) { return Complex{}; }, start, end, o.samples, sc.wavelength());

    const GreensEvaluator total = tx_evaluator(sc, sc.wall);
    const GreensEvaluator incident = tx_evaluator(sc, FreeSpace{});
    const auto weights = sc.tx_weights();
    const Complex scale = efield_factor(sc.room);
    sweep(ap.samples.size(), ctx.opt.exec, [&](std::size_t i) {
        const Point p = ap.position(int(i));
        Complex acc{};
        for (std::size_t j = 0; j < weights.size(); ++j)
            acc += weights[j] * (total.green(p, j) - incident.green(p, j));
        ap.samples[i] = scale * acc;
    });

    const AngularSpectrum spec = angular_spectrum(ap, sc.wavelength(), o.window, o.zero_pad);
    std::ostringstream os;
    os << "sin_theta,magnitude\n";
    for (std::size_t i = 0; i < spec.sin_theta.size(); ++i)
        os << format_number(spec.sin_theta[i]) << ',' << format_number(spec.magnitude[i]) << '\n';
    const std::string tag = wall_tag(sc.wall);
    ctx.out.text(tag, "csv", os.str());
    const json meta = {{"aperture_start", {start.x, start.y}},
                       {"aperture_end", {end.x, end.y}},
                       {"wall", wall_side_name(o.wall)},
                       {"samples", o.samples},
                       {"spacing_m", ap.spacing()},
                       {"window", o.window == SpectrumWindow::hann ? "hann" : "none"},
                       {"zero_pad", o.zero_pad},
                       {"field", "scattered (total minus free space)"},
                       {"lobes_above_10_percent", count_lobes(spec, 0.1)}};
    ctx.out.text(tag, "json", meta.dump(2) + "\n");
}

void cmd_compare_walls(Context &ctx)
{
    const Scenario &sc = ctx.sc;
    const SamplingGrid grid = receiver_grid(sc);
    const CapacityGrid fs = capacity_map(tx_evaluator(sc, FreeSpace{}), sc.rx, sc.budget, grid, ctx.opt.exec);
    const std::vector<std::pair<std::string, WallModel>> walls = {
        {"drywall", DrywallWalls{scenario_material(sc)}},
        {"grating", GratingWalls{scenario_grating(sc)}},
        {"pec", PecWalls{}},
    };
    std::ostringstream os;
    os << "wall,mean_delta_c,count\n";
    json bars = json::array();
    for (const auto &[name, wall] : walls)
    {
        note(ctx.opt, "compare-walls: " + name);
        const CapacityGrid c = capacity_map(tx_evaluator(sc, wall), sc.rx, sc.budget, grid, ctx.opt.exec);
        const CapacityImprovement d = capacity_improvement(c, fs);
        os << name << ',' << format_number(d.mean) << ',' << d.count << '\n';
        bars.push_back({{"wall", name}, {"mean_delta_c", d.mean}, {"count", d.count}});
    }
    ctx.out.text("all", "csv", os.str());
    ctx.summary["grid"] = {{"nx", grid.nx}, {"ny", grid.ny}, {"spacing_m", grid.spacing}};
    ctx.summary["mean_delta_c"] = bars;
}

void cmd_period_sweep(Context &ctx)
{
    const Scenario &sc = ctx.sc;
    const SamplingGrid grid = receiver_grid(sc);
    const CapacityGrid base =
        capacity_map(tx_evaluator(sc, DrywallWalls{scenario_material(sc)}), sc.rx, sc.budget, grid, ctx.opt.exec);
    std::ostringstream os;
    os << "period_m,period_lambda,mean_delta_c,count\n";
    for (double p : sc.periods)
    {
        note(ctx.opt, "period-sweep: p = " + format_number(p / sc.wavelength()) + " lambda");
        GratingSpec g = scenario_grating(sc);
        g.period = p;
        const CapacityGrid c = capacity_map(tx_evaluator(sc, GratingWalls{g}), sc.rx, sc.budget, grid, ctx.opt.exec);
        const CapacityImprovement d = capacity_improvement(c, base);
        os << format_number(p) << ',' << format_number(p / sc.wavelength()) << ',' << format_number(d.mean) << ','
           << d.count << '\n';
    }
    ctx.out.text("grating", "csv", os.str());
}

void cmd_reflectance_curve(Context &ctx)
{
    const Scenario &sc = ctx.sc;
    const auto curve = drywall_reflection_curve(scenario_material(sc), sc.room, sc.reflectance_angles);
    std::ostringstream os;
    os << "theta_deg,magnitude,phase_rad\n";
    for (const auto &s : curve)
        os << format_number(s.theta * 180.0 / std::numbers::pi) << ',' << format_number(s.magnitude) << ','
           << format_number(s.phase) << '\n';
    ctx.out.text("drywall", "csv", os.str());
}

using Handler = void (*)(Context &);

struct CommandEntry
{
    const char *name;
    Handler run;
};

const std::vector<CommandEntry> &registry()
{
    static const std::vector<CommandEntry> entries = {
        {"field-map", cmd_field_map},
        {"capacity-map", cmd_capacity_map},
        {"capacity-vs-distance", cmd_capacity_vs_distance},
        {"modes", cmd_modes},
        {"fit-stats", cmd_fit_stats},
        {"angular-spectrum", cmd_angular_spectrum},
        {"compare-walls", cmd_compare_walls},
        {"period-sweep", cmd_period_sweep},
        {"reflectance-curve", cmd_reflectance_curve},
    };
    return entries;
}

// Kernel evaluations per Green's function call.
double per_green_cost(const WallModel &wall, const Scenario &sc)
{
    const double n = 2.0 * sc.limits.max_image_order + 1.0;
    const double b = 2.0 * sc.limits.max_bounces + 1.0;
    if (std::holds_alternative<FreeSpace>(wall))
        return 1.0;
    if (std::holds_alternative<PecWalls>(wall))
        return n * n;
    if (std::holds_alternative<DrywallWalls>(wall))
        return b * b;
    const auto &spec = std::get<GratingWalls>(wall).spec;
    double branches = 0.0;
    try
    {
        branches = double(enumerate_diffracted_branches(spec, sc.wavelength(), sc.limits).size());
    }
    catch (const ConfigError &)
    {
        branches = double(sc.limits.max_branches);
    }
    return b * b + 2.0 * branches; // about two ray roots per branch
}

} // namespace

const std::vector<std::string> &command_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto &e : registry())
            out.emplace_back(e.name);
        return out;
    }();
    return names;
}

double estimated_evaluations(const std::string &command, const Scenario &sc)
{
    const double links = double(sc.tx.element_count) * double(sc.rx.element_count);
    const double cells = double(SamplingGrid::covering(sc.room, sc.grid_spacing).size());
    const double cost = per_green_cost(sc.wall, sc);
    const double ntx = double(sc.tx.element_count);
    if (command == "field-map")
        return cells * ntx * (cost + 1.0);
    if (command == "capacity-map")
        return cells * links * cost;
    if (command == "capacity-vs-distance" || command == "modes")
        return double(sc.distance_sweep.distances.size()) * links * cost;
    if (command == "fit-stats")
    {
        const double area = std::numbers::pi * (sc.fit_stats.r_max * sc.fit_stats.r_max - sc.fit_stats.r_min * sc.fit_stats.r_min);
        return double(sc.fit_stats.room_sizes.size()) * area / (sc.fit_stats.grid_spacing * sc.fit_stats.grid_spacing) * cost;
    }
    if (command == "angular-spectrum")
        return double(sc.spectrum.samples) * ntx * (cost + 1.0);
    const double rx_cells = double(receiver_grid(sc).size());
    if (command == "compare-walls")
    {
        double total = 0.0;
        for (const WallModel &w : {WallModel{PecWalls{}}, WallModel{GratingWalls{scenario_grating(sc)}}})
            total += per_green_cost(w, sc);
        return rx_cells * links * total;
    }
    if (command == "period-sweep")
        return rx_cells * links * double(sc.periods.size()) * per_green_cost(GratingWalls{scenario_grating(sc)}, sc);
    return 0.0;
}

RunResult run_command(const std::string &command, Scenario scenario, const RunOptions &options)
{
    const auto &reg = registry();
    const auto it = std::find_if(reg.begin(), reg.end(), [&](const CommandEntry &e) { return command == e.name; });
    if (it == reg.end())
        throw ConfigError("unknown command \"" + command + "\"");

    if (options.scale != 1.0)
        scenario.scale(options.scale);
    if (options.seed)
        scenario.seed = *options.seed;

    const std::string config = scenario.canonical_json();
    const std::string hash = io::short_hash(std::string(kVersion) + "\n" + command + "\n" + config);
    fs::create_directories(options.out_dir);

    const double work = estimated_evaluations(command, scenario);
    if (work > kEvaluationBudget)
        note(options, "warning: " + command + " needs about " + format_number(std::round(work)) +
                          " Green's kernel evaluations (budget " + format_number(kEvaluationBudget) +
                          "); consider --scale or a coarser grid");

    Artifacts out(options.out_dir, command, hash);
    json summary = json::object();
    Context ctx{scenario, options, out, summary};
    const Timer timer;
    try
    {
        it->run(ctx);
        std::vector<std::string> names;
        for (const auto &p : out.written())
            names.push_back(fs::path(p).filename().string());
        json manifest = {{"command", command},
                         {"version", kVersion},
                         {"seed", scenario.seed},
                         {"scale", options.scale},
                         {"workers", effective_workers(options.exec)},
                         {"config", json::parse(config)},
                         {"artifacts", names},
                         {"estimated_evaluations", work},
                         {"summary", summary},
                         {"timings_ms", {{"total", timer.ms()}}}};
        out.manifest(manifest.dump(2) + "\n");
    }
    catch (...)
    {
        out.remove_all();
        throw;
    }
    return {out.written()};
}

} // namespace gratewave
