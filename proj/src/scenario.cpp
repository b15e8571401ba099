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

#include "gratewave/scenario.hpp"
#include "gratewave/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace gratewave
{
namespace
{

using json = nlohmann::json;
constexpr double kDeg = std::numbers::pi / 180.0;

// 1-based line of the first occurrence of needle in text, 0 if absent.
std::size_t line_of(const std::string &text, const std::string &needle)
{
    const auto pos = text.find(needle);
    if (pos == std::string::npos)
        return 0;
    return std::size_t(std::count(text.begin(), text.begin() + long(pos), '\n')) + 1;
}

std::string join(const std::string &path, const std::string &key) { return path.empty() ? key : path + "." + key; }

// Field access with path-qualified diagnostics.
class Section
{
public:
    Section(const json &node, std::string path, const std::string &text)
        : node_(node), path_(std::move(path)), text_(text)
    {
        if (!node_.is_object())
            fail(path_, "expected an object");
    }

    void allow(std::initializer_list<const char *> keys) const
    {
        for (const auto &[key, value] : node_.items())
            if (std::none_of(keys.begin(), keys.end(), [&](const char *k) { return key == k; }))
                fail(join(path_, key), "unknown key");
    }

    bool has(const char *key) const { return node_.contains(key); }

    Section child(const char *key) const { return Section(node_.at(key), join(path_, key), text_); }

    const json &raw(const char *key) const { return node_.at(key); }

    double number(const char *key, double fallback) const
    {
        if (!has(key))
            return fallback;
        const json &v = node_.at(key);
        if (!v.is_number())
            fail(join(path_, key), "expected a number");
        return v.get<double>();
    }

    int integer(const char *key, int fallback) const
    {
        if (!has(key))
            return fallback;
        const json &v = node_.at(key);
        if (!v.is_number_integer())
            fail(join(path_, key), "expected an integer");
        return v.get<int>();
    }

    bool boolean(const char *key, bool fallback) const
    {
        if (!has(key))
            return fallback;
        const json &v = node_.at(key);
        if (!v.is_boolean())
            fail(join(path_, key), "expected true or false");
        return v.get<bool>();
    }

    std::string string(const char *key, const std::string &fallback) const
    {
        if (!has(key))
            return fallback;
        const json &v = node_.at(key);
        if (!v.is_string())
            fail(join(path_, key), "expected a string");
        return v.get<std::string>();
    }

    double length(const char *key, double fallback, double wavelength) const
    {
        return has(key) ? length_value(node_.at(key), join(path_, key), wavelength) : fallback;
    }

    Point point(const char *key, Point fallback, double wavelength) const
    {
        if (!has(key))
            return fallback;
        const json &v = node_.at(key);
        const std::string p = join(path_, key);
        if (!v.is_array() || v.size() != 2)
            fail(p, "expected [x, y]");
        return {length_value(v[0], p, wavelength), length_value(v[1], p, wavelength)};
    }

    std::vector<double> lengths(const char *key, std::vector<double> fallback, double wavelength) const
    {
        if (!has(key))
            return fallback;
        const json &v = node_.at(key);
        const std::string p = join(path_, key);
        if (!v.is_array())
            fail(p, "expected a list of lengths");
        std::vector<double> out;
        for (const auto &e : v)
            out.push_back(length_value(e, p, wavelength));
        return out;
    }

    double length_value(const json &v, const std::string &path, double wavelength) const
    {
        if (v.is_number())
            return v.get<double>();
        if (!v.is_string())
            fail(path, "expected a length (number in metres or string such as \"5lambda\")");
        try
        {
            return parse_length(v.get<std::string>(), wavelength);
        }
        catch (const ParseError &e)
        {
            fail(path, e.what());
        }
    }

    [[noreturn]] void fail(const std::string &path, const std::string &what) const
    {
        const auto dot = path.find_last_of('.');
        const std::string key = dot == std::string::npos ? path : path.substr(dot + 1);
        throw ParseError(path + ": " + what, line_of(text_, "\"" + key + "\""));
    }

    const std::string &path() const { return path_; }

private:
    const json &node_;
    std::string path_;
    const std::string &text_;
};

DrywallMaterial read_material(const Section &s, DrywallMaterial m)
{
    s.allow({"eps_real", "loss_tangent", "thickness", "mu_rel"});
    m.eps_real = s.number("eps_real", m.eps_real);
    m.loss_tangent = s.number("loss_tangent", m.loss_tangent);
    m.thickness = s.length("thickness", m.thickness, 1.0);
    m.mu_rel = s.number("mu_rel", m.mu_rel);
    return m;
}

ArrayLayout read_array(const Section &s, ArrayLayout a, double wl, std::vector<Complex> *excitation)
{
    if (excitation)
        s.allow({"center", "elements", "spacing", "orientation_deg", "excitation"});
    else
        s.allow({"center", "elements", "spacing", "orientation_deg"});
    a.center = s.point("center", a.center, wl);
    a.element_count = s.integer("elements", a.element_count);
    a.spacing = s.length("spacing", a.spacing, wl);
    a.orientation = s.number("orientation_deg", a.orientation / kDeg) * kDeg;
    if (excitation && s.has("excitation"))
    {
        const json &v = s.raw("excitation");
        const std::string p = join(s.path(), "excitation");
        if (!v.is_array())
            s.fail(p, "expected a list of [re, im] pairs");
        excitation->clear();
        for (const auto &e : v)
        {
            if (e.is_number())
                excitation->emplace_back(e.get<double>(), 0.0);
            else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
                excitation->emplace_back(e[0].get<double>(), e[1].get<double>());
            else
                s.fail(p, "expected a list of [re, im] pairs");
        }
    }
    return a;
}

template <class F> void rethrow_as(const std::string &field, F &&f)
{
    try
    {
        f();
    }
    catch (const ValidationError &)
    {
        throw;
    }
    catch (const std::exception &e)
    {
        throw ValidationError(field, e.what());
    }
}

json point_json(Point p) { return json::array({p.x, p.y}); }

json array_json(const ArrayLayout &a)
{
    return {{"center", point_json(a.center)},
            {"elements", a.element_count},
            {"spacing", a.spacing},
            {"orientation_deg", a.orientation / kDeg}};
}

json material_json(const DrywallMaterial &m)
{
    return {{"eps_real", m.eps_real}, {"loss_tangent", m.loss_tangent}, {"thickness", m.thickness}, {"mu_rel", m.mu_rel}};
}

} // namespace

double parse_length(const std::string &text, double wavelength)
{
    std::size_t used = 0;
    double value = 0.0;
    try
    {
        value = std::stod(text, &used);
    }
    catch (const std::exception &)
    {
        throw ParseError("cannot parse length \"" + text + "\"");
    }
    std::string unit = text.substr(used);
    unit.erase(std::remove_if(unit.begin(), unit.end(), [](unsigned char c) { return std::isspace(c); }), unit.end());
    if (unit.empty() || unit == "m")
        return value;
    if (unit == "lambda" || unit == "λ")
        return value * wavelength;
    if (unit == "mm")
        return value * 1e-3;
    if (unit == "cm")
        return value * 1e-2;
    throw ParseError("unknown length unit \"" + unit + "\" in \"" + text + "\"");
}

WallSide parse_wall_side(const std::string &name)
{
    if (name == "left")
        return WallSide::left;
    if (name == "right")
        return WallSide::right;
    if (name == "bottom")
        return WallSide::bottom;
    if (name == "top")
        return WallSide::top;
    throw ParseError("unknown wall side \"" + name + "\"");
}

const char *wall_side_name(WallSide side)
{
    switch (side)
    {
    case WallSide::left:
        return "left";
    case WallSide::right:
        return "right";
    case WallSide::bottom:
        return "bottom";
    case WallSide::top:
        return "top";
    }
    return "left";
}

std::vector<Complex> Scenario::tx_weights() const
{
    if (excitation.empty())
        return std::vector<Complex>(std::size_t(tx.element_count), Complex{1.0, 0.0});
    return excitation;
}

Scenario default_scenario()
{
    Scenario s;
    s.room.frequency = 2.4e9;
    const double wl = s.room.wavelength();
    s.room.length_x = 30.0 * wl;
    s.room.length_y = 30.0 * wl;
    s.wall = FreeSpace{};
    s.tx = {{5.0 * wl, 15.0 * wl}, 6, 0.5 * wl, 0.0};
    s.rx = {{20.0 * wl, 15.0 * wl}, 6, 0.5 * wl, 0.0};
    s.grid_spacing = 0.5 * wl;
    s.seed = 1;
    for (int i = 0; i <= 38; ++i)
        s.distance_sweep.distances.push_back((1.0 + 0.5 * double(i)) * wl);
    s.fit_stats.r_min = 3.0 * wl;
    s.fit_stats.r_max = 3.2 * wl;
    s.fit_stats.room_sizes = {20.0 * wl, 25.0 * wl, 30.0 * wl};
    s.fit_stats.grid_spacing = wl / 20.0;
    s.spectrum.offset = 0.5 * wl;
    s.periods = {0.25 * wl, 2.0 * wl, 30.0 * wl};
    return s;
}

Scenario parse_scenario(const std::string &text, const std::string &base_dir)
{
    json doc;
    try
    {
        doc = json::parse(text, nullptr, true, true);
    }
    catch (const json::parse_error &e)
    {
        const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
        const std::size_t line = std::size_t(std::count(text.begin(), text.begin() + long(byte ? byte - 1 : 0), '\n')) + 1;
        throw ParseError(std::string("malformed JSON: ") + e.what(), line);
    }

    const Section top(doc, "", text);
    top.allow({"frequency_hz", "room", "wall", "tx", "rx", "budget", "limits", "grid_spacing", "seed",
               "capacity_vs_distance", "fit_stats", "angular_spectrum", "compare_walls", "period_sweep",
               "reflectance_curve"});

    Scenario s = default_scenario();
    s.room.frequency = top.number("frequency_hz", s.room.frequency);
    if (!(s.room.frequency > 0.0) || !std::isfinite(s.room.frequency))
        throw ValidationError("frequency_hz", "must be positive");
    const double wl = s.room.wavelength();
    // Re-derive wavelength-relative defaults at the configured frequency.
    {
        Scenario d = default_scenario();
        const double k = wl / d.room.wavelength();
        s.room.length_x *= k;
        s.room.length_y *= k;
        s.tx.center = k * s.tx.center;
        s.tx.spacing *= k;
        s.rx.center = k * s.rx.center;
        s.rx.spacing *= k;
        s.grid_spacing *= k;
        for (double &v : s.distance_sweep.distances)
            v *= k;
        s.fit_stats.r_min *= k;
        s.fit_stats.r_max *= k;
        for (double &v : s.fit_stats.room_sizes)
            v *= k;
        s.fit_stats.grid_spacing *= k;
        s.spectrum.offset *= k;
        for (double &v : s.periods)
            v *= k;
    }

    if (top.has("room"))
    {
        const Section r = top.child("room");
        r.allow({"length_x", "length_y"});
        s.room.length_x = r.length("length_x", s.room.length_x, wl);
        s.room.length_y = r.length("length_y", s.room.length_y, wl);
    }

    DrywallMaterial material;
    std::string tag = "free_space";
    if (top.has("wall"))
    {
        const Section w = top.child("wall");
        w.allow({"type", "drywall", "grating"});
        tag = w.string("type", tag);
        if (w.has("drywall"))
            material = read_material(w.child("drywall"), material);
        if (tag == "free_space")
            s.wall = FreeSpace{};
        else if (tag == "pec")
            s.wall = PecWalls{};
        else if (tag == "drywall")
            s.wall = DrywallWalls{material};
        else if (tag == "grating")
        {
            GratingSpec g;
            g.period = 2.0 * wl;
            g.dielectric = material;
            if (w.has("grating"))
            {
                const Section gs = w.child("grating");
                gs.allow({"period", "pec_duty", "max_order", "coefficients"});
                g.period = gs.length("period", g.period, wl);
                g.pec_duty = gs.number("pec_duty", g.pec_duty);
                g.max_order = gs.integer("max_order", g.max_order);
                const std::string coeff = gs.string("coefficients", "kirchhoff");
                if (coeff != "kirchhoff")
                {
                    namespace fs = std::filesystem;
                    fs::path p(coeff);
                    if (p.is_relative())
                        p = fs::path(base_dir) / p;
                    try
                    {
                        g.coeff_source = std::make_shared<const CoefficientTable>(CoefficientTable::load(p.string()));
                    }
                    catch (const ParseError &e)
                    {
                        throw ParseError(p.string() + ": " + e.what());
                    }
                }
            }
            s.wall = GratingWalls{g};
        }
        else
            throw ParseError("wall.type: unknown wall tag \"" + tag + "\" (expected free_space, pec, drywall or grating)",
                             line_of(text, "\"" + tag + "\""));
    }

    if (top.has("tx"))
        s.tx = read_array(top.child("tx"), s.tx, wl, &s.excitation);
    if (top.has("rx"))
        s.rx = read_array(top.child("rx"), s.rx, wl, nullptr);

    if (top.has("budget"))
    {
        const Section b = top.child("budget");
        b.allow({"p_tx", "p_noise"});
        s.budget.p_tx = b.number("p_tx", s.budget.p_tx);
        s.budget.p_noise = b.number("p_noise", s.budget.p_noise);
    }

    if (top.has("limits"))
    {
        const Section l = top.child("limits");
        l.allow({"max_bounces", "max_image_order", "artificial_loss", "accelerate", "fan_samples", "max_branches"});
        s.limits.max_bounces = l.integer("max_bounces", s.limits.max_bounces);
        s.limits.max_image_order = l.integer("max_image_order", s.limits.max_image_order);
        s.limits.artificial_loss = l.number("artificial_loss", s.limits.artificial_loss);
        s.limits.accelerate = l.boolean("accelerate", s.limits.accelerate);
        s.limits.fan_samples = l.integer("fan_samples", s.limits.fan_samples);
        s.limits.max_branches = l.integer("max_branches", s.limits.max_branches);
    }

    s.grid_spacing = top.length("grid_spacing", s.grid_spacing, wl);
    if (top.has("seed"))
    {
        const json &v = top.raw("seed");
        if (!v.is_number_unsigned())
            top.fail("seed", "expected a nonnegative integer");
        s.seed = v.get<std::uint64_t>();
    }

    if (top.has("capacity_vs_distance"))
    {
        const Section c = top.child("capacity_vs_distance");
        c.allow({"theta_tr_deg", "distances", "start", "stop", "step"});
        s.distance_sweep.theta_tr = c.number("theta_tr_deg", s.distance_sweep.theta_tr / kDeg) * kDeg;
        if (c.has("distances"))
            s.distance_sweep.distances = c.lengths("distances", {}, wl);
        else if (c.has("start") || c.has("stop") || c.has("step"))
        {
            const double start = c.length("start", wl, wl);
            const double stop = c.length("stop", 20.0 * wl, wl);
            const double step = c.length("step", 0.5 * wl, wl);
            if (!(step > 0.0) || !(stop >= start))
                throw ValidationError("capacity_vs_distance.step", "need step > 0 and stop >= start");
            s.distance_sweep.distances.clear();
            const long n = long(std::floor((stop - start) / step + 1e-9));
            for (long i = 0; i <= n; ++i)
                s.distance_sweep.distances.push_back(start + double(i) * step);
        }
    }

    if (top.has("fit_stats"))
    {
        const Section f = top.child("fit_stats");
        f.allow({"r_min", "r_max", "room_sizes", "bins", "grid_spacing", "synthetic"});
        s.fit_stats.r_min = f.length("r_min", s.fit_stats.r_min, wl);
        s.fit_stats.r_max = f.length("r_max", s.fit_stats.r_max, wl);
        s.fit_stats.room_sizes = f.lengths("room_sizes", s.fit_stats.room_sizes, wl);
        s.fit_stats.bins = f.integer("bins", s.fit_stats.bins);
        s.fit_stats.grid_spacing = f.length("grid_spacing", s.fit_stats.grid_spacing, wl);
        if (f.has("synthetic"))
        {
            const Section y = f.child("synthetic");
            y.allow({"model", "parameter", "samples"});
            s.fit_stats.synthetic_model = y.string("model", "rician");
            if (s.fit_stats.synthetic_model != "rician" && s.fit_stats.synthetic_model != "hoyt")
                y.fail("fit_stats.synthetic.model", "expected \"rician\" or \"hoyt\"");
            s.fit_stats.synthetic_parameter = y.number("parameter", 1.0);
            s.fit_stats.synthetic_samples = y.integer("samples", s.fit_stats.synthetic_samples);
        }
    }

    if (top.has("angular_spectrum"))
    {
        const Section a = top.child("angular_spectrum");
        a.allow({"wall", "offset", "samples", "window", "zero_pad"});
        if (a.has("wall"))
        {
            try
            {
                s.spectrum.wall = parse_wall_side(a.string("wall", "left"));
            }
            catch (const ParseError &e)
            {
                a.fail("angular_spectrum.wall", e.what());
            }
        }
        s.spectrum.offset = a.length("offset", s.spectrum.offset, wl);
        s.spectrum.samples = a.integer("samples", s.spectrum.samples);
        const std::string window = a.string("window", "none");
        if (window == "none")
            s.spectrum.window = SpectrumWindow::none;
        else if (window == "hann")
            s.spectrum.window = SpectrumWindow::hann;
        else
            a.fail("angular_spectrum.window", "expected \"none\" or \"hann\"");
        s.spectrum.zero_pad = a.integer("zero_pad", s.spectrum.zero_pad);
    }

    if (top.has("compare_walls"))
    {
        const Section c = top.child("compare_walls");
        c.allow({"grid_points"});
        s.compare.grid_points = c.integer("grid_points", s.compare.grid_points);
    }
    if (top.has("period_sweep"))
    {
        const Section p = top.child("period_sweep");
        p.allow({"periods"});
        s.periods = p.lengths("periods", s.periods, wl);
    }
    if (top.has("reflectance_curve"))
    {
        const Section r = top.child("reflectance_curve");
        r.allow({"angles"});
        s.reflectance_angles = r.integer("angles", s.reflectance_angles);
    }

    s.validate();
    return s;
}

Scenario load_scenario(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open scenario file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const auto dir = std::filesystem::path(path).parent_path();
    return parse_scenario(ss.str(), dir.empty() ? "." : dir.string());
}

void Scenario::validate() const
{
    rethrow_as("room", [&] { room.validate(); });
    const bool walls = !std::holds_alternative<FreeSpace>(wall);
    const double wl = room.wavelength();

    if (const auto *d = std::get_if<DrywallWalls>(&wall))
        rethrow_as("wall.drywall", [&] { d->material.validate(); });
    if (const auto *g = std::get_if<GratingWalls>(&wall))
        rethrow_as("wall.grating", [&] { g->spec.validate(wl); });

    auto check_array = [&](const ArrayLayout &a, const std::string &name) {
        if (a.element_count < 1)
            throw ValidationError(name + ".elements", "must be at least 1");
        if (a.element_count > 1 && !(a.spacing > 0.0))
            throw ValidationError(name + ".spacing", "must be positive for multi-element arrays");
        if (!std::isfinite(a.center.x) || !std::isfinite(a.center.y))
            throw ValidationError(name + ".center", "must be finite");
        if (walls)
            for (const Point &p : a.element_positions())
                if (!room.contains_strictly(p))
                    throw ValidationError(name + ".center", "array elements must lie strictly inside the room");
    };
    check_array(tx, "tx");
    check_array(rx, "rx");
    for (const Point &t : tx.element_positions())
        for (const Point &r : rx.element_positions())
            if (distance(t, r) < wl / 8.0)
                throw ValidationError("rx.center", "receiver element inside a transmitter guard disc");
    if (!excitation.empty() && int(excitation.size()) != tx.element_count)
        throw ValidationError("tx.excitation", "length must equal tx.elements");

    rethrow_as("budget", [&] { budget.validate(); });
    rethrow_as("limits", [&] { limits.validate(); });
    if (!(grid_spacing > 0.0) || grid_spacing > 0.5 * wl * (1.0 + 1e-12))
        throw ValidationError("grid_spacing", "must lie in (0, lambda/2]");

    if (!(fit_stats.r_min > 0.0) || !(fit_stats.r_max > fit_stats.r_min))
        throw ValidationError("fit_stats.r_max", "need r_max > r_min > 0");
    if (fit_stats.bins < 2)
        throw ValidationError("fit_stats.bins", "must be at least 2");
    if (!(fit_stats.grid_spacing > 0.0))
        throw ValidationError("fit_stats.grid_spacing", "must be positive");
    if (fit_stats.room_sizes.empty() ||
        std::any_of(fit_stats.room_sizes.begin(), fit_stats.room_sizes.end(), [](double v) { return !(v > 0.0); }))
        throw ValidationError("fit_stats.room_sizes", "need at least one positive size");
    if (!fit_stats.synthetic_model.empty())
    {
        if (fit_stats.synthetic_samples < 100)
            throw ValidationError("fit_stats.synthetic.samples", "must be at least 100");
        const double v = fit_stats.synthetic_parameter;
        if (fit_stats.synthetic_model == "rician" ? !(v >= 0.0) : !(v > 0.0 && v <= 1.0))
            throw ValidationError("fit_stats.synthetic.parameter", "K must be >= 0, q must lie in (0, 1]");
    }

    if (spectrum.samples < 8)
        throw ValidationError("angular_spectrum.samples", "must be at least 8");
    if (spectrum.zero_pad < 1)
        throw ValidationError("angular_spectrum.zero_pad", "must be at least 1");
    if (!(spectrum.offset > 0.0))
        throw ValidationError("angular_spectrum.offset", "must be positive");
    if (compare.grid_points < 0)
        throw ValidationError("compare_walls.grid_points", "must be >= 0");
    if (periods.empty() || std::any_of(periods.begin(), periods.end(), [](double v) { return !(v > 0.0); }))
        throw ValidationError("period_sweep.periods", "need at least one positive period");
    if (reflectance_angles < 2)
        throw ValidationError("reflectance_curve.angles", "must be at least 2");
    if (std::any_of(distance_sweep.distances.begin(), distance_sweep.distances.end(),
                    [](double v) { return !(v > 0.0); }))
        throw ValidationError("capacity_vs_distance.distances", "must be positive");
}

void Scenario::scale(double s)
{
    if (!(s > 0.0) || !std::isfinite(s))
        throw ValidationError("scale", "must be positive");
    room.length_x *= s;
    room.length_y *= s;
    tx.center = s * tx.center;
    rx.center = s * rx.center;
    for (double &d : distance_sweep.distances)
        d *= s;
    for (double &d : fit_stats.room_sizes)
        d *= s;
    validate();
}

std::string Scenario::canonical_json() const
{
    json j;
    j["frequency_hz"] = room.frequency;
    j["room"] = {{"length_x", room.length_x}, {"length_y", room.length_y}};
    json w = {{"type", wall_tag(wall)}};
    if (const auto *d = std::get_if<DrywallWalls>(&wall))
        w["drywall"] = material_json(d->material);
    if (const auto *g = std::get_if<GratingWalls>(&wall))
    {
        w["drywall"] = material_json(g->spec.dielectric);
        json gs = {{"period", g->spec.period}, {"pec_duty", g->spec.pec_duty}, {"max_order", g->spec.max_order}};
        if (const auto *t = std::get_if<std::shared_ptr<const CoefficientTable>>(&g->spec.coeff_source))
        {
            std::ostringstream table;
            (*t)->write(table);
            gs["coefficients"] = table.str();
        }
        else
            gs["coefficients"] = "kirchhoff";
        w["grating"] = gs;
    }
    j["wall"] = w;
    j["tx"] = array_json(tx);
    json ex = json::array();
    for (const Complex &c : tx_weights())
        ex.push_back(json::array({c.real(), c.imag()}));
    j["tx"]["excitation"] = ex;
    j["rx"] = array_json(rx);
    j["budget"] = {{"p_tx", budget.p_tx}, {"p_noise", budget.p_noise}};
    j["limits"] = {{"max_bounces", limits.max_bounces},         {"max_image_order", limits.max_image_order},
                   {"artificial_loss", limits.artificial_loss}, {"accelerate", limits.accelerate},
                   {"fan_samples", limits.fan_samples},         {"max_branches", limits.max_branches}};
    j["grid_spacing"] = grid_spacing;
    j["seed"] = seed;
    j["capacity_vs_distance"] = {{"theta_tr_deg", distance_sweep.theta_tr / kDeg},
                                 {"distances", distance_sweep.distances}};
    json fs = {{"r_min", fit_stats.r_min},
               {"r_max", fit_stats.r_max},
               {"room_sizes", fit_stats.room_sizes},
               {"bins", fit_stats.bins},
               {"grid_spacing", fit_stats.grid_spacing}};
    if (!fit_stats.synthetic_model.empty())
        fs["synthetic"] = {{"model", fit_stats.synthetic_model},
                           {"parameter", fit_stats.synthetic_parameter},
                           {"samples", fit_stats.synthetic_samples}};
    j["fit_stats"] = fs;
    j["angular_spectrum"] = {{"wall", wall_side_name(spectrum.wall)},
                             {"offset", spectrum.offset},
                             {"samples", spectrum.samples},
                             {"window", spectrum.window == SpectrumWindow::hann ? "hann" : "none"},
                             {"zero_pad", spectrum.zero_pad}};
    j["compare_walls"] = {{"grid_points", compare.grid_points}};
    j["period_sweep"] = {{"periods", periods}};
    j["reflectance_curve"] = {{"angles", reflectance_angles}};
    return j.dump(2);
}

} // namespace gratewave
