#pragma once

// Two-axis parameter sweeps over reduced points, rendered as CSV.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "coho/entropy.hpp"
#include "coho/errors.hpp"
#include "coho/params.hpp"

namespace coho::sweep {

enum class Axis { eta, theta, u };

inline std::string_view axis_name(Axis a) {
    switch (a) {
    case Axis::eta: return "eta";
    case Axis::theta: return "theta";
    case Axis::u: return "u";
    }
    return "?";
}

inline Axis parse_axis(std::string_view s) {
    if (s == "eta") return Axis::eta;
    if (s == "theta") return Axis::theta;
    if (s == "u") return Axis::u;
    throw InvalidInput("unknown axis '" + std::string(s) + "' (expected eta, theta or u)");
}

inline constexpr std::size_t kMaxAxisCount = 4096;

struct AxisRange {
    Axis axis = Axis::eta;
    double start = 0.0;
    double stop = 1.0;
    std::size_t count = 2;
};

/// Grid nodes placed symmetrically about the midpoint, so a range symmetric
/// about zero yields exactly negated pairs and both endpoints are exact.
inline std::vector<double> axis_values(const AxisRange &r) {
    std::vector<double> v(r.count);
    const double mid = 0.5 * (r.start + r.stop), half = 0.5 * (r.stop - r.start);
    const double n1 = double(r.count - 1);
    for (std::size_t i = 0; i < r.count; ++i) v[i] = mid + half * ((2.0 * double(i) - n1) / n1);
    v.front() = r.start;
    v.back() = r.stop;
    return v;
}

struct Quantity {
    enum class Kind { P, S1, S2, S3, Sq };
    Kind kind = Kind::P;
    double q = 2.0;  // used by Sq only

    static Quantity parse(std::string_view name, double q = 2.0) {
        if (name == "P") return {Kind::P, q};
        if (name == "S1") return {Kind::S1, q};
        if (name == "S2") return {Kind::S2, q};
        if (name == "S3") return {Kind::S3, q};
        if (name == "Sq") return {Kind::Sq, q};
        throw InvalidInput("unknown quantity '" + std::string(name) + "' (expected P, S1, S2, S3 or Sq)");
    }

    std::string label() const {
        switch (kind) {
        case Kind::P: return "P";
        case Kind::S1: return "S1";
        case Kind::S2: return "S2";
        case Kind::S3: return "S3";
        case Kind::Sq: {
            char buf[48];
            std::snprintf(buf, sizeof buf, "Sq(%.12g)", q);
            return buf;
        }
        }
        return "?";
    }

    void validate() const {
        if (kind != Kind::Sq) return;
        if (!std::isfinite(q) || !(q > 0.0)) throw InvalidInput("Renyi order q must be finite and > 0");
        if (std::abs(q - 1.0) <= 1e-9) throw OrderNearOne("Renyi order q is within 1e-9 of 1; use S1");
    }

    double evaluate(const Purity &p) const {
        switch (kind) {
        case Kind::P: return p.value();
        case Kind::S1: return von_neumann(p);
        case Kind::S2: return renyi2(p);
        case Kind::S3: return renyi3(p);
        case Kind::Sq: return renyi(p, q);
        }
        return 0.0;
    }
};

struct SweepSpec {
    AxisRange outer{Axis::eta, -5.0, 5.0, 201};
    AxisRange inner{Axis::theta, 0.0, 2.0 * std::numbers::pi, 201};
    double eta = 0.0;  // fixed values for the axis not swept
    double theta = 0.0;
    double u = 1.0;
    Quantity quantity{};

    void validate() const {
        if (outer.axis == inner.axis) throw InvalidInput("a sweep needs two distinct axes");
        for (const auto *r : {&outer, &inner}) {
            if (r->count < 2 || r->count > kMaxAxisCount)
                throw InvalidInput("axis " + std::string(axis_name(r->axis)) + " count must be in [2, 4096]");
            if (!std::isfinite(r->start) || !std::isfinite(r->stop))
                throw InvalidInput("axis " + std::string(axis_name(r->axis)) + " bounds must be finite");
            if (r->axis == Axis::u && !(std::min(r->start, r->stop) > 0.0))
                throw InvalidInput("axis u must stay > 0");
        }
        if (!std::isfinite(eta) || !std::isfinite(theta) || !std::isfinite(u) || !(u > 0.0))
            throw InvalidInput("fixed values must be finite with u > 0");
        quantity.validate();
    }

    std::size_t rows() const { return outer.count * inner.count; }
};

namespace detail {

inline void set_axis(double (&coords)[3], Axis a, double v) { coords[static_cast<int>(a)] = v; }

inline void append_number(std::string &out, double v) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
    out.append(buf, std::size_t(n));
}

}  // namespace detail

/// Renders the sweep as CSV text. Outer rows are computed by `workers` threads
/// (0 = hardware concurrency) and concatenated in grid order.
inline std::string render_csv(const SweepSpec &spec, unsigned workers = 0) {
    spec.validate();
    const auto xs = axis_values(spec.outer);
    const auto ys = axis_values(spec.inner);
    const std::string label = spec.quantity.label();
    std::vector<std::string> rows(xs.size());

    auto render_row = [&](std::size_t i) {
        std::string &out = rows[i];
        out.reserve(ys.size() * 64);
        for (double y : ys) {
            double c[3] = {spec.eta, spec.theta, spec.u};
            detail::set_axis(c, spec.outer.axis, xs[i]);
            detail::set_axis(c, spec.inner.axis, y);
            const double value = spec.quantity.evaluate(purity(ReducedPoint(c[0], c[1], c[2])));
            for (double v : c) {
                detail::append_number(out, v);
                out += ',';
            }
            out += label;
            out += ',';
            detail::append_number(out, value);
            out += '\n';
        }
    };

    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = unsigned(std::min<std::size_t>(workers, xs.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < xs.size(); ++i) render_row(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < xs.size();) render_row(i);
            });
    }

    std::string csv = "eta,theta,u,quantity,value\n";
    for (const auto &r : rows) csv += r;
    return csv;
}

/// Writes `content` to a sibling temporary file and renames it over `path`.
inline void write_atomic(const std::filesystem::path &path, const std::string &content) {
    auto tmp = path;
    tmp += ".partial";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw InvalidInput("cannot open '" + tmp.string() + "' for writing");
        f.write(content.data(), std::streamsize(content.size()));
        f.flush();
        if (!f) {
            f.close();
            std::filesystem::remove(tmp);
            throw InvalidInput("write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw InvalidInput("cannot rename onto '" + path.string() + "': " + ec.message());
    }
}

struct PresetFile {
    std::string file_name;
    SweepSpec spec;
};

inline constexpr std::size_t kPresetResolution = 201;
inline constexpr double kPresetUMin = 0.1;
inline constexpr double kPresetUMax = 10.0;
inline constexpr double kPresetEtaMax = 5.0;

/// Figure presets 1..6: 1-3 plot S3, 4-6 plot S1.
///   1, 4: eta x theta at u in {1, 2, 5, 10}
///   2, 5: u x theta at eta in {1, 2, 3, 4}
///   3, 6: eta x u at theta in {pi/2, pi/3, pi/4, pi/8}
inline std::vector<PresetFile> preset(int figure) {
    if (figure < 1 || figure > 6) throw InvalidInput("preset must be fig1 .. fig6");
    constexpr double pi = std::numbers::pi;
    const std::string stem = "fig" + std::to_string(figure);
    const Quantity q{figure <= 3 ? Quantity::Kind::S3 : Quantity::Kind::S1, 2.0};
    const AxisRange eta{Axis::eta, -kPresetEtaMax, kPresetEtaMax, kPresetResolution};
    const AxisRange theta{Axis::theta, 0.0, 2.0 * pi, kPresetResolution};
    const AxisRange u{Axis::u, kPresetUMin, kPresetUMax, kPresetResolution};

    std::vector<PresetFile> out;
    switch ((figure - 1) % 3) {
    case 0:
        for (int v : {1, 2, 5, 10}) {
            SweepSpec s{eta, theta, 0.0, 0.0, double(v), q};
            out.push_back({stem + "_u" + std::to_string(v) + ".csv", s});
        }
        break;
    case 1:
        for (int v : {1, 2, 3, 4}) {
            SweepSpec s{u, theta, double(v), 0.0, 1.0, q};
            out.push_back({stem + "_eta" + std::to_string(v) + ".csv", s});
        }
        break;
    default:
        for (int d : {2, 3, 4, 8}) {
            SweepSpec s{eta, u, 0.0, pi / d, 1.0, q};
            out.push_back({stem + "_theta_pi" + std::to_string(d) + ".csv", s});
        }
        break;
    }
    return out;
}

}  // namespace coho::sweep
