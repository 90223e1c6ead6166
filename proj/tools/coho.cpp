// coho: command-line front end for the coupled-oscillator entanglement library.
//
//   coho point  --eta 1 --theta 1.5707963268 --u 100 --show P
//   coho point  --m1 1 --m2 1 --c1 1 --c2 1 --c3 1 --beta 1 --show P,S3
//   coho sweep  --preset fig1 --output-dir out
//   coho table
//   coho verify --seed 7
//
// Exit codes: 0 success, 1 verification failure, 2 validation error,
// 3 degenerate coupling.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coho/coho.hpp"

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kInvalid = 2, kDegenerate = 3 };

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, sep);)
        if (!trim(item).empty()) out.push_back(trim(item));
    return out;
}

// Config lines become `--key=value` arguments placed ahead of the real ones,
// so with TakeLast the command line wins.
std::vector<std::string> config_arguments(const std::filesystem::path &path, const CLI::App &sub) {
    std::ifstream in(path);
    if (!in) throw Usage("cannot read config file '" + path.string() + "'");
    std::vector<std::string> out;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Usage(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key == "config" || sub.get_option_no_throw("--" + key) == nullptr)
            throw Usage(path.string() + ":" + std::to_string(lineno) + ": unknown config key '" + key +
                        "' for '" + sub.get_name() + "'");
        out.push_back("--" + key + "=" + value);
    }
    return out;
}

void print_value(const std::string &name, double v) {
    std::printf("%s=%.12f\n", name.c_str(), v == 0.0 ? 0.0 : v);
}

// ---------------------------------------------------------------- point

struct PointArgs {
    std::optional<double> m1, m2, c1, c2, c3, hbar, beta;
    std::optional<double> eta, theta, u;
    std::string show = "P,S1,S2,S3";
    std::vector<double> q;
};

coho::ReducedPoint resolve_point(const PointArgs &a) {
    const bool reduced = a.eta || a.theta || a.u;
    const bool physical = a.m1 || a.m2 || a.c1 || a.c2 || a.c3 || a.hbar || a.beta;
    if (reduced && physical) throw Usage("give either reduced (--eta --theta --u) or physical inputs, not both");
    if (reduced) {
        if (!(a.eta && a.theta && a.u)) throw Usage("reduced input needs all of --eta, --theta, --u");
        return coho::ReducedPoint(*a.eta, *a.theta, *a.u);
    }
    if (!(a.c1 && a.c2 && a.c3 && a.beta))
        throw Usage("physical input needs --c1, --c2, --c3 and --beta (--m1, --m2, --hbar default to 1)");
    const coho::OscillatorSystem<> sys{a.m1.value_or(1.0), a.m2.value_or(1.0), *a.c1, *a.c2, *a.c3,
                                       a.hbar.value_or(1.0)};
    return coho::reduced_point(coho::derive_frame(sys), *a.beta);
}

int run_point(const PointArgs &a) {
    const auto pt = resolve_point(a);
    const auto p = coho::purity(pt);
    std::vector<std::pair<std::string, double>> lines;
    for (const auto &name : split(a.show, ',')) {
        double v;
        if (name == "P") v = p.value();
        else if (name == "S1") v = coho::von_neumann(p);
        else if (name == "S2") v = coho::renyi2(p);
        else if (name == "S3") v = coho::renyi3(p);
        else if (name == "SL") v = coho::linear_entropy(p);
        else if (name == "xi") v = p.xi();
        else if (name == "eta") v = pt.eta;
        else if (name == "theta") v = pt.theta;
        else if (name == "u") v = pt.u;
        else throw Usage("unknown quantity '" + name + "' in --show (P,S1,S2,S3,SL,xi,eta,theta,u)");
        lines.emplace_back(name, v);
    }
    for (double q : a.q) {
        const coho::sweep::Quantity quantity{coho::sweep::Quantity::Kind::Sq, q};
        quantity.validate();
        lines.emplace_back(quantity.label(), quantity.evaluate(p));
    }
    for (const auto &[name, v] : lines) print_value(name, v);
    return kOk;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
    std::string preset;
    std::string output_dir = ".";
    std::string output;
    std::string outer = "eta", inner = "theta";
    double outer_start = -5.0, outer_stop = 5.0, inner_start = 0.0, inner_stop = 2.0 * std::numbers::pi;
    std::size_t outer_count = 201, inner_count = 201;
    double eta = 0.0, theta = 0.0, u = 1.0;
    std::string quantity = "S3";
    double q = 2.0;
    unsigned workers = 0;
};

int run_sweep(const SweepArgs &a) {
    std::vector<std::pair<std::filesystem::path, coho::sweep::SweepSpec>> jobs;
    if (!a.preset.empty()) {
        if (a.preset.size() != 4 || a.preset.rfind("fig", 0) != 0 || a.preset[3] < '1' || a.preset[3] > '6')
            throw Usage("--preset must be one of fig1 .. fig6");
        std::filesystem::create_directories(a.output_dir);
        for (auto &f : coho::sweep::preset(a.preset[3] - '0'))
            jobs.emplace_back(std::filesystem::path(a.output_dir) / f.file_name, f.spec);
    } else {
        if (a.output.empty()) throw Usage("sweep needs --preset or --output");
        coho::sweep::SweepSpec s;
        s.outer = {coho::sweep::parse_axis(a.outer), a.outer_start, a.outer_stop, a.outer_count};
        s.inner = {coho::sweep::parse_axis(a.inner), a.inner_start, a.inner_stop, a.inner_count};
        s.eta = a.eta;
        s.theta = a.theta;
        s.u = a.u;
        s.quantity = coho::sweep::Quantity::parse(a.quantity, a.q);
        jobs.emplace_back(a.output, s);
    }
    for (const auto &[path, spec] : jobs) spec.validate();
    for (const auto &[path, spec] : jobs) {
        coho::sweep::write_atomic(path, coho::sweep::render_csv(spec, a.workers));
        std::printf("wrote %s (%zu rows)\n", path.string().c_str(), spec.rows());
    }
    return kOk;
}

// ---------------------------------------------------------------- table

struct TableArgs {
    std::vector<std::string> id{"1,0.5,1", "1,1,1", "1,1.5,0.5"};
    std::vector<double> eta_id{0.5, 1.0, 2.0};
};

double table2_tanh_form(double eta, double u) {
    const double tp = std::tanh(u * std::exp(eta)), tm = std::tanh(u * std::exp(-eta));
    return 2.0 * std::sqrt(tp * tm) / (std::exp(eta) * tp + std::exp(-eta) * tm);
}

// Tabulated S_vN limit with sign s in front of sinh² (s = −1 is the quoted form).
double table3_expression(double x, double s) {
    const double sh2 = std::sinh(x) * std::sinh(x);
    return 2.0 * (1.0 + s * sh2) * std::log(std::cosh(x)) - sh2 * std::log(sh2);
}

int run_table(const TableArgs &a) {
    std::printf("Table 1: limiting couplings\n");
    std::printf("  weak   (C3 -> 0, theta_w = 0):            P=1, S_vN=0\n");
    std::printf("  strong (C3 -> 2 sqrt(C1 C2), eta -> inf): P -> 0, S_vN -> inf\n");
    std::printf("  strong-coupling trend, m1=m2=C1=C2=1, u=1:\n");
    for (int k = 2; k <= 8; ++k) {
        const double c3 = 2.0 * (1.0 - std::pow(10.0, -k));
        const auto f = coho::derive_frame(coho::OscillatorSystem<>{1, 1, 1, 1, c3, 1});
        const auto p = coho::purity(coho::ReducedPoint(f.eta, f.theta, 1.0));
        std::printf("    C3=2(1-1e-%d)  eta=%.6f  P=%.6e  S_vN=%.6f\n", k, f.eta, p.value(),
                    coho::von_neumann(p));
    }

    std::printf("\nTable 2: identical oscillators (m1=m2=1, C1=C2), theta=pi/2\n");
    for (const auto &triple : a.id) {
        const auto parts = split(triple, ',');
        if (parts.size() != 3) throw Usage("--id expects C1,C3,u triples");
        const double c1 = std::stod(parts[0]), c3 = std::stod(parts[1]), uu = std::stod(parts[2]);
        const auto f = coho::identical_frame(c1, c3, 1.0);
        const auto p = coho::purity(coho::ReducedPoint(f.eta, f.theta, uu));
        std::printf("  C1=%g C3=%g u=%g  eta_id=%.12f  P=%.12f  (tanh formula %.12f)  S_vN=%.12f\n", c1, c3,
                    uu, f.eta, p.value(), table2_tanh_form(f.eta, uu), coho::von_neumann(p));
    }

    std::printf("\nTable 3: identical oscillators at theta=pi/2, high and low temperature limits\n");
    for (double eta : a.eta_id) {
        const double pi_half = std::numbers::pi / 2;
        const auto cold = coho::purity(coho::ReducedPoint(eta, pi_half, 1e3));
        const auto hot = coho::purity(coho::ReducedPoint(eta, pi_half, 1e-9));
        const double p_cold = 1.0 / std::cosh(eta), p_hot = 1.0 / std::cosh(2.0 * eta);
        std::printf("  eta_id=%g\n", eta);
        std::printf("    beta=inf  P=1/cosh(eta)=%.12f  (u=1e3: %.12f)  S_vN=%.12f  [quoted form*: %.12f]\n",
                    p_cold, cold.value(), coho::von_neumann(p_cold), table3_expression(eta / 2, -1.0));
        std::printf("    beta=0    P=1/cosh(2eta)=%.12f  (u=1e-9: %.12f)  S_vN=%.12f  [quoted form*: %.12f]\n",
                    p_hot, hot.value(), coho::von_neumann(p_hot), table3_expression(eta, -1.0));
    }
    std::printf("  * The often-quoted tabulated entropy reads 2(1 - sinh^2 x) ln cosh x - sinh^2 x ln sinh^2 x\n"
                "    (x = eta/2 at beta=inf, x = eta at beta=0). Substituting the purity into S_vN gives\n"
                "    2(1 + sinh^2 x) ln cosh x - sinh^2 x ln sinh^2 x, which is what S_vN above evaluates.\n");
    return kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::uint64_t seed = 1;
    double tolerance_scale = 1.0;
};

int run_verify(const VerifyArgs &a) {
    coho::verify::Options opt;
    opt.seed = a.seed;
    opt.tolerance_scale = a.tolerance_scale;
    const auto sum = coho::verify::run(opt);
    for (const auto &r : sum.reports) std::printf("%s\n", coho::verify::format(r).c_str());
    std::printf("%zu checks, %zu failed\n", sum.reports.size(), sum.failed);
    return sum.passed() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Thermal entanglement of two coupled harmonic oscillators"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    std::string config_unused;

    PointArgs pa;
    auto *point = app.add_subcommand("point", "Evaluate purity and entropies at one point");
    point->add_option("--m1", pa.m1, "mass of oscillator 1");
    point->add_option("--m2", pa.m2, "mass of oscillator 2");
    point->add_option("--c1", pa.c1, "spring constant C1");
    point->add_option("--c2", pa.c2, "spring constant C2");
    point->add_option("--c3", pa.c3, "coupling constant C3");
    point->add_option("--hbar", pa.hbar, "reduced Planck constant");
    point->add_option("--beta", pa.beta, "inverse temperature");
    point->add_option("--eta", pa.eta, "coupling parameter");
    point->add_option("--theta", pa.theta, "mixing angle");
    point->add_option("--u", pa.u, "dimensionless inverse temperature hbar*omega*beta");
    point->add_option("--show", pa.show, "comma list from P,S1,S2,S3,SL,xi,eta,theta,u")->capture_default_str();
    point->add_option("--q", pa.q, "extra Renyi orders")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

    SweepArgs sa;
    auto *sweep = app.add_subcommand("sweep", "Write a two-axis grid as CSV");
    sweep->add_option("--preset", sa.preset, "fig1 .. fig6");
    sweep->add_option("--output-dir", sa.output_dir, "directory for preset files")->capture_default_str();
    sweep->add_option("--output", sa.output, "CSV path for a custom sweep");
    sweep->add_option("--outer", sa.outer, "outer axis (eta, theta, u)")->capture_default_str();
    sweep->add_option("--outer-start", sa.outer_start)->capture_default_str();
    sweep->add_option("--outer-stop", sa.outer_stop)->capture_default_str();
    sweep->add_option("--outer-count", sa.outer_count)->capture_default_str();
    sweep->add_option("--inner", sa.inner, "inner axis (eta, theta, u)")->capture_default_str();
    sweep->add_option("--inner-start", sa.inner_start)->capture_default_str();
    sweep->add_option("--inner-stop", sa.inner_stop)->capture_default_str();
    sweep->add_option("--inner-count", sa.inner_count)->capture_default_str();
    sweep->add_option("--eta", sa.eta, "fixed eta")->capture_default_str();
    sweep->add_option("--theta", sa.theta, "fixed theta")->capture_default_str();
    sweep->add_option("--u", sa.u, "fixed u")->capture_default_str();
    sweep->add_option("--quantity", sa.quantity, "P, S1, S2, S3 or Sq")->capture_default_str();
    sweep->add_option("--q", sa.q, "order for Sq")->capture_default_str();
    sweep->add_option("--workers", sa.workers, "threads, 0 = all cores")->capture_default_str();

    TableArgs ta;
    auto *table = app.add_subcommand("table", "Print the limiting-case tables");
    table->add_option("--id", ta.id, "C1,C3,u triples for the identical-oscillator table")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    table->add_option("--eta-id", ta.eta_id, "eta_id values for the temperature-limit table")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
        ->delimiter(',');

    VerifyArgs va;
    auto *verify = app.add_subcommand("verify", "Run the oracle suite");
    verify->add_option("--seed", va.seed, "seed for random points")->capture_default_str();
    verify->add_option("--tolerance-scale", va.tolerance_scale, "multiplier on every tolerance")
        ->capture_default_str();

    for (auto *sub : {point, sweep, table, verify})
        sub->add_option("--config", config_unused, "key=value file; command-line flags take precedence");

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        // Splice config contents in after the subcommand name.
        if (!args.empty()) {
            if (auto *sub = app.get_subcommand_no_throw(args[0])) {
                std::vector<std::string> rest(args.begin() + 1, args.end()), injected;
                for (std::size_t i = 0; i < rest.size(); ++i) {
                    std::string path;
                    if (rest[i] == "--config" && i + 1 < rest.size()) path = rest[i + 1];
                    else if (rest[i].rfind("--config=", 0) == 0) path = rest[i].substr(9);
                    else continue;
                    auto extra = config_arguments(path, *sub);
                    injected.insert(injected.end(), extra.begin(), extra.end());
                }
                args.erase(args.begin() + 1, args.end());
                args.insert(args.end(), injected.begin(), injected.end());
                args.insert(args.end(), rest.begin(), rest.end());
            }
        }
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInvalid;
    } catch (const Usage &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInvalid;
    }

    try {
        if (point->parsed()) return run_point(pa);
        if (sweep->parsed()) return run_sweep(sa);
        if (table->parsed()) return run_table(ta);
        if (verify->parsed()) return run_verify(va);
    } catch (const coho::DegenerateCoupling &e) {
        std::fprintf(stderr, "error: degenerate coupling: %s\n", e.what());
        return kDegenerate;
    } catch (const Usage &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInvalid;
    } catch (const coho::Error &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInvalid;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInvalid;
    }
    return kInvalid;
}
