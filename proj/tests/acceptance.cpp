// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dicke/errors.hpp"
#include "dicke/exact.hpp"
#include "dicke/states.hpp"
#include "dicke/sweep.hpp"
#include "dicke/table_io.hpp"
#include "dicke/variational.hpp"

using namespace dicke;
namespace fs = std::filesystem;
constexpr double pi = std::numbers::pi;

namespace {

std::mt19937_64 rng(8675309);
double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) detail = what;
        ok = ok && cond;
    }
};

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<void(Outcome&)>& body) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.ok = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && secs > limit_s) out.require(false, "runtime " + num(secs) + " s over " + num(limit_s) + " s");
    if (!out.ok) ++failures;
    std::printf("[%s] %2d %-34s %8.3f s%s%s\n", out.ok ? "PASS" : "FAIL", id, name, secs,
                out.detail.empty() ? "" : "  ", out.detail.c_str());
    std::fflush(stdout);
}

// Closed forms at omega = Omega = 1, per atom, written out independently of the library.
double e_minus_unit(double g) { return g <= 1 ? -0.5 : -(g * g / 4) * (1 + 1 / std::pow(g, 4)); }
double e_plus_unit(double g) { return g <= 1 ? 0.5 : (g * g / 4) * (3 - 1 / std::pow(g, 4)); }
double jz_unit(double g) { return g <= 1 ? -0.5 : -0.5 / (g * g); }
double gamma_unit(double g) { return g <= 1 ? 0.0 : pi * (std::pow(g, 4) - 1) / (2 * g * g); }
double dgamma_unit(double g) { return g < 1 ? 0.0 : pi * g * (1 + 1 / std::pow(g, 4)); }

struct Draw {
    ModelParams p;
    Variant variant;
};

// Both phases, both variants; the immediate neighbourhood of g_c is left out.
std::vector<Draw> parameter_draws() {
    std::vector<Draw> draws;
    for (int i = 0; i < 20; ++i) {
        const Variant variant = i % 2 == 0 ? Variant::full : Variant::rwa;
        const double omega = uniform(0.5, 2.0);
        const double Omega = uniform(0.5, 2.0);
        const int n = uniform_int(1, 6);
        const double gc = critical_coupling(make_params(omega, Omega, 0, n), variant);
        const double ratio = (i / 2) % 2 == 0 ? uniform(0.0, 0.8) : uniform(1.2, 2.2);
        draws.push_back({make_params(omega, Omega, ratio * gc, n), variant});
    }
    return draws;
}

std::string slurp(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream buf;
    buf << is.rdbuf();
    return buf.str();
}

int run_cli_process(const std::string& args, const fs::path& dir) {
    const std::string cmd = std::string(DICKE_CLI_PATH) + " " + args + " > " + (dir / "stdout.txt").string() +
                            " 2> " + (dir / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main() {
    const std::vector<Draw> draws = parameter_draws();

    criterion(1, "normal-phase plateau", 1.0, [](Outcome& out) {
        std::vector<double> gs;
        for (int i = 0; i <= 1000; ++i) gs.push_back(i / 1000.0);
        for (int i = 0; i < 1000; ++i) gs.push_back(uniform(0.0, 1.0));
        for (double g : gs) {
            for (int n : {1, 3, 16}) {
                const ModelParams p = make_params(1, 1, g, n);
                const BranchResult r = branch_energy(p, Variant::full, Branch::minus);
                out.require(r.energy_per_atom == -0.5, "E-/N at g = " + num(g));
                out.require(r.jz && *r.jz / n == -0.5, "Jz/N at g = " + num(g));
                out.require(r.gamma == 0.0, "gamma at g = " + num(g));
                out.require(r.field.intensity() == 0.0 && stationary_intensity(p, Variant::full) == 0.0,
                            "intensity at g = " + num(g));
                out.require(r.phase == Phase::normal, "phase at g = " + num(g));
            }
        }
    });

    criterion(2, "superradiant spot checks at g = 2", 1.0, [](Outcome& out) {
        for (int n : {1, 2, 7, 40}) {
            const ModelParams p = make_params(1, 1, 2, n);
            const BranchResult lo = branch_energy(p, Variant::full, Branch::minus);
            const BranchResult hi = branch_energy(p, Variant::full, Branch::plus);
            const double dn = n;
            out.require(std::abs(lo.energy_per_atom + 1.0625) <= 1e-12, "E-/N = " + num(lo.energy_per_atom));
            out.require(std::abs(hi.energy_per_atom - 2.9375) <= 1e-12, "E+/N = " + num(hi.energy_per_atom));
            out.require(lo.jz && std::abs(*lo.jz / dn + 0.125) <= 1e-12, "Jz/N");
            out.require(std::abs(lo.field.intensity() / dn - 0.9375) <= 1e-12, "intensity/N");
            out.require(std::abs(lo.gamma / dn - 15 * pi / 8) <= 1e-12, "gamma/N = " + num(lo.gamma / dn));
        }
    });

    criterion(3, "critical-point relation", 1.0, [](Outcome& out) {
        for (int i = 0; i < 20; ++i) {
            const ModelParams p = make_params(uniform(0.01, 10), uniform(0.01, 10), 0, 1);
            out.require(critical_coupling(p, Variant::rwa) == 2 * critical_coupling(p, Variant::full),
                        "draw " + std::to_string(i));
        }
    });

    criterion(4, "second-order transition", 1.0, [](Outcome& out) {
        const double h = 1e-4;
        auto check = [&](double omega, double Omega, int n) {
            const double gc = critical_coupling(make_params(omega, Omega, 0, n), Variant::full);
            auto e = [&](double g) {
                return branch_energy(make_params(omega, Omega, g, n), Variant::full, Branch::minus).energy_per_atom;
            };
            const double right = (e(gc + h) - e(gc)) / h;
            const double left = (e(gc) - e(gc - h)) / h;
            out.require(std::abs(right) <= 1e-3, "right derivative " + num(right));
            out.require(std::abs(left) <= 1e-3, "left derivative " + num(left));
            const double eps = 1e-9 * gc;
            out.require(std::abs(e(gc + eps) - e(gc - eps)) <= 1e-12, "jump across g_c");
            out.require(std::abs(e(gc) - e(std::nextafter(gc, 1e9))) <= 1e-12, "jump at g_c");
        };
        check(1, 1, 1);
        for (int i = 0; i < 10; ++i) check(uniform(0.5, 2), uniform(0.5, 2), uniform_int(1, 10));
    });

    criterion(5, "geometric-phase kink and scaling", 1.0, [](Outcome& out) {
        for (int i = 0; i < 10; ++i) {
            const double omega = i == 0 ? 1.0 : uniform(0.5, 2);
            const double Omega = i == 0 ? 1.0 : uniform(0.5, 2);
            const int n = i == 0 ? 1 : uniform_int(1, 10);
            const double gc = std::sqrt(omega * Omega);
            const ModelParams at = make_params(omega, Omega, gc, n);
            const double left = gp_derivative(at, Variant::full, Side::left) / n;
            const double right = gp_derivative(at, Variant::full, Side::right) / n;
            const double jump = 2 * pi * Omega * Omega / std::pow(gc, 3);
            out.require(left == 0.0, "left slope " + num(left));
            out.require(std::abs(right - jump) <= 1e-12 * jump, "right slope " + num(right));
            if (i == 0) out.require(std::abs(right - 2 * pi) <= 1e-12, "slope at unit parameters");

            std::vector<double> gaps;
            for (double delta : {1e-2, 1e-3, 1e-4}) gaps.push_back(gp_scaling_check(at, delta).relative_gap);
            for (std::size_t k = 0; k + 1 < gaps.size(); ++k) {
                const double ratio = gaps[k] / gaps[k + 1];
                out.require(ratio > 9.5 && ratio < 10.5, "gap ratio " + num(ratio));
            }
        }
    });

    criterion(6, "minimizer matches closed form", 10.0, [&](Outcome& out) {
        for (const Draw& d : draws) {
            const MinimizerResult m = numeric_minimize(d.p, d.variant);
            const BranchResult c = branch_energy(d.p, d.variant, Branch::minus);
            const double de = std::abs(m.energy - c.energy) / d.p.n_atoms;
            out.require(de <= 1e-8, "energy per atom off by " + num(de) + " at g = " + num(d.p.g));
            const double ic = c.field.intensity();
            const double di = std::abs(m.field.intensity() - ic) / std::max(ic, 1.0);
            out.require(di <= 1e-6, "intensity off by " + num(di) + " at g = " + num(d.p.g));
        }
    });

    criterion(7, "exact-diagonalization consistency", 120.0, [&](Outcome& out) {
        for (const Draw& d : draws) {
            const ExactResult x = exact_ground(d.p, d.variant);
            const double var = branch_energy(d.p, d.variant, Branch::minus).energy;
            out.require(x.converged, "unconverged at g = " + num(d.p.g));
            // equality holds exactly in the RWA normal phase, so allow a few ulps
            const double ulps = 8 * std::numeric_limits<double>::epsilon() * std::abs(var);
            out.require(x.energy <= var + ulps, "bound violated at g = " + num(d.p.g) + " by " + num(x.energy - var));
        }
        for (Variant variant : {Variant::full, Variant::rwa}) {
            for (int n : {1, 4, 9, 32}) {
                const ModelParams p = make_params(uniform(0.5, 2), uniform(0.5, 2), 0, n);
                const double gap = branch_energy(p, variant, Branch::minus).energy - exact_ground(p, variant).energy;
                out.require(std::abs(gap) <= 1e-10, "gap at g = 0 is " + num(gap));
            }
        }
        const std::vector<ScanRow> scan =
            convergence_scan(make_params(1, 1, 2, 1), Variant::full, {4, 8, 16, 32}, CutoffPolicy{});
        for (std::size_t i = 0; i < scan.size(); ++i) {
            out.require(scan[i].cutoff_used <= 200, "cutoff " + std::to_string(scan[i].cutoff_used));
            out.require(scan[i].gap >= 0, "negative gap at N = " + std::to_string(scan[i].n_atoms));
            if (i > 0)
                out.require(scan[i].gap_per_atom < scan[i - 1].gap_per_atom,
                            "gap/N not decreasing at N = " + std::to_string(scan[i].n_atoms));
        }
    });

    criterion(8, "trial-energy identity", 30.0, [](Outcome& out) {
        for (int i = 0; i < 20; ++i) {
            const Variant variant = i % 2 == 0 ? Variant::full : Variant::rwa;
            const Branch branch = i % 4 < 2 ? Branch::minus : Branch::plus;
            const ModelParams p = make_params(uniform(0.5, 2), uniform(0.5, 2), uniform(0, 3), uniform_int(1, 8));
            const double u = uniform(-2, 2);
            const double v = variant == Variant::rwa ? uniform(-2, 2) : 0.0;
            const EffectiveSpinFrame f = effective_frame(p, variant, u, v);
            const int cutoff = min_coherent_cutoff(u * u + v * v);
            const Pole pole = branch == Branch::minus ? Pole::south : Pole::north;
            const double numeric = trial_energy(p, variant, u, v, f.theta, f.phi, pole, cutoff);
            const double closed = energy_functional(p, variant, u, v, branch);
            out.require(std::abs(numeric - closed) <= 1e-8, "draw " + std::to_string(i) + " off by " +
                                                                   num(numeric - closed));
        }
    });

    criterion(9, "figure reproduction", 0, [](Outcome& out) {
        const fs::path dir = fs::temp_directory_path() / "dicke_acceptance";
        fs::create_directories(dir);
        for (const char* fig : {"fig1", "fig2"}) {
            const fs::path stem = dir / fig;
            out.require(run_cli_process(std::string(fig) + " --out " + stem.string(), dir) == 0,
                        std::string(fig) + " exit status");
            const std::string svg = slurp(stem.string() + ".svg");
            out.require(!svg.empty(), std::string(fig) + " svg missing");
            out.require(run_cli_process(std::string(fig) + " --out " + stem.string(), dir) == 0, "rerun");
            out.require(slurp(stem.string() + ".svg") == svg, std::string(fig) + " svg not deterministic");
            out.require(svg.find("stroke-dasharray=\"2,3\"") != std::string::npos, "critical marker missing");
        }

        const SweepTable f1 = read_csv((dir / "fig1.csv").string());
        const SweepTable f2 = read_csv((dir / "fig2.csv").string());
        const std::vector<double> g = f1.column("g");
        const std::vector<double> em = f1.column("e_minus_per_atom");
        const std::vector<double> ep = f1.column("e_plus_per_atom");
        const std::vector<double> jz = f1.column("jz_per_atom");
        const std::vector<double> ga = f2.column("gamma_per_atom");
        const std::vector<double> dg = f2.column("dgamma_dg_per_atom");
        const std::vector<double> g2 = f2.column("g");
        out.require(g.size() == 201 && g2.size() == g.size(), "grid size");
        for (std::size_t i = 0; i < g2.size() && i < g.size(); ++i)
            out.require(g2[i] == (g[i] == 1.0 ? 1.0 + 1e-12 : g[i]), "grid mismatch at " + num(g[i]));
        out.require(f1.meta("g_c") == "1" && f2.meta("g_c") == "1", "g_c metadata");
        for (std::size_t i = 0; i < g.size(); ++i) {
            out.require(std::abs(em[i] - e_minus_unit(g[i])) <= 1e-12, "E- at g = " + num(g[i]));
            out.require(std::abs(ep[i] - e_plus_unit(g[i])) <= 1e-12, "E+ at g = " + num(g[i]));
            out.require(std::abs(jz[i] - jz_unit(g[i])) <= 1e-12, "Jz at g = " + num(g[i]));
            out.require(std::abs(ga[i] - gamma_unit(g2[i])) <= 1e-12 * std::max(1.0, gamma_unit(g2[i])),
                        "gamma at g = " + num(g2[i]));
            out.require(std::abs(dg[i] - dgamma_unit(g2[i])) <= 1e-12 * std::max(1.0, dgamma_unit(g2[i])),
                        "dgamma at g = " + num(g2[i]));
        }

        // the kink: largest change in slope of Jz and the dgamma jump both sit at g = 1
        std::size_t kink = 0;
        double worst = -1;
        for (std::size_t i = 1; i + 1 < g.size(); ++i) {
            const double bend = std::abs(jz[i + 1] - 2 * jz[i] + jz[i - 1]);
            if (bend > worst) worst = bend, kink = i;
        }
        out.require(g[kink] == 1.0, "Jz kink at g = " + num(g[kink]));
        std::size_t first = 0;
        while (first < dg.size() && dg[first] == 0.0) ++first;
        out.require(first < g.size() && g[first] == 1.0, "dgamma onset at g = " + num(g2[first]));
    });

    criterion(10, "SCS minimum uncertainty", 1.0, [](Outcome& out) {
        for (int i = 0; i < 200; ++i) {
            const int n = uniform_int(1, 20);
            const double theta = uniform(0, pi);
            const double phi = uniform(0, 2 * pi);
            const Pole pole = i % 2 == 0 ? Pole::north : Pole::south;
            const FrameUncertainty u = scs_frame_uncertainty(n, theta, phi, pole);
            out.require(std::abs(u.half_abs_jz - u.delta_jx * u.delta_jy) <= 1e-10,
                        "N = " + std::to_string(n) + " off by " + num(u.half_abs_jz - u.delta_jx * u.delta_jy));
        }
    });

    std::printf("%s: %d failure(s)\n", failures == 0 ? "ALL PASS" : "FAILED", failures);
    return failures == 0 ? 0 : 1;
}
