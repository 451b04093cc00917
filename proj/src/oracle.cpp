#include "powdual/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "powdual/quadrature.hpp"

namespace powdual::oracle {

void RadialProblem::validate() const {
    if (!effective_potential) throw DomainError("RadialProblem: missing potential sampler");
    if (!(mass > 0.0) || !(hbar > 0.0))
        throw DomainError("RadialProblem: mass and hbar must be positive");
    if (!(L > 0.0)) throw DomainError("RadialProblem: L must be positive");
    if (!(r_min > 0.0)) throw DomainError("RadialProblem: r_min must be positive");
    if (n_points < 64) throw DomainError("RadialProblem: needs at least 64 grid points");
}

namespace {

// All sweeps work on the substitution u(r) = sqrt(r) v(ln r), which turns the
// radial equation into v'' = W(x) v with
//   W(x) = e^{2x} (2m/hbar^2)(V_eff(e^x) - E) + 1/4
// on a uniform x grid.  W is smooth in x for power-law potentials all the way
// into the origin, so Numerov keeps its full fourth order.

struct Workspace {
    std::vector<double> x, r, W, f, vL, vR;
};

// outermost classical turning point + ~18 WKB e-folds of decay
double auto_r_max(const RadialProblem& p, double E_top) {
    // first reach the classical region (skip the inner centrifugal wall),
    // then ride it to the outermost turning point
    double r = std::max(2.0 * p.r_min, 1e-4);
    while (p.effective_potential(r) > E_top && r < 1e7) r *= 1.05;
    while (p.effective_potential(r) <= E_top && r < 1e7) r *= 1.02;
    double s = 0.0;
    const double c = 2.0 * p.mass / (p.hbar * p.hbar);
    while (s < 36.0 && r < 1e7) {
        const double q = c * (p.effective_potential(r) - E_top);
        s += std::sqrt(std::max(q, 0.0)) * 0.02 * r;
        r *= 1.02;
    }
    return r;
}

struct SweepResult {
    double mismatch;
    int nodes;
    int match_index;
};

void fill_tables(const RadialProblem& p, double E, double r_max, Workspace& ws) {
    const int n = p.n_points;
    ws.x.resize(n);
    ws.r.resize(n);
    ws.W.resize(n);
    ws.f.resize(n);
    const double x0 = std::log(p.r_min), x1 = std::log(r_max);
    const double h = (x1 - x0) / (n - 1);
    const double c = 2.0 * p.mass / (p.hbar * p.hbar);
    for (int i = 0; i < n; ++i) {
        ws.x[i] = x0 + h * i;
        ws.r[i] = std::exp(ws.x[i]);
        ws.W[i] = ws.r[i] * ws.r[i] * c * (p.effective_potential(ws.r[i]) - E) + 0.25;
        ws.f[i] = 1.0 - h * h / 12.0 * ws.W[i];
    }
}

SweepResult sweep(const RadialProblem& p, double E, double r_max, Workspace& ws,
                  bool stop_forward_at_match = false) {
    fill_tables(p, E, r_max, ws);
    const int n = p.n_points;
    const double h = ws.x[1] - ws.x[0];

    // match at the outermost classical turning point
    int m = n / 2;
    for (int i = n - 1; i >= 0; --i) {
        if (p.effective_potential(ws.r[i]) <= E) {
            m = i;
            break;
        }
    }
    m = std::clamp(m, 2, n - 4);

    auto& vL = ws.vL;
    auto& vR = ws.vR;
    vL.assign(n, 0.0);
    vR.assign(n, 0.0);

    // forward: v ~ e^{L x} start; the full range feeds Sturm node counting,
    // while eigenfunction assembly stops at the match so later rescales
    // cannot crush the stored branch
    const int fwd_end = stop_forward_at_match ? m + 1 : n - 1;
    vL[0] = 1e-20;
    vL[1] = 1e-20 * std::exp(p.L * h);
    int nodes = 0;
    for (int i = 1; i + 1 <= fwd_end; ++i) {
        vL[i + 1] = ((12.0 - 10.0 * ws.f[i]) * vL[i] - ws.f[i - 1] * vL[i - 1]) / ws.f[i + 1];
        if (vL[i + 1] != 0.0 && std::signbit(vL[i + 1]) != std::signbit(vL[i]) && vL[i] != 0.0)
            ++nodes;
        // rescale the whole prefix so the stored branch stays on one scale
        if (std::fabs(vL[i + 1]) > 1e250)
            for (int j = 0; j <= i + 1; ++j) vL[j] *= 1e-250;
    }

    // backward: WKB decaying start
    vR[n - 1] = 1e-250;
    vR[n - 2] = vR[n - 1] * std::exp(std::sqrt(std::max(ws.W[n - 2], 0.0)) * h);
    for (int i = n - 2; i > m - 2 && i > 0; --i) {
        vR[i - 1] = ((12.0 - 10.0 * ws.f[i]) * vR[i] - ws.f[i + 1] * vR[i + 1]) / ws.f[i - 1];
        if (std::fabs(vR[i - 1]) > 1e250)
            for (int j = n - 1; j >= i - 1; --j) vR[j] *= 1e-250;
    }

    const double wr = vL[m + 1] * vR[m] - vL[m] * vR[m + 1];
    const double scale =
        std::fabs(vL[m] * vR[m]) + std::fabs(vL[m + 1] * vR[m + 1]) + 1e-300;
    return SweepResult{wr / scale, nodes, m};
}

// refines E within a bracket that contains exactly one eigenvalue
double refine(const RadialProblem& p, double r_max, Workspace& ws, double a, double b,
              double fa, double fb) {
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = sweep(p, mid, r_max, ws).mismatch;
        if (fa * fm <= 0.0) {
            b = mid;
            fb = fm;
        } else {
            a = mid;
            fa = fm;
        }
        if (b - a < 1e-13 * (std::fabs(a) + std::fabs(b) + 1e-4)) break;
    }
    // secant polish
    double x0 = a, f0 = fa, x1 = b, f1 = fb;
    for (int it = 0; it < 6 && f1 != f0; ++it) {
        const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if (!(x2 >= std::min(a, b) && x2 <= std::max(a, b))) break;
        const double f2 = sweep(p, x2, r_max, ws).mismatch;
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        if (f2 == 0.0) break;
    }
    return x1;
}

green::SpectralLine assemble_line(const RadialProblem& p, double E, double r_max,
                                  Workspace& ws) {
    SweepResult res = sweep(p, E, r_max, ws, /*stop_forward_at_match=*/true);
    const int n = p.n_points;
    const int m = res.match_index;

    // glue: rescale the forward branch onto the backward one at the match
    // point, then bring the whole function to O(1) so the norm cannot
    // underflow (each branch lives at an arbitrary tiny scale)
    auto u = std::make_shared<std::vector<double>>(n, 0.0);
    auto xs = std::make_shared<std::vector<double>>(ws.x);
    const double ratio = ws.vR[m] / ws.vL[m];
    for (int i = 0; i <= m; ++i) (*u)[i] = ws.vL[i] * ratio * std::sqrt(ws.r[i]);
    for (int i = m + 1; i < n; ++i) (*u)[i] = ws.vR[i] * std::sqrt(ws.r[i]);
    double raw_peak = 0.0;
    for (double v : *u) raw_peak = std::max(raw_peak, std::fabs(v));
    if (!(raw_peak > 0.0)) throw ConvergenceError("numerov_eigen: degenerate eigenfunction");
    for (auto& v : *u) v /= raw_peak;

    // Simpson norm of u^2 dr = u^2 r dx
    const double h = ws.x[1] - ws.x[0];
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
        const double wgt = (i == 0 || i == n - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        norm += wgt * (*u)[i] * (*u)[i] * ws.r[i];
    }
    norm *= h / 3.0;
    double scale = 1.0 / std::sqrt(norm);

    // fix the sign: first substantial lobe positive
    double peak = 0.0;
    for (double v : *u) peak = std::max(peak, std::fabs(v));
    for (int i = 0; i < n; ++i) {
        if (std::fabs((*u)[i]) > 1e-3 * peak) {
            if ((*u)[i] < 0.0) scale = -scale;
            break;
        }
    }
    for (auto& v : *u) v *= scale;
    peak *= std::fabs(scale);

    // interior node count of the assembled eigenfunction
    int nodes = 0;
    double prev = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = (*u)[i];
        if (std::fabs(v) < 1e-9 * peak) continue;
        if (prev != 0.0 && std::signbit(v) != std::signbit(prev)) ++nodes;
        prev = v;
    }

    green::SpectralLine line;
    line.n = nodes;
    line.ell = p.ell;
    line.energy = E;
    const double x_lo = ws.x.front(), x_hi = ws.x.back();
    line.eigenfunction = [u, xs, x_lo, x_hi, h](double r) {
        if (!(r > 0.0)) return 0.0;
        const double x = std::log(r);
        if (x <= x_lo || x >= x_hi) return 0.0;
        const double t = (x - x_lo) / h;
        const int i = std::min(static_cast<int>(t), static_cast<int>(u->size()) - 2);
        const double frac = t - i;
        return (1.0 - frac) * (*u)[i] + frac * (*u)[i + 1];
    };
    return line;
}

}  // namespace

int count_nodes_below(const RadialProblem& problem, double E) {
    problem.validate();
    Workspace ws;
    const double r_max = problem.r_max > 0.0 ? problem.r_max : auto_r_max(problem, E);
    return sweep(problem, E, r_max, ws).nodes;
}

double resolve_r_max(const RadialProblem& problem, double E_top) {
    problem.validate();
    return problem.r_max > 0.0 ? problem.r_max : auto_r_max(problem, E_top);
}

double shoot_mismatch(const RadialProblem& problem, double E) {
    problem.validate();
    Workspace ws;
    const double r_max = problem.r_max > 0.0 ? problem.r_max : auto_r_max(problem, E);
    return sweep(problem, E, r_max, ws).mismatch;
}

std::vector<green::SpectralLine> numerov_eigen(const RadialProblem& problem,
                                               EnergyWindow window, int count) {
    problem.validate();
    if (!(window.hi > window.lo)) throw DomainError("numerov_eigen: empty window");
    if (count < 1) throw DomainError("numerov_eigen: count must be >= 1");

    Workspace ws;
    const double r_max = problem.r_max > 0.0 ? problem.r_max : auto_r_max(problem, window.hi);

    const int below = sweep(problem, window.lo, r_max, ws).nodes;
    const int above = sweep(problem, window.hi, r_max, ws).nodes;
    const int available = above - below;
    if (available <= 0)
        throw NoBracketError("numerov_eigen: no eigenvalue inside the window");

    std::vector<green::SpectralLine> lines;
    for (int idx = 0; idx < std::min(count, available); ++idx) {
        const int target = below + idx;
        double lo = window.lo, hi = window.hi;
        double a_keep = 0.0, b_keep = 0.0;
        bool have_a = false, have_b = false;
        // isolate one eigenvalue by node count; stop while the bracket is
        // still wide enough that the matching function at its ends sits well
        // above floating-point noise
        for (int it = 0; it < 240; ++it) {
            const double mid = 0.5 * (lo + hi);
            const int nd = sweep(problem, mid, r_max, ws).nodes;
            if (nd <= target) {
                lo = mid;
                if (nd == target) {
                    a_keep = mid;
                    have_a = true;
                }
            } else {
                hi = mid;
                if (nd == target + 1) {
                    b_keep = mid;
                    have_b = true;
                }
            }
            if (have_a && have_b &&
                hi - lo < 1e-3 * (std::fabs(hi) + std::fabs(lo) + 1e-2))
                break;
        }
        if (!have_a || !have_b)
            throw NoBracketError("numerov_eigen: node-count bisection failed to isolate level");

        double fa = sweep(problem, a_keep, r_max, ws).mismatch;
        double fb = sweep(problem, b_keep, r_max, ws).mismatch;
        if (fa * fb > 0.0) {
            // the kept endpoints may sit asymmetrically; scan for the flip
            bool found = false;
            double prev_e = a_keep, prev_f = fa;
            for (int s = 1; s <= 32 && !found; ++s) {
                const double e = a_keep + (b_keep - a_keep) * s / 32.0;
                const double f = sweep(problem, e, r_max, ws).mismatch;
                if (prev_f * f <= 0.0) {
                    fa = prev_f;
                    fb = f;
                    a_keep = prev_e;
                    b_keep = e;
                    found = true;
                }
                prev_e = e;
                prev_f = f;
            }
            if (!found)
                throw NoBracketError("numerov_eigen: matching function has no sign change");
        }
        const double E = refine(problem, r_max, ws, a_keep, b_keep, fa, fb);
        lines.push_back(assemble_line(problem, E, r_max, ws));
    }
    return lines;
}

double quadrature_norm(const std::function<double(double)>& sampler, double r_lo,
                       double r_hi, double target_rel_err) {
    if (!(r_hi > r_lo)) throw DomainError("quadrature_norm: requires r_hi > r_lo");
    return quadrature::tanh_sinh(
        [&](double r) {
            const double v = sampler(r);
            return v * v;
        },
        r_lo, r_hi, target_rel_err);
}

}  // namespace powdual::oracle
