// SPDX-License-Identifier: Apache-2.0
//
// Mellin-Barnes contour integration for one- and two-variable Fox H functions.
//
// Every gamma factor is stored as Gamma(u + vx s + vy t)^{power}, power = +1
// for numerators and -1 for denominators, in the convention where the
// integrand carries x^{-s} y^{-t}. The bivariate kernel of BivFoxHParams is
// mapped into this convention by s -> -s, t -> -t.

#include "thzrelay/errors.hpp"
#include "thzrelay/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace thz::specfun {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// How far an unbounded strip is explored when placing the contour.
constexpr double kOpenReach = 150.0;
// Contributions below exp(-kPrune) of the reference value are skipped.
constexpr double kPrune = 50.0;

struct Factor {
    double u;
    double vx;
    double vy;
    int power;
    std::string label;
};

std::string pair_label(const char* name, std::size_t index, const char* axis)
{
    std::ostringstream os;
    os << axis << name << '[' << index + 1 << ']';
    return os.str();
}

// Standard one-variable kernel of `p`, placed on axis 0 (x) or 1 (y).
void append_kernel(const FoxHParams& p, int axis, std::vector<Factor>& out)
{
    const char* tag = axis == 0 ? "x:" : "y:";
    auto push = [&](double u, double v, int power, std::string label) {
        out.push_back({u, axis == 0 ? v : 0.0, axis == 0 ? 0.0 : v, power, std::move(label)});
    };
    for (std::size_t j = 0; j < p.lower.size(); ++j) {
        const auto& b = p.lower[j];
        if (static_cast<int>(j) < p.m)
            push(b.a, b.A, +1, pair_label("b", j, tag));
        else
            push(1.0 - b.a, -b.A, -1, pair_label("b", j, tag));
    }
    for (std::size_t j = 0; j < p.upper.size(); ++j) {
        const auto& a = p.upper[j];
        if (static_cast<int>(j) < p.n)
            push(1.0 - a.a, -a.A, +1, pair_label("a", j, tag));
        else
            push(a.a, a.A, -1, pair_label("a", j, tag));
    }
}

std::vector<Factor> factors_2d(const BivFoxHParams& p)
{
    std::vector<Factor> out;
    for (std::size_t j = 0; j < p.joint_upper.size(); ++j) {
        const auto& a = p.joint_upper[j];
        if (static_cast<int>(j) < p.n1)
            out.push_back({1.0 - a.a, -a.scale_x, -a.scale_y, +1, pair_label("a", j, "joint:")});
        else
            out.push_back({a.a, a.scale_x, a.scale_y, -1, pair_label("a", j, "joint:")});
    }
    for (std::size_t j = 0; j < p.joint_lower.size(); ++j) {
        const auto& b = p.joint_lower[j];
        out.push_back({1.0 - b.a, -b.scale_x, -b.scale_y, -1, pair_label("b", j, "joint:")});
    }
    append_kernel(p.inner_x, 0, out);
    append_kernel(p.inner_y, 1, out);
    return out;
}

bool is_pole(double x) { return x <= 0.0 && x == std::floor(x); }

// log Gamma(z)^power; a denominator at a pole contributes log 0.
cplx log_factor(cplx z, int power)
{
    if (power < 0 && z.imag() == 0.0 && is_pole(z.real()))
        return {-kInf, 0.0};
    const cplx lg = log_gamma(z);
    return power > 0 ? lg : -lg;
}

// Magnitude model used for placing the contour: log|integrand| at tau = 0.
// Denominators are only counted where they cannot vanish nearby.
double placement_objective(const std::vector<Factor>& fs, double cx, double cy, double log_x,
                           double log_y)
{
    double v = -cx * log_x - cy * log_y;
    for (const auto& f : fs) {
        const double arg = f.u + f.vx * cx + f.vy * cy;
        if (f.power > 0) {
            if (arg <= 0.0)
                return kInf;
            v += std::lgamma(arg);
        } else if (arg >= 1.0) {
            v -= std::lgamma(arg);
        }
    }
    return v;
}

struct Strip {
    double lo = -kInf;
    double hi = kInf;
    std::string lo_label;
    std::string hi_label;
};

Strip strip_1d(const std::vector<Factor>& fs)
{
    Strip s;
    for (const auto& f : fs) {
        if (f.power < 0)
            continue;
        const double edge = -f.u / f.vx;
        if (f.vx > 0.0 && edge > s.lo) {
            s.lo = edge;
            s.lo_label = f.label;
        } else if (f.vx < 0.0 && edge < s.hi) {
            s.hi = edge;
            s.hi_label = f.label;
        }
    }
    return s;
}

double golden_min(auto&& fn, double a, double b)
{
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - r * (b - a);
    double d = a + r * (b - a);
    double fc = fn(c);
    double fd = fn(d);
    for (int it = 0; it < 80 && (b - a) > 1e-9 * (1.0 + std::abs(a)); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = fn(d);
        }
    }
    return fc < fd ? c : d;
}

double place_1d(const std::vector<Factor>& fs, const Strip& strip, double log_x)
{
    double lo = strip.lo;
    double hi = strip.hi;
    if (!std::isfinite(lo) && !std::isfinite(hi)) {
        lo = -kOpenReach;
        hi = kOpenReach;
    } else if (!std::isfinite(lo)) {
        lo = hi - kOpenReach;
    } else if (!std::isfinite(hi)) {
        hi = lo + kOpenReach;
    }
    const double margin = std::min(0.25, (hi - lo) / 4.0);
    if (std::isfinite(strip.lo))
        lo += margin;
    if (std::isfinite(strip.hi))
        hi -= margin;

    auto obj = [&](double c) { return placement_objective(fs, c, 0.0, log_x, 0.0); };
    constexpr int scan = 241;
    double best_c = lo;
    double best = kInf;
    for (int k = 0; k < scan; ++k) {
        const double c = lo + (hi - lo) * k / (scan - 1);
        const double v = obj(c);
        if (v < best) {
            best = v;
            best_c = c;
        }
    }
    const double step = (hi - lo) / (scan - 1);
    return golden_min(obj, std::max(lo, best_c - step), std::min(hi, best_c + step));
}

struct Accumulated {
    double value = 0.0;
    double l1 = 0.0;
    double tail = 0.0;
    double max_log = 0.0;
};

// Combine a partial sum accumulated relative to exp(ref) into absolute scale.
double scaled(double sum, double log_scale)
{
    if (sum == 0.0)
        return 0.0;
    return std::copysign(std::exp(std::log(std::abs(sum)) + log_scale), sum);
}

struct Refiner {
    const ContourSpec& spec;
    const char* name;
    ContourResult result;
    double prev = 0.0;
    bool have_prev = false;
    double last_err = kInf;

    // Returns true once converged.
    bool accept(const Accumulated& acc, int pass)
    {
        const bool tail_ok = acc.tail <= 1e-2 * spec.rel_tol * acc.l1;
        const double err = have_prev ? std::abs(acc.value - prev) : kInf;
        result.value = acc.value;
        result.error = err;
        result.refinements = pass;
        last_err = err;
        const bool finite = std::isfinite(acc.value) && std::isfinite(acc.l1);
        const bool conv = finite && have_prev && tail_ok &&
                          (err <= spec.rel_tol * std::abs(acc.value) + 1e-14 * acc.l1 ||
                           (acc.value == 0.0 && prev == 0.0));
        prev = acc.value;
        have_prev = true;
        return conv;
    }

    [[noreturn]] void fail() const
    {
        const double rel = result.value != 0.0 ? last_err / std::abs(result.value) : kInf;
        throw AccuracyNotReachedError(std::string(name) + ": contour integral did not converge",
                                      rel);
    }
};

} // namespace

ContourResult fox_h_log_arg(const FoxHParams& params, double log_x, double log_prefactor,
                            const ContourSpec& spec)
{
    params.validate();
    spec.validate();
    if (!std::isfinite(log_x))
        throw DomainError("fox_h: argument must be positive and finite");

    std::vector<Factor> fs;
    append_kernel(params, 0, fs);
    for (const auto& f : fs)
        if (f.power > 0 && f.vx == 0.0 && is_pole(f.u))
            throw PoleError("fox_h: constant numerator at a pole: " + f.label);

    // |integrand| ~ exp(-pi/2 |tau| sum power |vx|) along the line.
    double decay = 0.0;
    for (const auto& f : fs)
        decay += f.power * std::abs(f.vx);
    if (decay < -1e-12)
        throw DomainError("fox_h: the integrand grows along vertical lines (scale balance " +
                          std::to_string(decay) + " < 0)");

    const Strip strip = strip_1d(fs);
    if (!(strip.lo < strip.hi))
        throw ContourPlacementError("fox_h: pole sets overlap, " + strip.lo_label +
                                    " (left poles up to " + std::to_string(strip.lo) + ") vs " +
                                    strip.hi_label + " (right poles from " +
                                    std::to_string(strip.hi) + ")");
    double c;
    if (spec.shift_x) {
        c = *spec.shift_x;
        if (!(c > strip.lo && c < strip.hi))
            throw ContourPlacementError("fox_h: requested abscissa lies outside the pole-free strip");
    } else {
        c = place_1d(fs, strip, log_x);
    }

    auto log_integrand = [&](double tau) {
        const cplx s(c, tau);
        cplx acc = -s * log_x + log_prefactor;
        for (const auto& f : fs)
            acc += log_factor(f.u + f.vx * s, f.power);
        return acc;
    };

    Refiner ref{spec, "fox_h", {}, 0.0, false, kInf};
    ref.result.shift_x = c;
    double half = spec.half_length;
    double h = 2.0 * spec.half_length / (spec.nodes - 1);
    std::vector<cplx> logs;
    for (int pass = 0; pass <= spec.max_refinements; ++pass) {
        const auto count = static_cast<std::size_t>(std::llround(half / h)) + 1;
        logs.resize(count);
        for (std::size_t k = 0; k < count; ++k)
            logs[k] = log_integrand(static_cast<double>(k) * h);
        double ref_log = -kInf;
        for (const auto& l : logs)
            ref_log = std::max(ref_log, l.real());
        Accumulated acc;
        if (std::isfinite(ref_log)) {
            double sum = 0.0;
            double l1 = 0.0;
            double tail = 0.0;
            const std::size_t tail_from = count - count / 10;
            for (std::size_t k = 0; k < count; ++k) {
                const cplx g = std::exp(logs[k] - ref_log);
                const double w = k == 0 ? 0.5 : 1.0;
                sum += w * g.real();
                l1 += w * std::abs(g);
                if (k >= tail_from)
                    tail += std::abs(g);
            }
            const double log_scale = ref_log + std::log(h / std::numbers::pi);
            acc.value = scaled(sum, log_scale);
            acc.l1 = scaled(l1, log_scale);
            acc.tail = scaled(tail, log_scale);
        }
        if (ref.accept(acc, pass))
            return ref.result;
        if (acc.tail > 1e-2 * spec.rel_tol * acc.l1)
            half *= 2.0;
        else
            h /= 2.0;
    }
    ref.fail();
}

namespace {

struct Constraint {
    double u;
    double vx;
    double vy;
    std::string label;
};

double slack(const Constraint& k, double cx, double cy) { return k.u + k.vx * cx + k.vy * cy; }

// Vertices of {cx, cy : all constraints > 0} intersected with a box.
std::vector<std::pair<double, double>> polygon(const std::vector<Constraint>& cons, double x0,
                                               double x1, double y0, double y1)
{
    std::vector<Constraint> all = cons;
    all.push_back({-x0, 1.0, 0.0, "box"});
    all.push_back({x1, -1.0, 0.0, "box"});
    all.push_back({-y0, 0.0, 1.0, "box"});
    all.push_back({y1, 0.0, -1.0, "box"});
    std::vector<std::pair<double, double>> verts;
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const double det = all[i].vx * all[j].vy - all[i].vy * all[j].vx;
            if (std::abs(det) < 1e-14)
                continue;
            const double cx = (-all[i].u * all[j].vy + all[j].u * all[i].vy) / det;
            const double cy = (-all[i].vx * all[j].u + all[j].vx * all[i].u) / det;
            bool inside = true;
            for (const auto& k : all)
                if (slack(k, cx, cy) < -1e-9 * (1.0 + std::abs(k.u))) {
                    inside = false;
                    break;
                }
            if (inside)
                verts.emplace_back(cx, cy);
        }
    }
    return verts;
}

std::pair<double, double> place_2d(const std::vector<Factor>& fs, double log_x, double log_y)
{
    std::vector<Constraint> cons;
    for (const auto& f : fs) {
        if (f.power < 0)
            continue;
        if (f.vx == 0.0 && f.vy == 0.0) {
            if (is_pole(f.u))
                throw PoleError("bivariate_fox_h: constant numerator at a pole: " + f.label);
            continue;
        }
        cons.push_back({f.u, f.vx, f.vy, f.label});
    }

    // Axis-aligned bounds from single-variable constraints give the search box.
    Strip sx;
    Strip sy;
    for (const auto& k : cons) {
        const bool only_x = k.vy == 0.0;
        const bool only_y = k.vx == 0.0;
        if (!only_x && !only_y)
            continue;
        Strip& s = only_x ? sx : sy;
        const double v = only_x ? k.vx : k.vy;
        const double edge = -k.u / v;
        if (v > 0.0 && edge > s.lo) {
            s.lo = edge;
            s.lo_label = k.label;
        }
        if (v < 0.0 && edge < s.hi) {
            s.hi = edge;
            s.hi_label = k.label;
        }
    }
    auto box = [](const Strip& s) {
        double lo = s.lo;
        double hi = s.hi;
        if (!std::isfinite(lo) && !std::isfinite(hi))
            return std::pair{-kOpenReach, kOpenReach};
        if (!std::isfinite(lo))
            lo = hi - kOpenReach;
        if (!std::isfinite(hi))
            hi = lo + kOpenReach;
        return std::pair{lo, hi};
    };
    auto [x0, x1] = box(sx);
    auto [y0, y1] = box(sy);
    if (!(x0 < x1))
        throw ContourPlacementError("bivariate_fox_h: pole sets overlap on the first variable, " +
                                    sx.lo_label + " vs " + sx.hi_label);
    if (!(y0 < y1))
        throw ContourPlacementError("bivariate_fox_h: pole sets overlap on the second variable, " +
                                    sy.lo_label + " vs " + sy.hi_label);

    const auto verts = polygon(cons, x0, x1, y0, y1);
    double gx0 = kInf, gx1 = -kInf, gy0 = kInf, gy1 = -kInf, mx = 0.0, my = 0.0;
    for (const auto& [vx, vy] : verts) {
        gx0 = std::min(gx0, vx);
        gx1 = std::max(gx1, vx);
        gy0 = std::min(gy0, vy);
        gy1 = std::max(gy1, vy);
        mx += vx;
        my += vy;
    }
    if (verts.size() < 3 || !(gx1 - gx0 > 1e-9) || !(gy1 - gy0 > 1e-9)) {
        std::string names;
        for (const auto& k : cons)
            names += (names.empty() ? "" : ", ") + k.label;
        throw ContourPlacementError("bivariate_fox_h: no pole-free region for the factors " + names);
    }
    mx /= static_cast<double>(verts.size());
    my /= static_cast<double>(verts.size());

    auto obj = [&](double cx, double cy, double margin) {
        for (const auto& k : cons)
            if (slack(k, cx, cy) < margin * std::max(std::abs(k.vx), std::abs(k.vy)))
                return kInf;
        return placement_objective(fs, cx, cy, log_x, log_y);
    };

    constexpr int grid = 41;
    for (double margin : {0.25, 0.1, 0.03, 0.01, 0.0}) {
        double best = obj(mx, my, margin);
        double bx = mx;
        double by = my;
        for (int i = 0; i < grid; ++i) {
            for (int j = 0; j < grid; ++j) {
                const double cx = gx0 + (gx1 - gx0) * i / (grid - 1);
                const double cy = gy0 + (gy1 - gy0) * j / (grid - 1);
                const double v = obj(cx, cy, margin);
                if (v < best) {
                    best = v;
                    bx = cx;
                    by = cy;
                }
            }
        }
        if (!std::isfinite(best))
            continue;
        // Compass search from the best grid point.
        double step = std::max(gx1 - gx0, gy1 - gy0) / (grid - 1);
        while (step > 1e-4) {
            bool moved = false;
            for (auto [dx, dy] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}) {
                const double v = obj(bx + dx * step, by + dy * step, margin);
                if (v < best) {
                    best = v;
                    bx += dx * step;
                    by += dy * step;
                    moved = true;
                    break;
                }
            }
            if (!moved)
                step /= 2.0;
        }
        return {bx, by};
    }
    throw ContourPlacementError("bivariate_fox_h: could not place the contour");
}

} // namespace

ContourResult bivariate_fox_h_log_args(const BivFoxHParams& params, double log_x, double log_y,
                                       double log_prefactor, const ContourSpec& spec)
{
    params.validate();
    spec.validate();
    if (!std::isfinite(log_x) || !std::isfinite(log_y))
        throw DomainError("bivariate_fox_h: arguments must be positive and finite");

    const std::vector<Factor> fs = factors_2d(params);

    double cx;
    double cy;
    if (spec.shift_x && spec.shift_y) {
        cx = *spec.shift_x;
        cy = *spec.shift_y;
        for (const auto& f : fs)
            if (f.power > 0 && !(f.u + f.vx * cx + f.vy * cy > 0.0))
                throw ContourPlacementError(
                    "bivariate_fox_h: requested abscissae cross the poles of " + f.label);
    } else {
        std::tie(cx, cy) = place_2d(fs, log_x, log_y);
    }

    // Split factors: pure-x, pure-y and joint.
    std::vector<Factor> fx;
    std::vector<Factor> fy;
    std::vector<Factor> fj;
    for (const auto& f : fs) {
        if (f.vy == 0.0)
            fx.push_back(f);
        else if (f.vx == 0.0)
            fy.push_back(f);
        else
            fj.push_back(f);
    }
    bool joint_bounded = true;
    double joint_bound = 0.0; // upper bound of log|joint part|, |Gamma(z)| <= Gamma(Re z)
    for (const auto& f : fj) {
        if (f.power < 0) {
            joint_bounded = false;
            break;
        }
        joint_bound += std::lgamma(f.u + f.vx * cx + f.vy * cy);
    }

    Refiner ref{spec, "bivariate_fox_h", {}, 0.0, false, kInf};
    ref.result.shift_x = cx;
    ref.result.shift_y = cy;
    double half = spec.half_length;
    double h = 2.0 * spec.half_length / (spec.nodes - 1);

    for (int pass = 0; pass <= spec.max_refinements; ++pass) {
        const auto kx = static_cast<std::size_t>(std::llround(half / h)) + 1; // tau >= 0
        const auto ny = 2 * kx - 1;                                          // omega in [-half, half]
        std::vector<cplx> lx(kx);
        std::vector<cplx> ly(ny);
        for (std::size_t i = 0; i < kx; ++i) {
            const cplx s(cx, static_cast<double>(i) * h);
            cplx acc = -s * log_x + log_prefactor;
            for (const auto& f : fx)
                acc += log_factor(f.u + f.vx * s, f.power);
            lx[i] = acc;
        }
        for (std::size_t j = 0; j < ny; ++j) {
            const double w = (static_cast<double>(j) - static_cast<double>(kx - 1)) * h;
            const cplx t(cy, w);
            cplx acc = -t * log_y;
            for (const auto& f : fy)
                acc += log_factor(f.u + f.vy * t, f.power);
            ly[j] = acc;
        }
        auto joint = [&](cplx s, cplx t) {
            cplx acc = 0.0;
            for (const auto& f : fj)
                acc += log_factor(f.u + f.vx * s + f.vy * t, f.power);
            return acc;
        };

        // Columns ordered by decreasing magnitude for pruning.
        std::vector<std::size_t> order(ny);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return ly[a].real() > ly[b].real(); });

        const std::size_t centre = kx - 1;
        const double ref_log =
            (lx[0] + ly[centre] + joint(cplx(cx, 0.0), cplx(cy, 0.0))).real();
        const double scale_log = std::isfinite(ref_log) ? ref_log : 0.0;
        double sum = 0.0;
        double l1 = 0.0;
        double tail = 0.0;
        double max_log = -kInf;
        const std::size_t tail_i = kx - kx / 10;
        for (std::size_t i = 0; i < kx; ++i) {
            const double row_w = i == 0 ? 1.0 : 2.0;
            const cplx s(cx, static_cast<double>(i) * h);
            for (std::size_t jj = 0; jj < ny; ++jj) {
                const std::size_t j = order[jj];
                if (joint_bounded &&
                    lx[i].real() + ly[j].real() + joint_bound < scale_log - kPrune)
                    break;
                const double w = (static_cast<double>(j) - static_cast<double>(centre)) * h;
                const cplx l = lx[i] + ly[j] + joint(s, cplx(cy, w));
                max_log = std::max(max_log, l.real());
                const cplx g = std::exp(l - scale_log);
                const double a = std::abs(g);
                sum += row_w * g.real();
                l1 += row_w * a;
                const std::size_t dj = j > centre ? j - centre : centre - j;
                if (i >= tail_i || dj >= tail_i)
                    tail += row_w * a;
            }
        }
        Accumulated acc;
        if (std::isfinite(max_log)) {
            if (max_log - scale_log > 600.0)
                throw AccuracyNotReachedError("bivariate_fox_h: integrand peak far off the real axis",
                                              kInf);
            const double log_scale = scale_log + std::log(h * h / (4.0 * std::numbers::pi *
                                                                   std::numbers::pi));
            acc.value = scaled(sum, log_scale);
            acc.l1 = scaled(l1, log_scale);
            acc.tail = scaled(tail, log_scale);
        }
        if (ref.accept(acc, pass))
            return ref.result;
        if (acc.tail > 1e-2 * spec.rel_tol * acc.l1)
            half *= 2.0;
        else
            h /= 2.0;
    }
    ref.fail();
}

} // namespace thz::specfun
