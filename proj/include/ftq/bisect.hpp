#pragma once

#include <cmath>
#include <functional>

namespace ftq {

struct BisectOptions {
    double x_tol = 1e-9;
    double f_tol = 1e-8;
    int max_iter = 200;
};

struct BisectResult {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
    bool bracketed = false;
};

/// Bisection for f(x) = 0 on [lo, hi] where f is monotone (either
/// orientation). Runs until both the interval width and |f| tolerances hold,
/// up to max_iter. Endpoints whose residual is already within f_tol count as
/// roots; without a sign change or an endpoint root the result is marked
/// not bracketed.
inline BisectResult bisect(const std::function<double(double)>& f, double lo, double hi,
                           const BisectOptions& opts = {}) {
    BisectResult r;
    double flo = f(lo);
    double fhi = f(hi);

    if (std::abs(flo) <= opts.f_tol) {
        r = {lo, flo, 0, true, true};
        return r;
    }
    if (std::abs(fhi) <= opts.f_tol) {
        r = {hi, fhi, 0, true, true};
        return r;
    }
    if ((flo > 0.0) == (fhi > 0.0)) {
        // no root in the interval; report the closer endpoint
        r.bracketed = false;
        r.converged = false;
        if (std::abs(flo) <= std::abs(fhi)) {
            r.x = lo;
            r.fx = flo;
        } else {
            r.x = hi;
            r.fx = fhi;
        }
        return r;
    }

    r.bracketed = true;
    double mid = 0.5 * (lo + hi);
    double fmid = f(mid);
    while (r.iterations < opts.max_iter &&
           ((hi - lo) > opts.x_tol || std::abs(fmid) > opts.f_tol)) {
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
        double next = 0.5 * (lo + hi);
        if (next == lo || next == hi) break; // interval at machine resolution
        mid = next;
        fmid = f(mid);
        ++r.iterations;
    }
    r.x = mid;
    r.fx = fmid;
    r.converged = std::abs(fmid) <= opts.f_tol;
    return r;
}

} // namespace ftq
