#include "catforge/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace catforge {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double halton(std::uint64_t index, std::uint64_t base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

constexpr std::uint64_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};

// Fold a coordinate back into [lo, hi] by reflection at the walls.
double reflect_into(double x, double lo, double hi) {
    const double w = hi - lo;
    if (w <= 0) return lo;
    double t = std::fmod(x - lo, 2.0 * w);
    if (t < 0) t += 2.0 * w;
    return lo + (t <= w ? t : 2.0 * w - t);
}

struct Simplex {
    std::vector<std::vector<double>> pts;
    std::vector<double> vals;
};

class Evaluator {
public:
    Evaluator(const OptimizeSpec& spec, std::vector<double>& trace)
        : spec_(spec), trace_(trace) {}

    double eval(std::vector<double>& x) {
        for (std::size_t d = 0; d < x.size(); ++d)
            x[d] = reflect_into(x[d], spec_.bounds[d].lo, spec_.bounds[d].hi);
        double f = spec_.objective(x);
        if (!std::isfinite(f)) f = kNegInf;
        trace_.push_back(f);
        ++count_;
        return f;
    }

    std::size_t count() const { return count_; }

private:
    const OptimizeSpec& spec_;
    std::vector<double>& trace_;
    std::size_t count_ = 0;
};

// One Nelder-Mead descent (on -f) from a given start.
std::pair<std::vector<double>, double> nelder_mead(const OptimizeSpec& spec, Evaluator& ev,
                                                   const std::vector<double>& start,
                                                   bool& converged) {
    const std::size_t n = spec.bounds.size();
    Simplex s;
    s.pts.push_back(start);
    {
        std::vector<double> x0 = start;
        s.vals.push_back(ev.eval(x0));
        s.pts[0] = x0;
    }
    for (std::size_t d = 0; d < n; ++d) {
        std::vector<double> x = s.pts[0];
        const double span = spec.bounds[d].hi - spec.bounds[d].lo;
        x[d] += 0.08 * span * ((x[d] < 0.5 * (spec.bounds[d].lo + spec.bounds[d].hi)) ? 1.0 : -1.0);
        const double f = ev.eval(x);
        s.pts.push_back(x);
        s.vals.push_back(f);
    }

    const int evals_budget = spec.max_evals_per_restart;
    int used = static_cast<int>(n) + 1;
    converged = false;
    while (used < evals_budget) {
        std::vector<std::size_t> order(n + 1);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return s.vals[a] > s.vals[b]; });
        Simplex sorted;
        for (auto idx : order) {
            sorted.pts.push_back(s.pts[idx]);
            sorted.vals.push_back(s.vals[idx]);
        }
        s = std::move(sorted);

        // Convergence on simplex extent and value spread.
        double extent = 0.0;
        for (std::size_t d = 0; d < n; ++d) {
            double lo = s.pts[0][d], hi = s.pts[0][d];
            for (std::size_t i = 1; i <= n; ++i) {
                lo = std::min(lo, s.pts[i][d]);
                hi = std::max(hi, s.pts[i][d]);
            }
            extent = std::max(extent, (hi - lo) / std::max(1.0, spec.bounds[d].hi - spec.bounds[d].lo));
        }
        const double spread = std::isfinite(s.vals[n]) ? s.vals[0] - s.vals[n]
                                                       : std::numeric_limits<double>::infinity();
        if (extent < spec.x_tol && spread < spec.f_tol) {
            converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t d = 0; d < n; ++d) centroid[d] += s.pts[i][d] / static_cast<double>(n);

        auto blend = [&](double t) {
            std::vector<double> x(n);
            for (std::size_t d = 0; d < n; ++d) x[d] = centroid[d] + t * (centroid[d] - s.pts[n][d]);
            return x;
        };

        std::vector<double> xr = blend(1.0);
        const double fr = ev.eval(xr);
        ++used;
        if (fr > s.vals[0]) {
            std::vector<double> xe = blend(2.0);
            const double fe = ev.eval(xe);
            ++used;
            if (fe > fr) {
                s.pts[n] = xe;
                s.vals[n] = fe;
            } else {
                s.pts[n] = xr;
                s.vals[n] = fr;
            }
        } else if (fr > s.vals[n - 1]) {
            s.pts[n] = xr;
            s.vals[n] = fr;
        } else {
            const bool outside = fr > s.vals[n];
            std::vector<double> xc = blend(outside ? 0.5 : -0.5);
            const double fc = ev.eval(xc);
            ++used;
            if (fc > (outside ? fr : s.vals[n])) {
                s.pts[n] = xc;
                s.vals[n] = fc;
            } else {
                // Shrink toward the best vertex.
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t d = 0; d < n; ++d)
                        s.pts[i][d] = s.pts[0][d] + 0.5 * (s.pts[i][d] - s.pts[0][d]);
                    s.vals[i] = ev.eval(s.pts[i]);
                    ++used;
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (s.vals[i] > s.vals[best]) best = i;
    return {s.pts[best], s.vals[best]};
}

}  // namespace

OptimizeResult maximize(const OptimizeSpec& spec) {
    if (spec.bounds.empty()) throw std::invalid_argument("maximize: bounds must be nonempty");
    for (const auto& b : spec.bounds)
        if (!(b.hi > b.lo)) throw std::invalid_argument("maximize: empty bound interval");
    if (spec.restarts < 1) throw std::invalid_argument("maximize: restarts must be >= 1");

    const std::size_t n = spec.bounds.size();
    OptimizeResult res;
    res.value = kNegInf;
    Evaluator ev(spec, res.trace);

    std::vector<std::vector<double>> starts;
    if (spec.warm_start) {
        starts.push_back(*spec.warm_start);
    }
    const std::uint64_t offset = 16 + (spec.seed % 2048) * 64;
    for (int r = 0; static_cast<int>(starts.size()) < spec.restarts; ++r) {
        std::vector<double> x(n);
        for (std::size_t d = 0; d < n; ++d) {
            const double u = halton(offset + static_cast<std::uint64_t>(r), kPrimes[d % 10]);
            x[d] = spec.bounds[d].lo + u * (spec.bounds[d].hi - spec.bounds[d].lo);
        }
        starts.push_back(std::move(x));
    }

    bool any_finite = false;
    for (const auto& start : starts) {
        bool conv = false;
        auto [x, f] = nelder_mead(spec, ev, start, conv);
        if (std::isfinite(f)) any_finite = true;
        res.restart_results.emplace_back(x, f);
        if (f > res.value) {
            res.value = f;
            res.x = x;
            res.converged = conv;
        }
    }
    res.evaluations = ev.count();
    if (!any_finite) throw std::runtime_error("maximize: objective non-finite on all restarts");
    return res;
}

OptimizeResult maximize_constrained(const OptimizeSpec& spec, const Objective& constraint) {
    std::vector<double> best_feasible;
    double best_feasible_value = kNegInf;

    auto record_feasible = [&](const std::vector<double>& x, double f) {
        if (f > best_feasible_value) {
            best_feasible_value = f;
            best_feasible = x;
        }
    };

    OptimizeResult last;
    std::optional<std::vector<double>> warm = spec.warm_start;
    double weight = 10.0;
    for (int stage = 0; stage < 5; ++stage) {
        OptimizeSpec penalized = spec;
        penalized.warm_start = warm;
        penalized.restarts = (stage == 0) ? spec.restarts : 1;
        penalized.objective = [&, weight](const std::vector<double>& x) {
            const double f = spec.objective(x);
            const double g = constraint(x);
            if (std::isfinite(f) && std::isfinite(g) && g >= 0.0) record_feasible(x, f);
            const double viol = std::max(0.0, -g);
            return f - weight * viol * viol;
        };
        last = maximize(penalized);
        warm = last.x;
        weight *= 10.0;
    }

    const double g_final = constraint(last.x);
    if (g_final >= -1e-8) {
        last.value = spec.objective(last.x);
        return last;
    }
    if (best_feasible.empty())
        throw std::runtime_error("maximize_constrained: no feasible point found");

    // Bisect from the (slightly) infeasible optimum toward the best feasible
    // iterate; the returned point sits on the feasible side of the boundary.
    std::vector<double> lo = last.x;           // infeasible end
    std::vector<double> hi = best_feasible;    // feasible end
    std::vector<double> x(lo.size());
    for (int it = 0; it < 80; ++it) {
        for (std::size_t d = 0; d < x.size(); ++d) x[d] = 0.5 * (lo[d] + hi[d]);
        if (constraint(x) >= 0.0)
            hi = x;
        else
            lo = x;
    }
    last.x = hi;
    last.value = spec.objective(hi);
    return last;
}

ScalarMax golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                             double x_tol, int scan_points) {
    if (!(hi > lo)) throw std::invalid_argument("golden_section_max: empty interval");
    // Coarse scan locates the global bracket; golden section refines it.
    double best_x = lo, best_f = f(lo);
    const int m = std::max(scan_points, 3);
    for (int i = 1; i < m; ++i) {
        const double x = lo + (hi - lo) * i / (m - 1.0);
        const double v = f(x);
        if (v > best_f) {
            best_f = v;
            best_x = x;
        }
    }
    const double h = (hi - lo) / (m - 1.0);
    double a = std::max(lo, best_x - h);
    double b = std::min(hi, best_x + h);

    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > x_tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return ScalarMax{x, f(x)};
}

}  // namespace catforge
