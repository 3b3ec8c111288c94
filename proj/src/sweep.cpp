#include "possloc/sweep.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "possloc/solver.hpp"

namespace possloc {

namespace {

double evaluate_hardy(double theta, double p2) {
    try {
        auto geom = hardy_geometry({theta, p2});
        auto [probs, bits] = generate_tables(geom);
        return paradoxical_probability(probs);
    } catch (const std::invalid_argument&) {
        return 0.0;
    }
}

// x chord parallel to the segment antipode(A) -- antipode(B).
double derived_x_anchor(double theta, double a, double b) {
    const double A = chord_partner(a, theta), B = chord_partner(b, theta);
    const double ax = antipode(A), bx = antipode(B);
    const double dx = std::sin(bx) - std::sin(ax);
    const double dz = std::cos(bx) - std::cos(ax);
    const double dir = std::atan2(dx, dz);
    return chord_outcome_points(theta, dir)[0];
}

double evaluate_gen_hardy(double theta, double a, double b) {
    try {
        GenHardyParams p;
        p.theta = theta;
        p.a = a;
        p.b = b;
        p.x = derived_x_anchor(theta, a, b);
        auto geom = generalized_hardy_geometry(p);
        auto [probs, bits] = generate_tables(geom);
        return paradoxical_probability(probs);
    } catch (const std::invalid_argument&) {
        return 0.0;
    }
}

struct Axis {
    double lo, hi;
};

struct Best {
    double value = -1;
    std::vector<double> params;

    // Strictly-greater keeps the lexicographically first tuple on ties
    // because tuples are visited in ascending order.
    void offer(double v, std::vector<double> p) {
        if (v > value) {
            value = v;
            params = std::move(p);
        }
    }
};

template <class Eval>
Best grid_round(const std::vector<Axis>& axes, int res, int jobs, Eval eval) {
    const int dims = static_cast<int>(axes.size());
    long cells = 1;
    for (int d = 0; d < dims; ++d) cells *= res;
    auto params_of = [&](long idx) {
        std::vector<double> p(dims);
        for (int d = dims - 1; d >= 0; --d) {
            int i = static_cast<int>(idx % res);
            idx /= res;
            p[d] = axes[d].lo + (axes[d].hi - axes[d].lo) * (i + 0.5) / res;
        }
        return p;
    };
    if (jobs <= 1) {
        Best best;
        for (long i = 0; i < cells; ++i) {
            auto p = params_of(i);
            double v = eval(p);
            best.offer(v, std::move(p));
        }
        return best;
    }
    std::vector<Best> partial(jobs);
    std::vector<std::thread> workers;
    for (int j = 0; j < jobs; ++j)
        workers.emplace_back([&, j] {
            for (long i = j; i < cells; i += jobs) {
                auto p = params_of(i);
                double v = eval(p);
                partial[j].offer(v, std::move(p));
            }
        });
    for (auto& w : workers) w.join();
    // Deterministic merge: highest value, lexicographically smallest params.
    Best best;
    for (const Best& b : partial) {
        if (b.value > best.value ||
            (b.value == best.value && !b.params.empty() &&
             (best.params.empty() || b.params < best.params)))
            best = b;
    }
    return best;
}

template <class Eval>
SweepResult run_sweep(std::vector<Axis> axes, const std::vector<Axis>& bounds, int res,
                      int jobs, Eval eval) {
    SweepResult out;
    const int rounds = 2;
    long cells = 1;
    for (size_t d = 0; d < axes.size(); ++d) cells *= res;
    Best best;
    for (int r = 0; r <= rounds; ++r) {
        Best b = grid_round(axes, res, jobs, eval);
        out.evaluations += cells;
        if (b.value > best.value) best = b;
        if (r == rounds || best.params.empty()) break;
        for (size_t d = 0; d < axes.size(); ++d) {
            double span = (axes[d].hi - axes[d].lo) / 8;
            double lo = best.params[d] - span / 2, hi = best.params[d] + span / 2;
            axes[d].lo = std::max(lo, bounds[d].lo);
            axes[d].hi = std::min(hi, bounds[d].hi);
        }
    }
    out.best_params = best.params;
    out.best_value = std::max(best.value, 0.0);
    return out;
}

}  // namespace

SweepResult sweep_paradox(Family family, int resolution, int jobs) {
    if (resolution < 8) throw std::invalid_argument("sweep_paradox: resolution must be >= 8");
    jobs = std::max(1, jobs);
    if (family == Family::Hardy) {
        std::vector<Axis> axes{{0.02, kPi / 2 - 0.02}, {0.02, kPi - 0.02}};
        auto r = run_sweep(axes, axes, resolution, jobs,
                           [](const std::vector<double>& p) {
                               return evaluate_hardy(p[0], p[1]);
                           });
        return r;
    }
    std::vector<Axis> axes{{0.02, kPi / 2 - 0.02}, {-kPi, kPi}, {-kPi, kPi}};
    auto r = run_sweep(axes, axes, resolution, jobs,
                       [](const std::vector<double>& p) {
                           return evaluate_gen_hardy(p[0], p[1], p[2]);
                       });
    return r;
}

}  // namespace possloc
