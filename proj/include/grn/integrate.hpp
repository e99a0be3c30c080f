#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "grn/network.hpp"
#include "grn/rhs.hpp"
#include "grn/species.hpp"

namespace grn {

struct IntegrationConfig {
    double rel_tol = 1e-6;
    double abs_tol = 1e-9;             // nM
    double max_step = 10.0;            // s
    double t_end = 5000.0;             // s
    double steady_state_tol = 1e-8;    // relative derivative norm
    double steady_state_window = 30.0; // s the criterion must hold

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(max_step > 0.0) ||
            !(steady_state_tol > 0.0) || !(steady_state_window > 0.0))
            throw std::invalid_argument("integration tolerances must be positive");
        if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
    }
};

enum class Termination { ReachedTEnd, SteadyState, StepFailure };

inline std::string_view termination_name(Termination t) {
    switch (t) {
    case Termination::ReachedTEnd: return "ReachedTEnd";
    case Termination::SteadyState: return "SteadyState";
    case Termination::StepFailure: return "StepFailure";
    }
    return "?";
}

struct IntegrationStats {
    std::size_t steps_accepted = 0;
    std::size_t steps_rejected = 0;
    std::size_t rhs_evaluations = 0;
};

/// Accepted-step samples of one integration run, strictly increasing in time
/// and componentwise nonnegative.
struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
    Termination termination = Termination::ReachedTEnd;
    IntegrationStats stats;

    double final_time() const { return times.back(); }
    const StateVector& final_state() const { return states.back(); }

    /// Linear interpolation between accepted steps.
    StateVector sample_at(double t) const {
        if (t <= times.front()) return states.front();
        if (t >= times.back()) return states.back();
        auto it = std::upper_bound(times.begin(), times.end(), t);
        std::size_t hi = static_cast<std::size_t>(it - times.begin());
        std::size_t lo = hi - 1;
        double w = (t - times[lo]) / (times[hi] - times[lo]);
        StateVector s(states[lo].size());
        for (std::size_t i = 0; i < s.size(); ++i)
            s[i] = states[lo][i] + w * (states[hi][i] - states[lo][i]);
        return s;
    }
};

class NonConvergence : public NumericError {
public:
    NonConvergence(double t_end, double derivative_norm)
        : NumericError("no steady state by t = " + std::to_string(t_end) +
                       " s (relative derivative norm " + std::to_string(derivative_norm) + ")"),
          t_end(t_end), derivative_norm(derivative_norm) {}
    double t_end;
    double derivative_norm;
};

namespace detail {

// Dormand-Prince 5(4) coefficients.
struct Dopri5 {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b - bhat, for the embedded 4th-order error estimate
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};

/// One 5(4) step from (t, y) with k1 = f(t, y) already evaluated.
/// Fills y_new (5th order), k7 = f(t + h, y_new) for FSAL reuse, and the
/// componentwise scaled error norm (max norm). Throws NumericError if a
/// stage evaluation blows up.
class Dopri5Stepper {
public:
    explicit Dopri5Stepper(std::size_t dim)
        : k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), ytmp(dim) {}

    template <class RhsFn>
    double step(RhsFn&& f, double t, double h, const StateVector& y, const StateVector& k1,
                StateVector& y_new, StateVector& k7, double rel_tol, double abs_tol) {
        using T = Dopri5;
        const std::size_t n = y.size();

        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * T::a21 * k1[i];
        f(t + T::c2 * h, ytmp, k2);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (T::a31 * k1[i] + T::a32 * k2[i]);
        f(t + T::c3 * h, ytmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (T::a41 * k1[i] + T::a42 * k2[i] + T::a43 * k3[i]);
        f(t + T::c4 * h, ytmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (T::a51 * k1[i] + T::a52 * k2[i] + T::a53 * k3[i] + T::a54 * k4[i]);
        f(t + T::c5 * h, ytmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (T::a61 * k1[i] + T::a62 * k2[i] + T::a63 * k3[i] +
                                  T::a64 * k4[i] + T::a65 * k5[i]);
        f(t + h, ytmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            y_new[i] = y[i] + h * (T::b1 * k1[i] + T::b3 * k3[i] + T::b4 * k4[i] +
                                   T::b5 * k5[i] + T::b6 * k6[i]);
        f(t + h, y_new, k7);

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double ei = h * (T::e1 * k1[i] + T::e3 * k3[i] + T::e4 * k4[i] + T::e5 * k5[i] +
                             T::e6 * k6[i] + T::e7 * k7[i]);
            double scale = abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err = std::max(err, std::abs(ei) / scale);
        }
        return err;
    }

    StateVector k2, k3, k4, k5, k6, ytmp;
};

inline double inf_norm(const StateVector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace detail

/// Advances the network ODEs from x0 at t = 0 with an embedded 5(4) pair and
/// proportional-integral step control. Integration restarts at every clamp
/// step-change time so no accepted step straddles an event. A component the
/// step would drive below zero is clamped to zero when the excursion is
/// within abs_tol; a larger excursion rejects the step.
///
/// Terminates SteadyState once the relative derivative norm
/// ||f||_inf <= steady_state_tol * max(||x||_inf, 1 nM) has held over
/// steady_state_window seconds (measured after the last schedule event),
/// StepFailure if the step size underflows below 1e-12 s, and ReachedTEnd
/// otherwise.
inline Trajectory integrate(const NetworkSpec& spec, const StateVector& x0,
                            const IntegrationConfig& cfg) {
    cfg.validate();
    spec.validate();
    if (x0.size() != spec.state_dimension())
        throw SpecError("initial state length does not match the network");
    for (double v : x0)
        if (!(v >= 0.0)) throw SpecError("initial state must be componentwise nonnegative");

    constexpr double kMinStep = 1e-12;
    constexpr double kSafety = 0.9;
    constexpr double kBeta = 0.04;                  // PI stabilization
    constexpr double kExpo = 0.2 - kBeta * 0.75;
    constexpr double kMaxGrow = 10.0, kMaxShrink = 0.2;

    Trajectory traj;
    const std::size_t dim = spec.state_dimension();
    StateVector y = x0;
    apply_pins(spec, y);
    StateVector k1(dim), k7(dim), y_new(dim);
    detail::Dopri5Stepper stepper(dim);

    auto rhs = [&](double t, const StateVector& s, StateVector& d) {
        network_rhs(s, spec, t, d);
        traj.stats.rhs_evaluations++;
        for (double v : d)
            if (!std::isfinite(v)) throw NumericError("non-finite derivative during integration");
    };

    // Segment boundaries: t = 0, each schedule event inside (0, t_end), t_end.
    std::vector<double> boundaries{0.0};
    for (double te : spec.event_times())
        if (te < cfg.t_end) boundaries.push_back(te);
    boundaries.push_back(cfg.t_end);
    const double last_event = boundaries.size() > 2 ? boundaries[boundaries.size() - 2] : 0.0;

    double t = 0.0;
    traj.times.push_back(t);
    traj.states.push_back(y);

    double steady_since = -1.0;  // start of the interval where the criterion holds
    double facold = 1e-4;
    double h_stab = cfg.max_step;

    auto steady_check = [&](double t_now, const StateVector& f_now, const StateVector& y_now) {
        double fn = detail::inf_norm(f_now);
        double yn = std::max(detail::inf_norm(y_now), 1.0);
        if (fn <= cfg.steady_state_tol * yn) {
            if (steady_since < 0.0) steady_since = t_now;
            return t_now >= last_event && t_now - steady_since >= cfg.steady_state_window;
        }
        steady_since = -1.0;
        return false;
    };

    for (std::size_t seg = 0; seg + 1 < boundaries.size(); ++seg) {
        const double t_seg_end = boundaries[seg + 1];
        steady_since = -1.0;  // the RHS changes discontinuously at events

        rhs(t, y, k1);
        if (steady_check(t, k1, y) && seg + 2 == boundaries.size()) {
            traj.termination = Termination::SteadyState;
            return traj;
        }

        // Conservative first step for the segment, refined by the controller.
        double h = std::min(cfg.max_step,
                            0.01 * std::max(detail::inf_norm(y), 1.0) /
                                std::max(detail::inf_norm(k1), 1e-4));
        h = std::clamp(h, 1e-6, cfg.max_step);

        while (t < t_seg_end) {
            h = std::min({h, cfg.max_step, h_stab});
            bool hits_boundary = false;
            if (t + h >= t_seg_end) {
                h = t_seg_end - t;
                hits_boundary = true;
            }

            if (h < kMinStep) {
                traj.termination = Termination::StepFailure;
                return traj;
            }

            double err;
            bool stage_failure = false;
            try {
                err = stepper.step(rhs, t, h, y, k1, y_new, k7, cfg.rel_tol, cfg.abs_tol);
            } catch (const NumericError&) {
                stage_failure = true;
                err = std::numeric_limits<double>::infinity();
            }

            bool positivity_reject = false;
            bool clamped = false;
            if (!stage_failure && err <= 1.0) {
                for (std::size_t i = 0; i < dim; ++i) {
                    if (y_new[i] < 0.0) {
                        if (-y_new[i] <= cfg.abs_tol) { y_new[i] = 0.0; clamped = true; }
                        else { positivity_reject = true; break; }
                    }
                }
            }

            if (stage_failure || positivity_reject) {
                traj.stats.steps_rejected++;
                h *= 0.5;
                continue;
            }

            if (err <= 1.0) {
                // Dominant-eigenvalue estimate from the last two stages (both
                // taken at t + h). An explicit pair run near its stability
                // boundary hovers around fixed points at the local-error
                // scale instead of converging into them, which starves the
                // steady-state detector; capping h well inside the stable
                // region restores geometric contraction.
                double num = 0.0, den = 0.0;
                for (std::size_t i = 0; i < dim; ++i) {
                    double dk = k7[i] - stepper.k6[i];
                    double dg = y_new[i] - stepper.ytmp[i];
                    num += dk * dk;
                    den += dg * dg;
                }
                if (den > 0.0 && num > 0.0) {
                    double lambda = std::sqrt(num / den);
                    if (std::isfinite(lambda) && lambda > 0.0)
                        h_stab = std::max(2.0 / lambda, 1e-4);
                }

                traj.stats.steps_accepted++;
                t = hits_boundary ? t_seg_end : t + h;
                y.swap(y_new);
                // Clamping invalidates the FSAL derivative; cheap to redo.
                if (clamped) rhs(t, y, k7);
                k1.swap(k7);
                traj.times.push_back(t);
                traj.states.push_back(y);

                if (steady_check(t, k1, y)) {
                    traj.termination = Termination::SteadyState;
                    return traj;
                }

                double fac11 = std::pow(std::max(err, 1e-10), kExpo);
                double fac = fac11 / std::pow(facold, kBeta);
                fac = std::clamp(fac / kSafety, 1.0 / kMaxGrow, 1.0 / kMaxShrink);
                h = h / fac;
                facold = std::max(err, 1e-4);
            } else {
                traj.stats.steps_rejected++;
                double fac11 = std::pow(err, kExpo);
                h = h / std::min(1.0 / kMaxShrink, fac11 / kSafety);
            }
        }
    }

    traj.termination = Termination::ReachedTEnd;
    return traj;
}

/// Integrates until the steady-state criterion fires and returns the final
/// state. Throws NonConvergence when t_end arrives first and NumericError on
/// a step failure.
inline StateVector steady_state(const NetworkSpec& spec, const StateVector& x0,
                                const IntegrationConfig& cfg) {
    Trajectory traj = integrate(spec, x0, cfg);
    switch (traj.termination) {
    case Termination::SteadyState:
        return traj.final_state();
    case Termination::ReachedTEnd: {
        StateVector f = network_rhs(traj.final_state(), spec, traj.final_time());
        double fn = detail::inf_norm(f);
        double yn = std::max(detail::inf_norm(traj.final_state()), 1.0);
        throw NonConvergence(cfg.t_end, fn / yn);
    }
    case Termination::StepFailure:
    default:
        throw NumericError("integration step size underflow before steady state");
    }
}

/// Fixed-step driver over [0, t_end] used by convergence studies. No error
/// control, no event handling.
inline StateVector integrate_fixed_steps(const NetworkSpec& spec, const StateVector& x0,
                                         double t_end, std::size_t steps) {
    const std::size_t dim = spec.state_dimension();
    StateVector y = x0, k1(dim), k7(dim), y_new(dim);
    apply_pins(spec, y);
    detail::Dopri5Stepper stepper(dim);
    IntegrationStats stats;
    auto rhs = [&](double t, const StateVector& s, StateVector& d) { network_rhs(s, spec, t, d); };

    const double h = t_end / static_cast<double>(steps);
    double t = 0.0;
    rhs(t, y, k1);
    for (std::size_t i = 0; i < steps; ++i) {
        stepper.step(rhs, t, h, y, k1, y_new, k7, 1.0, 1.0);
        t += h;
        y.swap(y_new);
        k1.swap(k7);
    }
    return y;
}

} // namespace grn
