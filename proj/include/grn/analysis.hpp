#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "grn/integrate.hpp"
#include "grn/network.hpp"
#include "grn/toggle.hpp"

namespace grn {

namespace detail {

/// Runs fn(0), ..., fn(count - 1) on a pool of worker threads. Callers write
/// results into per-index slots, so the worker count can never change the
/// outcome, only the wall clock. If tasks throw, the exception with the
/// lowest task index is rethrown on the calling thread.
template <typename Fn>
void parallel_for_index(std::size_t count, std::size_t workers, Fn&& fn) {
    if (count == 0) return;
    workers = std::clamp<std::size_t>(workers, 1, count);
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failed.load(std::memory_order_relaxed))
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
}

} // namespace detail

// --- transfer functions -----------------------------------------------------

/// One steady-state sweep of the drive variable at a fixed IndT level.
/// threshold is the drive value where [out] crosses halfway between the
/// curve's extremes (absent for a flat curve); slope is d[out]/d(drive) on
/// the crossing segment.
struct TransferCurve {
    double indt = 0.0;
    std::vector<double> drive;
    std::vector<double> out;
    std::optional<double> threshold;
    std::optional<double> slope;
};

/// What to sweep when tracing a transfer curve: either one of the clamped
/// input channels, or the internal Ind1 concentration held by a pin (the
/// summed-input axis the weighted channels feed into).
struct DriveAxis {
    enum class Kind { Channel, Ind1 };
    Kind kind = Kind::Channel;
    InputChannel channel = InputChannel::IPTG;
    double min = 0.0;
    double max = 50.0;
    std::size_t resolution = 33;
};

inline std::vector<double> linspace(double min, double max, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = min + (max - min) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

namespace detail {

inline void fit_threshold(TransferCurve& c) {
    auto [mn, mx] = std::minmax_element(c.out.begin(), c.out.end());
    if (!(*mx - *mn > 1e-9)) return;  // flat curve: no threshold to report
    const double half = 0.5 * (*mn + *mx);
    for (std::size_t i = 0; i + 1 < c.out.size(); ++i) {
        double a = c.out[i], b = c.out[i + 1];
        if (a == b) continue;
        if ((a <= half && half <= b) || (b <= half && half <= a)) {
            double w = (half - a) / (b - a);
            c.threshold = c.drive[i] + w * (c.drive[i + 1] - c.drive[i]);
            c.slope = (b - a) / (c.drive[i + 1] - c.drive[i]);
            return;
        }
    }
}

} // namespace detail

/// Sweeps the drive axis at each IndT level and records the steady-state
/// [out] of a single neuron. Every sample integrates independently from the
/// zero state, so each curve traces the resting branch of the bistable core
/// rather than a hysteresis loop. NonConvergence propagates.
inline std::vector<TransferCurve> transfer_function(const NetworkSpec& spec,
                                                    const DriveAxis& axis,
                                                    const std::vector<double>& indt_values,
                                                    const IntegrationConfig& cfg = {},
                                                    std::size_t workers = 1) {
    if (spec.neuron_count() != 1)
        throw SpecError("transfer_function expects a single-neuron network");
    if (axis.resolution < 2) throw SpecError("drive axis needs at least 2 samples");
    if (!(axis.min >= 0.0) || !(axis.max > axis.min))
        throw SpecError("drive axis range must satisfy 0 <= min < max");
    if (indt_values.empty()) throw SpecError("no IndT values given");
    for (double v : indt_values)
        if (!(v >= 0.0)) throw SpecError("IndT levels must be nonnegative");
    spec.validate();

    const std::vector<double> drive = linspace(axis.min, axis.max, axis.resolution);
    std::vector<TransferCurve> curves(indt_values.size());
    for (std::size_t c = 0; c < curves.size(); ++c) {
        curves[c].indt = indt_values[c];
        curves[c].drive = drive;
        curves[c].out.assign(drive.size(), 0.0);
    }

    const StateLayout layout = spec.layout();
    const std::size_t out_idx = layout.index(0, SpeciesKind::out);
    detail::parallel_for_index(
        curves.size() * drive.size(), workers, [&](std::size_t task) {
            const std::size_t c = task / drive.size();
            const std::size_t s = task % drive.size();
            NetworkSpec local = spec;
            local.clamp(0, InputChannel::IndT, indt_values[c]);
            if (axis.kind == DriveAxis::Kind::Channel)
                local.clamp(0, axis.channel, drive[s]);
            else
                local.pin({0, SpeciesKind::Ind1}, drive[s]);
            StateVector x = steady_state(local, local.zero_state(), cfg);
            curves[c].out[s] = x[out_idx];
        });

    for (auto& c : curves) detail::fit_threshold(c);
    return curves;
}

// --- decision boundaries ----------------------------------------------------

struct GridAxis {
    double min = 0.0;
    double max = 50.0;
    std::size_t resolution = 64;
};

/// Least-squares line through the boundary points. The dependent coordinate
/// is the one with the smaller spread, so near-vertical boundaries fit
/// input1-on-input2 instead of degenerating.
struct LineFit {
    bool y_on_x = true;  // true: input2 = intercept + slope * input1
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Steady-state [out] of the network's output neuron over a 2-D input grid,
/// with the binary classification out >= threshold. out is stored row-major:
/// out[i * input2.size() + j] belongs to (input1[i], input2[j]). Cells whose
/// integration did not settle are marked unconverged and classified low.
struct SweepResult {
    std::vector<double> input1;
    std::vector<double> input2;
    std::vector<double> out;
    std::vector<std::uint8_t> cls;
    std::vector<std::uint8_t> converged;
    double threshold = 0.0;
    std::vector<std::array<double, 2>> boundary_points;
    std::optional<LineFit> fit;

    std::size_t cell(std::size_t i, std::size_t j) const { return i * input2.size() + j; }
    double out_at(std::size_t i, std::size_t j) const { return out[cell(i, j)]; }
    bool class_at(std::size_t i, std::size_t j) const { return cls[cell(i, j)] != 0; }
};

namespace detail {

/// Midpoints of grid edges whose endpoint cells classify differently,
/// skipping edges that touch an unconverged cell. Horizontal edges first,
/// then vertical, each in row-major order.
inline std::vector<std::array<double, 2>> boundary_midpoints(const SweepResult& r) {
    std::vector<std::array<double, 2>> pts;
    const std::size_t n1 = r.input1.size(), n2 = r.input2.size();
    for (std::size_t i = 0; i + 1 < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) {
            if (!r.converged[r.cell(i, j)] || !r.converged[r.cell(i + 1, j)]) continue;
            if (r.cls[r.cell(i, j)] != r.cls[r.cell(i + 1, j)])
                pts.push_back({0.5 * (r.input1[i] + r.input1[i + 1]), r.input2[j]});
        }
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j + 1 < n2; ++j) {
            if (!r.converged[r.cell(i, j)] || !r.converged[r.cell(i, j + 1)]) continue;
            if (r.cls[r.cell(i, j)] != r.cls[r.cell(i, j + 1)])
                pts.push_back({r.input1[i], 0.5 * (r.input2[j] + r.input2[j + 1])});
        }
    return pts;
}

inline std::optional<LineFit> fit_line(const std::vector<std::array<double, 2>>& pts) {
    if (pts.size() < 2) return std::nullopt;
    double mx = 0.0, my = 0.0;
    for (const auto& p : pts) {
        mx += p[0];
        my += p[1];
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxx = 0.0, syy = 0.0;
    for (const auto& p : pts) {
        sxx += (p[0] - mx) * (p[0] - mx);
        syy += (p[1] - my) * (p[1] - my);
    }
    LineFit fit;
    fit.y_on_x = sxx >= syy;
    double suu = fit.y_on_x ? sxx : syy;
    double svv = fit.y_on_x ? syy : sxx;
    if (suu <= 0.0) return std::nullopt;  // all points coincide
    double suv = 0.0;
    for (const auto& p : pts) {
        double u = fit.y_on_x ? p[0] - mx : p[1] - my;
        double v = fit.y_on_x ? p[1] - my : p[0] - mx;
        suv += u * v;
    }
    fit.slope = suv / suu;
    fit.intercept = (fit.y_on_x ? my : mx) - fit.slope * (fit.y_on_x ? mx : my);
    double ss_res = svv - fit.slope * suv;
    // A boundary that is exactly grid-aligned leaves the dependent coordinate
    // with zero variance; that is a perfect line, not an undefined fit.
    fit.r_squared = svv > 0.0 ? std::clamp(1.0 - ss_res / svv, 0.0, 1.0) : 1.0;
    return fit;
}

} // namespace detail

/// Classifies the steady response over an input1 x input2 grid. Every cell
/// integrates independently from the zero state (warm-starting a bistable
/// system would imprint sweep-order hysteresis on the map). Cells that fail
/// to settle are marked rather than aborting the sweep. For single-neuron
/// networks the classification boundary is also fit with a least-squares
/// line through the marching midpoints.
inline SweepResult decision_boundary(const NetworkSpec& spec, const InputBinding& input1,
                                     const InputBinding& input2, const GridAxis& axis1,
                                     const GridAxis& axis2, double class_threshold,
                                     const IntegrationConfig& cfg = {},
                                     std::size_t workers = 1) {
    if (axis1.resolution < 8 || axis2.resolution < 8)
        throw SpecError("classification grid too small: need at least 8x8 cells");
    for (const GridAxis& a : {axis1, axis2})
        if (!(a.min >= 0.0) || !(a.max > a.min))
            throw SpecError("grid axis range must satisfy 0 <= min < max");
    if (!(class_threshold > 0.0)) throw SpecError("class threshold must be positive");
    spec.validate();

    SweepResult r;
    r.input1 = linspace(axis1.min, axis1.max, axis1.resolution);
    r.input2 = linspace(axis2.min, axis2.max, axis2.resolution);
    r.threshold = class_threshold;
    const std::size_t cells = r.input1.size() * r.input2.size();
    r.out.assign(cells, std::numeric_limits<double>::quiet_NaN());
    r.cls.assign(cells, 0);
    r.converged.assign(cells, 0);

    const StateLayout layout = spec.layout();
    const std::size_t out_idx =
        layout.index(spec.topological_order().back(), SpeciesKind::out);
    detail::parallel_for_index(cells, workers, [&](std::size_t cell) {
        const std::size_t i = cell / r.input2.size();
        const std::size_t j = cell % r.input2.size();
        NetworkSpec local = spec;
        clamp_binding(local, input1, r.input1[i]);
        clamp_binding(local, input2, r.input2[j]);
        try {
            StateVector x = steady_state(local, local.zero_state(), cfg);
            r.out[cell] = x[out_idx];
            r.converged[cell] = 1;
            r.cls[cell] = x[out_idx] >= class_threshold ? 1 : 0;
        } catch (const NonConvergence&) {
            // marked unconverged; excluded from the boundary fit
        }
    });

    r.boundary_points = detail::boundary_midpoints(r);
    if (spec.neuron_count() == 1) r.fit = detail::fit_line(r.boundary_points);
    return r;
}

// --- signal matching --------------------------------------------------------

struct SignalMatch {
    double or_threshold = 0.0;
    double and_threshold = 0.0;
};

/// Picks layer-two decision thresholds compatible with the two layer-one
/// high levels: the OR threshold sits a margin below either high alone, the
/// AND threshold a margin above the larger high but strictly below the sum.
inline SignalMatch calibrate_signal_matching(double out_high_1, double out_high_2,
                                             double margin) {
    if (!(out_high_1 > 0.0) || !(out_high_2 > 0.0))
        throw SpecError("signal matching needs positive output highs");
    if (!(margin > 0.0) || !(margin <= 0.5))
        throw SpecError("signal matching margin must lie in (0, 0.5]");
    const double lo = std::min(out_high_1, out_high_2);
    const double hi = std::max(out_high_1, out_high_2);
    SignalMatch m{margin * lo, hi + margin * lo};
    if (m.and_threshold >= out_high_1 + out_high_2)
        throw SpecError("infeasible AND window: threshold would reach the combined highs");
    return m;
}

// --- hazards ----------------------------------------------------------------

/// One transient excursion of the output across the decision threshold: it
/// crossed at t_enter and crossed back at t_exit, peaking at peak nM.
struct ThresholdExcursion {
    double t_enter = 0.0;
    double t_exit = 0.0;
    double peak = 0.0;
    bool above = false;  // excursion went above the threshold
};

/// A watched species that rose and fell again while the network settled.
struct Overshoot {
    SpeciesId species;
    double t_peak = 0.0;
    double peak = 0.0;
    double final_value = 0.0;
};

struct HazardReport {
    SpeciesId output;
    double threshold = 0.0;
    double settle_time = 0.0;
    std::vector<ThresholdExcursion> excursions;
    std::vector<Overshoot> overshoots;

    /// True when the output itself glitched across the threshold — the case
    /// that could falsely actuate a downstream irreversible component.
    bool output_error_state() const { return !excursions.empty(); }
};

/// Scans a finished trajectory for transient glitches: double-crossings of
/// the output decision threshold before the settling window, and
/// rise-then-fall overshoots of the watched internal species. Returns
/// nothing when every watched signal moved monotonically to its final value.
inline std::optional<HazardReport> detect_hazards(
    const Trajectory& traj, const StateLayout& layout, SpeciesId output,
    double class_threshold, double settle_time, std::span<const SpeciesId> watch,
    double overshoot_prominence = 0.01) {
    if (traj.times.size() < 2) throw SpecError("hazard scan needs a nonempty trajectory");
    if (!(class_threshold > 0.0)) throw SpecError("class threshold must be positive");
    if (!(settle_time >= 0.0)) throw SpecError("settle time must be nonnegative");
    const double cutoff = traj.final_time() - settle_time;

    HazardReport report;
    report.output = output;
    report.threshold = class_threshold;
    report.settle_time = settle_time;

    const std::size_t oi = layout.index(output);
    std::vector<double> crossings;
    for (std::size_t k = 0; k + 1 < traj.times.size(); ++k) {
        const double a = traj.states[k][oi], b = traj.states[k + 1][oi];
        if ((a >= class_threshold) == (b >= class_threshold)) continue;
        const double w = (class_threshold - a) / (b - a);
        const double tc = traj.times[k] + w * (traj.times[k + 1] - traj.times[k]);
        if (tc <= cutoff) crossings.push_back(tc);
    }
    for (std::size_t k = 0; k + 1 < crossings.size(); k += 2) {
        ThresholdExcursion e;
        e.t_enter = crossings[k];
        e.t_exit = crossings[k + 1];
        double extreme = class_threshold;
        bool above = false;
        for (std::size_t s = 0; s < traj.times.size(); ++s) {
            if (traj.times[s] <= e.t_enter || traj.times[s] >= e.t_exit) continue;
            const double v = traj.states[s][oi];
            if (std::abs(v - class_threshold) > std::abs(extreme - class_threshold)) {
                extreme = v;
                above = v > class_threshold;
            }
        }
        e.peak = extreme;
        e.above = above;
        report.excursions.push_back(e);
    }

    for (const SpeciesId& id : watch) {
        const std::size_t wi = layout.index(id);
        std::size_t peak_at = 0;
        for (std::size_t s = 1; s < traj.times.size(); ++s)
            if (traj.states[s][wi] > traj.states[peak_at][wi]) peak_at = s;
        const double peak = traj.states[peak_at][wi];
        const double first = traj.states.front()[wi];
        const double last = traj.states.back()[wi];
        if (peak <= 1e-6) continue;
        if (peak - first > overshoot_prominence * peak &&
            peak - last > overshoot_prominence * peak)
            report.overshoots.push_back({id, traj.times[peak_at], peak, last});
    }

    if (report.excursions.empty() && report.overshoots.empty()) return std::nullopt;
    return report;
}

/// Convenience overload watching every neuron's rep2 — the species the
/// settling transient drives hardest.
inline std::optional<HazardReport> detect_hazards(const Trajectory& traj,
                                                  const StateLayout& layout,
                                                  SpeciesId output, double class_threshold,
                                                  double settle_time,
                                                  double overshoot_prominence = 0.01) {
    std::vector<SpeciesId> watch;
    watch.reserve(layout.neuron_count());
    for (std::size_t n = 0; n < layout.neuron_count(); ++n)
        watch.push_back({static_cast<int>(n), SpeciesKind::rep2});
    return detect_hazards(traj, layout, output, class_threshold, settle_time, watch,
                          overshoot_prominence);
}

// --- gate truth tables ------------------------------------------------------

struct GateRow {
    bool in1_high = false;
    bool in2_high = false;
    double level1 = 0.0;
    double level2 = 0.0;
    double out = std::numeric_limits<double>::quiet_NaN();
    bool fired = false;
    bool converged = false;
};

/// The four clamped input corners in LL, LH, HL, HH order, classified
/// against the layer-two decision threshold.
struct TruthTable {
    std::array<GateRow, 4> rows;
    double threshold = 0.0;
    std::size_t output_neuron = 0;

    /// Fired bits packed LL + 2*LH + 4*HL + 8*HH.
    int mask() const {
        int m = 0;
        for (std::size_t k = 0; k < 4; ++k)
            if (rows[k].fired) m |= 1 << k;
        return m;
    }
};

/// Names the Boolean function a truth table realizes; tables outside the
/// named set report their fired bits in row order.
inline std::string truth_table_function(const TruthTable& table) {
    switch (table.mask()) {
    case 0: return "FALSE";
    case 1: return "NOR";
    case 6: return "XOR";
    case 7: return "NAND";
    case 8: return "AND";
    case 9: return "XNOR";
    case 14: return "OR";
    case 15: return "TRUE";
    default: {
        std::string bits;
        for (const auto& row : table.rows) bits += row.fired ? '1' : '0';
        return bits;
    }
    }
}

/// Runs the four input corners of a feed-forward three-neuron network to
/// steady state and classifies the output neuron's [out]. Rows that fail to
/// settle are marked unconverged (and not fired) rather than aborting.
inline TruthTable gate_truth_table(const NetworkSpec& spec, const InputBinding& input1,
                                   const InputBinding& input2, double low, double high,
                                   double class_threshold,
                                   const IntegrationConfig& cfg = {},
                                   std::size_t workers = 1) {
    if (spec.neuron_count() != 3)
        throw SpecError("gate truth tables expect a three-neuron two-layer network");
    if (!(low >= 0.0) || !(high > low)) throw SpecError("need input levels 0 <= low < high");
    if (!(class_threshold > 0.0)) throw SpecError("class threshold must be positive");
    spec.validate();

    TruthTable table;
    table.threshold = class_threshold;
    table.output_neuron = spec.topological_order().back();
    const std::size_t out_idx =
        spec.layout().index(table.output_neuron, SpeciesKind::out);

    detail::parallel_for_index(4, workers, [&](std::size_t k) {
        GateRow& row = table.rows[k];
        row.in1_high = (k & 2) != 0;
        row.in2_high = (k & 1) != 0;
        row.level1 = row.in1_high ? high : low;
        row.level2 = row.in2_high ? high : low;
        NetworkSpec local = spec;
        clamp_binding(local, input1, row.level1);
        clamp_binding(local, input2, row.level2);
        try {
            StateVector x = steady_state(local, local.zero_state(), cfg);
            row.out = x[out_idx];
            row.converged = true;
            row.fired = row.out >= class_threshold;
        } catch (const NonConvergence&) {
            // row stays unconverged and unfired
        }
    });
    return table;
}

} // namespace grn
