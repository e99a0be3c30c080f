#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "grn/analysis.hpp"
#include "grn/emit.hpp"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::MessageMatches;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

/// A/B input channels made mirror images of each other, so swapping weights
/// and inputs is an exact relabeling of the equations.
grn::NeuronParameters symmetric_channels() {
    grn::NeuronParameters p;
    p.k_prod_TetR = p.k_prod_LacI;
    p.k_deg_TetR = p.k_deg_LacI = 0.15;
    p.k_seq_TetR = p.k_seq_LacI = 0.05;
    return p;
}

grn::Trajectory make_trajectory(std::vector<double> times) {
    // Zero-filled single-neuron samples; callers overwrite the species they use.
    grn::Trajectory traj;
    traj.times = std::move(times);
    traj.termination = grn::Termination::SteadyState;
    traj.states.assign(traj.times.size(), grn::StateVector(grn::kSpeciesPerNeuron, 0.0));
    return traj;
}

} // namespace

TEST_CASE("work pool results do not depend on the worker count") {
    std::vector<double> base(257);
    for (std::size_t w : {1u, 2u, 5u, 16u}) {
        std::vector<double> got(257);
        grn::detail::parallel_for_index(got.size(), w, [&](std::size_t i) {
            got[i] = std::sin(static_cast<double>(i)) * 3.25;
        });
        if (w == 1)
            base = got;
        else
            REQUIRE(got == base);
    }
}

TEST_CASE("work pool rethrows the lowest-index failure") {
    std::atomic<int> ran{0};
    try {
        grn::detail::parallel_for_index(64, 4, [&](std::size_t i) {
            ran.fetch_add(1);
            if (i == 7 || i == 41) throw std::runtime_error("task " + std::to_string(i));
        });
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "task 7");
    }
    CHECK(ran.load() == 64);  // no early abort: every slot still gets filled

    grn::detail::parallel_for_index(0, 8, [](std::size_t) { FAIL("no tasks expected"); });
}

TEST_CASE("signal matching thresholds") {
    auto m = grn::calibrate_signal_matching(20.0, 20.0, 0.25);
    CHECK(m.or_threshold == 5.0);
    CHECK(m.and_threshold == 25.0);

    m = grn::calibrate_signal_matching(20.0, 10.0, 0.25);
    CHECK(m.or_threshold == 2.5);
    CHECK(m.and_threshold == 22.5);

    // Margin boundary: and = 30 stays strictly below the combined 40.
    m = grn::calibrate_signal_matching(20.0, 20.0, 0.5);
    CHECK(m.or_threshold == 10.0);
    CHECK(m.and_threshold == 30.0);

    CHECK_THROWS_AS(grn::calibrate_signal_matching(0.0, 20.0, 0.25), grn::SpecError);
    CHECK_THROWS_AS(grn::calibrate_signal_matching(20.0, -1.0, 0.25), grn::SpecError);
    CHECK_THROWS_AS(grn::calibrate_signal_matching(20.0, 20.0, 0.0), grn::SpecError);
    CHECK_THROWS_AS(grn::calibrate_signal_matching(20.0, 20.0, 0.50001), grn::SpecError);
}

TEST_CASE("line fit recovers exact and degenerate boundaries") {
    SECTION("diagonal") {
        std::vector<std::array<double, 2>> pts;
        for (int k = 0; k <= 20; ++k)
            pts.push_back({static_cast<double>(k), 30.0 - 0.75 * k});
        auto fit = grn::detail::fit_line(pts);
        REQUIRE(fit.has_value());
        CHECK(fit->y_on_x);  // x spreads more, so input2 is the dependent
        CHECK_THAT(fit->slope, WithinAbs(-0.75, 1e-12));
        CHECK_THAT(fit->intercept, WithinAbs(30.0, 1e-12));
        CHECK_THAT(fit->r_squared, WithinAbs(1.0, 1e-12));
    }
    SECTION("steep diagonal fits input1 on input2") {
        std::vector<std::array<double, 2>> pts;
        for (int k = 0; k <= 20; ++k)
            pts.push_back({static_cast<double>(k), 30.0 - 1.5 * k});
        auto fit = grn::detail::fit_line(pts);
        REQUIRE(fit.has_value());
        CHECK_FALSE(fit->y_on_x);
        // Same line rearranged: x = 20 - (2/3) y.
        CHECK_THAT(fit->slope, WithinAbs(-2.0 / 3.0, 1e-12));
        CHECK_THAT(fit->intercept, WithinAbs(20.0, 1e-12));
        CHECK_THAT(fit->r_squared, WithinAbs(1.0, 1e-12));
    }
    SECTION("vertical boundary flips the dependent axis") {
        std::vector<std::array<double, 2>> pts;
        for (int k = 0; k <= 20; ++k)
            pts.push_back({12.5, static_cast<double>(k)});
        auto fit = grn::detail::fit_line(pts);
        REQUIRE(fit.has_value());
        CHECK_FALSE(fit->y_on_x);  // input1 fitted on input2
        CHECK_THAT(fit->slope, WithinAbs(0.0, 1e-12));
        CHECK_THAT(fit->intercept, WithinAbs(12.5, 1e-12));
        CHECK(fit->r_squared == 1.0);
    }
    SECTION("scatter is not a perfect line") {
        std::vector<std::array<double, 2>> pts = {
            {0, 0}, {1, 2}, {2, 1}, {3, 4}, {4, 2}, {5, 6}};
        auto fit = grn::detail::fit_line(pts);
        REQUIRE(fit.has_value());
        CHECK(fit->r_squared < 0.9);
        CHECK(fit->r_squared > 0.0);
    }
    SECTION("too few or coincident points") {
        CHECK_FALSE(grn::detail::fit_line({}).has_value());
        CHECK_FALSE(grn::detail::fit_line({{1, 1}}).has_value());
        CHECK_FALSE(grn::detail::fit_line({{1, 1}, {1, 1}, {1, 1}}).has_value());
    }
}

TEST_CASE("boundary midpoints skip unconverged cells") {
    grn::SweepResult r;
    r.input1 = {0.0, 10.0, 20.0, 30.0};
    r.input2 = {0.0, 10.0, 20.0, 30.0};
    r.threshold = 1.0;
    r.out.assign(16, 0.0);
    r.converged.assign(16, 1);
    r.cls.assign(16, 0);
    // Left half low, right half high: one vertical boundary at input1 = 15.
    for (std::size_t i = 2; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r.cls[r.cell(i, j)] = 1;
    auto pts = grn::detail::boundary_midpoints(r);
    REQUIRE(pts.size() == 4);
    for (const auto& p : pts) CHECK(p[0] == 15.0);

    r.converged[r.cell(1, 2)] = 0;  // drops exactly one flip edge
    CHECK(grn::detail::boundary_midpoints(r).size() == 3);
}

TEST_CASE("hazard scan reports threshold excursions with interpolated times") {
    // out ramps through 10 and back: up-crossing at t=15, down at t=35.
    auto traj = make_trajectory({0, 10, 20, 30, 40, 50, 60});
    std::vector<double> out = {0, 5, 15, 15, 5, 2, 2};
    for (std::size_t k = 0; k < out.size(); ++k)
        traj.states[k][static_cast<std::size_t>(grn::SpeciesKind::out)] = out[k];

    grn::StateLayout layout(1);
    grn::SpeciesId out_id{0, grn::SpeciesKind::out};
    auto report = grn::detect_hazards(traj, layout, out_id, 10.0, 5.0);
    REQUIRE(report.has_value());
    CHECK(report->output_error_state());
    REQUIRE(report->excursions.size() == 1);
    const auto& e = report->excursions[0];
    CHECK_THAT(e.t_enter, WithinAbs(15.0, 1e-12));
    CHECK_THAT(e.t_exit, WithinAbs(35.0, 1e-12));
    CHECK(e.above);
    CHECK(e.peak == 15.0);
}

TEST_CASE("hazard scan ignores crossings inside the settling window") {
    auto traj = make_trajectory({0, 10, 20, 30});
    std::vector<double> out = {0, 12, 4, 4};  // up at t=5, down at t=15
    for (std::size_t k = 0; k < out.size(); ++k)
        traj.states[k][static_cast<std::size_t>(grn::SpeciesKind::out)] = out[k];
    grn::StateLayout layout(1);
    grn::SpeciesId out_id{0, grn::SpeciesKind::out};

    // Cutoff t=30-25=5: the up-crossing lands exactly on it, the re-cross is
    // later, so no complete excursion remains.
    auto report = grn::detect_hazards(traj, layout, out_id, 10.0, 25.0);
    CHECK_FALSE(report.has_value());

    // A permanent switch (one crossing) is never an error state.
    out = {0, 12, 14, 14};
    for (std::size_t k = 0; k < out.size(); ++k)
        traj.states[k][static_cast<std::size_t>(grn::SpeciesKind::out)] = out[k];
    CHECK_FALSE(grn::detect_hazards(traj, layout, out_id, 10.0, 0.0).has_value());
}

TEST_CASE("hazard scan flags rise-then-fall overshoots") {
    auto traj = make_trajectory({0, 10, 20, 30, 40});
    std::vector<double> rep2 = {0, 8, 12, 6, 5};
    std::vector<double> out = {0, 1, 2, 3, 3.2};  // monotone: no excursion
    for (std::size_t k = 0; k < rep2.size(); ++k) {
        traj.states[k][static_cast<std::size_t>(grn::SpeciesKind::rep2)] = rep2[k];
        traj.states[k][static_cast<std::size_t>(grn::SpeciesKind::out)] = out[k];
    }
    grn::StateLayout layout(1);
    grn::SpeciesId out_id{0, grn::SpeciesKind::out};

    auto report = grn::detect_hazards(traj, layout, out_id, 10.0, 0.0);
    REQUIRE(report.has_value());
    CHECK_FALSE(report->output_error_state());
    REQUIRE(report->overshoots.size() == 1);
    CHECK(report->overshoots[0].species ==
          grn::SpeciesId{0, grn::SpeciesKind::rep2});
    CHECK(report->overshoots[0].t_peak == 20.0);
    CHECK(report->overshoots[0].peak == 12.0);
    CHECK(report->overshoots[0].final_value == 5.0);

    // Monotone rise in every watched species: nothing to report.
    for (std::size_t k = 0; k < rep2.size(); ++k)
        traj.states[k][static_cast<std::size_t>(grn::SpeciesKind::rep2)] =
            static_cast<double>(k);
    CHECK_FALSE(grn::detect_hazards(traj, layout, out_id, 10.0, 0.0).has_value());
}

TEST_CASE("flat transfer curves sit on the resting branch") {
    // Zero weights leave IPTG without a repressor to strip, so the drive is
    // inert and every sample must reproduce the undriven steady state.
    grn::NetworkSpec spec = grn::single_neuron_spec();
    grn::DriveAxis axis;
    axis.kind = grn::DriveAxis::Kind::Channel;
    axis.channel = grn::InputChannel::IPTG;
    axis.min = 0.0;
    axis.max = 40.0;
    axis.resolution = 5;
    grn::IntegrationConfig cfg;

    auto curves = grn::transfer_function(spec, axis, {0.0, 2.0}, cfg);
    REQUIRE(curves.size() == 2);
    for (std::size_t c = 0; c < curves.size(); ++c) {
        grn::NetworkSpec rest = spec;
        rest.clamp(0, grn::InputChannel::IndT, curves[c].indt);
        grn::StateVector x = grn::steady_state(rest, rest.zero_state(), cfg);
        double resting = x[spec.layout().index(0, grn::SpeciesKind::out)];
        for (double v : curves[c].out) CHECK(v == resting);
        CHECK_FALSE(curves[c].threshold.has_value());
        CHECK_FALSE(curves[c].slope.has_value());
    }
}

TEST_CASE("driven transfer curve saturates at the derepressed output") {
    // Strong rep1 sequestration: far above threshold almost no rep1 survives
    // and [out] approaches k_prod_out / k_deg_out = 20 nM.
    grn::NeuronParameters p;
    p.k_seq_rep1 = 0.5;
    grn::NetworkSpec spec = grn::single_neuron_spec(p);
    grn::DriveAxis axis;
    axis.kind = grn::DriveAxis::Kind::Ind1;
    axis.min = 0.0;
    axis.max = 1000.0;
    axis.resolution = 41;
    grn::IntegrationConfig cfg;

    auto curves = grn::transfer_function(spec, axis, {0.5}, cfg);
    REQUIRE(curves.size() == 1);
    const auto& c = curves[0];
    REQUIRE(c.out.size() == 41);
    CHECK(c.drive.front() == 0.0);
    CHECK(c.drive.back() == 1000.0);
    CHECK(std::is_sorted(c.drive.begin(), c.drive.end()));
    CHECK_THAT(c.out.back(), WithinRel(20.0, 0.02));
    // Monotone rise within integration tolerance.
    for (std::size_t s = 0; s + 1 < c.out.size(); ++s)
        CHECK(c.out[s + 1] >= c.out[s] - 1e-6 * std::max(1.0, c.out[s]));
    REQUIRE(c.threshold.has_value());
    CHECK(*c.threshold > 0.0);
    CHECK(*c.threshold < 1000.0);
    REQUIRE(c.slope.has_value());
    CHECK(*c.slope > 0.0);

    SECTION("dense re-sweep confirms the threshold") {
        grn::DriveAxis dense = axis;
        dense.resolution = 161;
        auto fine = grn::transfer_function(spec, dense, {0.5}, cfg);
        REQUIRE(fine[0].threshold.has_value());
        double spacing = (axis.max - axis.min) / static_cast<double>(axis.resolution - 1);
        CHECK(std::abs(*fine[0].threshold - *c.threshold) <= spacing);
    }
}

TEST_CASE("transfer thresholds move monotonically with IndT") {
    grn::NetworkSpec spec = grn::single_neuron_spec();
    grn::DriveAxis axis;
    axis.kind = grn::DriveAxis::Kind::Ind1;
    axis.min = 0.0;
    axis.max = 30.0;
    axis.resolution = 31;
    grn::IntegrationConfig cfg;

    const std::vector<double> indt = {0.25, 0.5, 1.0, 2.0, 4.0};
    auto curves = grn::transfer_function(spec, axis, indt, cfg, 2);
    REQUIRE(curves.size() == indt.size());
    std::vector<double> thresholds;
    for (const auto& c : curves) {
        REQUIRE(c.threshold.has_value());
        thresholds.push_back(*c.threshold);
    }
    // More IndT means more ActC drive on the rep2 promoter, which tips the
    // core at a lower Ind1: thresholds fall as IndT rises.
    for (std::size_t k = 0; k + 1 < thresholds.size(); ++k)
        CHECK(thresholds[k + 1] < thresholds[k]);
}

TEST_CASE("transfer rejects invalid requests") {
    grn::NetworkSpec spec = grn::single_neuron_spec();
    grn::DriveAxis axis;
    grn::IntegrationConfig cfg;

    grn::NetworkSpec two;
    two.add_neuron("a");
    two.add_neuron("b");
    CHECK_THROWS_MATCHES(grn::transfer_function(two, axis, {1.0}, cfg), grn::SpecError,
                         MessageMatches(ContainsSubstring("single-neuron")));

    grn::DriveAxis bad = axis;
    bad.resolution = 1;
    CHECK_THROWS_AS(grn::transfer_function(spec, bad, {1.0}, cfg), grn::SpecError);
    bad = axis;
    bad.max = bad.min;
    CHECK_THROWS_AS(grn::transfer_function(spec, bad, {1.0}, cfg), grn::SpecError);
    CHECK_THROWS_AS(grn::transfer_function(spec, axis, {}, cfg), grn::SpecError);
    CHECK_THROWS_AS(grn::transfer_function(spec, axis, {-1.0}, cfg), grn::SpecError);
}

TEST_CASE("zero weights give a constant class matrix") {
    grn::NetworkSpec spec = grn::single_neuron_spec();
    grn::InputBinding in1{"x", {{0, grn::InputChannel::IPTG}}};
    grn::InputBinding in2{"y", {{0, grn::InputChannel::aTc}}};
    grn::GridAxis axis{0.0, 50.0, 8};
    grn::IntegrationConfig cfg;

    auto r = grn::decision_boundary(spec, in1, in2, axis, axis, 10.0, cfg, 2);
    REQUIRE(r.out.size() == 64);
    for (std::size_t cell = 0; cell < r.out.size(); ++cell) {
        CHECK(r.converged[cell] == 1);
        CHECK(r.cls[cell] == r.cls[0]);
    }
    CHECK(r.boundary_points.empty());
    CHECK_FALSE(r.fit.has_value());
}

TEST_CASE("swapping axes and weights transposes the class matrix") {
    // With mirror-identical A/B channels, a neuron weighted (wA, wB) probed
    // at (x, y) is an exact relabeling of one weighted (wB, wA) probed at
    // (y, x), down to the floating-point trajectory.
    grn::NeuronParameters p = symmetric_channels();
    grn::NetworkSpec fwd = grn::single_neuron_spec(p);
    fwd.clamp(0, grn::InputChannel::fA, 3.0);
    fwd.clamp(0, grn::InputChannel::fB, 0.5);
    grn::NetworkSpec swapped = grn::single_neuron_spec(p);
    swapped.clamp(0, grn::InputChannel::fA, 0.5);
    swapped.clamp(0, grn::InputChannel::fB, 3.0);

    grn::InputBinding in1{"x", {{0, grn::InputChannel::IPTG}}};
    grn::InputBinding in2{"y", {{0, grn::InputChannel::aTc}}};
    grn::GridAxis axis{0.0, 50.0, 9};
    grn::IntegrationConfig cfg;

    auto a = grn::decision_boundary(fwd, in1, in2, axis, axis, 10.0, cfg, 2);
    auto b = grn::decision_boundary(swapped, in1, in2, axis, axis, 10.0, cfg, 2);
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j) {
            CHECK(a.class_at(i, j) == b.class_at(j, i));
            CHECK(a.out_at(i, j) == b.out_at(j, i));
        }
}

TEST_CASE("decision boundary output is byte-identical across worker counts") {
    grn::NeuronParameters p = symmetric_channels();
    grn::NetworkSpec spec = grn::single_neuron_spec(p);
    spec.clamp(0, grn::InputChannel::fA, 3.0);
    spec.clamp(0, grn::InputChannel::fB, 0.5);
    grn::InputBinding in1{"x", {{0, grn::InputChannel::IPTG}}};
    grn::InputBinding in2{"y", {{0, grn::InputChannel::aTc}}};
    grn::GridAxis axis{0.0, 50.0, 8};
    grn::IntegrationConfig cfg;

    auto serial = grn::decision_boundary(spec, in1, in2, axis, axis, 10.0, cfg, 1);
    auto pooled = grn::decision_boundary(spec, in1, in2, axis, axis, 10.0, cfg, 7);
    CHECK(grn::sweep_csv(serial) == grn::sweep_csv(pooled));
    CHECK(grn::line_fit_json(serial) == grn::line_fit_json(pooled));
}

TEST_CASE("decision boundary rejects bad grids") {
    grn::NetworkSpec spec = grn::single_neuron_spec();
    grn::InputBinding in1{"x", {{0, grn::InputChannel::IPTG}}};
    grn::InputBinding in2{"y", {{0, grn::InputChannel::aTc}}};
    grn::GridAxis good{0.0, 50.0, 8};
    grn::GridAxis small{0.0, 50.0, 7};
    grn::IntegrationConfig cfg;

    CHECK_THROWS_MATCHES(grn::decision_boundary(spec, in1, in2, small, good, 10.0, cfg),
                         grn::SpecError, MessageMatches(ContainsSubstring("grid too small")));
    grn::GridAxis inverted{50.0, 0.0, 8};
    CHECK_THROWS_AS(grn::decision_boundary(spec, in1, in2, good, inverted, 10.0, cfg),
                    grn::SpecError);
    CHECK_THROWS_AS(grn::decision_boundary(spec, in1, in2, good, good, 0.0, cfg),
                    grn::SpecError);
}

TEST_CASE("truth table function names") {
    grn::TruthTable t;
    auto set = [&](bool ll, bool lh, bool hl, bool hh) {
        t.rows[0].fired = ll;
        t.rows[1].fired = lh;
        t.rows[2].fired = hl;
        t.rows[3].fired = hh;
    };
    set(false, false, false, false);
    CHECK(grn::truth_table_function(t) == "FALSE");
    CHECK(t.mask() == 0);
    set(false, true, true, true);
    CHECK(grn::truth_table_function(t) == "OR");
    set(false, false, false, true);
    CHECK(grn::truth_table_function(t) == "AND");
    set(true, false, false, false);
    CHECK(grn::truth_table_function(t) == "NOR");
    set(false, true, true, false);
    CHECK(grn::truth_table_function(t) == "XOR");
    set(true, true, true, false);
    CHECK(grn::truth_table_function(t) == "NAND");
    set(true, false, false, true);
    CHECK(grn::truth_table_function(t) == "XNOR");
    set(true, true, true, true);
    CHECK(grn::truth_table_function(t) == "TRUE");
    set(false, true, false, false);
    CHECK(grn::truth_table_function(t) == "0100");
}

TEST_CASE("unreachable gate threshold yields FALSE") {
    grn::NetworkSpec spec;
    spec.add_neuron("n1");
    spec.add_neuron("n2");
    spec.add_neuron("n3");
    spec.wire(0, 2, grn::InputChannel::IPTG);
    spec.wire(1, 2, grn::InputChannel::aTc);
    grn::InputBinding in1{"x", {{0, grn::InputChannel::IPTG}}};
    grn::InputBinding in2{"y", {{1, grn::InputChannel::aTc}}};
    grn::IntegrationConfig cfg;

    // [out] can never exceed k_prod_out / k_deg_out = 20 nM, so a 100 nM
    // threshold is unreachable for every input corner.
    auto table = grn::gate_truth_table(spec, in1, in2, 0.0, 40.0, 100.0, cfg, 2);
    CHECK(grn::truth_table_function(table) == "FALSE");
    CHECK(table.output_neuron == 2);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(table.rows[k].converged);
        CHECK_FALSE(table.rows[k].fired);
        CHECK(table.rows[k].out < 20.0);
    }
    CHECK(table.rows[0].level1 == 0.0);
    CHECK(table.rows[1].level2 == 40.0);
    CHECK(table.rows[2].level1 == 40.0);
    CHECK(table.rows[3].level1 == 40.0);
}

TEST_CASE("gate table rejects bad requests") {
    grn::NetworkSpec spec = grn::single_neuron_spec();
    grn::InputBinding in1{"x", {{0, grn::InputChannel::IPTG}}};
    grn::InputBinding in2{"y", {{0, grn::InputChannel::aTc}}};
    grn::IntegrationConfig cfg;
    CHECK_THROWS_MATCHES(grn::gate_truth_table(spec, in1, in2, 0.0, 40.0, 10.0, cfg),
                         grn::SpecError,
                         MessageMatches(ContainsSubstring("three-neuron")));

    grn::NetworkSpec three;
    three.add_neuron("a");
    three.add_neuron("b");
    three.add_neuron("c");
    CHECK_THROWS_AS(grn::gate_truth_table(three, in1, in2, 40.0, 40.0, 10.0, cfg),
                    grn::SpecError);
    CHECK_THROWS_AS(grn::gate_truth_table(three, in1, in2, 0.0, 40.0, 0.0, cfg),
                    grn::SpecError);
}

TEST_CASE("csv emitters") {
    grn::SweepResult r;
    r.input1 = {0.0, 1.5};
    r.input2 = {0.0, 2.0};
    r.threshold = 1.0;
    r.out = {0.25, 0.5, 1.5, 2.5};
    r.cls = {0, 0, 1, 1};
    r.converged = {1, 1, 1, 1};
    CHECK(grn::sweep_csv(r) ==
          "input1,input2,out,class\n"
          "0,0,0.25,0\n"
          "0,2,0.5,0\n"
          "1.5,0,1.5,1\n"
          "1.5,2,2.5,1\n");

    grn::TransferCurve c;
    c.indt = 0.25;
    c.drive = {0.0, 10.0};
    c.out = {1.0, 19.5};
    CHECK(grn::transfer_csv({c}) ==
          "indt,drive,out\n"
          "0.25,0,1\n"
          "0.25,10,19.5\n");
}

TEST_CASE("json emitters") {
    SECTION("fixed points") {
        grn::FixedPoint fp;
        fp.rep1 = 14.25;
        fp.rep2 = 0.03125;
        fp.stability = grn::Stability::StableNode;
        fp.eigenvalues = {std::complex<double>(-0.5, 0.0),
                          std::complex<double>(-0.25, 0.0)};
        CHECK(grn::fixed_points_json({fp}) ==
              "[\n"
              "  {\n"
              "    \"rep1\": 14.25,\n"
              "    \"rep2\": 0.03125,\n"
              "    \"stability\": \"StableNode\",\n"
              "    \"eigenvalues\": [\n"
              "      [\n"
              "        -0.5,\n"
              "        0\n"
              "      ],\n"
              "      [\n"
              "        -0.25,\n"
              "        0\n"
              "      ]\n"
              "    ]\n"
              "  }\n"
              "]\n");
    }
    SECTION("line fit with and without a fit") {
        grn::SweepResult r;
        r.threshold = 10.0;
        r.boundary_points = {{1.0, 2.0}};
        CHECK(grn::line_fit_json(r) ==
              "{\n"
              "  \"threshold\": 10,\n"
              "  \"boundary_points\": [\n"
              "    [\n"
              "      1,\n"
              "      2\n"
              "    ]\n"
              "  ],\n"
              "  \"fit\": null\n"
              "}\n");
        r.fit = grn::LineFit{true, -1.0, 30.0, 0.995};
        CHECK_THAT(grn::line_fit_json(r),
                   ContainsSubstring("\"dependent\": \"input2\""));
        CHECK_THAT(grn::line_fit_json(r), ContainsSubstring("\"r_squared\": 0.995"));
    }
    SECTION("truth table and hazards name their species") {
        grn::NetworkSpec spec;
        spec.add_neuron("first");
        spec.add_neuron("second");
        grn::TruthTable t;
        t.output_neuron = 1;
        t.threshold = 5.0;
        t.rows[3].fired = true;
        t.rows[3].converged = true;
        std::string json = grn::truth_table_json(t, spec, "x", "y");
        CHECK_THAT(json, ContainsSubstring("\"output\": \"second\""));
        CHECK_THAT(json, ContainsSubstring("\"function\": \"AND\""));
        CHECK_THAT(json, ContainsSubstring("\"out\": null"));  // unconverged rows

        grn::HazardReport report;
        report.output = {1, grn::SpeciesKind::out};
        report.overshoots.push_back(
            {grn::SpeciesId{0, grn::SpeciesKind::rep2}, 12.0, 8.5, 3.0});
        std::string hj = grn::hazard_json(spec, report.output, 10.0, 50.0, report);
        CHECK_THAT(hj, ContainsSubstring("\"output\": \"second.out\""));
        CHECK_THAT(hj, ContainsSubstring("\"species\": \"first.rep2\""));
        CHECK_THAT(hj, ContainsSubstring("\"hazard_detected\": true"));
        CHECK_THAT(hj, ContainsSubstring("\"error_state\": false"));

        std::string clean = grn::hazard_json(spec, report.output, 10.0, 50.0, std::nullopt);
        CHECK_THAT(clean, ContainsSubstring("\"hazard_detected\": false"));
        CHECK_THAT(clean, ContainsSubstring("\"excursions\": []"));
    }
}
