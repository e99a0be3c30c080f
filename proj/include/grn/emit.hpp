#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grn/analysis.hpp"
#include "grn/format.hpp"
#include "grn/integrate.hpp"
#include "grn/network.hpp"
#include "grn/toggle.hpp"

namespace grn {

namespace detail {

/// Streaming JSON writer: two-space pretty printing, strings escaped,
/// numbers in shortest round-trip decimal (non-finite values become null).
/// Small enough to keep all emitters on one number format.
class JsonWriter {
public:
    std::string take() {
        out_ += '\n';
        return std::move(out_);
    }

    void begin_object() { open('{'); }
    void end_object() { close('}'); }
    void begin_array() { open('['); }
    void end_array() { close(']'); }

    void key(std::string_view k) {
        element();
        quote(k);
        out_ += ": ";
        glued_ = true;
    }
    void value(std::string_view s) {
        element();
        quote(s);
    }
    void value(const char* s) { value(std::string_view(s)); }
    void value(double v) {
        element();
        if (std::isfinite(v))
            out_ += format_double(v);
        else
            out_ += "null";
    }
    void value(int v) {
        element();
        out_ += std::to_string(v);
    }
    void value(std::size_t v) {
        element();
        out_ += std::to_string(v);
    }
    void value(bool b) {
        element();
        out_ += b ? "true" : "false";
    }
    void null() {
        element();
        out_ += "null";
    }

private:
    void open(char c) {
        element();
        out_ += c;
        empty_.push_back(true);
    }
    void close(char c) {
        bool was_empty = empty_.back();
        empty_.pop_back();
        if (!was_empty) {
            out_ += '\n';
            indent();
        }
        out_ += c;
    }
    void element() {
        if (glued_) {
            glued_ = false;
            return;
        }
        if (empty_.empty()) return;  // root value
        if (!empty_.back()) out_ += ',';
        empty_.back() = false;
        out_ += '\n';
        indent();
    }
    void indent() { out_.append(2 * empty_.size(), ' '); }
    void quote(std::string_view s) {
        out_ += '"';
        for (char c : s) {
            switch (c) {
            case '"': out_ += "\\\""; break;
            case '\\': out_ += "\\\\"; break;
            case '\n': out_ += "\\n"; break;
            case '\r': out_ += "\\r"; break;
            case '\t': out_ += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x",
                                  static_cast<unsigned>(static_cast<unsigned char>(c)));
                    out_ += buf;
                } else {
                    out_ += c;
                }
            }
        }
        out_ += '"';
    }

    std::string out_;
    std::vector<bool> empty_;  // per open container: no element written yet
    bool glued_ = false;       // next element follows a key on the same line
};

inline std::string qualified_species(const NetworkSpec& spec, const SpeciesId& id) {
    return spec.neuron(static_cast<std::size_t>(id.neuron_index)).name + "." +
           std::string(species_name(id.kind));
}

} // namespace detail

// --- CSV --------------------------------------------------------------------

inline std::string sweep_csv(const SweepResult& r) {
    std::string out = "input1,input2,out,class\n";
    for (std::size_t i = 0; i < r.input1.size(); ++i)
        for (std::size_t j = 0; j < r.input2.size(); ++j) {
            out += format_double(r.input1[i]);
            out += ',';
            out += format_double(r.input2[j]);
            out += ',';
            out += format_double(r.out_at(i, j));
            out += ',';
            out += r.class_at(i, j) ? '1' : '0';
            out += '\n';
        }
    return out;
}

inline std::string transfer_csv(const std::vector<TransferCurve>& curves) {
    std::string out = "indt,drive,out\n";
    for (const auto& c : curves)
        for (std::size_t s = 0; s < c.drive.size(); ++s) {
            out += format_double(c.indt);
            out += ',';
            out += format_double(c.drive[s]);
            out += ',';
            out += format_double(c.out[s]);
            out += '\n';
        }
    return out;
}

/// One row per accepted integration step: t plus every species in state
/// order, columns labeled neuron.species.
inline std::string trajectory_csv(const Trajectory& traj, const NetworkSpec& spec) {
    const StateLayout layout = spec.layout();
    std::string out = "t";
    for (std::size_t f = 0; f < layout.size(); ++f) {
        out += ',';
        out += detail::qualified_species(spec, layout.species_at(f));
    }
    out += '\n';
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        out += format_double(traj.times[k]);
        for (double v : traj.states[k]) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

inline std::string nullcline_csv(const NullclineCurves& curves) {
    std::string out = "curve,rep1,rep2\n";
    for (std::size_t k = 0; k < curves.rep1_axis.size(); ++k) {
        out += "1,";
        out += format_double(curves.rep1_axis[k]);
        out += ',';
        out += format_double(curves.curve1_rep2[k]);
        out += '\n';
    }
    for (std::size_t k = 0; k < curves.rep2_axis.size(); ++k) {
        out += "2,";
        out += format_double(curves.curve2_rep1[k]);
        out += ',';
        out += format_double(curves.rep2_axis[k]);
        out += '\n';
    }
    return out;
}

// --- JSON -------------------------------------------------------------------

inline std::string fixed_points_json(const std::vector<FixedPoint>& points) {
    detail::JsonWriter w;
    w.begin_array();
    for (const auto& fp : points) {
        w.begin_object();
        w.key("rep1");
        w.value(fp.rep1);
        w.key("rep2");
        w.value(fp.rep2);
        w.key("stability");
        w.value(stability_name(fp.stability));
        w.key("eigenvalues");
        w.begin_array();
        for (const auto& ev : fp.eigenvalues) {
            w.begin_array();
            w.value(ev.real());
            w.value(ev.imag());
            w.end_array();
        }
        w.end_array();
        w.end_object();
    }
    w.end_array();
    return w.take();
}

inline std::string line_fit_json(const SweepResult& r) {
    detail::JsonWriter w;
    w.begin_object();
    w.key("threshold");
    w.value(r.threshold);
    w.key("boundary_points");
    w.begin_array();
    for (const auto& p : r.boundary_points) {
        w.begin_array();
        w.value(p[0]);
        w.value(p[1]);
        w.end_array();
    }
    w.end_array();
    w.key("fit");
    if (r.fit.has_value()) {
        w.begin_object();
        w.key("dependent");
        w.value(r.fit->y_on_x ? "input2" : "input1");
        w.key("slope");
        w.value(r.fit->slope);
        w.key("intercept");
        w.value(r.fit->intercept);
        w.key("r_squared");
        w.value(r.fit->r_squared);
        w.end_object();
    } else {
        w.null();
    }
    w.end_object();
    return w.take();
}

inline std::string transfer_summary_json(const std::vector<TransferCurve>& curves) {
    detail::JsonWriter w;
    w.begin_array();
    for (const auto& c : curves) {
        w.begin_object();
        w.key("indt");
        w.value(c.indt);
        w.key("threshold");
        if (c.threshold.has_value())
            w.value(*c.threshold);
        else
            w.null();
        w.key("slope");
        if (c.slope.has_value())
            w.value(*c.slope);
        else
            w.null();
        w.end_object();
    }
    w.end_array();
    return w.take();
}

inline std::string hazard_json(const NetworkSpec& spec, SpeciesId output,
                               double class_threshold, double settle_time,
                               const std::optional<HazardReport>& report) {
    detail::JsonWriter w;
    w.begin_object();
    w.key("output");
    w.value(detail::qualified_species(spec, output));
    w.key("threshold");
    w.value(class_threshold);
    w.key("settle_time");
    w.value(settle_time);
    w.key("hazard_detected");
    w.value(report.has_value());
    w.key("error_state");
    w.value(report.has_value() && report->output_error_state());
    w.key("excursions");
    w.begin_array();
    if (report.has_value())
        for (const auto& e : report->excursions) {
            w.begin_object();
            w.key("t_enter");
            w.value(e.t_enter);
            w.key("t_exit");
            w.value(e.t_exit);
            w.key("peak");
            w.value(e.peak);
            w.key("above");
            w.value(e.above);
            w.end_object();
        }
    w.end_array();
    w.key("overshoots");
    w.begin_array();
    if (report.has_value())
        for (const auto& o : report->overshoots) {
            w.begin_object();
            w.key("species");
            w.value(detail::qualified_species(spec, o.species));
            w.key("t_peak");
            w.value(o.t_peak);
            w.key("peak");
            w.value(o.peak);
            w.key("final");
            w.value(o.final_value);
            w.end_object();
        }
    w.end_array();
    w.end_object();
    return w.take();
}

inline std::string truth_table_json(const TruthTable& table, const NetworkSpec& spec,
                                    std::string_view input1, std::string_view input2) {
    detail::JsonWriter w;
    w.begin_object();
    w.key("inputs");
    w.begin_array();
    w.value(input1);
    w.value(input2);
    w.end_array();
    w.key("output");
    w.value(spec.neuron(table.output_neuron).name);
    w.key("threshold");
    w.value(table.threshold);
    w.key("function");
    w.value(truth_table_function(table));
    w.key("rows");
    w.begin_array();
    for (const auto& row : table.rows) {
        w.begin_object();
        w.key("in1");
        w.value(row.in1_high);
        w.key("in2");
        w.value(row.in2_high);
        w.key("level1");
        w.value(row.level1);
        w.key("level2");
        w.value(row.level2);
        w.key("out");
        w.value(row.out);
        w.key("fired");
        w.value(row.fired);
        w.key("converged");
        w.value(row.converged);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.take();
}

} // namespace grn
