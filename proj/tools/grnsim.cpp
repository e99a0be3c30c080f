// grnsim: command-line front end for the GRN neuron simulator.
//
// Subcommands cover the library's analyses: transient simulation, steady
// states, toggle nullclines and fixed points, transfer-function families,
// decision-boundary sweeps, gate truth tables, and hazard scans. Every run
// writes its artifacts plus a manifest fingerprinting the consumed network
// file, so identical inputs and flags reproduce identical bytes (the
// manifest's wall clock aside), and the worker count never changes any
// output byte.
//
// Exit codes: 0 success, 1 I/O, 2 parse (network file or command line),
// 3 validation, 4 numeric failure.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "grn/emit.hpp"
#include "grn/netdef.hpp"

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kVersion = "1.0.0";

struct Failure {
    int code;
    std::string message;
};

[[noreturn]] void fail(int code, std::string message) {
    throw Failure{code, std::move(message)};
}

std::string read_file(const std::string& path) {
    if (fs::is_directory(path)) fail(1, "cannot read " + path + ": is a directory");
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(1, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) fail(1, "cannot read " + path);
    return std::move(ss).str();
}

// --- options -----------------------------------------------------------------

struct Common {
    std::string net;
    std::string out_dir;
    std::vector<std::string> sets;
    std::vector<std::string> inputs;
    std::size_t workers = 1;
    double tol = 1e-6;
    double t_end = 5000.0;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--net", c.net, "network definition file (.grn)")->required();
    cmd->add_option("--out-dir", c.out_dir,
                    "artifact directory (default: $GRNSIM_OUT_DIR, else .)");
    cmd->add_option("--set", c.sets,
                    "parameter override NEURON.PARAM=VALUE (repeatable)");
    cmd->add_option("--input", c.inputs,
                    "input override NAME=SIGNAL, where SIGNAL is a number or "
                    "step(t:v, ...) (repeatable)");
    cmd->add_option("--workers", c.workers, "worker threads for grid analyses");
    cmd->add_option("--tol", c.tol, "relative integration tolerance");
    cmd->add_option("--t-end", c.t_end, "integration horizon in seconds");
}

struct NullclineOpts {
    std::string neuron;
    std::size_t res = 256;
};

struct TransferOpts {
    std::string neuron;
    std::string drive = "Ind1";
    double min = 0.0;
    double max = 16.0;
    std::size_t res = 161;
    std::vector<double> indt;
    std::string sweep;
};

struct BoundaryOpts {
    std::string input1;
    std::string input2;
    double min1 = 0.0, max1 = 50.0;
    double min2 = 0.0, max2 = 50.0;
    std::size_t res1 = 64, res2 = 64;
    double threshold = 10.0;
    std::string sweep;
};

struct GateOpts {
    std::string input1;
    std::string input2;
    double low = 0.0;
    double high = 40.0;
    double threshold = 10.0;
};

struct HazardOpts {
    std::string output;
    double threshold = 10.0;
    double settle = 0.0;
};

// --- loading and overrides ---------------------------------------------------

std::string trimmed(std::string_view s) {
    return std::string(grn::netdef_detail::trim(s));
}

void apply_input_override(grn::NetworkDocument& doc, const std::string& item) {
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos)
        fail(2, "--input expects NAME=SIGNAL, got '" + item + "'");
    const std::string name = trimmed(item.substr(0, eq));
    const std::string expr = trimmed(item.substr(eq + 1));
    grn::NetworkDocument snippet;
    try {
        snippet = grn::parse_network("[inputs]\nv = " + expr + "\n[neuron q]\n");
    } catch (const grn::ParseError&) {
        fail(2, "--input " + name + ": cannot parse signal '" + expr + "'");
    }
    for (auto& [key, sig] : doc.inputs) {
        if (key == name) {
            sig = snippet.inputs.front().second;
            return;
        }
    }
    fail(3, "--input " + name + ": the network file declares no such input");
}

void apply_param_override(grn::NetworkDocument& doc, const std::string& item) {
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos)
        fail(2, "--set expects NEURON.PARAM=VALUE, got '" + item + "'");
    const std::string lhs = trimmed(item.substr(0, eq));
    const std::string value_str = trimmed(item.substr(eq + 1));
    const std::size_t dot = lhs.find('.');
    if (dot == std::string::npos)
        fail(2, "--set expects NEURON.PARAM=VALUE, got '" + item + "'");
    const std::string neuron = lhs.substr(0, dot);
    const std::string param = lhs.substr(dot + 1);
    double value = 0.0;
    if (!grn::parse_double(value_str, value))
        fail(2, "--set " + lhs + ": expected a number, got '" + value_str + "'");
    for (auto& nb : doc.neurons) {
        if (nb.name != neuron) continue;
        if (grn::find_parameter_field(param) == nullptr)
            fail(3, "--set " + lhs + ": unknown parameter " + param);
        for (auto& [key, pv] : nb.params) {
            if (key == param) {
                pv = value;
                return;
            }
        }
        nb.params.emplace_back(param, value);
        return;
    }
    fail(3, "--set " + lhs + ": no neuron named " + neuron);
}

struct LoadedNet {
    std::string bytes;
    grn::NetworkDocument doc;
    grn::NetworkSpec spec;
};

LoadedNet load_network(const Common& c) {
    LoadedNet net;
    net.bytes = read_file(c.net);
    std::vector<grn::ParseDiagnostic> diags;
    auto doc = grn::parse_network(net.bytes, diags);
    if (!doc) {
        std::string msg;
        for (const auto& d : diags) {
            if (!msg.empty()) msg += '\n';
            msg += c.net + ":" + std::to_string(d.line) + ":" + std::to_string(d.column) +
                   ": " + d.message;
        }
        fail(2, msg);
    }
    net.doc = std::move(*doc);
    for (const auto& item : c.inputs) apply_input_override(net.doc, item);
    for (const auto& item : c.sets) apply_param_override(net.doc, item);
    try {
        net.spec = grn::validate_network(net.doc);
    } catch (const grn::SpecError& e) {
        fail(3, e.what());
    }
    return net;
}

grn::IntegrationConfig make_config(const Common& c) {
    grn::IntegrationConfig cfg;
    cfg.rel_tol = c.tol;
    cfg.abs_tol = c.tol * 1e-3;
    cfg.t_end = c.t_end;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        fail(3, e.what());
    }
    return cfg;
}

// --- artifacts ----------------------------------------------------------------

class Run {
public:
    Run(std::string command, const Common& common, const LoadedNet& net)
        : command_(std::move(command)), common_(common),
          hash_(grn::fnv1a64(net.bytes)),
          started_(std::chrono::steady_clock::now()) {
        out_dir_ = common.out_dir;
        if (out_dir_.empty()) {
            const char* env = std::getenv("GRNSIM_OUT_DIR");
            out_dir_ = env != nullptr && *env != '\0' ? env : ".";
        }
    }

    const std::string& out_dir() const { return out_dir_; }

    void add(std::string name, std::string bytes) {
        files_.emplace_back(std::move(name), std::move(bytes));
    }

    /// Writes every artifact plus the manifest; `config` fills the manifest's
    /// command-specific configuration keys.
    void finish(const std::function<void(grn::detail::JsonWriter&)>& config) {
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started_)
                .count();
        files_.emplace_back("manifest.json", manifest(config, wall));
        std::error_code ec;
        fs::create_directories(out_dir_, ec);
        if (ec) fail(1, "cannot create " + out_dir_ + ": " + ec.message());
        for (const auto& [name, bytes] : files_) {
            const fs::path path = fs::path(out_dir_) / name;
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
            if (!out.good()) fail(1, "cannot write " + path.string());
            std::printf("wrote %s\n", path.string().c_str());
        }
    }

private:
    std::string manifest(const std::function<void(grn::detail::JsonWriter&)>& config,
                         double wall) const {
        grn::detail::JsonWriter w;
        w.begin_object();
        w.key("tool");
        w.value("grnsim");
        w.key("version");
        w.value(kVersion);
        w.key("command");
        w.value(command_);
        w.key("net");
        w.value(common_.net);
        char hex[32];
        std::snprintf(hex, sizeof hex, "fnv1a64:%016llx",
                      static_cast<unsigned long long>(hash_));
        w.key("net_hash");
        w.value(hex);
        w.key("set");
        w.begin_array();
        for (const auto& s : common_.sets) w.value(s);
        w.end_array();
        w.key("input");
        w.begin_array();
        for (const auto& s : common_.inputs) w.value(s);
        w.end_array();
        w.key("config");
        w.begin_object();
        w.key("tol");
        w.value(common_.tol);
        w.key("t_end");
        w.value(common_.t_end);
        config(w);
        w.end_object();
        w.key("outputs");
        w.begin_array();
        for (const auto& [name, bytes] : files_) w.value(name);
        w.value("manifest.json");
        w.end_array();
        w.key("wall_clock_seconds");
        w.value(wall);
        w.end_object();
        return w.take();
    }

    std::string command_;
    const Common& common_;
    std::uint64_t hash_;
    std::chrono::steady_clock::time_point started_;
    std::string out_dir_;
    std::vector<std::pair<std::string, std::string>> files_;
};

/// The Hill forms assume regulator excess; flag steady concentrations outside
/// the band where that assumption is comfortable.
void warn_concentration_band(const grn::StateVector& x) {
    std::size_t outside = 0;
    for (double v : x)
        if (v < 100.0 || v > 2000.0) ++outside;
    if (outside > 0)
        std::fprintf(stderr,
                     "warning: %zu of %zu steady concentrations lie outside "
                     "[100, 2000] nM, where the Hill approximation is strained\n",
                     outside, x.size());
}

std::string state_csv(const grn::NetworkSpec& spec, const grn::StateVector& x) {
    const grn::StateLayout layout = spec.layout();
    std::string out = "species,concentration\n";
    for (std::size_t f = 0; f < layout.size(); ++f) {
        out += grn::detail::qualified_species(spec, layout.species_at(f));
        out += ',';
        out += grn::format_double(x[f]);
        out += '\n';
    }
    return out;
}

// --- sweep-block presets --------------------------------------------------------

double sweep_number(const std::string& block, const std::string& key,
                    const std::string& raw) {
    double v = 0.0;
    if (!grn::parse_double(raw, v))
        fail(3, "[sweep " + block + "] " + key + ": expected a number, got '" + raw + "'");
    return v;
}

std::size_t sweep_resolution(const std::string& block, const std::string& key,
                             const std::string& raw) {
    const double v = sweep_number(block, key, raw);
    if (!(v >= 2.0) || v != std::floor(v) || v > 1e6)
        fail(3, "[sweep " + block + "] " + key + ": expected an integer resolution");
    return static_cast<std::size_t>(v);
}

std::vector<double> sweep_list(const std::string& block, const std::string& key,
                               const std::string& raw) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= raw.size()) {
        std::size_t comma = raw.find(',', pos);
        if (comma == std::string::npos) comma = raw.size();
        values.push_back(sweep_number(block, key, trimmed(raw.substr(pos, comma - pos))));
        pos = comma + 1;
    }
    return values;
}

const grn::SweepBlock& find_sweep_block(const grn::NetworkDocument& doc,
                                        const std::string& name) {
    const grn::SweepBlock* block = doc.find_sweep(name);
    if (block == nullptr) fail(3, "no [sweep " + name + "] block in the network file");
    return *block;
}

void apply_transfer_sweep(const grn::NetworkDocument& doc, CLI::App* cmd,
                          TransferOpts& o) {
    const grn::SweepBlock& block = find_sweep_block(doc, o.sweep);
    for (const auto& [key, raw] : block.entries) {
        if (key == "analysis") {
            if (raw != "transfer")
                fail(3, "[sweep " + o.sweep + "] describes a '" + raw + "' analysis");
        } else if (key == "neuron") {
            if (cmd->count("--neuron") == 0) o.neuron = raw;
        } else if (key == "drive") {
            if (cmd->count("--drive") == 0) o.drive = raw;
        } else if (key == "min") {
            if (cmd->count("--min") == 0) o.min = sweep_number(o.sweep, key, raw);
        } else if (key == "max") {
            if (cmd->count("--max") == 0) o.max = sweep_number(o.sweep, key, raw);
        } else if (key == "res") {
            if (cmd->count("--res") == 0) o.res = sweep_resolution(o.sweep, key, raw);
        } else if (key == "indt") {
            if (cmd->count("--indt") == 0) o.indt = sweep_list(o.sweep, key, raw);
        } else {
            fail(3, "[sweep " + o.sweep + "] unknown key " + key);
        }
    }
}

void apply_boundary_sweep(const grn::NetworkDocument& doc, CLI::App* cmd,
                          BoundaryOpts& o) {
    const grn::SweepBlock& block = find_sweep_block(doc, o.sweep);
    for (const auto& [key, raw] : block.entries) {
        if (key == "analysis") {
            if (raw != "boundary")
                fail(3, "[sweep " + o.sweep + "] describes a '" + raw + "' analysis");
        } else if (key == "input1") {
            if (cmd->count("--input1") == 0) o.input1 = raw;
        } else if (key == "input2") {
            if (cmd->count("--input2") == 0) o.input2 = raw;
        } else if (key == "min") {
            if (cmd->count("--min1") == 0) o.min1 = sweep_number(o.sweep, key, raw);
            if (cmd->count("--min2") == 0) o.min2 = sweep_number(o.sweep, key, raw);
        } else if (key == "max") {
            if (cmd->count("--max1") == 0) o.max1 = sweep_number(o.sweep, key, raw);
            if (cmd->count("--max2") == 0) o.max2 = sweep_number(o.sweep, key, raw);
        } else if (key == "res") {
            if (cmd->count("--res1") == 0) o.res1 = sweep_resolution(o.sweep, key, raw);
            if (cmd->count("--res2") == 0) o.res2 = sweep_resolution(o.sweep, key, raw);
        } else if (key == "min1") {
            if (cmd->count("--min1") == 0) o.min1 = sweep_number(o.sweep, key, raw);
        } else if (key == "max1") {
            if (cmd->count("--max1") == 0) o.max1 = sweep_number(o.sweep, key, raw);
        } else if (key == "res1") {
            if (cmd->count("--res1") == 0) o.res1 = sweep_resolution(o.sweep, key, raw);
        } else if (key == "min2") {
            if (cmd->count("--min2") == 0) o.min2 = sweep_number(o.sweep, key, raw);
        } else if (key == "max2") {
            if (cmd->count("--max2") == 0) o.max2 = sweep_number(o.sweep, key, raw);
        } else if (key == "res2") {
            if (cmd->count("--res2") == 0) o.res2 = sweep_resolution(o.sweep, key, raw);
        } else if (key == "threshold") {
            if (cmd->count("--threshold") == 0)
                o.threshold = sweep_number(o.sweep, key, raw);
        } else {
            fail(3, "[sweep " + o.sweep + "] unknown key " + key);
        }
    }
}

// --- shared lookups -------------------------------------------------------------

std::pair<std::string, std::string> default_input_pair(const grn::NetworkDocument& doc,
                                                       const std::string& given1,
                                                       const std::string& given2) {
    std::string in1 = given1, in2 = given2;
    if (in1.empty() || in2.empty()) {
        if (doc.inputs.size() < 2)
            fail(3, "the network file declares fewer than two inputs; "
                    "pass --input1 and --input2 explicitly");
        if (in1.empty()) in1 = doc.inputs[0].first;
        if (in2.empty()) in2 = doc.inputs[1].first;
    }
    return {in1, in2};
}

std::size_t output_neuron_index(const grn::NetworkSpec& spec, const std::string& name) {
    if (name.empty()) return spec.topological_order().back();
    return spec.neuron_index(name);  // SpecError -> exit 3
}

// --- subcommands ------------------------------------------------------------------

int run_simulate(const Common& common) {
    const LoadedNet net = load_network(common);
    const grn::IntegrationConfig cfg = make_config(common);
    Run run("simulate", common, net);
    const grn::Trajectory traj = grn::integrate(net.spec, net.spec.zero_state(), cfg);
    run.add("trajectory.csv", grn::trajectory_csv(traj, net.spec));
    run.finish([&](grn::detail::JsonWriter& w) {
        w.key("termination");
        w.value(grn::termination_name(traj.termination));
        w.key("final_time");
        w.value(traj.final_time());
    });
    std::printf("simulate: %s at t = %s s, %zu accepted steps\n",
                std::string(grn::termination_name(traj.termination)).c_str(),
                grn::format_double(traj.final_time()).c_str(),
                traj.stats.steps_accepted);
    if (traj.termination == grn::Termination::SteadyState)
        warn_concentration_band(traj.final_state());
    if (traj.termination == grn::Termination::StepFailure)
        fail(4, "integration step size underflow before t_end");
    return 0;
}

int run_steady(const Common& common) {
    const LoadedNet net = load_network(common);
    const grn::IntegrationConfig cfg = make_config(common);
    Run run("steady", common, net);
    const grn::StateVector x = grn::steady_state(net.spec, net.spec.zero_state(), cfg);
    run.add("state.csv", state_csv(net.spec, x));
    run.finish([](grn::detail::JsonWriter&) {});
    const grn::StateLayout layout = net.spec.layout();
    for (std::size_t n = 0; n < net.spec.neuron_count(); ++n)
        std::printf("steady: %s.out = %s nM\n", net.spec.neuron(n).name.c_str(),
                    grn::format_double(x[layout.index(n, grn::SpeciesKind::out)]).c_str());
    warn_concentration_band(x);
    return 0;
}

int run_nullcline(const Common& common, const NullclineOpts& o) {
    const LoadedNet net = load_network(common);
    Run run("nullcline", common, net);
    const std::size_t index =
        o.neuron.empty() ? 0 : net.spec.neuron_index(o.neuron);
    const grn::NeuronParameters& params = net.spec.neuron(index).params;
    const grn::NullclineCurves curves = grn::toggle_nullclines(params, o.res);
    const std::vector<grn::FixedPoint> points = grn::toggle_fixed_points(params);
    run.add("nullclines.csv", grn::nullcline_csv(curves));
    run.add("fixed_points.json", grn::fixed_points_json(points));
    const std::string neuron_name = net.spec.neuron(index).name;
    run.finish([&](grn::detail::JsonWriter& w) {
        w.key("neuron");
        w.value(neuron_name);
        w.key("res");
        w.value(o.res);
    });
    std::size_t stable = 0;
    for (const auto& fp : points)
        if (fp.stability == grn::Stability::StableNode) ++stable;
    std::printf("nullcline: %zu fixed points (%zu stable) for neuron %s\n",
                points.size(), stable, neuron_name.c_str());
    for (const auto& fp : points)
        std::printf("  rep1 = %s, rep2 = %s  [%s]\n",
                    grn::format_double(fp.rep1).c_str(),
                    grn::format_double(fp.rep2).c_str(),
                    std::string(grn::stability_name(fp.stability)).c_str());
    return 0;
}

int run_transfer(const Common& common, CLI::App* cmd, TransferOpts o) {
    const LoadedNet net = load_network(common);
    const grn::IntegrationConfig cfg = make_config(common);
    Run run("transfer", common, net);
    if (!o.sweep.empty()) apply_transfer_sweep(net.doc, cmd, o);
    if (o.indt.empty()) o.indt = {0.0, 4.0, 8.0, 12.0, 16.0};

    grn::NetworkSpec spec = net.spec;
    std::string neuron_name = net.spec.neuron(0).name;
    if (!o.neuron.empty()) {
        const std::size_t index = net.spec.neuron_index(o.neuron);
        spec = grn::isolate_neuron(net.spec, index);
        neuron_name = o.neuron;
    }

    grn::DriveAxis axis;
    axis.min = o.min;
    axis.max = o.max;
    axis.resolution = o.res;
    if (o.drive == "Ind1") {
        axis.kind = grn::DriveAxis::Kind::Ind1;
    } else {
        axis.kind = grn::DriveAxis::Kind::Channel;
        grn::InputChannel channel{};
        if (!grn::input_channel_from_name(o.drive, channel))
            fail(3, "unknown drive axis '" + o.drive + "'");
        axis.channel = channel;
    }

    const std::vector<grn::TransferCurve> curves =
        grn::transfer_function(spec, axis, o.indt, cfg, common.workers);
    run.add("transfer.csv", grn::transfer_csv(curves));
    run.add("transfer_summary.json", grn::transfer_summary_json(curves));
    run.finish([&](grn::detail::JsonWriter& w) {
        w.key("neuron");
        w.value(neuron_name);
        w.key("drive");
        w.value(o.drive);
        w.key("min");
        w.value(o.min);
        w.key("max");
        w.value(o.max);
        w.key("res");
        w.value(o.res);
        w.key("indt");
        w.begin_array();
        for (double v : o.indt) w.value(v);
        w.end_array();
    });
    for (const auto& c : curves) {
        std::printf("transfer: IndT = %s -> threshold %s, slope %s\n",
                    grn::format_double(c.indt).c_str(),
                    c.threshold ? grn::format_double(*c.threshold).c_str() : "none",
                    c.slope ? grn::format_double(*c.slope).c_str() : "none");
    }
    return 0;
}

int run_boundary(const Common& common, CLI::App* cmd, BoundaryOpts o) {
    const LoadedNet net = load_network(common);
    const grn::IntegrationConfig cfg = make_config(common);
    Run run("boundary", common, net);
    if (!o.sweep.empty()) apply_boundary_sweep(net.doc, cmd, o);
    const auto [in1, in2] = default_input_pair(net.doc, o.input1, o.input2);
    const grn::InputBinding b1 = grn::input_binding(net.doc, net.spec, in1);
    const grn::InputBinding b2 = grn::input_binding(net.doc, net.spec, in2);

    const grn::SweepResult r = grn::decision_boundary(
        net.spec, b1, b2, {o.min1, o.max1, o.res1}, {o.min2, o.max2, o.res2},
        o.threshold, cfg, common.workers);
    run.add("sweep.csv", grn::sweep_csv(r));
    run.add("line_fit.json", grn::line_fit_json(r));
    run.finish([&, in1 = in1, in2 = in2](grn::detail::JsonWriter& w) {
        w.key("input1");
        w.value(in1);
        w.key("input2");
        w.value(in2);
        w.key("min1");
        w.value(o.min1);
        w.key("max1");
        w.value(o.max1);
        w.key("res1");
        w.value(o.res1);
        w.key("min2");
        w.value(o.min2);
        w.key("max2");
        w.value(o.max2);
        w.key("res2");
        w.value(o.res2);
        w.key("threshold");
        w.value(o.threshold);
    });
    std::size_t high = 0, unconverged = 0;
    for (auto c : r.cls) high += c;
    for (auto c : r.converged) unconverged += c == 0;
    std::printf("boundary: %zu of %zu cells high, %zu boundary points\n", high,
                r.cls.size(), r.boundary_points.size());
    if (r.fit)
        std::printf("boundary: %s = %s * %s + %s, R^2 = %s\n",
                    r.fit->y_on_x ? in2.c_str() : in1.c_str(),
                    grn::format_double(r.fit->slope).c_str(),
                    r.fit->y_on_x ? in1.c_str() : in2.c_str(),
                    grn::format_double(r.fit->intercept).c_str(),
                    grn::format_double(r.fit->r_squared).c_str());
    if (unconverged > 0)
        std::fprintf(stderr, "warning: %zu cells did not settle by t_end\n", unconverged);
    return 0;
}

int run_gate(const Common& common, const GateOpts& o) {
    const LoadedNet net = load_network(common);
    const grn::IntegrationConfig cfg = make_config(common);
    Run run("gate", common, net);
    const auto [in1, in2] = default_input_pair(net.doc, o.input1, o.input2);
    const grn::InputBinding b1 = grn::input_binding(net.doc, net.spec, in1);
    const grn::InputBinding b2 = grn::input_binding(net.doc, net.spec, in2);

    const grn::TruthTable table = grn::gate_truth_table(net.spec, b1, b2, o.low, o.high,
                                                        o.threshold, cfg, common.workers);
    run.add("truth_table.json", grn::truth_table_json(table, net.spec, in1, in2));
    run.finish([&, in1 = in1, in2 = in2](grn::detail::JsonWriter& w) {
        w.key("input1");
        w.value(in1);
        w.key("input2");
        w.value(in2);
        w.key("low");
        w.value(o.low);
        w.key("high");
        w.value(o.high);
        w.key("threshold");
        w.value(o.threshold);
    });
    std::string bits;
    for (const auto& row : table.rows) bits += row.fired ? '1' : '0';
    std::printf("gate: %s (fired %s over LL,LH,HL,HH)\n",
                grn::truth_table_function(table).c_str(), bits.c_str());
    for (const auto& row : table.rows)
        std::printf("  %s=%s %s=%s -> out %s%s\n", in1.c_str(),
                    grn::format_double(row.level1).c_str(), in2.c_str(),
                    grn::format_double(row.level2).c_str(),
                    grn::format_double(row.out).c_str(),
                    row.converged ? "" : " (unconverged)");
    return 0;
}

int run_hazard(const Common& common, const HazardOpts& o) {
    const LoadedNet net = load_network(common);
    const grn::IntegrationConfig cfg = make_config(common);
    Run run("hazard", common, net);
    const std::size_t out_neuron = output_neuron_index(net.spec, o.output);
    const grn::SpeciesId output{static_cast<int>(out_neuron), grn::SpeciesKind::out};

    const grn::Trajectory traj = grn::integrate(net.spec, net.spec.zero_state(), cfg);
    if (traj.termination == grn::Termination::StepFailure)
        fail(4, "integration step size underflow before t_end");
    const std::optional<grn::HazardReport> report = grn::detect_hazards(
        traj, net.spec.layout(), output, o.threshold, o.settle);
    run.add("hazard.json",
            grn::hazard_json(net.spec, output, o.threshold, o.settle, report));
    run.finish([&](grn::detail::JsonWriter& w) {
        w.key("output");
        w.value(grn::detail::qualified_species(net.spec, output));
        w.key("threshold");
        w.value(o.threshold);
        w.key("settle");
        w.value(o.settle);
    });
    if (!report) {
        std::printf("hazard: none detected; every watched signal settled "
                    "monotonically\n");
    } else {
        std::printf("hazard: %zu output excursions, %zu overshoots "
                    "(error state %s)\n",
                    report->excursions.size(), report->overshoots.size(),
                    report->output_error_state() ? "yes" : "no");
        for (const auto& ov : report->overshoots)
            std::printf("  %s peaked at %s nM (t = %s s), settled to %s nM\n",
                        grn::detail::qualified_species(net.spec, ov.species).c_str(),
                        grn::format_double(ov.peak).c_str(),
                        grn::format_double(ov.t_peak).c_str(),
                        grn::format_double(ov.final_value).c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"transcriptional-neuron network simulator"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    Common common;
    NullclineOpts nullcline_opts;
    TransferOpts transfer_opts;
    BoundaryOpts boundary_opts;
    GateOpts gate_opts;
    HazardOpts hazard_opts;

    CLI::App* simulate = app.add_subcommand(
        "simulate", "integrate the network from the zero state and record the trajectory");
    add_common(simulate, common);

    CLI::App* steady = app.add_subcommand(
        "steady", "integrate until the steady-state criterion fires and dump the state");
    add_common(steady, common);

    CLI::App* nullcline = app.add_subcommand(
        "nullcline", "toggle-core nullclines and fixed points of one neuron");
    add_common(nullcline, common);
    nullcline->add_option("--neuron", nullcline_opts.neuron,
                          "neuron to analyze (default: first declared)");
    nullcline->add_option("--res", nullcline_opts.res, "samples per nullcline curve");

    CLI::App* transfer = app.add_subcommand(
        "transfer", "steady-state transfer curves across a family of IndT levels");
    add_common(transfer, common);
    transfer->add_option("--neuron", transfer_opts.neuron,
                         "analyze this neuron in isolation (wires dropped)");
    transfer
        ->add_option("--drive", transfer_opts.drive,
                     "swept drive: a clamped channel or the pinned Ind1 pool")
        ->check(CLI::IsMember({"IPTG", "aTc", "IndT", "fA", "fB", "Ind1"}));
    transfer->add_option("--min", transfer_opts.min, "drive axis minimum (nM)");
    transfer->add_option("--max", transfer_opts.max, "drive axis maximum (nM)");
    transfer->add_option("--res", transfer_opts.res, "drive axis samples");
    transfer->add_option("--indt", transfer_opts.indt, "IndT family levels (nM)");
    transfer->add_option("--sweep", transfer_opts.sweep,
                         "load defaults from this [sweep NAME] block");

    CLI::App* boundary = app.add_subcommand(
        "boundary", "classify steady output over a two-input grid");
    add_common(boundary, common);
    boundary->add_option("--input1", boundary_opts.input1,
                         "first swept input (default: first [inputs] entry)");
    boundary->add_option("--input2", boundary_opts.input2,
                         "second swept input (default: second [inputs] entry)");
    boundary->add_option("--min1", boundary_opts.min1, "input1 axis minimum (nM)");
    boundary->add_option("--max1", boundary_opts.max1, "input1 axis maximum (nM)");
    boundary->add_option("--res1", boundary_opts.res1, "input1 axis samples");
    boundary->add_option("--min2", boundary_opts.min2, "input2 axis minimum (nM)");
    boundary->add_option("--max2", boundary_opts.max2, "input2 axis maximum (nM)");
    boundary->add_option("--res2", boundary_opts.res2, "input2 axis samples");
    boundary->add_option("--threshold", boundary_opts.threshold,
                         "classification threshold on [out] (nM)");
    boundary->add_option("--sweep", boundary_opts.sweep,
                         "load defaults from this [sweep NAME] block");

    CLI::App* gate = app.add_subcommand(
        "gate", "truth table of a two-input network over the four input corners");
    add_common(gate, common);
    gate->add_option("--input1", gate_opts.input1,
                     "first input (default: first [inputs] entry)");
    gate->add_option("--input2", gate_opts.input2,
                     "second input (default: second [inputs] entry)");
    gate->add_option("--low", gate_opts.low, "logic-low input level (nM)");
    gate->add_option("--high", gate_opts.high, "logic-high input level (nM)");
    gate->add_option("--threshold", gate_opts.threshold,
                     "classification threshold on [out] (nM)");

    CLI::App* hazard = app.add_subcommand(
        "hazard", "scan a transient for threshold glitches and overshoots");
    add_common(hazard, common);
    hazard->add_option("--output", hazard_opts.output,
                       "output neuron (default: last in topological order)");
    hazard->add_option("--threshold", hazard_opts.threshold,
                       "decision threshold on the output (nM)");
    hazard->add_option("--settle", hazard_opts.settle,
                       "settling window before the final time (s)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (simulate->parsed()) return run_simulate(common);
        if (steady->parsed()) return run_steady(common);
        if (nullcline->parsed()) return run_nullcline(common, nullcline_opts);
        if (transfer->parsed()) return run_transfer(common, transfer, transfer_opts);
        if (boundary->parsed()) return run_boundary(common, boundary, boundary_opts);
        if (gate->parsed()) return run_gate(common, gate_opts);
        if (hazard->parsed()) return run_hazard(common, hazard_opts);
    } catch (const Failure& f) {
        std::fprintf(stderr, "error: %s\n", f.message.c_str());
        return f.code;
    } catch (const grn::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const grn::NumericError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const grn::SpecError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
