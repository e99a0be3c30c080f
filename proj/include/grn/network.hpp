#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grn/parameters.hpp"
#include "grn/species.hpp"

namespace grn {

/// Raised when a network description violates a structural invariant.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Clamped external input channels of one neuron. IPTG and aTc are the
/// classifier inputs, IndT tunes the firing threshold, fA and fB set the
/// input weights.
enum class InputChannel : int { IPTG = 0, aTc = 1, IndT = 2, fA = 3, fB = 4 };

inline constexpr std::size_t kInputChannelCount = 5;

inline constexpr std::array<std::string_view, kInputChannelCount> kInputChannelNames = {
    "IPTG", "aTc", "IndT", "fA", "fB",
};

inline std::string_view input_channel_name(InputChannel c) {
    return kInputChannelNames[static_cast<std::size_t>(c)];
}

inline bool input_channel_from_name(std::string_view name, InputChannel& out_channel) {
    for (std::size_t i = 0; i < kInputChannelNames.size(); ++i) {
        if (kInputChannelNames[i] == name) {
            out_channel = static_cast<InputChannel>(i);
            return true;
        }
    }
    return false;
}

/// Piecewise-constant concentration schedule. Steps are (time, value) pairs
/// with strictly increasing times, the first at t = 0.
class InputSchedule {
public:
    InputSchedule() : steps_{{0.0, 0.0}} {}
    explicit InputSchedule(double constant) : steps_{{0.0, constant}} {}
    explicit InputSchedule(std::vector<std::pair<double, double>> steps)
        : steps_(std::move(steps)) {
        if (steps_.empty() || steps_.front().first != 0.0)
            throw SpecError("input schedule must start at t = 0");
        for (std::size_t i = 0; i < steps_.size(); ++i) {
            if (i > 0 && !(steps_[i].first > steps_[i - 1].first))
                throw SpecError("input schedule times must be strictly increasing");
            if (!(steps_[i].second >= 0.0))
                throw SpecError("input schedule values must be nonnegative");
        }
    }

    double value_at(double t) const {
        double v = steps_.front().second;
        for (const auto& [ts, val] : steps_) {
            if (ts <= t) v = val;
            else break;
        }
        return v;
    }

    bool is_constant() const { return steps_.size() == 1; }
    const std::vector<std::pair<double, double>>& steps() const { return steps_; }

private:
    std::vector<std::pair<double, double>> steps_;
};

/// Feed-forward connection: the instantaneous [out] of a source neuron,
/// scaled by gain, drives one input channel of a downstream neuron.
struct Wire {
    std::size_t source_neuron = 0;  // kind is always SpeciesKind::out
    std::size_t target_neuron = 0;
    InputChannel target_channel = InputChannel::IPTG;
    double gain = 1.0;
};

/// A dynamic species held at a fixed concentration; its derivative is forced
/// to zero. Used by the analysis layer to isolate subcircuits and to sweep
/// the Ind1 axis directly.
struct SpeciesPin {
    SpeciesId species;
    double value = 0.0;
};

struct NeuronSpec {
    std::string name;
    NeuronParameters params;
};

/// Immutable description of a composed network: neurons, per-channel input
/// schedules, feed-forward wires, and optional species pins.
class NetworkSpec {
public:
    NetworkSpec() = default;

    std::size_t add_neuron(std::string name, NeuronParameters params = {}) {
        validate_parameters(params);
        for (const auto& n : neurons_)
            if (n.name == name) throw SpecError("duplicate neuron name " + name);
        neurons_.push_back({std::move(name), params});
        schedules_.emplace_back();  // all channels default to a 0 nM clamp
        explicit_clamp_.push_back({});
        return neurons_.size() - 1;
    }

    void clamp(std::size_t neuron, InputChannel channel, InputSchedule schedule) {
        check_neuron(neuron);
        schedules_[neuron][static_cast<std::size_t>(channel)] = std::move(schedule);
        explicit_clamp_[neuron][static_cast<std::size_t>(channel)] = true;
    }

    void clamp(std::size_t neuron, InputChannel channel, double value) {
        clamp(neuron, channel, InputSchedule(value));
    }

    void wire(std::size_t source, std::size_t target, InputChannel channel, double gain = 1.0) {
        check_neuron(source);
        check_neuron(target);
        if (channel != InputChannel::IPTG && channel != InputChannel::aTc &&
            channel != InputChannel::IndT)
            throw SpecError("wires may target only the IPTG, aTc, or IndT channels");
        wires_.push_back({source, target, channel, gain});
    }

    void pin(SpeciesId species, double value) {
        check_neuron(static_cast<std::size_t>(species.neuron_index));
        if (!(value >= 0.0)) throw SpecError("pinned concentration must be nonnegative");
        pins_.push_back({species, value});
    }

    /// Checks feed-forward structure. Throws SpecError on a wiring cycle,
    /// a self-loop, or a channel that is both clamped and wired.
    void validate() const {
        for (const auto& n : neurons_) validate_parameters(n.params);

        for (const auto& w : wires_) {
            if (w.source_neuron == w.target_neuron)
                throw SpecError("wire from " + neurons_[w.source_neuron].name + " to itself");
            if (explicit_clamp_[w.target_neuron][static_cast<std::size_t>(w.target_channel)])
                throw SpecError("channel " + neurons_[w.target_neuron].name + "." +
                                std::string(input_channel_name(w.target_channel)) +
                                " driven twice (clamp and wire)");
        }

        // Kahn's algorithm over the neuron-level wire graph.
        std::vector<std::size_t> indegree(neurons_.size(), 0);
        for (const auto& w : wires_) ++indegree[w.target_neuron];
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < neurons_.size(); ++i)
            if (indegree[i] == 0) order.push_back(i);
        for (std::size_t head = 0; head < order.size(); ++head)
            for (const auto& w : wires_)
                if (w.source_neuron == order[head] && --indegree[w.target_neuron] == 0)
                    order.push_back(w.target_neuron);
        if (order.size() != neurons_.size())
            throw SpecError("wiring contains a cycle; only feed-forward networks are supported");
    }

    /// Neuron indices sorted into feed-forward layers (sources first).
    std::vector<std::size_t> topological_order() const {
        validate();
        std::vector<std::size_t> indegree(neurons_.size(), 0);
        for (const auto& w : wires_) ++indegree[w.target_neuron];
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < neurons_.size(); ++i)
            if (indegree[i] == 0) order.push_back(i);
        for (std::size_t head = 0; head < order.size(); ++head)
            for (const auto& w : wires_)
                if (w.source_neuron == order[head] && --indegree[w.target_neuron] == 0)
                    order.push_back(w.target_neuron);
        return order;
    }

    std::size_t neuron_count() const { return neurons_.size(); }
    std::size_t state_dimension() const { return neurons_.size() * kSpeciesPerNeuron; }
    StateLayout layout() const { return StateLayout(neurons_.size()); }
    const std::vector<NeuronSpec>& neurons() const { return neurons_; }
    const NeuronSpec& neuron(std::size_t i) const { check_neuron(i); return neurons_[i]; }
    const std::vector<Wire>& wires() const { return wires_; }
    const std::vector<SpeciesPin>& pins() const { return pins_; }

    NeuronParameters& mutable_params(std::size_t neuron) {
        check_neuron(neuron);
        return neurons_[neuron].params;
    }

    std::size_t neuron_index(std::string_view name) const {
        for (std::size_t i = 0; i < neurons_.size(); ++i)
            if (neurons_[i].name == name) return i;
        throw SpecError("unknown neuron '" + std::string(name) + "'");
    }

    bool channel_has_wires(std::size_t neuron, InputChannel channel) const {
        return std::any_of(wires_.begin(), wires_.end(), [&](const Wire& w) {
            return w.target_neuron == neuron && w.target_channel == channel;
        });
    }

    const InputSchedule& schedule(std::size_t neuron, InputChannel channel) const {
        check_neuron(neuron);
        return schedules_[neuron][static_cast<std::size_t>(channel)];
    }

    /// Concentration seen by one input channel at time t: the clamp schedule,
    /// or the gain-weighted sum of upstream [out] for a wired channel.
    double resolve_input(std::size_t neuron, InputChannel channel, const StateVector& state,
                         double t) const {
        double wired = 0.0;
        bool has_wire = false;
        StateLayout lay = layout();
        for (const auto& w : wires_) {
            if (w.target_neuron == neuron && w.target_channel == channel) {
                wired += w.gain * state[lay.index(w.source_neuron, SpeciesKind::out)];
                has_wire = true;
            }
        }
        if (has_wire) return wired;
        return schedules_[neuron][static_cast<std::size_t>(channel)].value_at(t);
    }

    /// Times (excluding t = 0) at which any clamp schedule changes value,
    /// sorted ascending and deduplicated. The integrator restarts at each.
    std::vector<double> event_times() const {
        std::set<double> times;
        for (const auto& per_neuron : schedules_)
            for (const auto& sched : per_neuron)
                for (const auto& [t, v] : sched.steps())
                    if (t > 0.0) times.insert(t);
        return {times.begin(), times.end()};
    }

    StateVector zero_state() const { return StateVector(state_dimension(), 0.0); }

private:
    void check_neuron(std::size_t i) const {
        if (i >= neurons_.size()) throw SpecError("neuron index out of range");
    }

    std::vector<NeuronSpec> neurons_;
    std::vector<std::array<InputSchedule, kInputChannelCount>> schedules_;
    std::vector<std::array<bool, kInputChannelCount>> explicit_clamp_;
    std::vector<Wire> wires_;
    std::vector<SpeciesPin> pins_;
};

/// Convenience: one neuron with the given parameters and all inputs at 0 nM.
inline NetworkSpec single_neuron_spec(NeuronParameters params = {}, std::string name = "n1") {
    NetworkSpec spec;
    spec.add_neuron(std::move(name), params);
    return spec;
}

/// A named external signal and the channel clamps it drives. Sweeps set
/// every target channel to the same level before integrating, so one logical
/// input can fan out to several neurons (as the shared x/y inputs of a
/// two-layer classifier do).
struct InputBinding {
    std::string name;
    std::vector<std::pair<std::size_t, InputChannel>> targets;
};

inline void clamp_binding(NetworkSpec& spec, const InputBinding& binding, double level) {
    if (binding.targets.empty())
        throw SpecError("input binding " + binding.name + " drives no channel");
    for (const auto& [neuron, channel] : binding.targets) spec.clamp(neuron, channel, level);
}

/// Copies one neuron out of a larger network: same parameters, same clamp
/// schedules, incoming wires dropped (their channels fall back to the clamp,
/// by default 0 nM). Used to study a layer-one neuron's own response map.
inline NetworkSpec isolate_neuron(const NetworkSpec& full, std::size_t index) {
    NetworkSpec one = single_neuron_spec(full.neuron(index).params, full.neuron(index).name);
    for (std::size_t c = 0; c < kInputChannelCount; ++c) {
        const auto channel = static_cast<InputChannel>(c);
        one.clamp(0, channel, full.schedule(index, channel));
    }
    return one;
}

} // namespace grn
