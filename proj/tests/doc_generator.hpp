#pragma once

// Random network-document generator shared by the parser tests and the
// acceptance gate: every document it emits is valid by construction, so a
// serialize -> parse -> serialize cycle must reproduce it exactly.

#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "grn/netdef.hpp"

namespace docgen {

inline grn::SignalExpr constant(double v) {
    grn::SignalExpr s;
    s.constant = v;
    return s;
}

inline grn::SignalExpr schedule(std::vector<std::pair<double, double>> steps) {
    grn::SignalExpr s;
    s.is_schedule = true;
    s.steps = std::move(steps);
    return s;
}

inline grn::ChannelValue literal(grn::SignalExpr sig) {
    grn::ChannelValue cv;
    cv.literal = std::move(sig);
    return cv;
}

inline grn::ChannelValue ref(std::string name) {
    grn::ChannelValue cv;
    cv.kind = grn::ChannelValue::Kind::InputRef;
    cv.input_ref = std::move(name);
    return cv;
}

class DocGenerator {
public:
    explicit DocGenerator(std::uint32_t seed) : rng_(seed) {}

    grn::NetworkDocument next() {
        grn::NetworkDocument doc;
        name_counter_ = 0;

        int n_inputs = pick(0, 3);
        for (int i = 0; i < n_inputs; ++i)
            doc.inputs.emplace_back(fresh_name("in"), random_signal());

        int n_neurons = pick(1, 5);
        for (int i = 0; i < n_neurons; ++i) {
            grn::NeuronBlock nb;
            nb.name = fresh_name("n");
            int n_params = pick(0, 6);
            std::set<std::string> used;
            for (int k = 0; k < n_params; ++k) {
                const auto& fields = grn::parameter_fields();
                const auto& f = fields[static_cast<std::size_t>(pick(0, 46))];
                if (!used.insert(std::string(f.name)).second) continue;
                nb.params.emplace_back(std::string(f.name), random_double());
            }
            const char* channels[] = {"IPTG", "aTc", "IndT", "fA", "fB"};
            int n_channels = pick(0, 5);
            std::set<int> used_ch;
            for (int k = 0; k < n_channels; ++k) {
                int c = pick(0, 4);
                if (!used_ch.insert(c).second) continue;
                grn::ChannelValue cv;
                if (!doc.inputs.empty() && pick(0, 2) == 0) {
                    cv = ref(doc.inputs[static_cast<std::size_t>(
                                            pick(0, static_cast<int>(doc.inputs.size()) - 1))]
                                 .first);
                } else {
                    cv = literal(random_signal());
                }
                nb.channels.emplace_back(channels[c], std::move(cv));
            }
            doc.neurons.push_back(std::move(nb));
        }

        // Feed-forward wires: always from an earlier neuron to a later one,
        // into channels the target block leaves unclamped.
        int n_wires = pick(0, 4);
        for (int k = 0; k < n_wires && n_neurons > 1; ++k) {
            int src = pick(0, n_neurons - 2);
            int dst = pick(src + 1, n_neurons - 1);
            const char* wireable[] = {"IPTG", "aTc", "IndT"};
            std::string channel = wireable[pick(0, 2)];
            auto& target = doc.neurons[static_cast<std::size_t>(dst)];
            bool clamped = false;
            for (const auto& [key, cv] : target.channels)
                if (key == channel) clamped = true;
            if (clamped) continue;
            grn::WireDecl w;
            w.source = doc.neurons[static_cast<std::size_t>(src)].name;
            w.target = target.name;
            w.channel = channel;
            w.gain = pick(0, 1) ? 1.0 : std::abs(random_double());
            bool dup = false;
            for (const auto& other : doc.wires)
                if (other.source == w.source && other.target == w.target &&
                    other.channel == w.channel)
                    dup = true;
            if (!dup) doc.wires.push_back(std::move(w));
        }

        int n_sweeps = pick(0, 2);
        for (int i = 0; i < n_sweeps; ++i) {
            grn::SweepBlock sb;
            sb.name = fresh_name("sweep");
            int n_entries = pick(0, 5);
            std::set<std::string> used;
            for (int k = 0; k < n_entries; ++k) {
                std::string key = fresh_name("key");
                if (!used.insert(key).second) continue;
                sb.entries.emplace_back(key, random_raw_value());
            }
            doc.sweeps.push_back(std::move(sb));
        }
        return doc;
    }

    std::mt19937& rng() { return rng_; }

private:
    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    std::string fresh_name(const char* stem) {
        return std::string(stem) + std::to_string(name_counter_++);
    }

    double random_double() {
        switch (pick(0, 3)) {
        case 0: return pick(0, 100);
        case 1: return pick(1, 9999) / 100.0;
        case 2: return pick(1, 999) * std::pow(10.0, pick(-9, 6));
        default:
            return std::uniform_real_distribution<double>(-50.0, 50.0)(rng_);
        }
    }

    grn::SignalExpr random_signal() {
        if (pick(0, 1)) return constant(std::abs(random_double()));
        int n = pick(1, 4);
        std::vector<std::pair<double, double>> steps;
        double t = 0.0;
        for (int i = 0; i < n; ++i) {
            steps.emplace_back(t, std::abs(random_double()));
            t += 0.25 * (1 + pick(0, 400));
        }
        return schedule(std::move(steps));
    }

    std::string random_raw_value() {
        const char* words[] = {"n1.Ind1", "0 10 25 50", "x", "64", "12.5", "out", "a,b", "(v)"};
        return words[pick(0, 7)];
    }

    std::mt19937 rng_;
    int name_counter_ = 0;
};

} // namespace docgen
