#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

#include "grn/hill.hpp"
#include "grn/network.hpp"
#include "grn/parameters.hpp"
#include "grn/species.hpp"

namespace grn {

/// Raised when a state or derivative entry stops being a finite number.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Resolved input concentrations for one neuron at one instant.
struct ResolvedInputs {
    double IPTG = 0.0;
    double aTc = 0.0;
    double IndT = 0.0;
    double fA = 0.0;
    double fB = 0.0;
};

/// Time derivatives (nM/s) of the ten dynamic species of one neuron.
///
/// Production is Hill-controlled transcription, loss is first-order
/// degradation plus mass-action sequestration where an inducer binds a
/// repressor. rep2 production is the OR(ActC, NOT(rep1)) hybrid promoter:
/// the repression-by-rep1 and activation-by-ActC terms are summed, each
/// scaled by k_prodC. rep1 doubles as rep3, so the out gene reads rep1
/// through the K_rep3/n_rep3 operator.
inline void neuron_rhs(std::span<const double> state, const NeuronParameters& p,
                       const ResolvedInputs& in, std::span<double> deriv,
                       std::string_view neuron_name = "") {
    using detail::hill_act_unchecked;
    using detail::hill_rep_unchecked;

    for (std::size_t i = 0; i < kSpeciesPerNeuron; ++i) {
        if (!std::isfinite(state[i]))
            throw NumericError("non-finite concentration for " +
                               (neuron_name.empty() ? std::string() : std::string(neuron_name) + ".") +
                               std::string(kSpeciesNames[i]));
    }

    const double ActX = state[static_cast<std::size_t>(SpeciesKind::ActX)];
    const double ActY = state[static_cast<std::size_t>(SpeciesKind::ActY)];
    const double LacI = state[static_cast<std::size_t>(SpeciesKind::LacI)];
    const double TetR = state[static_cast<std::size_t>(SpeciesKind::TetR)];
    const double Ind1 = state[static_cast<std::size_t>(SpeciesKind::Ind1)];
    const double Ind2 = state[static_cast<std::size_t>(SpeciesKind::Ind2)];
    const double rep2 = state[static_cast<std::size_t>(SpeciesKind::rep2)];
    const double rep1 = state[static_cast<std::size_t>(SpeciesKind::rep1)];
    const double ActC = state[static_cast<std::size_t>(SpeciesKind::ActC)];
    const double out  = state[static_cast<std::size_t>(SpeciesKind::out)];

    deriv[static_cast<std::size_t>(SpeciesKind::ActX)] =
        p.k_prod_ActX * hill_act_unchecked(in.fA, p.K_fA, p.n_fA) - p.k_deg_ActX * ActX;

    deriv[static_cast<std::size_t>(SpeciesKind::ActY)] =
        p.k_prod_ActY * hill_act_unchecked(in.fB, p.K_fB, p.n_fB) - p.k_deg_ActY * ActY;

    deriv[static_cast<std::size_t>(SpeciesKind::LacI)] =
        p.k_prod_LacI * hill_act_unchecked(ActX, p.K_ActX, p.n_ActX) -
        p.k_deg_LacI * LacI - p.k_seq_LacI * LacI * in.IPTG;

    deriv[static_cast<std::size_t>(SpeciesKind::TetR)] =
        p.k_prod_TetR * hill_act_unchecked(ActY, p.K_ActY, p.n_ActY) -
        p.k_deg_TetR * TetR - p.k_seq_TetR * TetR * in.aTc;

    deriv[static_cast<std::size_t>(SpeciesKind::Ind1)] =
        p.k_prodA * hill_rep_unchecked(LacI, p.K_LacI, p.n_LacI) +
        p.k_prodB * hill_rep_unchecked(TetR, p.K_TetR, p.n_TetR) - p.k_deg_Ind1 * Ind1;

    deriv[static_cast<std::size_t>(SpeciesKind::Ind2)] =
        p.k_prod_Ind2 - p.k_deg_Ind2 * Ind2;

    deriv[static_cast<std::size_t>(SpeciesKind::rep2)] =
        p.k_prodC * hill_rep_unchecked(rep1, p.K_rep1, p.n_rep1) +
        p.k_prodC * hill_act_unchecked(ActC, p.K_ActC, p.n_ActC) -
        p.k_seq_rep2 * rep2 * Ind2 - p.k_deg_rep2 * rep2;

    deriv[static_cast<std::size_t>(SpeciesKind::rep1)] =
        p.k_prodE * hill_rep_unchecked(rep2, p.K_rep2, p.n_rep2) -
        p.k_seq_rep1 * rep1 * Ind1 - p.k_deg_rep1 * rep1;

    deriv[static_cast<std::size_t>(SpeciesKind::ActC)] =
        p.k_prodD * hill_act_unchecked(in.IndT, p.K_IndT, p.n_IndT) - p.k_deg_ActC * ActC;

    deriv[static_cast<std::size_t>(SpeciesKind::out)] =
        p.k_prod_out * hill_rep_unchecked(rep1, p.K_rep3, p.n_rep3) - p.k_deg_out * out;
}

/// Full-network derivative at time t: the concatenation of neuron_rhs over
/// all neurons, with wired channels reading the instantaneous upstream [out]
/// and clamped channels reading their schedule. Pinned species report a zero
/// derivative.
inline void network_rhs(const StateVector& state, const NetworkSpec& spec, double t,
                        StateVector& deriv) {
    const std::size_t n = spec.neuron_count();
    if (state.size() != spec.state_dimension())
        throw SpecError("state vector length does not match the network");
    deriv.resize(state.size());

    for (std::size_t i = 0; i < n; ++i) {
        ResolvedInputs in;
        in.IPTG = spec.resolve_input(i, InputChannel::IPTG, state, t);
        in.aTc  = spec.resolve_input(i, InputChannel::aTc, state, t);
        in.IndT = spec.resolve_input(i, InputChannel::IndT, state, t);
        in.fA   = spec.resolve_input(i, InputChannel::fA, state, t);
        in.fB   = spec.resolve_input(i, InputChannel::fB, state, t);

        neuron_rhs(std::span<const double>(state).subspan(i * kSpeciesPerNeuron, kSpeciesPerNeuron),
                   spec.neuron(i).params, in,
                   std::span<double>(deriv).subspan(i * kSpeciesPerNeuron, kSpeciesPerNeuron),
                   spec.neuron(i).name);
    }

    const StateLayout lay = spec.layout();
    for (const auto& pin : spec.pins()) deriv[lay.index(pin.species)] = 0.0;
}

inline StateVector network_rhs(const StateVector& state, const NetworkSpec& spec, double t) {
    StateVector deriv;
    network_rhs(state, spec, t, deriv);
    return deriv;
}

/// Applies species pins to a state vector (used to build initial conditions).
inline void apply_pins(const NetworkSpec& spec, StateVector& state) {
    const StateLayout lay = spec.layout();
    for (const auto& pin : spec.pins()) state[lay.index(pin.species)] = pin.value;
}

} // namespace grn
