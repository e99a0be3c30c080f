#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

namespace grn {

/// Rate constants, dissociation constants, and Hill coefficients for one
/// neuron. Units: production rates nM/s, degradation rates 1/s, sequestration
/// rates 1/(nM s), dissociation constants nM, Hill coefficients dimensionless.
/// Defaults are the simulation values tabulated for the circuit.
struct NeuronParameters {
    // production
    double k_prodA = 2.0;        // Ind1 from strand A (oLac)
    double k_prodB = 2.0;        // Ind1 from strand B (oTet)
    double k_prodC = 2.0;        // rep2 (hybrid oActC / o1 promoter)
    double k_prodD = 0.2;        // ActC (bound oT)
    double k_prodE = 2.0;        // rep1 and rep3 (o2)
    double k_prod_ActX = 1.0;
    double k_prod_ActY = 1.0;
    double k_prod_LacI = 2.0;
    double k_prod_TetR = 3.0;
    double k_prod_Ind2 = 2.0;
    double k_prod_out = 1.0;

    // first-order degradation
    double k_deg_ActX = 0.15;
    double k_deg_ActY = 0.15;
    double k_deg_LacI = 0.55;
    double k_deg_TetR = 0.15;
    double k_deg_Ind1 = 0.15;
    double k_deg_Ind2 = 0.15;
    double k_deg_rep2 = 0.13;
    double k_deg_rep1 = 0.14;
    double k_deg_ActC = 0.15;
    double k_deg_out = 0.05;

    // second-order sequestration
    double k_seq_LacI = 1.1e-5;  // LacI..IPTG
    double k_seq_TetR = 0.0116;  // TetR..aTc
    double k_seq_rep1 = 0.015;   // rep1..Ind1
    double k_seq_rep2 = 0.015;   // rep2..Ind2

    // dissociation constants
    double K_fA = 2.0;
    double K_fB = 2.0;
    double K_ActX = 3.0;
    double K_ActY = 3.0;
    double K_LacI = 1.0;
    double K_TetR = 1.0;
    double K_IndT = 1.0;
    double K_ActC = 1.5;
    double K_rep1 = 9.0;
    double K_rep2 = 9.0;
    double K_rep3 = 0.5;

    // Hill coefficients
    double n_fA = 1.0;
    double n_fB = 1.0;
    double n_ActX = 1.0;
    double n_ActY = 1.0;
    double n_LacI = 2.0;
    double n_TetR = 2.0;
    double n_IndT = 1.0;
    double n_ActC = 3.0;
    double n_rep1 = 9.0;
    double n_rep2 = 9.0;
    double n_rep3 = 1.0;

    friend bool operator==(const NeuronParameters&, const NeuronParameters&) = default;
};

inline NeuronParameters default_parameters() { return NeuronParameters{}; }

enum class ParameterClass { Production, Degradation, Sequestration, Dissociation, HillCoefficient };

struct ParameterField {
    std::string_view name;
    double NeuronParameters::*member;
    ParameterClass cls;
};

/// Name -> member table, in declaration order. Drives parser overrides,
/// validation, and the randomized-parameter test generators.
inline const std::array<ParameterField, 47>& parameter_fields() {
    using P = NeuronParameters;
    using C = ParameterClass;
    static const std::array<ParameterField, 47> fields = {{
        {"k_prodA", &P::k_prodA, C::Production},
        {"k_prodB", &P::k_prodB, C::Production},
        {"k_prodC", &P::k_prodC, C::Production},
        {"k_prodD", &P::k_prodD, C::Production},
        {"k_prodE", &P::k_prodE, C::Production},
        {"k_prod_ActX", &P::k_prod_ActX, C::Production},
        {"k_prod_ActY", &P::k_prod_ActY, C::Production},
        {"k_prod_LacI", &P::k_prod_LacI, C::Production},
        {"k_prod_TetR", &P::k_prod_TetR, C::Production},
        {"k_prod_Ind2", &P::k_prod_Ind2, C::Production},
        {"k_prod_out", &P::k_prod_out, C::Production},
        {"k_deg_ActX", &P::k_deg_ActX, C::Degradation},
        {"k_deg_ActY", &P::k_deg_ActY, C::Degradation},
        {"k_deg_LacI", &P::k_deg_LacI, C::Degradation},
        {"k_deg_TetR", &P::k_deg_TetR, C::Degradation},
        {"k_deg_Ind1", &P::k_deg_Ind1, C::Degradation},
        {"k_deg_Ind2", &P::k_deg_Ind2, C::Degradation},
        {"k_deg_rep2", &P::k_deg_rep2, C::Degradation},
        {"k_deg_rep1", &P::k_deg_rep1, C::Degradation},
        {"k_deg_ActC", &P::k_deg_ActC, C::Degradation},
        {"k_deg_out", &P::k_deg_out, C::Degradation},
        {"k_seq_LacI", &P::k_seq_LacI, C::Sequestration},
        {"k_seq_TetR", &P::k_seq_TetR, C::Sequestration},
        {"k_seq_rep1", &P::k_seq_rep1, C::Sequestration},
        {"k_seq_rep2", &P::k_seq_rep2, C::Sequestration},
        {"K_fA", &P::K_fA, C::Dissociation},
        {"K_fB", &P::K_fB, C::Dissociation},
        {"K_ActX", &P::K_ActX, C::Dissociation},
        {"K_ActY", &P::K_ActY, C::Dissociation},
        {"K_LacI", &P::K_LacI, C::Dissociation},
        {"K_TetR", &P::K_TetR, C::Dissociation},
        {"K_IndT", &P::K_IndT, C::Dissociation},
        {"K_ActC", &P::K_ActC, C::Dissociation},
        {"K_rep1", &P::K_rep1, C::Dissociation},
        {"K_rep2", &P::K_rep2, C::Dissociation},
        {"K_rep3", &P::K_rep3, C::Dissociation},
        {"n_fA", &P::n_fA, C::HillCoefficient},
        {"n_fB", &P::n_fB, C::HillCoefficient},
        {"n_ActX", &P::n_ActX, C::HillCoefficient},
        {"n_ActY", &P::n_ActY, C::HillCoefficient},
        {"n_LacI", &P::n_LacI, C::HillCoefficient},
        {"n_TetR", &P::n_TetR, C::HillCoefficient},
        {"n_IndT", &P::n_IndT, C::HillCoefficient},
        {"n_ActC", &P::n_ActC, C::HillCoefficient},
        {"n_rep1", &P::n_rep1, C::HillCoefficient},
        {"n_rep2", &P::n_rep2, C::HillCoefficient},
        {"n_rep3", &P::n_rep3, C::HillCoefficient},
    }};
    return fields;
}

inline const ParameterField* find_parameter_field(std::string_view name) {
    for (const auto& f : parameter_fields())
        if (f.name == name) return &f;
    return nullptr;
}

/// Checks sign and range constraints. Degradation rates and dissociation
/// constants must be strictly positive and Hill coefficients at least 1;
/// production and sequestration rates may be zero (isolated-subsystem
/// configurations rely on that) but not negative.
/// Throws std::invalid_argument naming the offending field.
inline void validate_parameters(const NeuronParameters& p) {
    for (const auto& f : parameter_fields()) {
        double v = p.*(f.member);
        switch (f.cls) {
        case ParameterClass::Production:
        case ParameterClass::Sequestration:
            if (!(v >= 0.0))
                throw std::invalid_argument("negative rate " + std::string(f.name));
            break;
        case ParameterClass::Degradation:
            if (!(v > 0.0))
                throw std::invalid_argument("nonpositive rate " + std::string(f.name));
            break;
        case ParameterClass::Dissociation:
            if (!(v > 0.0))
                throw std::invalid_argument("nonpositive dissociation constant " + std::string(f.name));
            break;
        case ParameterClass::HillCoefficient:
            if (!(v >= 1.0))
                throw std::invalid_argument("Hill coefficient below 1: " + std::string(f.name));
            break;
        }
    }
}

} // namespace grn
