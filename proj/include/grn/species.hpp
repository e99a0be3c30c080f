#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace grn {

/// Dynamic species carried by each neuron. rep3 shares the rep1 state entry
/// (their rate equations are identical), so it has no kind of its own and a
/// neuron contributes exactly kSpeciesPerNeuron entries to the state vector.
enum class SpeciesKind : int {
    ActX = 0,
    ActY = 1,
    LacI = 2,
    TetR = 3,
    Ind1 = 4,
    Ind2 = 5,
    rep2 = 6,
    rep1 = 7,
    ActC = 8,
    out  = 9,
};

inline constexpr std::size_t kSpeciesPerNeuron = 10;

inline constexpr std::array<std::string_view, kSpeciesPerNeuron> kSpeciesNames = {
    "ActX", "ActY", "LacI", "TetR", "Ind1", "Ind2", "rep2", "rep1", "ActC", "out",
};

inline std::string_view species_name(SpeciesKind k) {
    return kSpeciesNames[static_cast<std::size_t>(k)];
}

inline bool species_kind_from_name(std::string_view name, SpeciesKind& out_kind) {
    for (std::size_t i = 0; i < kSpeciesNames.size(); ++i) {
        if (kSpeciesNames[i] == name) {
            out_kind = static_cast<SpeciesKind>(i);
            return true;
        }
    }
    return false;
}

/// Address of one dynamic species within a network.
struct SpeciesId {
    int neuron_index = 0;
    SpeciesKind kind = SpeciesKind::ActX;

    friend bool operator==(const SpeciesId&, const SpeciesId&) = default;
};

/// Concentrations in nM for every dynamic species, neuron-major.
using StateVector = std::vector<double>;

/// Maps SpeciesId to contiguous indices in a StateVector.
class StateLayout {
public:
    StateLayout() = default;
    explicit StateLayout(std::size_t neuron_count) : neuron_count_(neuron_count) {}

    std::size_t neuron_count() const { return neuron_count_; }
    std::size_t size() const { return neuron_count_ * kSpeciesPerNeuron; }

    std::size_t index(std::size_t neuron, SpeciesKind kind) const {
        if (neuron >= neuron_count_)
            throw std::out_of_range("StateLayout: neuron index out of range");
        return neuron * kSpeciesPerNeuron + static_cast<std::size_t>(kind);
    }

    std::size_t index(const SpeciesId& id) const {
        return index(static_cast<std::size_t>(id.neuron_index), id.kind);
    }

    SpeciesId species_at(std::size_t flat_index) const {
        if (flat_index >= size())
            throw std::out_of_range("StateLayout: flat index out of range");
        return SpeciesId{static_cast<int>(flat_index / kSpeciesPerNeuron),
                         static_cast<SpeciesKind>(flat_index % kSpeciesPerNeuron)};
    }

private:
    std::size_t neuron_count_ = 0;
};

} // namespace grn
