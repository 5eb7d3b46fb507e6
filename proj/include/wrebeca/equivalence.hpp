#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wrebeca/lts.hpp"

namespace wrebeca {

enum class Relation { Strong, Branching };

struct EquivalenceResult {
    bool equivalent = false;
    // Labels along which the initial states can be told apart (strong
    // relation only): one side can follow the sequence where the other
    // eventually cannot.
    std::vector<std::string> distinguishing;
    std::size_t blocks = 0;  // of the minimized disjoint union
    std::size_t rounds = 0;
};

// Block id per state of the coarsest strong bisimulation.
std::vector<std::uint32_t> strong_partition(const Lts& lts, std::size_t* rounds = nullptr);

// Block id per state of the coarsest branching bisimulation; `tau` names
// the internal action.
std::vector<std::uint32_t> branching_partition(const Lts& lts, std::string_view tau = kTauLabel,
                                               std::size_t* rounds = nullptr);

// Both LTSs side by side: a's states first, then b's, labels unified by text.
Lts disjoint_union(const Lts& a, const Lts& b, std::uint32_t* b_offset);

EquivalenceResult strong_bisim_equivalent(const Lts& a, const Lts& b);
EquivalenceResult branching_bisim_equivalent(const Lts& a, const Lts& b, std::string_view tau = kTauLabel);
EquivalenceResult equivalent(const Lts& a, const Lts& b, Relation r, std::string_view tau = kTauLabel);

}  // namespace wrebeca
