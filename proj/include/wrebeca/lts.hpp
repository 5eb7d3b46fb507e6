#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wrebeca {

inline constexpr std::string_view kTauLabel = "tau";

struct Transition {
    std::uint32_t src = 0;
    std::uint32_t label = 0;
    std::uint32_t dst = 0;

    bool operator==(const Transition&) const = default;
    auto operator<=>(const Transition&) const = default;
};

// States are 0..num_states-1. Labels are interned; transition sets carry no
// duplicates once canonicalized.
class Lts {
public:
    std::uint32_t initial = 0;
    std::size_t num_states = 0;
    std::vector<Transition> transitions;

    std::uint32_t intern_label(std::string_view label);
    std::optional<std::uint32_t> find_label(std::string_view label) const;
    const std::string& label(std::uint32_t id) const { return labels_[id]; }
    std::size_t label_count() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }

    void add(std::uint32_t src, std::string_view label, std::uint32_t dst) {
        transitions.push_back({src, intern_label(label), dst});
    }

    // Sorts by (src, label text, dst) and drops duplicates.
    void canonicalize();

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::uint32_t> label_index_;
};

// Same state count, initial state, and transition set with labels compared
// by text.
bool same_lts(const Lts& a, const Lts& b);

}  // namespace wrebeca
