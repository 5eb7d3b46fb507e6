#include "wrebeca/lts.hpp"

#include <algorithm>
#include <tuple>

namespace wrebeca {

std::uint32_t Lts::intern_label(std::string_view label) {
    auto it = label_index_.find(std::string(label));
    if (it != label_index_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(labels_.size());
    labels_.emplace_back(label);
    label_index_.emplace(labels_.back(), id);
    return id;
}

std::optional<std::uint32_t> Lts::find_label(std::string_view label) const {
    auto it = label_index_.find(std::string(label));
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
}

void Lts::canonicalize() {
    // Rank labels by text so the order does not depend on interning order.
    std::vector<std::uint32_t> order(labels_.size());
    for (std::uint32_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return labels_[a] < labels_[b]; });
    std::vector<std::uint32_t> rank(labels_.size());
    for (std::uint32_t k = 0; k < order.size(); ++k) rank[order[k]] = k;
    std::sort(transitions.begin(), transitions.end(), [&](const Transition& a, const Transition& b) {
        return std::tie(a.src, rank[a.label], a.dst) < std::tie(b.src, rank[b.label], b.dst);
    });
    transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
}

bool same_lts(const Lts& a, const Lts& b) {
    if (a.initial != b.initial || a.num_states != b.num_states) return false;
    using Row = std::tuple<std::uint32_t, std::string_view, std::uint32_t>;
    auto rows = [](const Lts& l) {
        std::vector<Row> out;
        out.reserve(l.transitions.size());
        for (const auto& t : l.transitions) out.emplace_back(t.src, l.label(t.label), t.dst);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    return rows(a) == rows(b);
}

}  // namespace wrebeca
