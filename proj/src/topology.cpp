#include "wrebeca/topology.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <utility>

#include "wrebeca/ast.hpp"

namespace wrebeca {

namespace {

constexpr std::size_t kWordBits = 64;

std::uint64_t mask_for(std::size_t p) { return std::uint64_t{1} << (kWordBits - 1 - p % kWordBits); }

}  // namespace

Topology::Topology(std::size_t n) : n_(n), words_((link_count() + kWordBits - 1) / kWordBits, 0) {}

Topology Topology::fully_connected(std::size_t n) {
    Topology t(n);
    for (std::size_t p = 0; p < t.link_count(); ++p) t.set_link(p, true);
    return t;
}

std::size_t Topology::link_index(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return i * n_ - i * (i + 1) / 2 + (j - i - 1);
}

bool Topology::link(std::size_t p) const { return (words_[p / kWordBits] & mask_for(p)) != 0; }

void Topology::set_link(std::size_t p, bool value) {
    if (value)
        words_[p / kWordBits] |= mask_for(p);
    else
        words_[p / kWordBits] &= ~mask_for(p);
}

bool Topology::connected(std::size_t i, std::size_t j) const {
    if (i == j) return true;
    return link(link_index(i, j));
}

void Topology::set(std::size_t i, std::size_t j, bool value) {
    if (i == j) {
        if (!value) throw std::invalid_argument("topology diagonal is always connected");
        return;
    }
    set_link(link_index(i, j), value);
}

std::size_t Topology::hash() const {
    std::size_t h = std::hash<std::size_t>{}(n_);
    for (auto w : words_) h = h * 1000003u ^ std::hash<std::uint64_t>{}(w);
    return h;
}

std::string Topology::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < n_; ++i) {
        if (i > 0) out += '/';
        for (std::size_t j = 0; j < n_; ++j) out += connected(i, j) ? '1' : '0';
    }
    return out;
}

Topology Topology::parse(const std::string& rows) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : rows) {
        if (ch == '/') {
            parts.push_back(cur);
            cur.clear();
        } else if (ch == '0' || ch == '1') {
            cur += ch;
        } else if (ch != ' ') {
            throw std::invalid_argument("bad topology character");
        }
    }
    parts.push_back(cur);
    Topology t(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].size() != parts.size()) throw std::invalid_argument("topology must be square");
        for (std::size_t j = 0; j < parts.size(); ++j) {
            bool v = parts[i][j] == '1';
            if (i == j && !v) throw std::invalid_argument("topology diagonal must be 1");
            if (j > i) t.set(i, j, v);
            if (j < i && t.connected(i, j) != v) throw std::invalid_argument("topology must be symmetric");
        }
    }
    return t;
}

std::strong_ordering Topology::operator<=>(const Topology& other) const {
    if (auto c = n_ <=> other.n_; c != 0) return c;
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (auto c = words_[w] <=> other.words_[w]; c != 0) return c;
    return std::strong_ordering::equal;
}

bool satisfies(const Topology& gamma, const Constraint& c) {
    return std::visit(
        [&](const auto& node) -> bool {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Constraint::True>) {
                return !node.negated;
            } else if constexpr (std::is_same_v<T, Constraint::Con>) {
                if (node.a_id < 0 || node.b_id < 0 || static_cast<std::size_t>(node.a_id) >= gamma.size() ||
                    static_cast<std::size_t>(node.b_id) >= gamma.size())
                    throw std::invalid_argument("constraint references an unknown node");
                return gamma.connected(node.a_id, node.b_id) != node.negated;
            } else {
                return satisfies(gamma, *node.lhs) && satisfies(gamma, *node.rhs);
            }
        },
        c.node);
}

namespace {

// Collects pinned link values; returns false when the constraint is
// unsatisfiable on its face.
bool collect_pins(const Constraint& c, const Topology& shape, std::map<std::size_t, bool>& pins) {
    return std::visit(
        [&](const auto& node) -> bool {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Constraint::True>) {
                return !node.negated;
            } else if constexpr (std::is_same_v<T, Constraint::Con>) {
                if (node.a_id < 0 || node.b_id < 0 || static_cast<std::size_t>(node.a_id) >= shape.size() ||
                    static_cast<std::size_t>(node.b_id) >= shape.size())
                    throw std::invalid_argument("constraint references an unknown node");
                if (node.a_id == node.b_id) return !node.negated;
                std::size_t p = shape.link_index(node.a_id, node.b_id);
                bool want = !node.negated;
                auto [it, inserted] = pins.emplace(p, want);
                return inserted || it->second == want;
            } else {
                return collect_pins(*node.lhs, shape, pins) && collect_pins(*node.rhs, shape, pins);
            }
        },
        c.node);
}

}  // namespace

std::vector<Topology> enumerate_valid(const Constraint& c, std::size_t n) {
    if (n == 0) throw std::invalid_argument("enumerate_valid needs at least one node");
    Topology base(n);
    std::map<std::size_t, bool> pins;
    if (!collect_pins(c, base, pins)) return {};
    std::vector<std::size_t> free_links;
    for (std::size_t p = 0; p < base.link_count(); ++p) {
        auto it = pins.find(p);
        if (it == pins.end())
            free_links.push_back(p);
        else
            base.set_link(p, it->second);
    }
    if (free_links.size() >= 32) throw std::length_error("too many unconstrained links to enumerate");
    // The last free link is least significant, so counting upward yields
    // ascending lexicographic order.
    std::vector<Topology> out;
    const std::uint64_t total = std::uint64_t{1} << free_links.size();
    out.reserve(total);
    for (std::uint64_t code = 0; code < total; ++code) {
        Topology t = base;
        for (std::size_t k = 0; k < free_links.size(); ++k) {
            bool bit = (code >> (free_links.size() - 1 - k)) & 1u;
            t.set_link(free_links[k], bit);
        }
        if (satisfies(t, c)) out.push_back(std::move(t));
    }
    return out;
}

bool is_static(const Constraint& c, const Topology& gamma0) {
    auto valid = enumerate_valid(c, gamma0.size());
    return valid.size() == 1 && valid.front() == gamma0;
}

bool topologically_equivalent(const Topology& gamma, std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < gamma.size(); ++k) {
        if (k == i || k == j) continue;
        if (gamma.connected(i, k) != gamma.connected(j, k)) return false;
    }
    return true;
}

EquivClassPartition equivalence_classes(const Topology& gamma) {
    // The relation is transitive (rows agreeing outside each pair force the
    // links inside a triple to agree), so greedy grouping by the first
    // member yields the maximal blocks.
    EquivClassPartition part;
    const std::size_t n = gamma.size();
    part.block_of.assign(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (part.block_of[i] != n) continue;
        std::size_t b = part.blocks.size();
        part.blocks.push_back({i});
        part.block_of[i] = b;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (part.block_of[j] == n && topologically_equivalent(gamma, i, j)) {
                part.blocks[b].push_back(j);
                part.block_of[j] = b;
            }
        }
    }
    return part;
}

}  // namespace wrebeca
