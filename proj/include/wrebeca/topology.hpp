#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace wrebeca {

struct Constraint;

// Symmetric adjacency over n nodes with an always-true diagonal. Only the
// upper triangle is stored, packed so that comparing the word vectors
// numerically orders topologies lexicographically by link (0,1),(0,2),...
class Topology {
public:
    Topology() = default;
    explicit Topology(std::size_t n);

    static Topology fully_connected(std::size_t n);

    std::size_t size() const { return n_; }
    std::size_t link_count() const { return n_ * (n_ - (n_ > 0 ? 1 : 0)) / 2; }

    bool connected(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, bool value);

    bool link(std::size_t p) const;
    void set_link(std::size_t p, bool value);
    std::size_t link_index(std::size_t i, std::size_t j) const;  // requires i != j

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::size_t hash() const;

    // Rows joined with '/', e.g. "1101/1110/0110/1011".
    std::string to_string() const;
    static Topology parse(const std::string& rows);

    bool operator==(const Topology&) const = default;
    std::strong_ordering operator<=>(const Topology& other) const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

// Maximal blocks of pairwise topologically equivalent nodes, ordered by their
// minimum member; members ascending.
struct EquivClassPartition {
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::size_t> block_of;  // node -> block index

    bool operator==(const EquivClassPartition&) const = default;
};

bool satisfies(const Topology& gamma, const Constraint& c);

// All valid topologies for c over n nodes, ascending in Topology order.
std::vector<Topology> enumerate_valid(const Constraint& c, std::size_t n);

bool is_static(const Constraint& c, const Topology& gamma0);

// i and j are equivalent iff their rows agree on every k outside {i, j}.
bool topologically_equivalent(const Topology& gamma, std::size_t i, std::size_t j);

EquivClassPartition equivalence_classes(const Topology& gamma);

}  // namespace wrebeca
