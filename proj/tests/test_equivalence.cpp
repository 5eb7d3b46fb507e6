#include <catch_amalgamated.hpp>

#include <random>

#include "test_util.hpp"
#include "wrebeca/equivalence.hpp"

using namespace wrebeca;
using namespace wrebeca::testing;

namespace {

Lts make(std::size_t states, std::initializer_list<std::tuple<std::uint32_t, const char*, std::uint32_t>> edges) {
    Lts l;
    l.num_states = states;
    for (auto [s, a, d] : edges) l.add(s, a, d);
    l.canonicalize();
    return l;
}

// Follows the label sequence from the initial state; true if some path
// consumes it entirely.
bool can_follow(const Lts& l, const std::vector<std::string>& word) {
    std::vector<bool> at(l.num_states, false);
    at[l.initial] = true;
    for (const auto& a : word) {
        std::vector<bool> next(l.num_states, false);
        for (const auto& t : l.transitions)
            if (at[t.src] && l.label(t.label) == a) next[t.dst] = true;
        at = next;
    }
    for (bool b : at)
        if (b) return true;
    return false;
}

}  // namespace

TEST_CASE("an LTS is equivalent to itself") {
    std::mt19937 rng(5);
    for (int k = 0; k < 20; ++k) {
        Lts l = random_lts(rng, 10, 20, true);
        CHECK(strong_bisim_equivalent(l, l).equivalent);
        CHECK(branching_bisim_equivalent(l, l).equivalent);
    }
}

TEST_CASE("tau self-loops are inert for branching but not strong bisimilarity") {
    Lts a = make(2, {{0, "a", 1}});
    Lts b = make(2, {{0, "a", 1}, {0, "tau", 0}, {1, "tau", 1}});
    CHECK(branching_bisim_equivalent(a, b).equivalent);
    CHECK_FALSE(strong_bisim_equivalent(a, b).equivalent);
}

TEST_CASE("inert tau steps collapse; tau that discards a choice does not") {
    Lts direct = make(2, {{0, "a", 1}});
    Lts via_tau = make(3, {{0, "tau", 1}, {1, "a", 2}});
    CHECK(branching_bisim_equivalent(direct, via_tau).equivalent);

    Lts choice = make(3, {{0, "a", 1}, {0, "b", 2}});
    Lts pruned = make(4, {{0, "a", 1}, {0, "tau", 2}, {2, "b", 3}});
    CHECK_FALSE(branching_bisim_equivalent(choice, pruned).equivalent);
}

TEST_CASE("single states with and without behaviour") {
    Lts empty = make(1, {});
    CHECK(strong_bisim_equivalent(empty, make(1, {})).equivalent);
    CHECK_FALSE(strong_bisim_equivalent(empty, make(1, {{0, "a", 0}})).equivalent);
    CHECK(branching_bisim_equivalent(empty, make(1, {{0, "tau", 0}})).equivalent);
}

TEST_CASE("partitions agree with the naive fixpoint on random LTSs") {
    std::mt19937 rng(99);
    for (int k = 0; k < 300; ++k) {
        std::size_t na = 1 + rng() % 12, nb = 1 + rng() % 12;
        bool tau = k % 2;
        Lts a = random_lts(rng, na, rng() % (2 * na + 1), tau);
        Lts b = random_lts(rng, nb, rng() % (2 * nb + 1), tau);
        INFO("round " << k);
        bool strong = strong_bisim_equivalent(a, b).equivalent;
        CHECK(strong == naive_strong_bisimilar(a, b));
        bool branching = branching_bisim_equivalent(a, b).equivalent;
        CHECK(branching == naive_branching_bisimilar(a, b, "tau"));
        if (strong) CHECK(branching);
    }
}

TEST_CASE("random LTSs against a minimized copy of themselves") {
    // Quotienting by the computed partition must preserve equivalence.
    std::mt19937 rng(17);
    for (int k = 0; k < 100; ++k) {
        Lts l = random_lts(rng, 12, 24, true);
        for (Relation r : {Relation::Strong, Relation::Branching}) {
            auto block = r == Relation::Strong ? strong_partition(l) : branching_partition(l);
            Lts q;
            std::uint32_t blocks = 0;
            for (auto b : block) blocks = std::max(blocks, b + 1);
            q.num_states = blocks;
            q.initial = block[l.initial];
            for (const auto& t : l.transitions) {
                if (r == Relation::Branching && l.label(t.label) == "tau" && block[t.src] == block[t.dst]) continue;
                q.add(block[t.src], l.label(t.label), block[t.dst]);
            }
            q.canonicalize();
            CHECK(equivalent(l, q, r).equivalent);
        }
    }
}

TEST_CASE("a distinguishing sequence separates the two sides") {
    Lts a = make(4, {{0, "a", 1}, {1, "b", 2}, {2, "a", 3}});
    Lts b = make(4, {{0, "a", 1}, {1, "b", 2}, {2, "c", 3}});
    auto res = strong_bisim_equivalent(a, b);
    REQUIRE_FALSE(res.equivalent);
    CHECK(can_follow(a, res.distinguishing) != can_follow(b, res.distinguishing));
    CHECK(res.blocks >= 2);

    // Trace equivalent but not bisimilar: the sequence is a prefix both can
    // start, after which one side may have lost its options.
    Lts c = make(3, {{0, "a", 1}, {1, "b", 2}});
    Lts d = make(3, {{0, "a", 1}, {0, "a", 2}, {1, "b", 1}});
    auto nd = strong_bisim_equivalent(c, d);
    REQUIRE_FALSE(nd.equivalent);
    REQUIRE_FALSE(nd.distinguishing.empty());
    CHECK(nd.distinguishing.front() == "a");
}

TEST_CASE("disjoint union offsets the second LTS") {
    Lts a = make(2, {{0, "a", 1}});
    Lts b = make(3, {{0, "b", 2}});
    std::uint32_t off = 0;
    Lts u = disjoint_union(a, b, &off);
    CHECK(off == 2);
    CHECK(u.num_states == 5);
    CHECK(u.transitions.size() == 2);
}
