#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "wrebeca/ast.hpp"
#include "wrebeca/lts.hpp"
#include "wrebeca/topology.hpp"

namespace wrebeca::testing {

std::string corpus_path(std::string_view name);
std::string read_text(const std::string& path);

// Parses a corpus model, optionally replacing its constraint with the named
// file under corpus/constraints. Fails loudly on ill-formed models.
Model load_corpus(std::string_view name, std::string_view constraint_file = "");
Model load_source(std::string_view source);

// The toy topologies: N1-N2 linked; all linked; N3 linked to both others.
std::vector<Topology> toy_topologies();

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr interleaved
};
CliResult run_cli(const std::string& args);

std::string temp_path(std::string_view name);

// Greatest fixed points computed pair by pair straight from the
// definitions; only for a handful of states.
bool naive_strong_bisimilar(const Lts& a, const Lts& b);
bool naive_branching_bisimilar(const Lts& a, const Lts& b, std::string_view tau = kTauLabel);

// Depth-first search with colors; independent of the Kahn-based checker.
bool dfs_has_cycle(const std::vector<std::vector<std::size_t>>& adj);

// Random LTS over labels a, b and tau.
Lts random_lts(std::mt19937& rng, std::size_t states, std::size_t transitions, bool with_tau);

}  // namespace wrebeca::testing
