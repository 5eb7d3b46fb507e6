#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wrebeca/ast.hpp"
#include "wrebeca/interpreter.hpp"
#include "wrebeca/lts.hpp"
#include "wrebeca/state.hpp"
#include "wrebeca/topology.hpp"

namespace wrebeca {

enum class Mode { Full, Counter, TauElim };
enum class LabelMode { Enumerated, Merged };

const char* to_string(Mode m);
const char* to_string(LabelMode m);
std::optional<Mode> parse_mode(std::string_view text);
std::optional<LabelMode> parse_label_mode(std::string_view text);

struct ExploreLimits {
    std::size_t max_states = 5'000'000;
    std::size_t max_transitions = 30'000'000;
};

// A state predicate. Topology-independent: it sees local states only.
struct StateCheck {
    std::string name;
    std::function<bool(const GlobalState&)> holds;
};

// A predicate over one Handle step of `rebec` from pre to post.
struct StepCheck {
    std::string name;
    std::function<bool(const GlobalState& pre, const GlobalState& post, std::size_t rebec)> holds;
};

struct ExploreOptions {
    Mode mode = Mode::Full;
    LabelMode label_mode = LabelMode::Enumerated;
    ExploreLimits limits;
    std::size_t workers = 1;  // 0 picks the hardware concurrency
    std::size_t max_steps = 100'000;
    // Counter abstraction on a model with several valid topologies. Unsound;
    // only for demonstrating why the static precondition exists.
    bool force_counter = false;
    // Admissible topologies replacing those enumerated from the constraint.
    std::optional<std::vector<Topology>> topologies;
    bool rebec_prefix = false;  // label actions as r<i>.m(...)
    bool record_transitions = true;
    std::vector<StateCheck> state_checks;
    std::vector<StepCheck> step_checks;
};

struct Trace {
    std::vector<GlobalState> states;
    std::vector<std::string> labels;  // labels[k] leads from states[k] to states[k+1]
};

struct ExploreStats {
    Mode mode = Mode::Full;
    std::size_t states = 0;
    std::size_t transitions = 0;
    std::size_t topologies = 0;
    std::size_t workers = 1;
    double seconds = 0.0;
};

std::string format_stats(const ExploreStats& s);

struct InvariantViolation {
    std::string invariant;
    Trace trace;
};

struct ExploreResult {
    Lts lts;
    ExploreStats stats;
    std::optional<InvariantViolation> violation;
    std::vector<Topology> topologies;  // the admissible set, in label order
    std::size_t gamma0 = 0;            // index of the initial topology
    // Per state: representative configuration and topology index (the
    // latter is meaningless in tau-elim mode, where states carry none).
    std::vector<std::string> configs;
    std::vector<std::uint32_t> state_config;
    std::vector<std::uint32_t> state_topology;
    std::vector<bool> initializing;  // state is still in the initial phase

    GlobalState state(std::size_t id) const;
};

class ExplorationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Counter mode requested for a model with more than one valid topology.
class PreconditionError : public ExplorationError {
public:
    using ExplorationError::ExplorationError;
};

class LimitExceeded : public ExplorationError {
public:
    LimitExceeded(const std::string& what, ExploreStats partial)
        : ExplorationError(what), partial_(partial) {}
    const ExploreStats& partial() const { return partial_; }

private:
    ExploreStats partial_;
};

// A model error raised while firing a handler, with the path that led to
// the offending state.
class ModelRuntimeError : public ExplorationError {
public:
    ModelRuntimeError(const ModelError& error, Trace trace)
        : ExplorationError(error.what()), error_(error), trace_(std::move(trace)) {}
    const ModelError& error() const { return error_; }
    const Trace& trace() const { return trace_; }

private:
    ModelError error_;
    Trace trace_;
};

// Topologies the explorer ranges over: the override when given, otherwise
// every topology satisfying the model constraint.
std::vector<Topology> admissible_topologies(const Model& model, const ExploreOptions& options);

ExploreResult explore(const Model& model, const ExploreOptions& options);

// Rebuilds an LTS with mobility from an enumerated CLTS: every
// post-initialization state s becomes (s, gamma) for each admissible gamma,
// `gammaK:a` edges become a-edges within topology K, and tau edges connect
// all topology variants of the same state.
Lts reexpand_clts(const ExploreResult& clts);

// `and(con(a,b),!con(a,c))`, `con(a,b)`, or `true` for no probes.
std::string probe_annotation(const Model& model, std::size_t sender, const std::vector<LinkProbe>& probes);

}  // namespace wrebeca
