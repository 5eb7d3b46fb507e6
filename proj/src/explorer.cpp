#include "wrebeca/explorer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <thread>
#include <unordered_map>

namespace wrebeca {

const char* to_string(Mode m) {
    switch (m) {
        case Mode::Full: return "full";
        case Mode::Counter: return "counter";
        case Mode::TauElim: return "tau-elim";
    }
    return "?";
}

const char* to_string(LabelMode m) { return m == LabelMode::Enumerated ? "enumerated" : "merged"; }

std::optional<Mode> parse_mode(std::string_view text) {
    if (text == "full") return Mode::Full;
    if (text == "counter") return Mode::Counter;
    if (text == "tau-elim") return Mode::TauElim;
    return std::nullopt;
}

std::optional<LabelMode> parse_label_mode(std::string_view text) {
    if (text == "enumerated") return LabelMode::Enumerated;
    if (text == "merged") return LabelMode::Merged;
    return std::nullopt;
}

std::string format_stats(const ExploreStats& s) {
    char time[32];
    std::snprintf(time, sizeof time, "%.3f", s.seconds);
    return "mode=" + std::string(to_string(s.mode)) + " states=" + std::to_string(s.states) +
           " transitions=" + std::to_string(s.transitions) + " topologies=" + std::to_string(s.topologies) +
           " workers=" + std::to_string(s.workers) + " time=" + time + "s";
}

GlobalState ExploreResult::state(std::size_t id) const {
    GlobalState g = decode_config(configs[state_config[id]]);
    if (stats.mode != Mode::TauElim) g.topology = topologies[state_topology[id]];
    return g;
}

std::string probe_annotation(const Model& model, std::size_t sender, const std::vector<LinkProbe>& probes) {
    std::vector<LinkProbe> sorted = probes;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const LinkProbe& a, const LinkProbe& b) { return a.receiver < b.receiver; });
    sorted.erase(std::unique(sorted.begin(), sorted.end(),
                             [](const LinkProbe& a, const LinkProbe& b) { return a.receiver == b.receiver; }),
                 sorted.end());
    if (sorted.empty()) return "true";
    auto literal = [&](const LinkProbe& p) {
        return std::string(p.connected ? "" : "!") + "con(" + model.rebecs[sender].name + "," +
               model.rebecs[p.receiver].name + ")";
    };
    if (sorted.size() == 1) return literal(sorted[0]);
    std::string out = "and(";
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        if (k > 0) out += ',';
        out += literal(sorted[k]);
    }
    return out + ')';
}

std::vector<Topology> admissible_topologies(const Model& model, const ExploreOptions& options) {
    if (options.topologies) return *options.topologies;
    return enumerate_valid(*model.constraint, model.rebec_count());
}

namespace {

constexpr std::uint32_t kNone = 0xffffffffu;

std::string abstract_key(const GlobalState& g, const EquivClassPartition& part) {
    std::vector<std::pair<std::size_t, std::string>> items;
    items.reserve(g.rebecs.size());
    for (std::size_t i = 0; i < g.rebecs.size(); ++i) items.emplace_back(part.block_of[i], encode_local(g.rebecs[i]));
    std::sort(items.begin(), items.end());
    std::string out;
    for (std::size_t k = 0; k < items.size();) {
        std::size_t m = k;
        while (m < items.size() && items[m] == items[k]) ++m;
        put_varint(out, static_cast<std::int64_t>(items[k].first));
        put_varint(out, static_cast<std::int64_t>(items[k].second.size()));
        out += items[k].second;
        put_varint(out, static_cast<std::int64_t>(m - k));
        k = m;
    }
    return out;
}

struct Candidate {
    std::string key;  // abstract key in counter mode, else empty
    std::string config;
    std::uint32_t topo = 0;
    std::string label;
    int failed_state_check = -1;
    int failed_step_check = -1;
};

struct Expansion {
    std::vector<Candidate> succ;
    std::optional<ModelError> error;
};

class Engine {
public:
    Engine(const Model& model, const ExploreOptions& options)
        : model_(model), opt_(options), interp_(model, InterpreterOptions{options.max_steps}) {
        gammas_ = admissible_topologies(model, options);
        if (gammas_.empty()) throw PreconditionError("no topology satisfies the network constraint");
        auto it = std::find(gammas_.begin(), gammas_.end(), model.initial_topology);
        if (it == gammas_.end())
            throw PreconditionError("the initial topology " + model.initial_topology.to_string() +
                                    " is not among the admissible topologies");
        g0_ = static_cast<std::uint32_t>(it - gammas_.begin());
        if (opt_.mode == Mode::Counter && gammas_.size() > 1 && !opt_.force_counter)
            throw PreconditionError(
                "counter abstraction requires a static topology, but the network constraint admits " +
                std::to_string(gammas_.size()) +
                " topologies; under mobility the abstract and concrete state spaces are not strongly "
                "bisimilar");
        tau_states_ = opt_.mode != Mode::TauElim;
        slots_per_key_ = tau_states_ ? gammas_.size() : 1;
        if (opt_.mode == Mode::Counter)
            for (const auto& g : gammas_) parts_.push_back(equivalence_classes(g));
        workers_ = opt_.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opt_.workers;
    }

    ExploreResult run();

private:
    Expansion expand(std::uint32_t s) const;
    Trace trace_to(std::uint32_t s) const;
    GlobalState state_of(std::uint32_t s) const;
    std::uint32_t intern_key(const Candidate& c, bool& fresh);
    std::uint32_t add_state(std::uint32_t key, std::uint32_t topo, std::uint32_t parent, std::uint32_t label,
                            bool& fresh);
    ExploreStats stats() const;
    void check_limits() const;

    const Model& model_;
    ExploreOptions opt_;
    Interpreter interp_;
    std::vector<Topology> gammas_;
    std::vector<EquivClassPartition> parts_;
    std::uint32_t g0_ = 0;
    bool tau_states_ = true;
    std::size_t slots_per_key_ = 1;
    std::size_t workers_ = 1;
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();

    // Key ids coincide with representative configuration indices.
    std::unordered_map<std::string, std::uint32_t> key_ids_;
    std::vector<std::string> configs_;
    std::vector<std::uint32_t> slot_;  // key * slots_per_key + topo -> state

    std::vector<std::uint32_t> state_key_;
    std::vector<std::uint32_t> state_topo_;
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> parent_label_;
    std::vector<bool> initializing_;
    std::size_t transitions_ = 0;
    Lts lts_;
};

GlobalState Engine::state_of(std::uint32_t s) const {
    GlobalState g = decode_config(configs_[state_key_[s]]);
    if (tau_states_) g.topology = gammas_[state_topo_[s]];
    return g;
}

Trace Engine::trace_to(std::uint32_t s) const {
    std::vector<std::uint32_t> path;
    for (std::uint32_t v = s; v != kNone; v = parent_[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    Trace t;
    for (std::size_t k = 0; k < path.size(); ++k) {
        if (k > 0) t.labels.push_back(lts_.label(parent_label_[path[k]]));
        t.states.push_back(state_of(path[k]));
    }
    return t;
}

ExploreStats Engine::stats() const {
    ExploreStats st;
    st.mode = opt_.mode;
    st.states = state_key_.size();
    st.transitions = transitions_;
    st.topologies = gammas_.size();
    st.workers = workers_;
    st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return st;
}

void Engine::check_limits() const {
    if (state_key_.size() > opt_.limits.max_states)
        throw LimitExceeded("state limit of " + std::to_string(opt_.limits.max_states) + " exceeded", stats());
    if (transitions_ > opt_.limits.max_transitions)
        throw LimitExceeded("transition limit of " + std::to_string(opt_.limits.max_transitions) + " exceeded",
                            stats());
}

std::uint32_t Engine::intern_key(const Candidate& c, bool& fresh) {
    const std::string& key = opt_.mode == Mode::Counter ? c.key : c.config;
    auto [it, inserted] = key_ids_.try_emplace(key, static_cast<std::uint32_t>(configs_.size()));
    fresh = inserted;
    if (inserted) {
        configs_.push_back(c.config);
        slot_.resize(slot_.size() + slots_per_key_, kNone);
    }
    return it->second;
}

std::uint32_t Engine::add_state(std::uint32_t key, std::uint32_t topo, std::uint32_t parent, std::uint32_t label,
                                bool& fresh) {
    std::uint32_t& slot = slot_[static_cast<std::size_t>(key) * slots_per_key_ + (tau_states_ ? topo : 0)];
    fresh = slot == kNone;
    if (!fresh) return slot;
    slot = static_cast<std::uint32_t>(state_key_.size());
    state_key_.push_back(key);
    state_topo_.push_back(tau_states_ ? topo : g0_);
    parent_.push_back(parent);
    parent_label_.push_back(label);
    initializing_.push_back(false);
    return slot;
}

Expansion Engine::expand(std::uint32_t s) const {
    Expansion out;
    const GlobalState g = decode_config(configs_[state_key_[s]]);
    const std::size_t n = g.rebecs.size();
    const bool init = interp_.initializing(g);

    std::vector<std::size_t> enabled;
    for (std::size_t i = 0; i < n; ++i) {
        if (g.rebecs[i].queue.empty()) continue;
        if (init && !interp_.is_initial(g.rebecs[i].queue.front())) continue;
        enabled.push_back(i);
    }

    std::vector<std::uint32_t> fire_under;
    if (tau_states_)
        fire_under.push_back(state_topo_[s]);
    else if (init)
        fire_under.push_back(g0_);
    else
        for (std::uint32_t t = 0; t < gammas_.size(); ++t) fire_under.push_back(t);

    const bool merged = opt_.mode == Mode::TauElim && opt_.label_mode == LabelMode::Merged;
    std::vector<LinkProbe> probes;
    for (std::uint32_t t : fire_under) {
        std::vector<std::size_t> fire = enabled;
        if (opt_.mode == Mode::Counter) {
            // One representative, the minimum identifier, per (local state, block).
            std::vector<std::pair<std::size_t, std::string>> seen;
            fire.clear();
            for (std::size_t i : enabled) {
                std::pair<std::size_t, std::string> k{parts_[t].block_of[i], encode_local(g.rebecs[i])};
                if (std::find(seen.begin(), seen.end(), k) != seen.end()) continue;
                seen.push_back(std::move(k));
                fire.push_back(i);
            }
        }
        for (std::size_t i : fire) {
            probes.clear();
            HandleResult r;
            try {
                r = interp_.handle_message(g, i, gammas_[t], merged ? &probes : nullptr);
            } catch (const ModelError& e) {
                out.error = e;
                return out;
            }
            Candidate c;
            std::string action = interp_.label(r.message);
            if (opt_.rebec_prefix) action = "r" + std::to_string(i) + "." + action;
            if (opt_.mode != Mode::TauElim)
                c.label = std::move(action);
            else if (merged)
                c.label = probe_annotation(model_, i, probes) + ":" + action;
            else
                c.label = "gamma" + std::to_string(t + 1) + ":" + action;
            r.state.topology.reset();
            c.config = encode_config(r.state);
            if (opt_.mode == Mode::Counter) c.key = abstract_key(r.state, parts_[t]);
            c.topo = tau_states_ ? t : g0_;
            for (std::size_t k = 0; k < opt_.state_checks.size() && c.failed_state_check < 0; ++k)
                if (!opt_.state_checks[k].holds(r.state)) c.failed_state_check = static_cast<int>(k);
            for (std::size_t k = 0; k < opt_.step_checks.size() && c.failed_step_check < 0; ++k)
                if (!opt_.step_checks[k].holds(g, r.state, i)) c.failed_step_check = static_cast<int>(k);
            out.succ.push_back(std::move(c));
        }
    }

    // Forced counter abstraction regroups the same configuration under the
    // target topology; plain full mode adds its tau moves during the merge.
    if (opt_.mode == Mode::Counter && !init && gammas_.size() > 1) {
        for (std::uint32_t t = 0; t < gammas_.size(); ++t) {
            if (t == state_topo_[s]) continue;
            Candidate c;
            c.label = std::string(kTauLabel);
            c.config = configs_[state_key_[s]];
            c.key = abstract_key(g, parts_[t]);
            c.topo = t;
            out.succ.push_back(std::move(c));
        }
    }
    return out;
}

ExploreResult Engine::run() {
    ExploreResult result;
    {
        GlobalState init = interp_.initial_state();
        Candidate c;
        c.config = encode_config(init);
        if (opt_.mode == Mode::Counter) c.key = abstract_key(init, parts_[g0_]);
        bool fresh = false;
        std::uint32_t key = intern_key(c, fresh);
        add_state(key, g0_, kNone, 0, fresh);
        for (const auto& chk : opt_.state_checks) {
            if (!chk.holds(init)) {
                result.violation = InvariantViolation{chk.name, trace_to(0)};
                break;
            }
        }
    }
    const std::uint32_t tau_id = lts_.intern_label(kTauLabel);

    std::vector<std::uint32_t> frontier{0};
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // (label, dst)
    while (!frontier.empty() && !result.violation) {
        std::vector<Expansion> exps(frontier.size());
        if (workers_ <= 1 || frontier.size() < 2) {
            for (std::size_t k = 0; k < frontier.size(); ++k) exps[k] = expand(frontier[k]);
        } else {
            std::atomic<std::size_t> next{0};
            auto work = [&] {
                for (std::size_t k; (k = next.fetch_add(1)) < frontier.size();) exps[k] = expand(frontier[k]);
            };
            std::vector<std::jthread> pool;
            for (std::size_t w = 0; w < std::min(workers_, frontier.size()); ++w) pool.emplace_back(work);
        }

        // Deterministic merge in frontier order.
        std::vector<std::uint32_t> next_frontier;
        for (std::size_t k = 0; k < frontier.size() && !result.violation; ++k) {
            const std::uint32_t s = frontier[k];
            Expansion& e = exps[k];
            if (e.error) throw ModelRuntimeError(*e.error, trace_to(s));
            initializing_[s] = interp_.initializing(decode_config(configs_[state_key_[s]]));
            edges.clear();
            for (auto& c : e.succ) {
                const std::uint32_t label = lts_.intern_label(c.label);
                bool fresh_key = false;
                bool fresh = false;
                std::uint32_t key = intern_key(c, fresh_key);
                std::uint32_t dst = add_state(key, c.topo, s, label, fresh);
                if (fresh) {
                    next_frontier.push_back(dst);
                    if (c.failed_state_check >= 0) {
                        result.violation =
                            InvariantViolation{opt_.state_checks[c.failed_state_check].name, trace_to(dst)};
                        break;
                    }
                }
                if (c.failed_step_check >= 0) {
                    Trace t = trace_to(s);
                    t.labels.push_back(c.label);
                    GlobalState post = decode_config(c.config);
                    if (tau_states_) post.topology = gammas_[c.topo];
                    t.states.push_back(std::move(post));
                    result.violation = InvariantViolation{opt_.step_checks[c.failed_step_check].name, std::move(t)};
                    break;
                }
                edges.emplace_back(label, dst);
            }
            if (opt_.mode == Mode::Full && !initializing_[s] && !result.violation) {
                for (std::uint32_t t = 0; t < gammas_.size(); ++t) {
                    if (t == state_topo_[s]) continue;
                    bool fresh = false;
                    std::uint32_t dst = add_state(state_key_[s], t, s, tau_id, fresh);
                    if (fresh) next_frontier.push_back(dst);
                    edges.emplace_back(tau_id, dst);
                }
            }
            std::sort(edges.begin(), edges.end());
            edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
            transitions_ += edges.size();
            if (opt_.record_transitions)
                for (auto [label, dst] : edges) lts_.transitions.push_back({s, label, dst});
            check_limits();
        }
        frontier = std::move(next_frontier);
    }

    result.stats = stats();
    lts_.initial = 0;
    lts_.num_states = state_key_.size();
    if (opt_.record_transitions) lts_.canonicalize();
    result.lts = std::move(lts_);
    result.topologies = gammas_;
    result.gamma0 = g0_;
    result.configs = std::move(configs_);
    result.state_config = std::move(state_key_);
    result.state_topology = std::move(state_topo_);
    // States never expanded (after a violation) are classified here.
    for (std::size_t s = 0; s < result.state_config.size(); ++s)
        initializing_[s] = interp_.initializing(decode_config(result.configs[result.state_config[s]]));
    result.initializing = std::move(initializing_);
    return result;
}

}  // namespace

ExploreResult explore(const Model& model, const ExploreOptions& options) {
    Engine engine(model, options);
    return engine.run();
}

Lts reexpand_clts(const ExploreResult& clts) {
    if (clts.stats.mode != Mode::TauElim) throw std::invalid_argument("re-expansion needs a tau-eliminated CLTS");
    const std::size_t m = clts.topologies.size();
    const std::size_t n = clts.lts.num_states;
    std::vector<std::uint32_t> base(n);
    std::uint32_t next = 0;
    for (std::size_t s = 0; s < n; ++s) {
        base[s] = next;
        next += clts.initializing[s] ? 1 : static_cast<std::uint32_t>(m);
    }
    auto variant = [&](std::uint32_t s, std::size_t t) -> std::uint32_t {
        if (clts.initializing[s]) {
            if (t != clts.gamma0) throw std::invalid_argument("initial-phase state outside the initial topology");
            return base[s];
        }
        return base[s] + static_cast<std::uint32_t>(t);
    };
    Lts out;
    out.num_states = next;
    out.initial = variant(clts.lts.initial, clts.gamma0);
    for (const auto& tr : clts.lts.transitions) {
        const std::string& label = clts.lts.label(tr.label);
        std::size_t colon = label.find(':');
        if (label.rfind("gamma", 0) != 0 || colon == std::string::npos)
            throw std::invalid_argument("re-expansion needs enumerated labels, got '" + label + "'");
        std::size_t k = std::stoul(label.substr(5, colon - 5));
        if (k == 0 || k > m) throw std::invalid_argument("topology index out of range in '" + label + "'");
        out.add(variant(tr.src, k - 1), std::string_view(label).substr(colon + 1), variant(tr.dst, k - 1));
    }
    for (std::uint32_t s = 0; s < n; ++s) {
        if (clts.initializing[s]) continue;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                if (a != b) out.add(variant(s, a), kTauLabel, variant(s, b));
    }
    out.canonicalize();
    return out;
}

}  // namespace wrebeca
