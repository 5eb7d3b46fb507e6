#include "wrebeca/equivalence.hpp"

#include <algorithm>
#include <unordered_map>

namespace wrebeca {

namespace {

// Outgoing edges grouped by source.
struct Csr {
    std::vector<std::uint32_t> start;
    std::vector<std::uint32_t> label;
    std::vector<std::uint32_t> dst;

    Csr(std::size_t n, const std::vector<Transition>& ts) : start(n + 1, 0), label(ts.size()), dst(ts.size()) {
        for (const auto& t : ts) ++start[t.src + 1];
        for (std::size_t s = 0; s < n; ++s) start[s + 1] += start[s];
        std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
        for (const auto& t : ts) {
            label[fill[t.src]] = t.label;
            dst[fill[t.src]++] = t.dst;
        }
    }
};

std::string sig_key(const std::vector<std::uint64_t>& sig) {
    return std::string(reinterpret_cast<const char*>(sig.data()), sig.size() * sizeof(std::uint64_t));
}

// Renumbers blocks by first occurrence in state order; returns block count.
std::size_t assign_blocks(const std::vector<std::vector<std::uint64_t>>& sigs, std::vector<std::uint32_t>& block) {
    std::unordered_map<std::string, std::uint32_t> ids;
    for (std::size_t s = 0; s < sigs.size(); ++s) {
        auto [it, inserted] = ids.try_emplace(sig_key(sigs[s]), static_cast<std::uint32_t>(ids.size()));
        block[s] = it->second;
    }
    return ids.size();
}

std::uint64_t pair_of(std::uint32_t label, std::uint32_t block) {
    return (static_cast<std::uint64_t>(label) << 32) | block;
}

// Signature refinement; history[k] is the partition after k rounds.
std::vector<std::uint32_t> refine_strong(const Lts& lts, std::vector<std::vector<std::uint32_t>>* history,
                                         std::size_t* rounds) {
    const std::size_t n = lts.num_states;
    Csr g(n, lts.transitions);
    std::vector<std::uint32_t> block(n, 0);
    std::size_t count = n > 0 ? 1 : 0;
    if (history) history->push_back(block);
    std::vector<std::vector<std::uint64_t>> sigs(n);
    std::size_t r = 0;
    while (true) {
        for (std::size_t s = 0; s < n; ++s) {
            auto& sig = sigs[s];
            sig.clear();
            for (std::uint32_t e = g.start[s]; e < g.start[s + 1]; ++e) sig.push_back(pair_of(g.label[e], block[g.dst[e]]));
            std::sort(sig.begin(), sig.end());
            sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
            sig.insert(sig.begin(), block[s]);
        }
        std::vector<std::uint32_t> next(n);
        std::size_t next_count = assign_blocks(sigs, next);
        ++r;
        block = std::move(next);
        if (history) history->push_back(block);
        if (next_count == count) break;
        count = next_count;
    }
    if (rounds) *rounds = r;
    return block;
}

// Iterative Tarjan over the tau edges.
std::vector<std::uint32_t> tau_sccs(const Csr& g, std::size_t n, std::uint32_t tau, std::size_t& count) {
    constexpr std::uint32_t kUnset = 0xffffffffu;
    std::vector<std::uint32_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
    std::vector<std::uint32_t> stack;
    std::vector<bool> on_stack(n, false);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> call;  // (state, next edge)
    std::uint32_t next_index = 0;
    count = 0;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != kUnset) continue;
        call.emplace_back(root, g.start[root]);
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, e] = call.back();
            bool descended = false;
            while (e < g.start[v + 1]) {
                std::uint32_t edge = e++;
                if (g.label[edge] != tau) continue;
                std::uint32_t w = g.dst[edge];
                if (index[w] == kUnset) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, g.start[w]);
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[v] = std::min(low[v], index[w]);
            }
            if (descended) continue;
            std::uint32_t done = v;
            call.pop_back();
            if (low[done] == index[done]) {
                while (true) {
                    std::uint32_t w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = static_cast<std::uint32_t>(count);
                    if (w == done) break;
                }
                ++count;
            }
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
        }
    }
    return comp;
}

}  // namespace

std::vector<std::uint32_t> strong_partition(const Lts& lts, std::size_t* rounds) {
    return refine_strong(lts, nullptr, rounds);
}

std::vector<std::uint32_t> branching_partition(const Lts& lts, std::string_view tau_text, std::size_t* rounds) {
    const std::size_t n = lts.num_states;
    auto tau_opt = lts.find_label(tau_text);
    if (!tau_opt) return strong_partition(lts, rounds);  // no internal steps at all
    const std::uint32_t tau = *tau_opt;

    // Tau-cycles collapse into one state: their members are branching
    // bisimilar, and the quotient's tau graph is acyclic.
    Csr g(n, lts.transitions);
    std::size_t m = 0;
    std::vector<std::uint32_t> comp = tau_sccs(g, n, tau, m);
    std::vector<Transition> qt;
    qt.reserve(lts.transitions.size());
    for (const auto& t : lts.transitions) {
        std::uint32_t a = comp[t.src], b = comp[t.dst];
        if (t.label == tau && a == b) continue;
        qt.push_back({a, t.label, b});
    }
    std::sort(qt.begin(), qt.end());
    qt.erase(std::unique(qt.begin(), qt.end()), qt.end());
    Csr q(m, qt);

    // Tarjan numbers components in reverse topological order of the tau
    // DAG, so ascending ids visit tau-successors before their sources.
    std::vector<std::uint32_t> block(m, 0);
    std::size_t count = m > 0 ? 1 : 0;
    std::vector<std::vector<std::uint64_t>> sigs(m);
    std::size_t r = 0;
    while (true) {
        for (std::uint32_t s = 0; s < m; ++s) {
            auto& sig = sigs[s];
            sig.clear();
            for (std::uint32_t e = q.start[s]; e < q.start[s + 1]; ++e) {
                std::uint32_t t = q.dst[e];
                if (q.label[e] == tau && block[t] == block[s]) {
                    // Inert step: s inherits everything t can do.
                    sig.insert(sig.end(), sigs[t].begin(), sigs[t].end());
                    continue;
                }
                sig.push_back(pair_of(q.label[e], block[t]));
            }
            std::sort(sig.begin(), sig.end());
            sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
        }
        std::vector<std::vector<std::uint64_t>> keyed(m);
        for (std::uint32_t s = 0; s < m; ++s) {
            keyed[s].reserve(sigs[s].size() + 1);
            keyed[s].push_back(block[s]);
            keyed[s].insert(keyed[s].end(), sigs[s].begin(), sigs[s].end());
        }
        std::vector<std::uint32_t> next(m);
        std::size_t next_count = assign_blocks(keyed, next);
        ++r;
        block = std::move(next);
        if (next_count == count) break;
        count = next_count;
    }
    if (rounds) *rounds = r;
    std::vector<std::uint32_t> out(n);
    for (std::size_t s = 0; s < n; ++s) out[s] = block[comp[s]];
    return out;
}

Lts disjoint_union(const Lts& a, const Lts& b, std::uint32_t* b_offset) {
    Lts u;
    u.num_states = a.num_states + b.num_states;
    u.initial = a.initial;
    const auto off = static_cast<std::uint32_t>(a.num_states);
    if (b_offset) *b_offset = off;
    u.transitions.reserve(a.transitions.size() + b.transitions.size());
    for (const auto& t : a.transitions) u.transitions.push_back({t.src, u.intern_label(a.label(t.label)), t.dst});
    for (const auto& t : b.transitions)
        u.transitions.push_back({t.src + off, u.intern_label(b.label(t.label)), t.dst + off});
    return u;
}

EquivalenceResult strong_bisim_equivalent(const Lts& a, const Lts& b) {
    std::uint32_t off = 0;
    Lts u = disjoint_union(a, b, &off);
    std::vector<std::vector<std::uint32_t>> history;
    EquivalenceResult res;
    std::vector<std::uint32_t> block = refine_strong(u, &history, &res.rounds);
    res.blocks = block.empty() ? 0 : *std::max_element(block.begin(), block.end()) + 1;
    std::uint32_t p = a.initial, q = b.initial + off;
    res.equivalent = block[p] == block[q];
    if (res.equivalent) return res;

    // Walk down the rounds: p and q first differ after round k, so one of
    // them has a move into a round-(k-1) block the other cannot match.
    Csr g(u.num_states, u.transitions);
    auto first_split = [&](std::uint32_t x, std::uint32_t y) {
        std::size_t k = 0;
        while (history[k][x] == history[k][y]) ++k;
        return k;
    };
    for (std::size_t guard = 0; guard <= history.size(); ++guard) {
        std::size_t k = first_split(p, q);
        const auto& prev = history[k - 1];
        bool advanced = false;
        for (int side = 0; side < 2 && !advanced; ++side) {
            std::uint32_t x = side == 0 ? p : q, y = side == 0 ? q : p;
            for (std::uint32_t e = g.start[x]; e < g.start[x + 1] && !advanced; ++e) {
                bool matched = false;
                std::uint32_t reply = 0;
                bool any_reply = false;
                for (std::uint32_t f = g.start[y]; f < g.start[y + 1]; ++f) {
                    if (g.label[f] != g.label[e]) continue;
                    if (!any_reply) reply = g.dst[f];
                    any_reply = true;
                    if (prev[g.dst[f]] == prev[g.dst[e]]) matched = true;
                }
                if (matched) continue;
                res.distinguishing.push_back(u.label(g.label[e]));
                advanced = true;
                if (!any_reply) return res;
                p = side == 0 ? g.dst[e] : reply;
                q = side == 0 ? reply : g.dst[e];
            }
        }
        if (!advanced) break;
    }
    return res;
}

EquivalenceResult branching_bisim_equivalent(const Lts& a, const Lts& b, std::string_view tau) {
    std::uint32_t off = 0;
    Lts u = disjoint_union(a, b, &off);
    EquivalenceResult res;
    std::vector<std::uint32_t> block = branching_partition(u, tau, &res.rounds);
    res.blocks = block.empty() ? 0 : *std::max_element(block.begin(), block.end()) + 1;
    res.equivalent = block[a.initial] == block[b.initial + off];
    return res;
}

EquivalenceResult equivalent(const Lts& a, const Lts& b, Relation r, std::string_view tau) {
    return r == Relation::Strong ? strong_bisim_equivalent(a, b) : branching_bisim_equivalent(a, b, tau);
}

}  // namespace wrebeca
