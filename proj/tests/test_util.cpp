#include "test_util.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "wrebeca/parser.hpp"
#include "wrebeca/well_formed.hpp"

namespace wrebeca::testing {

std::string corpus_path(std::string_view name) { return std::string(WREBECA_CORPUS_DIR) + "/" + std::string(name); }

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Model load_source(std::string_view source) {
    Model m = parse_model(source);
    auto violations = check_well_formed(m);
    if (!violations.empty()) throw std::runtime_error("ill-formed test model: " + to_string(violations.front()));
    return m;
}

Model load_corpus(std::string_view name, std::string_view constraint_file) {
    Model m = parse_model(read_text(corpus_path(name)));
    if (!constraint_file.empty()) {
        std::string text = read_text(corpus_path("constraints/" + std::string(constraint_file) + ".constraint"));
        m = with_constraint(m, parse_constraint(text, m));
    }
    auto violations = check_well_formed(m);
    if (!violations.empty()) throw std::runtime_error(std::string(name) + ": " + to_string(violations.front()));
    return m;
}

std::vector<Topology> toy_topologies() {
    Topology g1(3), g2 = Topology::fully_connected(3), g3(3);
    g1.set(0, 1, true);
    g3.set(0, 2, true);
    g3.set(1, 2, true);
    return {g1, g2, g3};
}

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(WREBECA_CLI_PATH) + " " + args + " 2>&1";
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed");
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string temp_path(std::string_view name) {
    auto dir = std::filesystem::temp_directory_path() / "wrebeca_tests";
    std::filesystem::create_directories(dir);
    return (dir / std::string(name)).string();
}

namespace {

struct Union {
    std::size_t n = 0;
    std::size_t a_initial = 0, b_initial = 0;
    // out[s] = (label text, target)
    std::vector<std::vector<std::pair<std::string, std::size_t>>> out;
};

Union join(const Lts& a, const Lts& b) {
    Union u;
    u.n = a.num_states + b.num_states;
    u.out.resize(u.n);
    for (const auto& t : a.transitions) u.out[t.src].emplace_back(a.label(t.label), t.dst);
    for (const auto& t : b.transitions)
        u.out[a.num_states + t.src].emplace_back(b.label(t.label), a.num_states + t.dst);
    u.a_initial = a.initial;
    u.b_initial = a.num_states + b.initial;
    return u;
}

// tau-reachability, reflexive.
std::vector<std::vector<bool>> tau_closure(const Union& u, std::string_view tau) {
    std::vector<std::vector<bool>> reach(u.n, std::vector<bool>(u.n, false));
    for (std::size_t s = 0; s < u.n; ++s) {
        std::vector<std::size_t> stack{s};
        reach[s][s] = true;
        while (!stack.empty()) {
            std::size_t x = stack.back();
            stack.pop_back();
            for (const auto& [l, y] : u.out[x])
                if (l == tau && !reach[s][y]) {
                    reach[s][y] = true;
                    stack.push_back(y);
                }
        }
    }
    return reach;
}

}  // namespace

bool naive_strong_bisimilar(const Lts& a, const Lts& b) {
    Union u = join(a, b);
    std::vector<std::vector<bool>> rel(u.n, std::vector<bool>(u.n, true));
    auto simulates = [&](std::size_t s, std::size_t t) {
        for (const auto& [l, s2] : u.out[s]) {
            bool found = false;
            for (const auto& [m, t2] : u.out[t])
                if (m == l && rel[s2][t2]) found = true;
            if (!found) return false;
        }
        return true;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t s = 0; s < u.n; ++s)
            for (std::size_t t = 0; t < u.n; ++t)
                if (rel[s][t] && !(simulates(s, t) && simulates(t, s))) {
                    rel[s][t] = rel[t][s] = false;
                    changed = true;
                }
    }
    return rel[u.a_initial][u.b_initial];
}

bool naive_branching_bisimilar(const Lts& a, const Lts& b, std::string_view tau) {
    Union u = join(a, b);
    auto reach = tau_closure(u, tau);
    std::vector<std::vector<bool>> rel(u.n, std::vector<bool>(u.n, true));
    // s -l-> s2 is matched from t when l is tau and s2 R t, or
    // t =tau*=> t1 -l-> t2 with s R t1 and s2 R t2.
    auto simulates = [&](std::size_t s, std::size_t t) {
        for (const auto& [l, s2] : u.out[s]) {
            if (l == tau && rel[s2][t]) continue;
            bool found = false;
            for (std::size_t t1 = 0; t1 < u.n && !found; ++t1) {
                if (!reach[t][t1] || !rel[s][t1]) continue;
                for (const auto& [m, t2] : u.out[t1])
                    if (m == l && rel[s2][t2]) found = true;
            }
            if (!found) return false;
        }
        return true;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t s = 0; s < u.n; ++s)
            for (std::size_t t = 0; t < u.n; ++t)
                if (rel[s][t] && !(simulates(s, t) && simulates(t, s))) {
                    rel[s][t] = rel[t][s] = false;
                    changed = true;
                }
    }
    return rel[u.a_initial][u.b_initial];
}

bool dfs_has_cycle(const std::vector<std::vector<std::size_t>>& adj) {
    enum Color { White, Grey, Black };
    std::vector<Color> color(adj.size(), White);
    struct Walker {
        const std::vector<std::vector<std::size_t>>& adj;
        std::vector<Color>& color;
        bool visit(std::size_t v) {
            color[v] = Grey;
            for (std::size_t w : adj[v]) {
                if (color[w] == Grey) return true;
                if (color[w] == White && visit(w)) return true;
            }
            color[v] = Black;
            return false;
        }
    } walker{adj, color};
    for (std::size_t v = 0; v < adj.size(); ++v)
        if (color[v] == White && walker.visit(v)) return true;
    return false;
}

Lts random_lts(std::mt19937& rng, std::size_t states, std::size_t transitions, bool with_tau) {
    Lts l;
    l.num_states = states;
    l.initial = 0;
    static const char* labels[] = {"a", "b", "tau"};
    std::uniform_int_distribution<std::size_t> pick_state(0, states - 1);
    std::uniform_int_distribution<int> pick_label(0, with_tau ? 2 : 1);
    for (std::size_t k = 0; k < transitions; ++k) {
        auto s = static_cast<std::uint32_t>(pick_state(rng));
        auto d = static_cast<std::uint32_t>(pick_state(rng));
        l.add(s, labels[pick_label(rng)], d);
    }
    l.canonicalize();
    return l;
}

}  // namespace wrebeca::testing
