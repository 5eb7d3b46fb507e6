#include "commands.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wrebeca/aldebaran.hpp"
#include "wrebeca/equivalence.hpp"
#include "wrebeca/explorer.hpp"
#include "wrebeca/invariants.hpp"
#include "wrebeca/parser.hpp"
#include "wrebeca/well_formed.hpp"

namespace wrebeca::cli {

namespace fs = std::filesystem;

namespace {

struct Failure {
    Exit code;
    std::string message;
};

struct RunConfig {
    std::string model_path;
    std::string mode = "full";
    std::string label_mode = "enumerated";
    std::string constraint;
    std::string constraint_file;
    std::size_t max_states = ExploreLimits{}.max_states;
    std::size_t max_transitions = ExploreLimits{}.max_transitions;
    std::size_t max_steps = 100'000;
    std::size_t workers = 1;
    std::vector<std::string> invariants;
    std::vector<std::string> monitors;
    std::string out;
    std::string states_out;
    std::string trace_out;
    bool force_counter = false;
    bool rebec_prefix = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{kFile, "cannot read " + path};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Failure{kFile, "cannot write " + path};
    return out;
}

// A bare name such as `t4r1` refers to constraints/<name>.constraint next
// to the model.
std::string resolve_constraint_file(const std::string& spec, const std::string& model_path) {
    if (fs::exists(spec)) return spec;
    fs::path sibling = fs::path(model_path).parent_path() / "constraints" / (spec + ".constraint");
    if (fs::exists(sibling)) return sibling.string();
    throw Failure{kFile, "constraint file not found: " + spec};
}

Model load_model(const RunConfig& cfg) {
    std::string source = read_file(cfg.model_path);
    Model model;
    try {
        model = parse_model(source);
        std::string text = cfg.constraint;
        if (!cfg.constraint_file.empty()) text = read_file(resolve_constraint_file(cfg.constraint_file, cfg.model_path));
        if (!text.empty()) model = with_constraint(model, parse_constraint(text, model));
    } catch (const ParseError& e) {
        throw Failure{kParse, cfg.model_path + ":" + e.what()};
    }
    auto violations = check_well_formed(model);
    if (!violations.empty()) {
        std::string msg;
        for (const auto& v : violations) msg += cfg.model_path + ":" + to_string(v) + "\n";
        msg.pop_back();
        throw Failure{kIllFormed, msg};
    }
    return model;
}

ExploreOptions explore_options(const RunConfig& cfg, const Model& model) {
    ExploreOptions opt;
    auto mode = parse_mode(cfg.mode);
    if (!mode) throw Failure{kUsage, "unknown mode '" + cfg.mode + "' (full, counter, tau-elim)"};
    auto label_mode = parse_label_mode(cfg.label_mode);
    if (!label_mode) throw Failure{kUsage, "unknown label mode '" + cfg.label_mode + "' (enumerated, merged)"};
    opt.mode = *mode;
    opt.label_mode = *label_mode;
    opt.limits = {cfg.max_states, cfg.max_transitions};
    opt.max_steps = cfg.max_steps;
    opt.workers = cfg.workers;
    opt.force_counter = cfg.force_counter;
    opt.rebec_prefix = cfg.rebec_prefix;
    opt.record_transitions = !cfg.out.empty();
    try {
        for (const auto& text : cfg.invariants) install(parse_invariant(text, model), model, opt);
    } catch (const InvariantError& e) {
        throw Failure{kUsage, std::string("invariant: ") + e.what()};
    }
    return opt;
}

void print_stats(const ExploreStats& st, const ExploreOptions& opt, std::ostream& out) {
    out << "mode: " << to_string(st.mode) << "\n";
    if (st.mode == Mode::TauElim) out << "label-mode: " << to_string(opt.label_mode) << "\n";
    out << "topologies: " << st.topologies << "\n"
        << "states: " << st.states << "\n"
        << "transitions: " << st.transitions << "\n"
        << "workers: " << st.workers << "\n";
    char time[32];
    std::snprintf(time, sizeof time, "%.3f", st.seconds);
    out << "time: " << time << "s\n";
}

int explore_or_check(const RunConfig& cfg, bool checking) {
    Model model = load_model(cfg);
    ExploreOptions opt = explore_options(cfg, model);
    if (checking && opt.state_checks.empty() && opt.step_checks.empty())
        throw Failure{kUsage, "check needs at least one --invariant"};
    std::vector<Monitor> monitors;
    try {
        for (const auto& text : cfg.monitors) monitors.push_back(parse_monitor(text, model));
    } catch (const InvariantError& e) {
        throw Failure{kUsage, std::string("monitor: ") + e.what()};
    }

    ExploreResult result;
    try {
        result = explore(model, opt);
    } catch (const PreconditionError& e) {
        throw Failure{kPrecondition, std::string("refused: ") + e.what()};
    } catch (const LimitExceeded& e) {
        std::cerr << "limit exceeded: " << e.what() << "\n" << format_stats(e.partial()) << "\n";
        return kLimit;
    } catch (const ModelRuntimeError& e) {
        std::cerr << "model error: " << e.what() << "\n";
        if (!cfg.trace_out.empty()) {
            auto out = open_out(cfg.trace_out);
            write_trace(e.trace(), model, out);
        } else {
            write_trace(e.trace(), model, std::cerr);
        }
        return kModelRuntime;
    }

    print_stats(result.stats, opt, std::cout);
    if (!cfg.out.empty()) {
        Lts lts = monitors.empty() ? std::move(result.lts) : add_monitor_selfloops(result, model, monitors);
        if (!monitors.empty()) std::cout << "transitions-with-monitors: " << lts.transitions.size() << "\n";
        auto out = open_out(cfg.out);
        write_aldebaran(lts, out);
        result.lts.num_states = lts.num_states;
    }
    if (!cfg.states_out.empty()) {
        auto out = open_out(cfg.states_out);
        write_state_table(result, model, out);
    }
    if (result.violation) {
        std::cout << "violation: " << result.violation->invariant << " (trace of "
                  << result.violation->trace.labels.size() << " steps)\n";
        if (!cfg.trace_out.empty()) {
            auto out = open_out(cfg.trace_out);
            write_trace(result.violation->trace, model, out);
            std::cout << "trace: " << cfg.trace_out << "\n";
        } else {
            write_trace(result.violation->trace, model, std::cout);
        }
        return kViolation;
    }
    if (checking) std::cout << "invariants hold\n";
    return kOk;
}

int parse_only(const std::string& path) {
    RunConfig cfg;
    cfg.model_path = path;
    Model model = load_model(cfg);
    std::cout << "classes: " << model.classes.size() << "\n"
              << "rebecs: " << model.rebec_count() << "\n"
              << "constraint: " << to_string(*model.constraint) << "\n"
              << "initial topology: " << model.initial_topology.to_string() << "\n"
              << "well-formed: yes\n";
    return kOk;
}

int compare(const std::string& a_path, const std::string& b_path, const std::string& relation,
            const std::string& tau) {
    Relation rel;
    if (relation == "strong")
        rel = Relation::Strong;
    else if (relation == "branching")
        rel = Relation::Branching;
    else
        throw Failure{kUsage, "unknown relation '" + relation + "' (strong, branching)"};
    auto load = [](const std::string& path) {
        try {
            return parse_aldebaran(read_file(path));
        } catch (const AldebaranError& e) {
            throw Failure{kParse, path + ":" + e.what()};
        }
    };
    Lts a = load(a_path);
    Lts b = load(b_path);
    EquivalenceResult r = equivalent(a, b, rel, tau);
    std::cout << relation << " bisimilar: " << (r.equivalent ? "yes" : "no") << "\n";
    if (!r.equivalent && !r.distinguishing.empty()) {
        std::cout << "distinguishing:";
        for (const auto& l : r.distinguishing) std::cout << " " << l;
        std::cout << "\n";
    }
    return r.equivalent ? kOk : kViolation;
}

void add_run_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("model", cfg.model_path, "model file (.wrebeca)")->required();
    cmd->add_option("--mode", cfg.mode, "full | counter | tau-elim")->capture_default_str();
    cmd->add_option("--label-mode", cfg.label_mode, "tau-elim labels: enumerated | merged")->capture_default_str();
    cmd->add_option("--constraint", cfg.constraint, "network constraint replacing the model's");
    cmd->add_option("--constraint-file", cfg.constraint_file,
                    "file holding a constraint, or a name under constraints/ next to the model");
    cmd->add_option("--max-states", cfg.max_states)->capture_default_str();
    cmd->add_option("--max-transitions", cfg.max_transitions)->capture_default_str();
    cmd->add_option("--max-steps", cfg.max_steps, "statement budget per handler")->capture_default_str();
    cmd->add_option("--workers", cfg.workers, "worker threads, 0 = all cores")->capture_default_str();
    cmd->add_option("--invariant", cfg.invariants,
                    "loop_freedom(nhop,src,dst[,route_state]) | step_monotone(var[,rebec]) | predicate(expr)")
        ->allow_extra_args(false);
    cmd->add_option("--monitor", cfg.monitors, "name(expr,...) self-loop added to every state")->allow_extra_args(false);
    cmd->add_option("--out", cfg.out, "write the LTS in Aldebaran format");
    cmd->add_option("--states-out", cfg.states_out, "write the state table sidecar");
    cmd->add_option("--trace-out", cfg.trace_out, "write the counterexample trace");
    cmd->add_flag("--force-counter", cfg.force_counter, "apply counter abstraction to a dynamic model (unsound)");
    cmd->add_flag("--rebec-prefix", cfg.rebec_prefix, "prefix actions with the handling rebec, r<i>.");
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Explicit-state explorer for wireless actor models"};
    app.require_subcommand(1);

    std::string parse_path;
    auto* parse_cmd = app.add_subcommand("parse", "parse and check a model");
    parse_cmd->add_option("model", parse_path)->required();

    RunConfig explore_cfg;
    auto* explore_cmd = app.add_subcommand("explore", "generate the state space");
    RunConfig check_cfg;
    auto* check_cmd = app.add_subcommand("check", "check invariants on the fly");
    for (auto [cmd, cfg] : {std::pair{explore_cmd, &explore_cfg}, std::pair{check_cmd, &check_cfg}}) {
        add_run_options(cmd, *cfg);
        cmd->get_option("--constraint")->excludes(cmd->get_option("--constraint-file"));
    }

    std::string a_path, b_path, relation = "strong", tau = std::string(kTauLabel);
    auto* compare_cmd = app.add_subcommand("compare", "decide bisimilarity of two Aldebaran files");
    compare_cmd->add_option("a", a_path)->required();
    compare_cmd->add_option("b", b_path)->required();
    compare_cmd->add_option("--relation", relation, "strong | branching")->capture_default_str();
    compare_cmd->add_option("--tau", tau, "label of internal steps")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*parse_cmd) return parse_only(parse_path);
        if (*explore_cmd) return explore_or_check(explore_cfg, false);
        if (*check_cmd) return explore_or_check(check_cfg, true);
        return compare(a_path, b_path, relation, tau);
    } catch (const Failure& f) {
        std::cerr << f.message << "\n";
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kModelRuntime;
    }
}

}  // namespace wrebeca::cli
