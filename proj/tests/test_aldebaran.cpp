#include <catch_amalgamated.hpp>

#include <sstream>

#include "test_util.hpp"
#include "wrebeca/aldebaran.hpp"
#include "wrebeca/explorer.hpp"

using namespace wrebeca;
using namespace wrebeca::testing;

TEST_CASE("two-state example") {
    Lts l;
    l.num_states = 2;
    l.add(0, "initial", 1);
    l.canonicalize();
    CHECK(to_aldebaran(l) == "des (0, 1, 2)\n(0, \"initial\", 1)\n");
}

TEST_CASE("labels with quotes and backslashes survive a round trip") {
    Lts l;
    l.num_states = 2;
    l.add(0, "say(\"hi\")", 1);
    l.add(1, "a\\b", 0);
    l.canonicalize();
    std::string text = to_aldebaran(l);
    CHECK(text.find("\"say(\\\"hi\\\")\"") != std::string::npos);
    CHECK(same_lts(parse_aldebaran(text), l));
}

TEST_CASE("explored corpus LTSs round trip") {
    for (const char* name : {"flooding_ip.wrebeca", "flooding4.wrebeca", "broadcast_toy.wrebeca"}) {
        INFO(name);
        ExploreOptions o;
        auto r = explore(load_corpus(name), o);
        std::string text = to_aldebaran(r.lts);
        Lts back = parse_aldebaran(text);
        CHECK(same_lts(back, r.lts));
        CHECK(to_aldebaran(back) == text);
    }
    ExploreOptions o;
    o.mode = Mode::TauElim;
    o.label_mode = LabelMode::Merged;
    auto r = explore(load_corpus("aodv4.wrebeca", "t4r1"), o);
    CHECK(same_lts(parse_aldebaran(to_aldebaran(r.lts)), r.lts));
}

TEST_CASE("hand-written files with bare labels") {
    Lts l = parse_aldebaran("des (1, 2, 3)\n(0, a, 1)\n(1, \"tau\", 0)\n");
    CHECK(l.initial == 1);
    CHECK(l.num_states == 3);
    REQUIRE(l.transitions.size() == 2);
    CHECK(l.find_label("a").has_value());
    CHECK(l.find_label("tau").has_value());
}

TEST_CASE("malformed files report the line") {
    try {
        parse_aldebaran("des (0, 3, 2)\n(0, \"a\", 1)\n");
        FAIL("expected an error");
    } catch (const AldebaranError& e) {
        CHECK(std::string(e.what()).find("header declares 3 transitions") != std::string::npos);
    }
    try {
        parse_aldebaran("des (0, 1, 2)\n(0, \"a\", 5)\n");
        FAIL("expected an error");
    } catch (const AldebaranError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_aldebaran("(0, \"a\", 1)\n"), AldebaranError);
    CHECK_THROWS_AS(parse_aldebaran("des (0, 1, 2)\n(0, \"a, 1)\n"), AldebaranError);
}

TEST_CASE("trace format lists states and the labels between them") {
    Model m = load_corpus("flooding_ip.wrebeca");
    ExploreOptions o;
    auto r = explore(m, o);
    Trace t;
    t.states = {r.state(0)};
    const auto& first = r.lts.transitions.front();
    t.labels = {r.lts.label(first.label)};
    t.states.push_back(r.state(first.dst));
    std::ostringstream out;
    write_trace(t, m, out);
    std::string text = out.str();
    CHECK(text.rfind("state 0\n  node0: ([IP=0], <initial(true,0)>)\n", 0) == 0);
    CHECK(text.find("  topology: 1100/1111/0111/0111\n") != std::string::npos);
    CHECK(text.find("--[ " + t.labels[0] + " ]-->\nstate 1\n") != std::string::npos);

    std::ostringstream table;
    write_state_table(r, m, table);
    CHECK(table.str().find("state " + std::to_string(r.lts.num_states - 1)) != std::string::npos);
}
