#include <catch_amalgamated.hpp>

#include "test_util.hpp"
#include "wrebeca/lexer.hpp"
#include "wrebeca/parser.hpp"
#include "wrebeca/printer.hpp"

using namespace wrebeca;
using namespace wrebeca::testing;

namespace {

const char* kTiny = R"(
reactiveclass R
{
    statevars { int x; boolean[3] seen; int[2][2] grid; }
    msgsrv initial(int a)
    {
        x = a;
        for(int i=0;i<2;i++) { grid[i][i] = i+1; }
        while(x < 5) { x++; if(x == 4) break; }
    }
}
main
{
    R r0 (r1):(7);
    R r1 (r0):(8);
}
)";

}  // namespace

TEST_CASE("tokenizer drops both comment styles and keeps positions") {
    auto toks = tokenize("a // line\n/* block\n */ b <= 3");
    REQUIRE(toks.size() == 5);
    CHECK(toks[0].text == "a");
    CHECK(toks[1].text == "b");
    CHECK(toks[1].loc.line == 3);
    CHECK(toks[2].text == "<=");
    CHECK(toks[3].kind == TokenKind::Number);
    CHECK(toks[4].kind == TokenKind::End);
}

TEST_CASE("every corpus model parses and is well formed") {
    for (const char* name : {"flooding_ip.wrebeca", "flooding3.wrebeca", "flooding4.wrebeca", "flooding5.wrebeca",
                             "flooding6.wrebeca", "flooding4_dynamic.wrebeca", "flooding_two_topologies.wrebeca",
                             "broadcast_toy.wrebeca", "aodv4.wrebeca", "aodv4_loop.wrebeca", "aodv5.wrebeca"}) {
        INFO(name);
        CHECK_NOTHROW(load_corpus(name));
    }
}

TEST_CASE("main block yields rebec ids, known lists and the initial topology") {
    Model m = load_corpus("flooding_ip.wrebeca");
    REQUIRE(m.rebec_count() == 4);
    CHECK(m.rebec_index("node2") == 2);
    CHECK(m.rebec_index("nodeX") == -1);
    CHECK(m.rebecs[1].known == std::vector<std::string>{"node0", "node2", "node3"});
    CHECK(m.initial_topology.to_string() == "1100/1111/0111/0111");
    CHECK(m.has_constraint_block);
    CHECK(to_string(*m.constraint) == "and(con(node0,node1),!con(node0,node2))");
}

TEST_CASE("a model without a constraint block gets true") {
    Model m = load_corpus("broadcast_toy.wrebeca");
    CHECK_FALSE(m.has_constraint_block);
    CHECK(to_string(*m.constraint) == "true");
}

TEST_CASE("sized state variables and nested loops parse") {
    Model m = load_source(kTiny);
    const ReactiveClass& c = m.classes.at(0);
    REQUIRE(c.state_vars.size() == 3);
    CHECK(c.state_vars[1].type == TypeRef{BaseType::Bool, 1});
    CHECK(c.state_vars[2].sizes == std::vector<std::int32_t>{2, 2});
    CHECK(c.find_msgsrv("initial") != nullptr);
    CHECK(c.state_var_index("grid") == 2);
}

TEST_CASE("printing a model parses back to the same tree") {
    for (const char* name : {"flooding_ip.wrebeca", "aodv4.wrebeca", "broadcast_toy.wrebeca"}) {
        INFO(name);
        Model a = load_corpus(name);
        Model b = parse_model(print_model(a));
        CHECK(same_ast(a, b));
        CHECK(print_model(b) == print_model(a));
    }
    Model t = load_source(kTiny);
    CHECK(same_ast(t, parse_model(print_model(t))));
}

TEST_CASE("syntax errors carry a location") {
    try {
        parse_model("reactiveclass R { msgsrv initial() { x = ; } } main { R r0 ():(); }");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.loc().line == 1);
        CHECK(e.loc().column > 30);
    }
    CHECK_THROWS_AS(parse_model("reactiveclass R { msgsrv initial() {} } main { Q r0 ():(); }"), ParseError);
    CHECK_THROWS_AS(parse_model("reactiveclass R { msgsrv initial() {} } main { R r0 (zz):(); }"), ParseError);
    CHECK_THROWS_AS(parse_model("reactiveclass R { msgsrv initial() {} } main { R r0 ():(); R r0 ():(); }"),
                    ParseError);
}

TEST_CASE("constraints parse in the four forms and resolve names") {
    Model m = load_corpus("flooding4_dynamic.wrebeca");
    CHECK(to_string(*parse_constraint("true", m)) == "true");
    CHECK(to_string(*parse_constraint("con(node0, node1)", m)) == "con(node0,node1)");
    CHECK(to_string(*parse_constraint("!con(node0,node2)", m)) == "!con(node0,node2)");
    CHECK(to_string(*parse_constraint("and(con(node0,node1),!con(node2,node3))", m)) ==
          "and(con(node0,node1),!con(node2,node3))");
    CHECK_THROWS_AS(parse_constraint("con(node0,node9)", m), ParseError);
    CHECK_THROWS_AS(parse_constraint("or(true,true)", m), ParseError);
}

TEST_CASE("with_constraint replaces only the constraint") {
    Model m = load_corpus("flooding4_dynamic.wrebeca");
    Model n = with_constraint(m, parse_constraint("con(node0,node1)", m));
    CHECK(to_string(*n.constraint) == "con(node0,node1)");
    CHECK(to_string(*m.constraint) == "true");
    CHECK(n.rebec_count() == m.rebec_count());
}

TEST_CASE("invariant expressions accept qualified references") {
    ExprPtr e = parse_expression("node1.dsn[0] <= 3 && !(node2.sn == 1)");
    CHECK(print_expr(*e).find("node1.dsn[0]") != std::string::npos);
    CallSpec c = parse_call("loop_freedom(nhop, node0, node2)");
    CHECK(c.name == "loop_freedom");
    CHECK(c.args.size() == 3);
}
