#include <catch_amalgamated.hpp>

#include <string>

#include "test_util.hpp"
#include "wrebeca/parser.hpp"
#include "wrebeca/well_formed.hpp"

using namespace wrebeca;

namespace {

std::vector<Violation> check(const std::string& classes, const std::string& main_block) {
    return check_well_formed(parse_model(classes + "\nmain {\n" + main_block + "\n}\n"));
}

bool mentions(const std::vector<Violation>& vs, const std::string& needle) {
    for (const auto& v : vs)
        if (v.message.find(needle) != std::string::npos) return true;
    return false;
}

const std::string kPair = "R a (b):(); R b (a):();";

}  // namespace

TEST_CASE("well-formed minimal model has no violations") {
    auto vs = check("reactiveclass R { msgsrv initial() { } }", kPair);
    CHECK(vs.empty());
}

TEST_CASE("a class needs an initial message server") {
    auto vs = check("reactiveclass R { msgsrv go() { } }", kPair);
    CHECK(mentions(vs, "no initial message server"));
}

TEST_CASE("duplicate names are rejected") {
    CHECK(mentions(check("reactiveclass R { msgsrv initial() {} msgsrv initial() {} }", kPair),
                   "duplicate message server"));
    CHECK(mentions(check("reactiveclass R { statevars { int x; int x; } msgsrv initial() {} }", kPair),
                   "duplicate state variable"));
    CHECK(mentions(check("reactiveclass R { msgsrv initial() {} } reactiveclass R { msgsrv initial() {} }", kPair),
                   "duplicate reactive class"));
}

TEST_CASE("variables are declared before use") {
    auto vs = check("reactiveclass R { msgsrv initial() { y = 1; } }", kPair);
    REQUIRE(mentions(vs, "undeclared variable 'y'"));
    CHECK(vs.front().loc.line == 1);
}

TEST_CASE("a local may not redeclare a state variable") {
    auto vs = check("reactiveclass R { statevars { int x; } msgsrv initial() { int x = 2; } }", kPair);
    CHECK(mentions(vs, "redeclares a state variable"));
}

TEST_CASE("sends must match a message server signature") {
    CHECK(mentions(check("reactiveclass R { msgsrv initial() { go(); } }", kPair), "unknown message server"));
    CHECK(mentions(check("reactiveclass R { msgsrv initial() { go(1, 2); } msgsrv go(int a) {} }", kPair),
                   "expects"));
    CHECK(check("reactiveclass R { msgsrv initial() { go(1); } msgsrv go(int a) {} }", kPair).empty());
}

TEST_CASE("break only inside loops") {
    CHECK(mentions(check("reactiveclass R { msgsrv initial() { break; } }", kPair), "break outside of a loop"));
    CHECK(check("reactiveclass R { msgsrv initial() { while(true) { break; } } }", kPair).empty());
}

TEST_CASE("conditions and operands are type checked") {
    CHECK(mentions(check("reactiveclass R { statevars { int x; } msgsrv initial() { if(x) {} } }", kPair),
                   "condition must be boolean"));
    CHECK(mentions(check("reactiveclass R { statevars { boolean b; } msgsrv initial() { b = 1; } }", kPair),
                   "cannot assign"));
}

TEST_CASE("multicast receivers must be a boolean array") {
    CHECK(mentions(check("reactiveclass R { statevars { int x; } msgsrv initial() { multicast(x, initial()); } }",
                         kPair),
                   "multicast receivers must be a boolean array"));
}

TEST_CASE("known-rebec lists must be symmetric") {
    auto vs = check("reactiveclass R { msgsrv initial() {} }", "R a (b):(); R b ():();");
    CHECK(mentions(vs, "asymmetric initial topology"));
}

TEST_CASE("the initial topology must satisfy the constraint") {
    auto vs = check("reactiveclass R { msgsrv initial() {} }",
                    "R a (b):(); R b (a):(); constraint { !con(a,b) }");
    CHECK(mentions(vs, "initial topology violates constraint"));
}

TEST_CASE("rebec arguments are constants of the initial signature") {
    CHECK(mentions(check("reactiveclass R { msgsrv initial(int v) {} }", "R a (b):(true); R b (a):(1);"),
                   "argument"));
    CHECK(check("reactiveclass R { msgsrv initial(int v) {} }", "R a (b):(1); R b (a):(2);").empty());
}

TEST_CASE("violations print with their location") {
    auto vs = check("reactiveclass R { msgsrv initial() { break; } }", kPair);
    REQUIRE_FALSE(vs.empty());
    CHECK(to_string(vs.front()).rfind("1:", 0) == 0);
}
