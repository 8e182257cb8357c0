#include "doctest.h"
#include "orbitstar/clirun.hpp"
#include "orbitstar/lie.hpp"
#include "orbitstar/parse.hpp"
#include "orbitstar/pbw.hpp"
#include "orbitstar/weyl.hpp"

#include <sstream>

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = orbitstar::cli::run_command(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("check-algebra on the catalog") {
    for (const char* name : {"heisenberg", "su2", "su3"}) {
        Run r = run({"check-algebra", name});
        CHECK(r.code == 0);
        CHECK(r.out.find("jacobi\tPASS") != std::string::npos);
    }
    Run bad = run({"check-algebra", "no_such_algebra"});
    CHECK(bad.code == 2);
}

TEST_CASE("star-mul prints the symmetrizer product") {
    Run r = run({"star-mul", "--product", "S", "--algebra", "su2", "x", "y"});
    CHECK(r.code == 0);
    CHECK(r.out == "x*y + 1/2*h*z\n");
}

TEST_CASE("star-mul output round-trips through the parser") {
    using namespace orbitstar;
    LieAlgebra A = catalog_algebra("su2");
    PBWContext pbw(A);
    SymContext sym(pbw);
    Run r = run({"star-mul", "--product", "S", "--algebra", "su2", "x^2+3/2*z", "y*z"});
    REQUIRE(r.code == 0);
    Poly back = parse_expr(r.out, 3, A.var_names);
    Poly expect = sym.star_s(parse_expr("x^2+3/2*z", 3, A.var_names),
                             parse_expr("y*z", 3, A.var_names));
    CHECK(back == expect);
}

TEST_CASE("star-mul with the orbit product enforces --c0") {
    Run missing = run({"star-mul", "--product", "P", "--algebra", "su2", "x", "y"});
    CHECK(missing.code == 2);
    Run ok = run({"star-mul", "--product", "P", "--algebra", "su2", "--c0", "1", "x", "y"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("x*y") != std::string::npos);
}

TEST_CASE("orbit-reduce prints the normal form") {
    Run r = run({"orbit-reduce", "--algebra", "su2", "--c0", "1", "z^2"});
    CHECK(r.code == 0);
    CHECK(r.out == "-y^2 - x^2 + 1\n");
}

TEST_CASE("verify tangential reports the residue witness") {
    Run r = run({"verify", "--property", "tangential", "--product", "S", "--algebra",
                 "su2", "--c0", "1"});
    CHECK(r.code == 1);
    CHECK(r.out.find("tangential\tFAIL\t-1/3*h^2*x") != std::string::npos);

    Run ok = run({"verify", "--property", "tangential", "--product", "S", "--algebra",
                  "heisenberg", "--c0", "1"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("tangential\tPASS") != std::string::npos);
}

TEST_CASE("verify associativity and first-order suites pass") {
    for (const char* product : {"S", "K2"}) {
        Run r = run({"verify", "--property", "assoc", "--product", product, "--algebra",
                     "su2", "--cases", "10", "--degree", "2"});
        CHECK(r.code == 0);
        Run fo = run({"verify", "--property", "first-order", "--product", product,
                      "--algebra", "su2", "--cases", "10", "--degree", "2"});
        CHECK(fo.code == 0);
    }
}

TEST_CASE("verify equivalence and eta-generators") {
    Run eq = run({"verify", "--property", "equivalence", "--product", "P", "--algebra",
                  "su2", "--c0", "1", "--degree", "2", "--order", "2"});
    CHECK(eq.code == 0);
    Run self = run({"verify", "--property", "equivalence", "--product", "S",
                    "--algebra", "su2"});
    CHECK(self.code == 2);
    Run eta = run({"verify", "--property", "eta-generators", "--product", "P",
                   "--algebra", "su2", "--c0", "1", "--ch", "1+h^2/3"});
    CHECK(eta.code == 0);
    CHECK(eta.out.find("eta-generators\tPASS") != std::string::npos);
}

TEST_CASE("deterministic reports for identical argv and seed") {
    std::vector<std::string> argv = {"verify", "--property", "assoc", "--product", "S",
                                     "--algebra", "heisenberg", "--cases", "5",
                                     "--seed", "12345"};
    Run a = run(argv), b = run(argv);
    CHECK(a.out == b.out);
    CHECK(a.out.find("# seed 12345") != std::string::npos);
}

TEST_CASE("glue-verify over the builtin fixtures") {
    Run ok = run({"glue-verify", "--fixture", "three_chart_commuting", "--check",
                  "cocycle", "--points", "12"});
    CHECK(ok.code == 0);
    Run bad = run({"glue-verify", "--fixture", "three_chart_perturbed", "--check",
                   "cocycle", "--points", "12"});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("FAIL") != std::string::npos);
    Run leak = run({"glue-verify", "--fixture", "foliated_r4_leak", "--check",
                    "tangential", "--points", "6"});
    CHECK(leak.code == 1);
    Run missing = run({"glue-verify", "--fixture", "/no/such/fixture", "--check",
                       "assoc"});
    CHECK(missing.code == 2);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"star-mul", "--algebra", "su2", "x"}).code == 2);          // missing g
    CHECK(run({"star-mul", "--product", "Q", "--algebra", "su2", "x", "y"}).code == 2);
    CHECK(run({"star-mul", "--product", "S", "--algebra", "su2", "x^(-1)", "y"}).code == 2);
    CHECK(run({"verify", "--property", "nope", "--algebra", "su2"}).code == 2);
}
