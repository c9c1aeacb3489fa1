#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <qdiff/commands.hpp>
#include <qdiff/error.hpp>
#include <qdiff/parse.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qdiff;
using namespace qdiff::testing;

namespace
{

std::vector<std::string> sample_sources()
{
    std::vector<std::filesystem::path> paths;
    for (const auto &entry : std::filesystem::directory_iterator(QDIFF_SAMPLES_DIR)) {
        if (entry.path().extension() == ".op") {
            paths.push_back(entry.path());
        }
    }
    std::sort(paths.begin(), paths.end());
    std::vector<std::string> out;
    for (const auto &p : paths) {
        std::ifstream in(p);
        std::stringstream b;
        b << in.rdbuf();
        out.push_back(b.str());
    }
    return out;
}

template <class E>
E catch_as(const std::string &text, const ContextPtr &ctx)
{
    try {
        parse_operator(text, ctx);
    } catch (const E &e) {
        return e;
    }
    FAIL("no exception for " << text);
    throw;
}

} // namespace

TEST_CASE("parse: examples")
{
    const ContextPtr ctx = make_context(2.0);
    const OreOperator S = OreOperator::sigma(ctx);
    const OreOperator one = OreOperator::scalar(LaurentSeries::constant(ctx, 1.0));
    CHECK(max_abs_diff(parse_operator("S - 1", ctx), S - one, 40) == 0.0);

    const OreOperator running = parse_operator("q*z*S^2 - (1+z)*S + 1", ctx);
    const OreOperator expected = poly_operator(ctx, {{2, {{1, 2.0}}}, {1, {{0, -1.0}, {1, -1.0}}}, {0, {{0, 1.0}}}});
    CHECK(max_abs_diff(running, expected, 40) < 1e-15);

    const OreOperator L = parse_operator("S^-1 + z", ctx);
    CHECK(L.min_deg() == -1);
    CHECK(L.max_deg() == 0);

    // juxtaposition and imaginary literals
    const OreOperator J = parse_operator("2i z S", ctx);
    CHECK(J.min_deg() == 1);
    CHECK(J.coeff(1)[1] == cplx(0.0, 2.0));

    CHECK(parse_complex("3+0.1i") == cplx(3.0, 0.1));
    CHECK(parse_complex("-(2)") == cplx(-2.0));
}

TEST_CASE("parse: errors carry positions")
{
    const ContextPtr ctx = make_context(2.0);
    const SyntaxError bad = catch_as<SyntaxError>("S - (1", ctx);
    CHECK(bad.kind() == ErrorKind::SyntaxError);
    CHECK(bad.line() == 1);
    CHECK(bad.column() == 7);

    const SyntaxError unknown = catch_as<SyntaxError>("S\n - x", ctx);
    CHECK(unknown.kind() == ErrorKind::UnknownSymbol);
    CHECK(unknown.line() == 2);
    CHECK(unknown.column() == 4);

    CHECK_THROWS_AS(parse_operator("", ctx), SyntaxError);
    CHECK_THROWS_AS(parse_operator("S +", ctx), SyntaxError);
    CHECK_THROWS_AS(parse_complex("z"), Error);
}

TEST_CASE("render and parse round-trip")
{
    Rng rng(81);
    for (int t = 0; t < 30; ++t) {
        const ContextPtr ctx = make_context(rng.complex(1.3, 3.0));
        const OreOperator P = ore_shift(random_operator(rng, ctx, rng.integer(0, 3), 3), rng.integer(-2, 2));
        const std::string text = render_operator(P);
        const OreOperator P2 = parse_operator(text, ctx);
        CHECK(max_abs_diff(P, P2, ctx->trunc_order) == 0.0);
        CHECK(render_operator(P2) == text);
    }
    const ContextPtr ctx = make_context(2.0);
    for (const std::string &src : sample_sources()) {
        const OreOperator P = parse_operator(src, ctx);
        CHECK(max_abs_diff(P, parse_operator(render_operator(P), ctx), 40) == 0.0);
    }
}

TEST_CASE("run_command: newton, index, factor")
{
    const CommandOptions opts;
    const nlohmann::json n = run_command("newton", "q*z*S^2 - (1+z)*S + 1", opts);
    CHECK(n["command"] == "newton");
    CHECK(n["result"]["segments"] == nlohmann::json::parse("[[0, 1], [1, 1]]"));

    const nlohmann::json i = run_command("index", "S - 1", opts);
    CHECK(i["result"]["dim_ker"] == 1);
    CHECK(i["result"]["dim_coker"] == 1);
    CHECK(i["result"]["index"] == 0);

    const nlohmann::json f = run_command("factor", "S - 1", opts);
    const nlohmann::json &factors = f["result"]["factors"];
    REQUIRE(factors.size() == 1);
    CHECK(factors[0]["mu"] == 0);
    CHECK(factors[0]["c"] == nlohmann::json::parse("[1.0, 0.0]"));

    CHECK_THROWS_AS(run_command("frobnicate", "S - 1", opts), Error);
}

TEST_CASE("dump is stable across runs")
{
    CommandOptions opts;
    opts.q = cplx(3.0, 0.1);
    for (const std::string &src : sample_sources()) {
        for (const std::string cmd : {"newton", "factor", "solve", "index", "eval"}) {
            const std::string a = dump(run_command(cmd, src, opts));
            const std::string b = dump(run_command(cmd, src, opts));
            CHECK(a == b);
            CHECK(a.back() == '\n');
        }
    }
}

TEST_CASE("error_json")
{
    const ContextPtr ctx = make_context(2.0);
    try {
        parse_operator("S - x", ctx);
        FAIL("expected an error");
    } catch (const Error &e) {
        const nlohmann::json j = error_json(e);
        CHECK(j["error"]["kind"] == "UnknownSymbol");
        CHECK(j["error"]["line"] == 1);
        CHECK(j["error"]["column"] == 5);
        CHECK(j["error"]["message"].is_string());
    }
    const nlohmann::json plain = error_json(Error(ErrorKind::ZeroOperator, "zero"));
    CHECK(plain["error"]["kind"] == "ZeroOperator");
    CHECK_FALSE(plain["error"].contains("line"));
}
