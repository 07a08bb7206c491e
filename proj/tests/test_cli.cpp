#include <doctest.h>

#include "manifest.hpp"
#include "runner.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace msch::cli;

namespace {

const char* kSample = R"(
monoid M { gens: a b e; rel: a b = a b e; rel: e e = e; }   # ab = abe, e^2 = e
monoid T { gens: t; }
monoid Tinv { gens: t; inv: t; }
scheme SpecM = spec(M);
scheme P1 = P(1)
scheme Q = product(P1, P1);
scheme L = glue {
  chart A = spec(T);
  chart B = spec(T);
  overlap A B = spec(Tinv) via B: t -> t^-1, A: t -> t;
}
bundle V on P1 rank 2 { transition 0 1 = (x1/x0, x1/x0^-1) (1 0); }
compute spec(M)
compute pic(P1);
compute check(s-smooth, SpecM);
compute cohomology(Q, 1);
compute pic(L);
compute decompose(V);
compute check(cancellative, M);
)";

std::string run_text(const std::string& src, Options o = {}) { return run(parse(src), o).text; }

std::string section(const std::string& report, const std::string& task) {
    auto at = report.find("== " + task + "\n");
    REQUIRE(at != std::string::npos);
    at = report.find('\n', at) + 1;
    auto end = report.find("\n== ", at);
    return report.substr(at, end == std::string::npos ? std::string::npos : end - at);
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("parsing the sample") {
    Manifest m = parse(kSample);
    REQUIRE(m.monoid("M"));
    CHECK(m.monoid("M")->presentation.to_string() == "<a, b, e | a b = a b e, e^2 = e>");
    CHECK(m.monoid("T")->presentation.relations().empty());
    CHECK(m.monoid("Tinv")->presentation.inverted(0));
    CHECK(m.scheme("P1")->dimension == 1);
    const SchemeDef* l = m.scheme("L");
    REQUIRE(l);
    REQUIRE(l->overlaps.size() == 1);
    CHECK(l->overlaps[0].from_first.images[0] == msch::Exponents{1});
    CHECK(l->overlaps[0].from_second.images[0] == msch::Exponents{-1});
    CHECK(m.bundle("V")->transitions.at({0, 1}).perm == std::vector<std::size_t>{1, 0});
    CHECK(m.tasks.size() == 7);
    CHECK(m.tasks[2].to_string() == "check(s-smooth, SpecM)");

    Manifest one = parse("scheme X = P(2); compute pic(X);");
    CHECK(one.tasks.size() == 1);
}

TEST_CASE("render and parse round trip") {
    Manifest m = parse(kSample);
    std::string once = render(m);
    Manifest again = parse(once);
    CHECK(again == m);
    CHECK(render(again) == once);
    Manifest demo = parse(slurp(MSCH_SAMPLE_DIR "/demo.msch"));
    CHECK(parse(render(demo)) == demo);
}

TEST_CASE("syntax and name errors carry positions") {
    auto error_at = [](const std::string& src) -> std::pair<std::size_t, std::size_t> {
        try {
            parse(src);
        } catch (const ParseError& e) {
            return {e.line(), e.column()};
        }
        return {0, 0};
    };
    CHECK(error_at("monoid M { gens: a; rel: a = b; }") == std::pair<std::size_t, std::size_t>{1, 30});
    CHECK(error_at("scheme X = spec(N);") == std::pair<std::size_t, std::size_t>{1, 17});
    CHECK(error_at("monoid M { gens: a; }\nmonoid M { gens: b; }") == std::pair<std::size_t, std::size_t>{2, 8});
    CHECK(error_at("scheme X = P(1);\ncompute frobnicate(X);") == std::pair<std::size_t, std::size_t>{2, 9});
    CHECK(error_at("scheme X = P(1);\ncompute check(flat, X);") == std::pair<std::size_t, std::size_t>{2, 15});
    CHECK(error_at("monoid M { gens: a; } $") == std::pair<std::size_t, std::size_t>{1, 23});
    CHECK(error_at("monoid M { gens: a; rel: a^-1 = 1; }").first == 1);
    CHECK(error_at("scheme Y = product(X, X);").first == 1);
}

TEST_CASE("reports for the worked examples") {
    std::string r = run_text(kSample);
    std::string sp = section(r, "spec(M)");
    CHECK(sp.rfind("7 points\n", 0) == 0);
    CHECK(sp.find("(a) < (a,e)") != std::string::npos);
    CHECK(section(r, "pic(P1)") == "Z^1\n");
    CHECK(section(r, "check(s-smooth, SpecM)") == "true; collection: Z at (a), Z at (b)\n");
    CHECK(section(r, "cohomology(Q, 1)") == "H^1: Z^2\n");
    CHECK(section(r, "pic(L)") == "Z^1\n");
    CHECK(section(r, "decompose(V)") == "classes: (-1), (1) in Z^1\ncertificate: verified\n");
    CHECK(section(r, "check(cancellative, M)").find("(bound 8)") != std::string::npos);
}

TEST_CASE("reports are deterministic") {
    Manifest m = parse(slurp(MSCH_SAMPLE_DIR "/demo.msch"));
    Options seq, par, js;
    par.parallel = true;
    js.json = true;
    Report a = run(m, seq), b = run(m, seq), c = run(m, par);
    CHECK(a.text == b.text);
    CHECK(a.text == c.text);
    // identical apart from the recorded parallel flag
    CHECK(a.json.substr(a.json.find("\"tasks\"")) == c.json.substr(c.json.find("\"tasks\"")));
    CHECK(a.exit_code == 0);
    CHECK(run(m, js).json.find("\"status\": \"ok\"") != std::string::npos);
}

TEST_CASE("task errors give exit code 1") {
    Report r = run(parse("monoid M { gens: a b e; rel: a b = a b e; rel: e^2 = e; }\ncompute cartier(M);"), {});
    CHECK(r.exit_code == 1);
    CHECK(r.text.find("error: RequiresCancellative") != std::string::npos);
    CHECK(r.text.find("bound 8") != std::string::npos);
    Options o;
    o.bound = 5;
    CHECK(run(parse("monoid N { gens: a b; rel: a b = a; }\ncompute check(cancellative, N);"), o)
              .text.find("(bound 5)") != std::string::npos);
}

TEST_CASE("oracle flag") {
    Options o;
    o.check_oracles = true;
    std::string r = run_text("scheme X = P(2); compute pic(X);", o);
    CHECK(r.find("oracle: cochain models agree") != std::string::npos);
}

TEST_CASE("binary exit codes") {
    std::string bin = MSCH_BINARY;
    std::string sample = MSCH_SAMPLE_DIR "/demo.msch";
    auto code = [](const std::string& cmd) {
        int s = std::system((cmd + " > /dev/null 2>&1").c_str());
        return WEXITSTATUS(s);
    };
    CHECK(code(bin + " " + sample) == 0);
    CHECK(code(bin + " " + sample + " --json --parallel") == 0);
    CHECK(code(bin + " /nonexistent/file") == 2);
    CHECK(code(bin + " --frobnicate " + sample) == 2);
    CHECK(code("echo 'compute pic(X);' | " + bin) == 2);
    CHECK(code("echo 'monoid M { gens: a b e; rel: a b = a b e; rel: e^2 = e; } compute cartier(M);' | " + bin) == 1);
}
