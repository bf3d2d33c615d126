// Integration tests driving the built CLI binary (path passed as argv[1]).
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <fstream>
#include <string>

namespace {

std::string cli_path;

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    RunResult r;
    std::string cmd = cli_path + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) { FAIL("popen failed"); return r; }
    std::array<char, 4096> buf;
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), got);
    int rc = pclose(p);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

double second_field_of_row(const std::string& out, const std::string& key) {
    std::istringstream in(out);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string first;
        ls >> first;
        if (first == key) {
            double v;
            ls >> v;
            return v;
        }
    }
    FAIL("row not found: " << key);
    return 0.0;
}

} // namespace

TEST_CASE("eval: exponential density at the origin") {
    auto r = run("eval pdf --alpha 1 --beta 1 --a 1 --b 1 --x 0");
    CHECK(r.status == 0);
    CHECK(second_field_of_row(r.out, "0") == doctest::Approx(1.0));
}

TEST_CASE("eval: constant hazard a*alpha") {
    auto r = run("eval hrf --beta 1 --b 1 --alpha 2 --a 3 --x 7");
    CHECK(r.status == 0);
    CHECK(second_field_of_row(r.out, "7") == doctest::Approx(6.0));
}

TEST_CASE("eval: quantile/cdf round trip at the published parameters") {
    auto q = run("eval quantile --alpha 1.8e-3 --beta 2.83e-1 --a 1.75e-3 --b 47.066 --p 0.5");
    CHECK(q.status == 0);
    double med = second_field_of_row(q.out, "0.5");
    auto c = run("eval cdf --alpha 1.8e-3 --beta 2.83e-1 --a 1.75e-3 --b 47.066 --x " +
                 std::to_string(med));
    CHECK(c.status == 0);
    std::istringstream ls(c.out);
    std::string header, x, val;
    std::getline(ls, header);
    ls >> x >> val;
    CHECK(std::stod(val) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("eval: missing points is a usage error") {
    CHECK(run("eval pdf --alpha 1 --beta 1 --a 1 --b 1").status == 1);
}

TEST_CASE("analyze moments on the unit exponential") {
    auto r = run("analyze moments --alpha 1 --beta 1 --a 1 --b 1 --r 2 --engine series");
    CHECK(r.status == 0);
    CHECK(second_field_of_row(r.out, "mu'_1") == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(second_field_of_row(r.out, "mu'_2") == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("analyze ttt endpoints on the fixture") {
    auto r = run("analyze ttt --data aarset");
    CHECK(r.status == 0);
    std::istringstream in(r.out);
    std::string line, last;
    int rows = -1; // header
    while (std::getline(in, line)) {
        if (!line.empty()) { last = line; ++rows; }
    }
    CHECK(rows == 50);
    std::istringstream ls(last);
    double p, g;
    ls >> p >> g;
    CHECK(p == doctest::Approx(1.0));
    CHECK(g == doctest::Approx(1.0));
}

TEST_CASE("fit on a file with comments; bad files rejected with line info") {
    {
        std::ofstream f("/tmp/egnh_cli_data.txt");
        f << "# synthetic exponential-ish sample\n";
        f << "1.0\n2.5\n0.7\n3.1\n1.9\n0.4\n2.2 # trailing comment\n1.4\n";
    }
    auto ok = run("fit --file /tmp/egnh_cli_data.txt --model exponential");
    CHECK(ok.status == 0);
    CHECK(contains(ok.out, "exponential"));

    {
        std::ofstream f("/tmp/egnh_cli_bad.txt");
        f << "1.0\n-3\n";
    }
    CHECK(run("fit --file /tmp/egnh_cli_bad.txt --model exponential").status == 2);

    {
        std::ofstream f("/tmp/egnh_cli_empty.txt");
        f << "# nothing here\n";
    }
    CHECK(run("fit --file /tmp/egnh_cli_empty.txt --model exponential").status == 2);

    CHECK(run("fit --file /tmp/egnh_cli_data.txt --data aarset").status == 1);
}

TEST_CASE("fit weibull on the fixture reproduces its own MLE") {
    auto r = run("fit --data aarset --model weibull");
    CHECK(r.status == 0);
    std::istringstream in(r.out);
    std::string line;
    double shape = 0.0, scale = 0.0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string model, quantity;
        double value;
        if (ls >> model >> quantity >> value) {
            if (model == "weibull" && quantity == "shape") shape = value;
            if (model == "weibull" && quantity == "scale") scale = value;
        }
    }
    // the likelihood equations' unique root on this dataset
    CHECK(shape == doctest::Approx(0.949).epsilon(1e-2));
    CHECK(scale == doctest::Approx(44.91).epsilon(1e-2));
}

TEST_CASE("compare ranking on the strand-rupture data puts the full model first") {
    auto r = run("fit --data kevlar --compare");
    CHECK(r.status == 0);
    // first data row of the ranked table belongs to the best-W* model
    std::istringstream in(r.out);
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    CHECK(first.substr(0, 4) == "egnh");
}

TEST_CASE("simulate: smoke run and byte-identical determinism") {
    std::string args = "simulate --sizes 10 --reps 2 --seed 1 --threads 2 --theta0 2 1.5 0.5 2";
    auto r1 = run(args);
    auto r2 = run(args);
    CHECK(r1.status == 0);
    CHECK(r1.out == r2.out);
    CHECK(contains(r1.out, "alpha"));
}

TEST_CASE("json output parses and carries the schema header") {
    auto r = run("--format json eval pdf --alpha 1 --beta 1 --a 1 --b 1 --x 1");
    CHECK(r.status == 0);
    CHECK(contains(r.out, "\"schema_version\""));
    CHECK(contains(r.out, "egnh/1"));
    CHECK(contains(r.out, "\"inputs_digest\""));
    // the format flag is also accepted after the subcommand
    auto r2 = run("eval pdf --alpha 1 --beta 1 --a 1 --b 1 --x 1 --format json");
    CHECK(r2.status == 0);
    CHECK(contains(r2.out, "egnh/1"));
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-cli>\n", argv[0]);
        return 2;
    }
    cli_path = argv[1];
    doctest::Context ctx;
    ctx.applyCommandLine(1, argv);
    return ctx.run();
}
