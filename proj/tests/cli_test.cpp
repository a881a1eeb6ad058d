#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "hyperspec/cli.hpp"
#include "hyperspec/extremal.hpp"
#include "hyperspec/spectral.hpp"

using namespace hyperspec;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run hs(const std::vector<std::string>& args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::map<std::string, std::string> fields(const std::string& text) {
    std::map<std::string, std::string> m;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) m.emplace(line.substr(0, eq), line.substr(eq + 1));
    }
    return m;
}

}  // namespace

TEST_CASE("lambda command") {
    auto r = hs({"lambda", "-", "--alpha", "2"}, "2 3\n0 1\n0 2\n1 2\n");
    CHECK(r.code == cli::exit_ok);
    auto f = fields(r.out);
    CHECK(f["lambda"] == "2.0000000000");
    CHECK(f["witness"] == "0.5773502692 0.5773502692 0.5773502692");
    CHECK(f["converged"] == "true");
    CHECK(f["seed"] == "0");
    CHECK(f.count("kkt_residual") == 1);
    CHECK(f.count("iterations") == 1);
    CHECK(f.count("wall_time") == 0);

    r = hs({"lambda", "-", "--alpha", "2"}, "2 3\n");
    CHECK(r.code == cli::exit_ok);
    CHECK(fields(r.out)["lambda"] == "0.0000000000");

    r = hs({"lambda", "-", "--alpha", "1"}, "3 5\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n");
    CHECK(fields(r.out)["lambda"] == "0.3750000000");

    r = hs({"lambda", "-", "--alpha", "2", "--timing"}, "2 2\n0 1\n");
    CHECK(fields(r.out).count("wall_time") == 1);
}

TEST_CASE("lambda command exit codes") {
    CHECK(hs({"lambda", "-", "--alpha", "2"}, "2 3\n0 7\n").code == cli::exit_parse_error);
    CHECK(hs({"lambda", "-", "--alpha", "2"}, "garbage").code == cli::exit_parse_error);
    CHECK(hs({"lambda", "/nonexistent/file", "--alpha", "2"}).code == cli::exit_parse_error);
    CHECK(hs({"lambda", "-", "--alpha", "0.5"}, "2 2\n0 1\n").code == cli::exit_bad_flags);
    CHECK(hs({"lambda", "-"}, "2 2\n0 1\n").code == cli::exit_bad_flags);
    CHECK(hs({"lambda", "-", "--alpha", "2", "--bogus"}, "2 2\n0 1\n").code == cli::exit_bad_flags);
    CHECK(hs({"lambda", "-", "--alpha", "2", "--method", "newton"}, "2 2\n0 1\n").code == cli::exit_bad_flags);
    // One iteration is not enough for an asymmetric 3-graph.
    CHECK(hs({"lambda", "-", "--alpha", "2", "--max-iter", "1", "--starts", "0"},
             "3 6\n0 1 2\n0 1 3\n2 3 4\n3 4 5\n0 4 5\n")
              .code == cli::exit_not_converged);
}

TEST_CASE("kernel flag") {
    const std::string k4 = "2 4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
    const auto r = hs({"lambda", "-", "--alpha", "2", "--kernel", "scalar"}, k4);
    CHECK(r.code == cli::exit_ok);
    CHECK(fields(r.out)["kernel"] == "scalar");
    CHECK(fields(r.out)["lambda"] == "3.0000000000");
}

TEST_CASE("json output is a single object") {
    const auto r = hs({"lambda", "-", "--alpha", "2", "--json"}, "2 4\n0 1\n0 2\n0 3\n");
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["lambda"].get<double>() == doctest::Approx(std::sqrt(3.0)));
    CHECK(j["witness"].size() == 4);
    const auto s = hs({"search", "ex", "--k", "2", "--n", "5", "--forbid", "K3", "--json"});
    const auto js = nlohmann::json::parse(s.out);
    CHECK(js["optimum"] == "6");
    CHECK(js["witness"].size() == 6);
    CHECK(js["verdict"] == "confirmed");
}

TEST_CASE("family command") {
    CHECK(hs({"family", "f5"}).out == "3 5\n0 1 2\n0 1 3\n2 3 4\n");
    CHECK(hs({"family", "star", "--k", "2", "--t", "1", "--n", "4"}).out == "2 4\n0 1\n0 2\n0 3\n");
    const auto fano = hs({"family", "fano"});
    CHECK(fano.out.substr(0, 4) == "3 7\n");
    CHECK(std::count(fano.out.begin(), fano.out.end(), '\n') == 8);
    CHECK(hs({"family", "colex", "--k", "2", "--m", "4", "--n", "6"}).out == "2 6\n0 1\n0 2\n1 2\n0 3\n");
    CHECK(hs({"family", "petersen"}).code == cli::exit_bad_flags);
    CHECK(hs({"family", "star", "--k", "2", "--t", "3", "--n", "4"}).code == cli::exit_bad_flags);
}

TEST_CASE("family output round-trips through lambda") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"family", "fano"}, {"family", "turan", "--r", "3", "--n", "7"}, {"family", "bipartite3", "--n", "5"}}) {
        const auto text = hs(args).out;
        const auto r = hs({"lambda", "-", "--alpha", "2.5"}, text);
        SolverConfig cfg;
        cfg.alpha = 2.5;
        const auto lib = solve(parse_hypergraph(text), cfg);
        CHECK(fields(r.out)["lambda"] == format_real(lib.lambda));
    }
}

TEST_CASE("closed-form command") {
    auto f = fields(hs({"closed-form", "star", "--k", "2", "--t", "1", "--n", "4", "--alpha", "2"}).out);
    CHECK(f["lambda"] == "1.7320508076");
    CHECK(f["method"] == "one_dim_opt");
    CHECK(f["inner_argmax"] == "0.5000000000");
    f = fields(hs({"closed-form", "turan", "--r", "2", "--n", "4", "--alpha", "2"}).out);
    CHECK(f["lambda"] == "2.0000000000");
    CHECK(f["method"] == "uniform_weight");
    f = fields(hs({"closed-form", "edge-bound", "--k", "2", "--e", "3", "--alpha", "2"}).out);
    CHECK(f["lambda_bound"] == "2.4494897428");
    const auto u = hs({"closed-form", "uniform", "-", "--alpha", "2"}, "2 4\n0 1\n0 2\n0 3\n");
    CHECK(u.code == cli::exit_bad_flags);
    CHECK(hs({"closed-form", "turan", "--r", "2", "--n", "5", "--alpha", "1"}).code == cli::exit_bad_flags);
    CHECK(hs({"closed-form", "cube", "--alpha", "2"}).code == cli::exit_bad_flags);
}

TEST_CASE("search and verify commands") {
    auto r = hs({"search", "ex", "--k", "2", "--n", "5", "--forbid", "K3"});
    CHECK(r.code == cli::exit_ok);
    CHECK(fields(r.out)["optimum"] == "6");
    CHECK(fields(r.out)["forbid"] == "K3");

    r = hs({"verify", "universal", "--forbid", "K3", "--gset", "bipartite", "--n", "6", "--s", "1", "--c", "0.8"});
    CHECK(r.code == cli::exit_ok);
    CHECK(fields(r.out)["verdict"] == "confirmed");

    r = hs({"search", "spectral-max", "--k", "2", "--n", "4", "--forbid", "2K2", "--alpha", "2"});
    CHECK(r.code == cli::exit_ok);
    CHECK(fields(r.out)["optimum"] == "2.0000000000");
    CHECK(fields(r.out)["witness"] == "0 1,0 2,1 2");

    r = hs({"verify", "universal", "--forbid", "K3", "--gset", "bipartite", "--n", "5", "--s", "1", "--c", "0.3"});
    CHECK(r.code == cli::exit_refuted);
    r = hs({"verify", "strongstab", "--forbid", "intersect:2:1", "--gset", "star:2:1", "--n", "4", "--alpha", "2", "--c", "0.4"});
    CHECK(r.code == cli::exit_indeterminate);
    r = hs({"verify", "ekr", "--k", "2", "--t", "1", "--n", "7", "--alpha", "2"});
    CHECK(r.code == cli::exit_ok);
    r = hs({"verify", "colex", "--k", "2", "--m", "6", "--n", "6", "--alpha", "1.5"});
    CHECK(r.code == cli::exit_ok);
    r = hs({"verify", "kk", "-", "--alpha", "2"}, "2 3\n0 1\n0 2\n1 2\n");
    CHECK(r.code == cli::exit_ok);
    CHECK(fields(r.out)["shadow_bound"] == "2.5615528128");

    CHECK(hs({"search", "ex", "--k", "3", "--n", "9", "--forbid", "fano"}).code == cli::exit_search_too_large);
    CHECK(hs({"search", "ex", "--n", "5", "--forbid", "K7x"}).code == cli::exit_bad_flags);
    CHECK(hs({"search", "nothing"}).code == cli::exit_bad_flags);
}

TEST_CASE("forbidden family from a file") {
    const std::string path = "cli_test_forbid.txt";
    {
        std::ofstream f(path);
        f << "2 3\n0 1\n0 2\n1 2\n";
    }
    const auto r = hs({"search", "ex", "--n", "6", "--forbid-file", path});
    CHECK(r.code == cli::exit_ok);
    CHECK(fields(r.out)["optimum"] == "9");
    CHECK(fields(r.out)["k"] == "2");
    std::remove(path.c_str());
}

TEST_CASE("reports do not depend on thread count") {
    const auto a = hs({"search", "spectral-max", "--k", "2", "--n", "6", "--forbid", "K3", "--alpha", "2", "--threads", "1"});
    const auto b = hs({"search", "spectral-max", "--k", "2", "--n", "6", "--forbid", "K3", "--alpha", "2", "--threads", "4"});
    CHECK(a.code == cli::exit_ok);
    CHECK(a.out == b.out);
}

TEST_CASE("help exits cleanly") {
    const auto r = hs({"--help"});
    CHECK(r.code == cli::exit_ok);
    CHECK(r.out.find("lambda") != std::string::npos);
    CHECK(hs({}).code == cli::exit_bad_flags);
}
