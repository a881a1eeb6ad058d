#include "hyperspec/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperspec/closed_forms.hpp"
#include "hyperspec/enumerate.hpp"
#include "hyperspec/extremal.hpp"
#include "hyperspec/kernels.hpp"
#include "hyperspec/spectral.hpp"

namespace hyperspec::cli {

namespace {

using json = nlohmann::ordered_json;

// Printed with %.3e in text form; residuals and tolerances are too small for
// the fixed-point format.
struct Sci {
    double v;
};

// Already rendered by the library (report_fields); kept verbatim in JSON too.
struct Raw {
    std::string s;
};

using Value = std::variant<bool, long long, double, std::string, Sci, Raw, Hypergraph, std::vector<double>>;

json edges_json(const Hypergraph& h) {
    json arr = json::array();
    for (std::size_t e = 0; e < h.size(); ++e) {
        json edge = json::array();
        for (Vertex v : h.edge(e)) edge.push_back(v);
        arr.push_back(std::move(edge));
    }
    return arr;
}

json real_json(double v) {
    if (std::isfinite(v)) return v;
    return format_real(v);
}

class Output {
public:
    template <class T>
    void add(std::string key, T v) {
        // Echoed flags and report details overlap; the first occurrence wins.
        for (const auto& item : items_)
            if (item.first == key) return;
        items_.emplace_back(std::move(key), Value(std::move(v)));
    }
    void add(std::string key, int v) { add(std::move(key), static_cast<long long>(v)); }
    void add(std::string key, const char* v) { add(std::move(key), std::string(v)); }

    std::string text() const {
        std::ostringstream os;
        for (const auto& [k, v] : items_) os << k << '=' << render(v) << '\n';
        return os.str();
    }

    json to_json() const {
        json obj = json::object();
        for (const auto& [k, v] : items_) obj[k] = as_json(v);
        return obj;
    }

private:
    static std::string render(const Value& v) {
        struct R {
            std::string operator()(bool b) const { return b ? "true" : "false"; }
            std::string operator()(long long x) const { return std::to_string(x); }
            std::string operator()(double x) const { return format_real(x); }
            std::string operator()(const std::string& s) const { return s; }
            std::string operator()(const Sci& s) const {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.3e", s.v);
                return buf;
            }
            std::string operator()(const Raw& r) const { return r.s; }
            std::string operator()(const Hypergraph& h) const { return edges_compact(h); }
            std::string operator()(const std::vector<double>& xs) const {
                std::string out;
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    if (i) out += ' ';
                    out += format_real(xs[i]);
                }
                return out;
            }
        };
        return std::visit(R{}, v);
    }

    static json as_json(const Value& v) {
        struct J {
            json operator()(bool b) const { return b; }
            json operator()(long long x) const { return x; }
            json operator()(double x) const { return real_json(x); }
            json operator()(const std::string& s) const { return s; }
            json operator()(const Sci& s) const { return real_json(s.v); }
            json operator()(const Raw& r) const { return r.s; }
            json operator()(const Hypergraph& h) const { return edges_json(h); }
            json operator()(const std::vector<double>& xs) const {
                json arr = json::array();
                for (double x : xs) arr.push_back(real_json(x));
                return arr;
            }
        };
        return std::visit(J{}, v);
    }

    std::vector<std::pair<std::string, Value>> items_;
};

// Flags shared by every command that runs the solver.
struct SolverFlags {
    double tol_kkt = 1e-10;
    double tol_step = 1e-13;
    long long max_iter = 100000;
    int starts = 16;
    std::uint64_t seed = 0;
    std::string method = "auto";
    std::string kernel;

    void attach(CLI::App* app) {
        app->add_option("--tol-kkt", tol_kkt, "KKT residual tolerance")->check(CLI::PositiveNumber);
        app->add_option("--tol-step", tol_step, "step-size stopping tolerance")->check(CLI::PositiveNumber);
        app->add_option("--max-iter", max_iter, "iteration cap per start")->check(CLI::PositiveNumber);
        app->add_option("--starts", starts, "number of random starts")->check(CLI::NonNegativeNumber);
        app->add_option("--seed", seed, "random-start seed");
        app->add_option("--method", method, "auto, power or gradient")
            ->check(CLI::IsMember({"auto", "power", "gradient"}));
        app->add_option("--kernel", kernel, "scalar, avx2 or neon")->check(CLI::IsMember({"scalar", "avx2", "neon"}));
    }

    SolverConfig config(double alpha, int threads) const {
        SolverConfig cfg;
        cfg.alpha = alpha;
        cfg.tol_kkt = tol_kkt;
        cfg.tol_step = tol_step;
        cfg.max_iter = max_iter;
        cfg.num_random_starts = starts;
        cfg.seed = seed;
        cfg.method = method == "power" ? SolverMethod::power
                     : method == "gradient" ? SolverMethod::gradient
                                            : SolverMethod::automatic;
        cfg.threads = threads;
        return cfg;
    }

    void echo(Output& o) const {
        o.add("method", method);
        o.add("tol_kkt", Sci{tol_kkt});
        o.add("tol_step", Sci{tol_step});
        o.add("max_iter", max_iter);
        o.add("starts", starts);
        o.add("seed", static_cast<long long>(seed));
        o.add("kernel", kernels::to_string(kernels::active_path()));
    }
};

void select_kernel(const std::string& name) {
    if (name.empty()) return;
    const kernels::Path p = name == "scalar" ? kernels::Path::scalar
                            : name == "avx2" ? kernels::Path::avx2
                                             : kernels::Path::neon;
    if (!kernels::is_available(p)) throw Error(Errc::bad_params, "kernel `" + name + "` is not available on this CPU");
    kernels::set_active_path(p);
}

int default_threads() {
    if (const char* env = std::getenv("THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) return t;
    }
    return 1;
}

// Thrown for failures reading the input hypergraph (exit 1).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Hypergraph read_input(const std::string& path, std::istream& in) {
    try {
        if (path == "-") return parse_hypergraph(in);
        std::ifstream f(path);
        if (!f) throw InputError("cannot open `" + path + "`");
        return parse_hypergraph(f);
    } catch (const Error& e) {
        throw InputError(path + ": " + e.what());
    }
}

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::confirmed: return exit_ok;
        case Verdict::refuted: return exit_refuted;
        case Verdict::indeterminate: return exit_indeterminate;
    }
    return exit_indeterminate;
}

void add_report(Output& o, const SearchReport& r) {
    for (auto& [k, v] : report_fields(r)) {
        if (k == "witness" && r.witness) o.add("witness", *r.witness);
        else if (k == "counterexample" && r.counterexample) o.add("counterexample", *r.counterexample);
        else if (k == "optimum" || k == "alpha") o.add(k, Raw{v});
        else if (k == "k" || k == "n" || k == "witness_edges" || k == "witness_iso_class_count" || k == "counterexample_edges")
            o.add(k, std::stoll(v));
        else if (const Detail* d = r.find(k)) o.add(k, Raw{render_detail(*d)});
        else o.add(k, v);
    }
}

void add_density(Output& o, const DensityTable& t) {
    o.add("k", t.k);
    o.add("alpha", t.alpha);
    o.add("pi", t.pi);
    o.add("rows", static_cast<long long>(t.rows.size()));
    for (const auto& r : t.rows) {
        const std::string p = "row." + std::to_string(r.n) + ".";
        if (r.skipped) {
            o.add(p + "skipped", r.skip_reason);
            continue;
        }
        o.add(p + "ex", r.ex);
        o.add(p + "ex_prev", r.ex_prev);
        o.add(p + "ex_diff", r.ex_diff);
        o.add(p + "pi_term", r.pi_term);
        o.add(p + "residual1", r.residual1);
        o.add(p + "residual1_norm", r.residual1_norm);
        o.add(p + "lambda_g", r.lambda_g);
        o.add(p + "lambda_converged", r.lambda_converged);
        o.add(p + "target", r.target);
        o.add(p + "residual2", r.residual2);
        o.add(p + "residual2_norm", r.residual2_norm);
        o.add(p + "mu_ratio", r.mu_ratio);
    }
}

void add_closed_form(Output& o, const ClosedFormValue& v) {
    o.add("lambda", v.lambda);
    o.add("method", to_string(v.method));
    if (v.inner_argmax) o.add("inner_argmax", *v.inner_argmax);
}

struct Runner {
    Runner(std::istream& i, std::ostream& o, std::ostream& e) : in(i), out(o), err(e) {}

    std::istream& in;
    std::ostream& out;
    std::ostream& err;

    // Parsed flag values.
    std::string input = "-";
    double alpha = 2.0;
    int threads = default_threads();
    bool as_json = false;
    bool timing = false;
    SolverFlags sf;
    int k = 0;
    int t = 1;
    int n = 0;
    int r = 2;
    long long m = 0;
    long long e = 0;
    int s = 1;
    double c = 0.8;
    double pi = 0.0;
    int n_lo = 0;
    int n_hi = 0;
    std::optional<double> lambda_given;
    std::string forbid;
    std::vector<std::string> forbid_files;
    std::string gset;
    bool force = false;
    bool no_prune = false;
    std::string name;

    int emit(const Output& o, int code) {
        if (as_json) out << o.to_json().dump(2) << '\n';
        else out << o.text();
        return code;
    }

    void finish(Output& o, std::chrono::steady_clock::time_point start) const {
        if (timing) o.add("wall_time", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }

    FamilySpec family() const {
        std::vector<Hypergraph> members;
        if (!forbid.empty()) {
            const FamilySpec named = parse_family_names(forbid);
            members.insert(members.end(), named.members().begin(), named.members().end());
        }
        for (const auto& f : forbid_files) {
            const Hypergraph h = read_input(f, in);
            members.push_back(h);
        }
        for (const auto& h : members)
            if (h.uniformity() != members.front().uniformity())
                throw Error(Errc::uniformity_mismatch, "forbidden members have different uniformities");
        return FamilySpec(std::move(members));
    }

    int uniformity(const FamilySpec& fam) const {
        if (k > 0) return k;
        if (!fam.empty()) return fam.uniformity();
        return 2;
    }

    SearchOptions search_options() const {
        SearchOptions o;
        o.force = force;
        o.threads = threads;
        o.prune = !no_prune;
        o.solver = sf.config(alpha, 1);
        return o;
    }

    void echo_search(Output& o, const std::string& command, bool with_alpha) const {
        o.add("command", command);
        if (!forbid.empty()) o.add("forbid", forbid);
        for (std::size_t i = 0; i < forbid_files.size(); ++i) o.add("forbid_file." + std::to_string(i), forbid_files[i]);
        o.add("force", force);
        if (with_alpha) {
            o.add("prune", !no_prune);
            sf.echo(o);
        }
    }

    int cmd_lambda() {
        const auto start = std::chrono::steady_clock::now();
        select_kernel(sf.kernel);
        const Hypergraph h = read_input(input, in);
        const auto res = solve(h, sf.config(alpha, threads));
        Output o;
        o.add("command", "lambda");
        o.add("input", input);
        o.add("k", h.uniformity());
        o.add("n", h.order());
        o.add("edges", static_cast<long long>(h.size()));
        o.add("alpha", alpha);
        sf.echo(o);
        o.add("lambda", res.lambda);
        o.add("witness", res.witness.values());
        o.add("kkt_residual", Sci{res.kkt_residual});
        o.add("converged", res.converged);
        o.add("iterations", res.iterations);
        o.add("start", res.start_label);
        o.add("starts_run", res.starts);
        if (res.reduced_lambda) o.add("reduced_lambda", *res.reduced_lambda);
        finish(o, start);
        return emit(o, res.converged ? exit_ok : exit_not_converged);
    }

    int cmd_family() {
        Hypergraph h;
        if (name == "complete") h = complete(k, t);
        else if (name == "turan") h = turan_graph(r, n);
        else if (name == "star") h = star(k, t, n);
        else if (name == "bipartite3") h = balanced_bipartite3(n);
        else if (name == "tripartite3") h = balanced_tripartite3(n);
        else if (name == "fano") h = fano();
        else if (name == "f5") h = f5();
        else if (name == "colex") {
            h = colex_segment(k, m);
            if (n > h.order()) h = add_isolated(h, n - h.order());
        }
        if (as_json) {
            json obj = json::object();
            obj["k"] = h.uniformity();
            obj["n"] = h.order();
            obj["edges"] = edges_json(h);
            out << obj.dump(2) << '\n';
        } else {
            write_hypergraph(out, h);
        }
        return exit_ok;
    }

    int cmd_kk(const std::string& command, bool verdict_exit_code) {
        const auto start = std::chrono::steady_clock::now();
        select_kernel(sf.kernel);
        const Hypergraph h = read_input(input, in);
        Output o;
        o.add("command", command);
        o.add("input", input);
        o.add("k", h.uniformity());
        o.add("n", h.order());
        o.add("alpha", alpha);
        double lambda = 0.0;
        bool converged = true;
        if (lambda_given) {
            lambda = *lambda_given;
            o.add("lambda_source", "given");
        } else {
            sf.echo(o);
            const auto res = solve(h, sf.config(alpha, threads));
            lambda = res.lambda;
            converged = res.converged;
            o.add("lambda_source", "solved");
            o.add("converged", converged);
        }
        const KKResult kk = kk_check(h, alpha, lambda);
        o.add("lambda", lambda);
        o.add("x", kk.x);
        o.add("shadow_bound", kk.shadow_bound);
        o.add("shadow_size", kk.shadow_size);
        o.add("holds", kk.holds);
        const Verdict v = !converged ? Verdict::indeterminate : kk.holds ? Verdict::confirmed : Verdict::refuted;
        if (verdict_exit_code) o.add("verdict", to_string(v));
        finish(o, start);
        return emit(o, verdict_exit_code ? verdict_exit(v) : exit_ok);
    }

    int cmd_closed_form() {
        if (name == "kk") return cmd_kk("closed-form kk", false);
        const auto start = std::chrono::steady_clock::now();
        Output o;
        o.add("command", "closed-form " + name);
        if (name == "star") {
            o.add("k", k);
            o.add("t", t);
            o.add("n", n);
            o.add("alpha", alpha);
            add_closed_form(o, star_lambda(k, t, n, alpha));
        } else if (name == "turan") {
            o.add("r", r);
            o.add("n", n);
            o.add("alpha", alpha);
            add_closed_form(o, turan_lambda(r, n, alpha));
        } else if (name == "bipartite3") {
            o.add("n", n);
            o.add("alpha", alpha);
            add_closed_form(o, bipartite3_lambda(n, alpha));
        } else if (name == "uniform") {
            const Hypergraph h = read_input(input, in);
            o.add("input", input);
            o.add("k", h.uniformity());
            o.add("n", h.order());
            o.add("alpha", alpha);
            add_closed_form(o, uniform_weight_lambda(h, alpha));
        } else if (name == "edge-bound") {
            o.add("k", k);
            o.add("e", e);
            o.add("alpha", alpha);
            o.add("lambda_bound", edge_bound(k, e, alpha));
        }
        finish(o, start);
        return emit(o, exit_ok);
    }

    int cmd_search() {
        const auto start = std::chrono::steady_clock::now();
        select_kernel(sf.kernel);
        const FamilySpec fam = family();
        const int kk = uniformity(fam);
        const SearchOptions opts = search_options();
        Output o;
        if (name == "ex") {
            echo_search(o, "search ex", false);
            const auto rep = ex_number(kk, n, fam, opts);
            add_report(o, rep);
            finish(o, start);
            return emit(o, verdict_exit(rep.verdict));
        }
        if (name == "ex-s") {
            echo_search(o, "search ex-s", false);
            const auto rep = ex_s_number(kk, n, fam, s, opts);
            add_report(o, rep);
            finish(o, start);
            return emit(o, verdict_exit(rep.verdict));
        }
        if (name == "spectral-max") {
            echo_search(o, "search spectral-max", true);
            const auto rep = spectral_max(kk, n, fam, alpha, opts);
            add_report(o, rep);
            finish(o, start);
            return emit(o, verdict_exit(rep.verdict));
        }
        // density
        echo_search(o, "search density", true);
        o.add("gset", gset);
        o.add("n_lo", n_lo);
        o.add("n_hi", n_hi);
        const auto table = density_report(kk, fam, n_lo, n_hi, alpha, pi, parse_gset_name(gset), opts);
        add_density(o, table);
        finish(o, start);
        return emit(o, exit_ok);
    }

    int cmd_verify() {
        if (name == "kk") return cmd_kk("verify kk", true);
        const auto start = std::chrono::steady_clock::now();
        select_kernel(sf.kernel);
        const SearchOptions opts = search_options();
        Output o;
        SearchReport rep;
        if (name == "universal") {
            const FamilySpec fam = family();
            echo_search(o, "verify universal", false);
            o.add("gset", gset);
            o.add("s", s);
            o.add("c", c);
            rep = check_universal(uniformity(fam), n, fam, parse_gset_name(gset), s, c, opts);
        } else if (name == "strongstab") {
            const FamilySpec fam = family();
            echo_search(o, "verify strongstab", true);
            o.add("gset", gset);
            o.add("c", c);
            rep = strongstab_check(uniformity(fam), n, fam, parse_gset_name(gset), alpha, c, opts);
        } else if (name == "colex") {
            echo_search(o, "verify colex", true);
            o.add("m", m);
            rep = colex_conjecture_check(k, m, n, alpha, opts);
        } else {
            echo_search(o, "verify ekr", true);
            o.add("t", t);
            rep = ekr_check(k, t, n, alpha, opts);
        }
        add_report(o, rep);
        finish(o, start);
        return emit(o, verdict_exit(rep.verdict));
    }
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Runner rn(in, out, err);
    CLI::App app{"alpha-spectral radii of uniform hypergraphs and small extremal searches", "hyperspec"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    auto common = [&](CLI::App* sub, bool solver) {
        sub->add_flag("--json", rn.as_json, "emit a single JSON object");
        sub->add_flag("--timing", rn.timing, "append wall_time");
        sub->add_option("--threads", rn.threads, "worker threads (default: $THREADS or 1)")->check(CLI::PositiveNumber);
        if (solver) {
            sub->add_option("--alpha", rn.alpha, "norm exponent, >= 1")->check(CLI::Range(1.0, 1e300));
            rn.sf.attach(sub);
        }
    };

    auto* lambda = app.add_subcommand("lambda", "compute lambda_alpha of a hypergraph file");
    lambda->add_option("input", rn.input, "hypergraph file or - for stdin")->required();
    common(lambda, true);
    lambda->get_option("--alpha")->required();

    auto* family = app.add_subcommand("family", "print a named hypergraph");
    family->add_option("name", rn.name)
        ->required()
        ->check(CLI::IsMember({"complete", "turan", "star", "bipartite3", "tripartite3", "fano", "f5", "colex"}));
    family->add_option("--k", rn.k);
    family->add_option("--t", rn.t);
    family->add_option("--n", rn.n);
    family->add_option("--r", rn.r);
    family->add_option("--m", rn.m);
    family->add_flag("--json", rn.as_json);

    auto* cf = app.add_subcommand("closed-form", "closed-form lambda values and bounds");
    cf->add_option("name", rn.name)
        ->required()
        ->check(CLI::IsMember({"star", "turan", "bipartite3", "uniform", "edge-bound", "kk"}));
    cf->add_option("input", rn.input, "hypergraph file for uniform and kk");
    cf->add_option("--k", rn.k);
    cf->add_option("--t", rn.t);
    cf->add_option("--n", rn.n);
    cf->add_option("--r", rn.r);
    cf->add_option("--e", rn.e);
    cf->add_option("--lambda", rn.lambda_given, "use this lambda instead of solving (kk)");
    common(cf, true);

    auto* search = app.add_subcommand("search", "exhaustive extremal searches");
    search->add_option("name", rn.name)->required()->check(CLI::IsMember({"ex", "ex-s", "spectral-max", "density"}));
    auto search_flags = [&](CLI::App* sub) {
        sub->add_option("--k", rn.k, "uniformity (default: from the forbidden family)");
        sub->add_option("--n", rn.n);
        sub->add_option("--forbid", rn.forbid, "comma-separated family names");
        sub->add_option("--forbid-file", rn.forbid_files, "forbidden hypergraph file (repeatable)");
        sub->add_option("--s", rn.s);
        sub->add_option("--gset", rn.gset, "candidate family name");
        sub->add_flag("--force", rn.force, "ignore the search-size guard");
        sub->add_flag("--no-prune", rn.no_prune, "solve every class in spectral searches");
        common(sub, true);
    };
    search_flags(search);
    search->add_option("--pi", rn.pi);
    search->add_option("--n-lo", rn.n_lo);
    search->add_option("--n-hi", rn.n_hi);

    auto* verify = app.add_subcommand("verify", "check statements on small instances");
    verify->add_option("name", rn.name)
        ->required()
        ->check(CLI::IsMember({"universal", "strongstab", "colex", "ekr", "kk"}));
    verify->add_option("input", rn.input, "hypergraph file for kk");
    search_flags(verify);
    verify->add_option("--c", rn.c);
    verify->add_option("--m", rn.m);
    verify->add_option("--t", rn.t);
    verify->add_option("--lambda", rn.lambda_given, "use this lambda instead of solving (kk)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_bad_flags;
    }

    const kernels::Path saved = kernels::active_path();
    int code = exit_ok;
    try {
        if (lambda->parsed()) code = rn.cmd_lambda();
        else if (family->parsed()) code = rn.cmd_family();
        else if (cf->parsed()) code = rn.cmd_closed_form();
        else if (search->parsed()) code = rn.cmd_search();
        else code = rn.cmd_verify();
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        code = exit_parse_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        code = e.code() == Errc::search_too_large ? exit_search_too_large : exit_bad_flags;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        code = exit_bad_flags;
    }
    kernels::set_active_path(saved);
    return code;
}

}  // namespace hyperspec::cli
