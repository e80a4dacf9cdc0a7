/**
 * @file foamtool.cpp
 * @brief Command-line front end: evaluation, LR coefficients, relation/Kempe/Gram
 *        suites, MOY coloring counts, Gram matrices, structure constants, degrees.
 *
 * Every command builds a report {command, config, cases}. Reports carry the
 * seed but not the job count, and timings only with --timing, so the same
 * configuration gives byte-identical output for any --jobs.
 */
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <iostream>
#include <sstream>

#include "foam/foameval.hpp"
#include "foam/foamio.hpp"
#include "foam/foamzoo.hpp"
#include "foam/moyflag.hpp"

using namespace foam;
using json = nlohmann::ordered_json;

namespace {

struct RunConfig {
    int n = 0;  // 0: take N from the input
    std::uint64_t seed = 1;
    int jobs = 1;
    int closure_degree = -1;  // -1: 2N
    std::string format = "text";
    bool timing = false;
};

struct Case {
    std::string id, expected, got, status;
    long millis = -1;
};

struct Report {
    std::string command;
    RunConfig cfg;
    std::vector<Case> cases;
    std::vector<std::string> notes;  // text-only lines printed before the cases
    bool quiet_text = false;          // text mode lists failing cases only

    bool ok() const {
        for (const Case& c : cases)
            if (c.status == "fail") return false;
        return true;
    }
};

using Clock = std::chrono::steady_clock;

long since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

void print(const Report& r) {
    if (r.cfg.format == "json") {
        json cfg = {{"n", r.cfg.n}, {"seed", r.cfg.seed}, {"format", r.cfg.format}};
        if (r.cfg.closure_degree >= 0) cfg["closure_degree"] = r.cfg.closure_degree;
        json cases = json::array();
        for (const Case& c : r.cases) {
            json jc = {{"id", c.id}, {"expected", c.expected}, {"got", c.got}, {"status", c.status}};
            jc["millis"] = r.cfg.timing ? json(c.millis) : json(nullptr);
            cases.push_back(jc);
        }
        std::cout << json{{"command", r.command}, {"config", cfg}, {"cases", cases}}.dump(1) << "\n";
        return;
    }
    for (const auto& line : r.notes) std::cout << line << "\n";
    for (const Case& c : r.cases) {
        if (r.quiet_text && c.status != "fail") continue;
        std::cout << c.status << "  " << c.id << "  got " << c.got;
        if (!c.expected.empty()) std::cout << "  expected " << c.expected;
        if (r.cfg.timing) std::cout << "  " << c.millis << " ms";
        std::cout << "\n";
    }
}

std::vector<int> parse_ints(const std::string& text) {
    std::vector<int> out;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw ParseError("integer list '" + text + "'");
        }
    }
    if (out.empty()) throw ParseError("integer list '" + text + "'");
    return out;
}

/// "[];[1];[2,1]" -> one diagram per strand.
ThetaIndex parse_index(const std::string& text) {
    ThetaIndex out;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ';')) out.push_back(YoungDiagram::parse(part));
    return out;
}

std::string index_string(const ThetaIndex& ix) {
    std::string s;
    for (std::size_t i = 0; i < ix.size(); ++i) s += (i ? ";" : "") + ix[i].to_string();
    return s;
}

void require_n(const RunConfig& cfg, int n) {
    if (cfg.n != 0 && cfg.n != n)
        throw BadParameters("--n " + std::to_string(cfg.n) + " differs from the input's N = " + std::to_string(n));
}

Report cmd_eval(const RunConfig& cfg, const std::string& path, const std::string& expect) {
    Report r{"eval", cfg, {}, {}};
    Foam F = read_foam_file(path);
    require_n(cfg, F.N);
    r.cfg.n = F.N;
    require_valid(F);
    const auto t0 = Clock::now();
    EvalOptions opts;
    opts.jobs = cfg.jobs;
    EvalResult res = eval_full(F, opts);
    Case c{path, expect, res.value.to_string(), "", since(t0)};
    if (expect.empty())
        c.status = "ok";
    else
        c.status = (expect == c.got || expect == res.value.to_canonical()) ? "pass" : "fail";
    r.cases.push_back(c);
    if (cfg.format == "text") {
        // Plain layout: the value alone on the first line.
        std::cout << c.got << "\ndegree " << res.degree << "\ncolorings " << res.colorings << "\n";
        if (cfg.timing) std::cout << "millis " << c.millis << "\n";
        if (!expect.empty()) std::cout << c.status << "\n";
        r.cfg.format = "none";
    }
    return r;
}

Report cmd_degree(const RunConfig& cfg, const std::string& path) {
    Report r{"degree", cfg, {}, {}};
    Foam F = read_foam_file(path);
    require_n(cfg, F.N);
    r.cfg.n = F.N;
    require_valid(F);
    r.cases.push_back({path, "", std::to_string(foam_degree(F)), "ok", 0});
    return r;
}

Report cmd_lr(const RunConfig& cfg, const std::vector<std::string>& args) {
    Report r{"lr", cfg, {}, {}};
    const YoungDiagram al = YoungDiagram::parse(args[0]), be = YoungDiagram::parse(args[1]),
                       la = YoungDiagram::parse(args[2]);
    const int a = parse_ints(args[3]).at(0), b = parse_ints(args[4]).at(0);
    r.cfg.n = a + b;
    require_n(cfg, a + b);
    if (al.size() + be.size() != la.size())
        throw BadParameters("degree mismatch: |alpha| + |beta| = " + std::to_string(al.size() + be.size()) +
                            ", |lambda| = " + std::to_string(la.size()));
    const auto t0 = Clock::now();
    const Int foam_value = lr_via_foam(al, be, la, a, b);
    const Int oracle = lr_coeff(al, be, la);
    const std::string id = "c^" + la.to_string() + "_" + al.to_string() + "," + be.to_string();
    r.cases.push_back({id, oracle.get_str(), foam_value.get_str(), foam_value == oracle ? "pass" : "fail", since(t0)});
    if (cfg.format == "text") {
        std::cout << "foam " << foam_value << "\noracle " << oracle << "\n"
                  << (foam_value == oracle ? "match" : "mismatch") << "\n";
        r.cfg.format = "none";
    }
    return r;
}

Report check_relations(const RunConfig& cfg) {
    Report r{"check relations", cfg, {}, {}};
    const int N = cfg.n;
    const int D = cfg.closure_degree >= 0 ? cfg.closure_degree : 2 * N;
    r.cfg.closure_degree = D;
    for (const std::string& id : relation_ids()) {
        const std::vector<int> p = default_params(id, N);
        if (p.empty()) {
            r.cases.push_back({id, "lhs = rhs", "no nondegenerate parameters at this N", "skip", 0});
            continue;
        }
        std::string name = id + "(";
        for (std::size_t i = 0; i < p.size(); ++i) name += (i ? "," : "") + std::to_string(p[i]);
        name += ")";
        const auto t0 = Clock::now();
        const Relation R = build_relation(id, p, N);
        const RelationReport rep = verify_relation(R, D, cfg.jobs);
        std::string got = std::to_string(rep.closures - rep.failures) + "/" + std::to_string(rep.closures) + " closures";
        if (R.idempotents)
            got += ", " + std::to_string(rep.idempotent_checks - rep.idempotent_failures) + "/" +
                   std::to_string(rep.idempotent_checks) + " idempotent checks";
        r.cases.push_back({name, "lhs = rhs", got, rep.ok() ? "pass" : "fail", since(t0)});
    }
    return r;
}

Report check_kempe(const RunConfig& cfg) {
    Report r{"check kempe", cfg, {}, {}};
    for (const ZooEntry& z : zoo(cfg.n)) {
        const auto t0 = Clock::now();
        const LemmaReport rep = check_coloring_lemmas(z.foam, cfg.seed);
        std::string got = std::to_string(rep.colorings) + " colorings, checks";
        long failures = 0;
        for (int k = 0; k < 5; ++k) {
            got += (k ? "/" : " ") + std::to_string(rep.checks[k]);
            failures += rep.failures[k];
        }
        got += ", failures " + std::to_string(failures);
        if (!rep.messages.empty()) got += " (" + rep.messages.front() + ")";
        r.cases.push_back({z.name, "failures 0", got, rep.ok() ? "pass" : "fail", since(t0)});
    }
    return r;
}

Report gram_report(const std::string& command, const RunConfig& cfg, const std::vector<int>& a, bool as_check) {
    Report r{command, cfg, {}, {}};
    int N = 0;
    for (int x : a) N += x;
    require_n(cfg, N);
    r.cfg.n = N;
    const auto t0 = Clock::now();
    const auto rows = theta_basis(a), cols = theta_dual_basis(a);
    const auto G = gram_matrix(a, rows, cols, cfg.jobs);
    const long ms = since(t0);
    bool identity = true;
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = 0; j < G[i].size(); ++j) {
            const MultiPoly want = MultiPoly::constant(N, i == j ? 1 : 0);
            const bool ok = G[i][j] == want;
            identity = identity && ok;
            r.cases.push_back({index_string(rows[i].index) + " | " + index_string(cols[j].index), want.to_string(),
                               G[i][j].to_string(), ok ? "pass" : "fail", ms});
        }
    if (cfg.format == "text") {
        std::ostringstream line;
        line << "basis size " << rows.size() << ", graded rank at q=1 " << graded_rank_theta(a).at_one();
        r.notes.push_back(line.str());
        if (as_check) {
            r.notes.push_back(identity ? "identity confirmed" : "not the identity");
            r.quiet_text = true;
        }
    }
    return r;
}

Report cmd_moy_count(const RunConfig& cfg, const std::string& path, const std::string& theta, int circle) {
    Report r{"moy-count", cfg, {}, {}};
    MoyGraph G;
    std::string expected;
    if (!path.empty()) {
        G = read_moy_file(path);
    } else if (!theta.empty()) {
        const std::vector<int> a = parse_ints(theta);
        G = MoyGraph::theta(a);
        expected = graded_rank_theta(a).at_one().get_str();
    } else {
        if (cfg.n < 1) throw BadParameters("--circle needs --n");
        G = MoyGraph::circle(circle, cfg.n);
        expected = qbinom(cfg.n, circle).at_one().get_str();
    }
    require_n(cfg, G.N);
    r.cfg.n = G.N;
    G.validate();
    auto t0 = Clock::now();
    const Int count = moy_coloring_count(G);
    r.cases.push_back({"colorings", expected, count.get_str(),
                       expected.empty() ? "ok" : (expected == count.get_str() ? "pass" : "fail"), since(t0)});
    t0 = Clock::now();
    EvalOptions opts;
    opts.jobs = cfg.jobs;
    const MultiPoly v = eval(build_graph_times_circle(G), opts);
    r.cases.push_back({"eval(G x S^1)", count.get_str(), v.to_string(),
                       v == MultiPoly::constant(G.N, count) ? "pass" : "fail", since(t0)});
    return r;
}

Report cmd_struct_const(const RunConfig& cfg, const std::vector<int>& a, const std::string& alpha,
                        const std::string& beta) {
    Report r{"struct-const", cfg, {}, {}};
    int N = 0;
    for (int x : a) N += x;
    require_n(cfg, N);
    r.cfg.n = N;
    const ThetaIndex al = parse_index(alpha), be = parse_index(beta);
    const auto t0 = Clock::now();
    const auto table = structure_constants(a, al, be);
    const long ms = since(t0);
    for (const auto& [lam, c] : table) r.cases.push_back({index_string(lam), "", c.to_string(), "ok", ms});
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact evaluation of decorated sl_N foams"};
    app.require_subcommand(1);
    RunConfig cfg;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "N (must match the input when it carries one)")->check(CLI::Range(1, 30));
        sub->add_option("--seed", cfg.seed, "Seed for randomized checks");
        sub->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--closure-degree", cfg.closure_degree, "Closure decoration degree bound (default 2N)")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_flag("--timing", cfg.timing, "Report wall-clock milliseconds");
    };

    std::string path, expect, theta, alpha, beta, suite;
    int circle = 0;
    std::vector<std::string> lr_args;

    auto* ev = app.add_subcommand("eval", "Evaluate a closed foam file");
    ev->add_option("file", path, "Foam JSON file")->required();
    ev->add_option("--expect", expect, "Expected value; exit 1 on mismatch");
    auto* lr = app.add_subcommand("lr", "LR coefficient from a theta foam, against the combinatorial rule");
    // Diagrams like "[]" would be eaten by the vector option syntax, so the five words are read raw.
    lr->allow_extras();
    lr->footer("Arguments: alpha beta lambda a b, e.g. lr [1] [] [1] 1 1");
    auto* ck = app.add_subcommand("check", "Run a suite: relations, kempe or gram");
    ck->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember({"relations", "kempe", "gram"}));
    ck->add_option("--theta", theta, "Strand labels for the gram suite, e.g. 1,1,1");
    auto* mc = app.add_subcommand("moy-count", "Count colorings of a MOY graph");
    mc->add_option("file", path, "MOY graph JSON file");
    mc->add_option("--theta", theta, "Generalized theta web with these strand labels");
    mc->add_option("--circle", circle, "Circle with this label (needs --n)");
    auto* gr = app.add_subcommand("gram", "Gram matrix of the theta basis against its dual basis");
    gr->add_option("--theta", theta, "Strand labels, e.g. 1,2")->required();
    auto* sc = app.add_subcommand("struct-const", "Structure constants c^lambda_{alpha beta}");
    sc->add_option("--theta", theta, "Strand labels")->required();
    sc->add_option("--alpha", alpha, "Basis index, e.g. '[];[1];[]'")->required();
    sc->add_option("--beta", beta, "Basis index")->required();
    auto* dg = app.add_subcommand("degree", "Degree of a closed foam file");
    dg->add_option("file", path, "Foam JSON file")->required();
    for (auto* sub : {ev, lr, ck, mc, gr, sc, dg}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        Report r;
        if (*ev) {
            r = cmd_eval(cfg, path, expect);
        } else if (*dg) {
            r = cmd_degree(cfg, path);
        } else if (*lr) {
            lr_args = lr->remaining();
            if (lr_args.size() != 5) throw BadParameters("lr expects five arguments: alpha beta lambda a b");
            r = cmd_lr(cfg, lr_args);
        } else if (*ck) {
            if (suite == "gram") {
                if (theta.empty()) throw BadParameters("check gram needs --theta");
                r = gram_report("check gram", cfg, parse_ints(theta), true);
            } else {
                if (cfg.n < 1) throw BadParameters("check " + suite + " needs --n");
                r = suite == "relations" ? check_relations(cfg) : check_kempe(cfg);
            }
        } else if (*mc) {
            if ((!path.empty()) + (!theta.empty()) + (circle > 0) != 1)
                throw BadParameters("moy-count takes exactly one of: file, --theta, --circle");
            r = cmd_moy_count(cfg, path, theta, circle);
        } else if (*gr) {
            r = gram_report("gram", cfg, parse_ints(theta), false);
        } else if (*sc) {
            r = cmd_struct_const(cfg, parse_ints(theta), alpha, beta);
        }
        if (r.cfg.format != "none") print(r);
        return r.ok() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
