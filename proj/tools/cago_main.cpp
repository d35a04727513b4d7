// cago: decision procedures, bounded probes, sofic-approximation experiments
// and worked-example demos for cellular automata over Z^d and free groups.

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cago/ca.hpp"
#include "cago/corpus.hpp"
#include "cago/errors.hpp"
#include "cago/group.hpp"
#include "cago/probes.hpp"
#include "cago/report.hpp"
#include "cago/rule_io.hpp"
#include "cago/sofic.hpp"
#include "cago/suite.hpp"
#include "cago/symbolic1d.hpp"

namespace {

using namespace cago;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const Report& rep, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << rep.to_text();
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write file: " + out_path);
    out << rep.to_text();
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    std::int64_t ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
};

void add_rule_lines(Report& rep, const std::string& key, const LocalRule& rule) {
    rep.add(key, std::string("rule-file"));
    std::istringstream lines(serialize_rule(rule));
    std::string line;
    while (std::getline(lines, line)) rep.row(line);
}

int run_decide(const std::string& rule_path, const std::string& property, int n_max,
               const std::string& out_path, const Caps& caps) {
    Timer timer;
    auto rule = parse_rule(slurp(rule_path));
    Report rep("decide");
    rep.add("rule-file", rule_path);
    rep.add("group", rule.group().spec());
    rep.add("alphabet", rule.alphabet().size);
    rep.add("property", property);

    if (property == "surjective") {
        auto res = decide_surjective(rule, caps);
        rep.add("verdict", res.surjective);
        rep.add("certificate-kind", std::string(res.surjective ? "none" : "orphan-word"));
        if (!res.surjective) rep.add("certificate-orphan", word_to_string(res.orphan));
        rep.add("subsets-explored", res.subsets_explored);
    } else if (property == "preinjective") {
        auto res = decide_preinjective(rule, caps);
        rep.add("verdict", res.preinjective);
        rep.add("certificate-kind",
                std::string(res.preinjective ? "none" : "erasable-word-pair"));
        if (!res.preinjective) {
            rep.add("certificate-u", word_to_string(res.word_u));
            rep.add("certificate-v", word_to_string(res.word_v));
        }
    } else if (property == "reversible") {
        auto res = decide_reversible(rule, caps);
        rep.add("verdict", res.reversible);
        if (res.reversible) {
            rep.add("certificate-kind", std::string("inverse-rule"));
            add_rule_lines(rep, "certificate-inverse", *res.inverse);
        } else {
            rep.add("certificate-kind", std::string("periodic-kernel-pair"));
            rep.add("certificate-u", word_to_string(res.periodic_u));
            rep.add("certificate-v", word_to_string(res.periodic_v));
        }
    } else if (property == "postsurjective") {
        auto res = decide_postsurjective_1d(rule, caps);
        rep.add("verdict", res.post_surjective);
        rep.add("note", res.upgrade);
        if (res.post_surjective) {
            rep.add("certificate-kind", std::string("inverse-rule"));
            add_rule_lines(rep, "certificate-inverse", *res.reversibility.inverse);
        } else {
            rep.add("certificate-kind", std::string("periodic-kernel-pair"));
            rep.add("certificate-u", word_to_string(res.reversibility.periodic_u));
            rep.add("certificate-v", word_to_string(res.reversibility.periodic_v));
        }
    } else if (property == "balanced") {
        auto res = decide_balanced_1d(rule, n_max, caps);
        rep.add("verdict", res.balanced);
        rep.add("counting-checked-to", res.n_checked);
        rep.add("note", std::string("balance on Z coincides with surjectivity; counting is a "
                                    "cross-check"));
        if (res.deviation) {
            rep.add("certificate-kind", std::string("preimage-count"));
            rep.add("deviation-pattern", word_to_string(res.deviation->pattern_word));
            rep.add("deviation-support",
                    std::string(res.deviation->orphan_support ? "interval" : "disk"));
            rep.add("deviation-count", res.deviation->count);
            rep.add("deviation-expected", res.deviation->expected);
        } else {
            rep.add("certificate-kind", std::string("none"));
        }
    } else {
        throw ParseError("unknown property: " + property);
    }
    rep.add("elapsed-ms", timer.ms());
    emit(rep, out_path);
    return 0;
}

int run_probe(const std::string& rule_path, const std::string& check, int bound,
              std::uint64_t seed, bool seed_set, const std::string& out_path, const Caps& caps) {
    Timer timer;
    auto rule = parse_rule(slurp(rule_path));
    Report rep("probe");
    rep.add("rule-file", rule_path);
    rep.add("group", rule.group().spec());
    rep.add("check", check);
    rep.add("bound", bound);

    if (check == "balanced") {
        auto res = check_balanced(rule, bound, caps);
        rep.add("status", std::string(to_string(res.status)));
        if (res.status == ProbeStatus::yes)
            rep.add("note", std::string("verified up to n_max = ") + std::to_string(res.n_max));
        if (res.deviation) {
            rep.add("deviation-pattern", pattern_to_string(res.deviation->pattern));
            rep.add("deviation-count", res.deviation->count);
            rep.add("deviation-expected", res.deviation->expected);
        }
    } else if (check == "erasable") {
        auto res = find_mutually_erasable(rule, bound, caps);
        rep.add("status", std::string(to_string(res.status)));
        rep.add("m-found", res.m_found);
        if (!res.note.empty()) rep.add("note", res.note);
        if (res.pair) {
            rep.add("certificate-p1", pattern_to_string(res.pair->first));
            rep.add("certificate-p2", pattern_to_string(res.pair->second));
        }
    } else if (check == "postsurjective") {
        ProbeOptions opts;
        opts.n_max = bound;
        auto res = post_surjectivity_probe(rule, opts, caps);
        rep.add("status", std::string(to_string(res.status)));
        rep.add("estimated-n", res.estimated_n);
        rep.add("note", res.note);
        rep.add("instances", static_cast<std::uint64_t>(res.instances.size()));
        for (size_t i = 0; i < res.instances.size(); ++i) {
            std::ostringstream row;
            row << "instance " << i << " corrected-n " << res.instances[i].corrected_n;
            rep.row(row.str());
        }
        if (res.failing_instance)
            rep.add("failing-instance", static_cast<std::uint64_t>(*res.failing_instance));
    } else if (check == "inverse") {
        ProbeOptions opts;
        opts.n_max = bound;
        auto res = synthesize_inverse_patch(rule, opts, caps);
        rep.add("status", std::string(to_string(res.status)));
        if (res.status == ProbeStatus::yes) {
            rep.add("estimated-n", res.estimated_n);
            rep.add("patch-radius-used", res.patch_radius_used);
            add_rule_lines(rep, "inverse", *res.inverse);
            rep.add("note", std::string("verified exactly: both compositions equal the identity"));
        } else {
            rep.add("abort-reason", res.abort_reason);
        }
    } else if (check == "bijection") {
        if (!seed_set) throw ParseError("--seed is required for randomized pattern choice");
        auto rev = decide_reversible(rule, caps);
        if (!rev.reversible)
            throw Error(Diag::parse, "bijection check needs a reversible rule");
        const int s = rule.alphabet().size;
        auto dn = disk(rule.group(), bound, caps).elements;
        std::mt19937_64 rng(seed);
        std::uint64_t space = checked_pow(s, dn.size(), caps.enumeration, "pattern space");
        auto p1 = Pattern::from_index(dn, rng() % space, s);
        auto p2 = Pattern::from_index(dn, rng() % space, s);
        auto rep_b = balancedness_bijection(rule, *rev.inverse, p1, p2, 0, caps);
        rep.add("seed", seed);
        rep.add("p1", pattern_to_string(p1));
        rep.add("p2", pattern_to_string(p2));
        rep.add("q1-size", rep_b.q1_size);
        rep.add("q2-size", rep_b.q2_size);
        rep.add("expected", rep_b.expected);
        rep.add("bijection", rep_b.bijection);
        rep.add("roundtrip-identity", rep_b.roundtrip_identity);
    } else {
        throw ParseError("unknown check: " + check);
    }
    rep.add("elapsed-ms", timer.ms());
    emit(rep, out_path);
    return 0;
}

std::vector<std::uint32_t> parse_u_list(const std::string& u_arg, const LabeledGraph& g) {
    std::vector<std::uint32_t> u;
    if (u_arg.empty() || u_arg == "all") {
        for (std::uint32_t i = 0; i < g.vertex_count(); ++i) u.push_back(i);
        return u;
    }
    std::istringstream in(u_arg);
    std::string tok;
    while (std::getline(in, tok, ','))
        u.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    return u;
}

int run_sofic_verify(const std::string& graph_path, int r, double eps, const std::string& u_arg,
                     const std::string& out_path, const Caps& caps) {
    Timer timer;
    auto [graph, group] = parse_graph(slurp(graph_path));
    auto u = parse_u_list(u_arg, graph);
    auto verdict = verify_approximation(graph, u, r, group, eps, caps);
    Report rep("sofic verify");
    rep.add("graph-file", graph_path);
    rep.add("group", group.spec());
    rep.add("r", r);
    rep.add("epsilon", eps);
    rep.add("u-size", verdict.u_size);
    rep.add("v-size", verdict.v_size);
    rep.add("verdict", verdict.ok);
    if (!verdict.ok) rep.add("note", verdict.note);
    if (verdict.offending_vertex)
        rep.add("offending-vertex", static_cast<std::uint64_t>(*verdict.offending_vertex));
    rep.add("elapsed-ms", timer.ms());
    emit(rep, out_path);
    return 0;
}

int run_sofic_pack(const std::string& graph_path, int ell, const std::string& u_arg,
                   const std::string& out_path, const Caps& caps) {
    Timer timer;
    auto [graph, group] = parse_graph(slurp(graph_path));
    auto u = parse_u_list(u_arg, graph);
    auto w = greedy_packing(graph, u, ell, group, caps);
    Report rep("sofic pack");
    rep.add("graph-file", graph_path);
    rep.add("ell", ell);
    rep.add("w-size", static_cast<std::uint64_t>(w.size()));
    std::ostringstream ws;
    for (size_t i = 0; i < w.size(); ++i) ws << (i ? "," : "") << w[i];
    rep.add("w", ws.str());
    rep.add("elapsed-ms", timer.ms());
    emit(rep, out_path);
    return 0;
}

int run_sofic_phicount(const std::string& graph_path, const std::string& rule_path,
                       const std::string& u_arg, std::uint64_t seed, const std::string& out_path,
                       const Caps& caps) {
    Timer timer;
    auto [graph, group] = parse_graph(slurp(graph_path));
    auto rule = parse_rule(slurp(rule_path));
    if (!(rule.group() == group))
        throw GroupMismatchError("rule group " + rule.group().spec() +
                                 " does not match graph group " + group.spec());
    auto u = parse_u_list(u_arg, graph);
    auto res = phi_image_count(graph, u, rule, caps, seed);
    Report rep("sofic phicount");
    rep.add("graph-file", graph_path);
    rep.add("rule-file", rule_path);
    rep.add("u-size", static_cast<std::uint64_t>(u.size()));
    rep.add("distinct-images", res.distinct);
    rep.add("exact", res.exact);
    rep.add("patterns-enumerated", res.patterns_enumerated);
    if (!res.exact) rep.add("note", std::string("sampling mode: lower bound, not exact"));
    rep.add("elapsed-ms", timer.ms());
    emit(rep, out_path);
    return 0;
}

int run_sofic_feasibility(int s, std::uint64_t dr, std::uint64_t d2r, double eps,
                          const std::string& out_path) {
    Timer timer;
    auto res = counting_feasibility(s, dr, d2r, eps);
    Report rep("sofic feasibility");
    rep.add("s", s);
    rep.add("size-dr", dr);
    rep.add("size-d2r", d2r);
    rep.add("epsilon", eps);
    rep.add("feasible", res.feasible);
    rep.add("log-margin", res.log_margin);
    rep.add("elapsed-ms", timer.ms());
    emit(rep, out_path);
    return 0;
}

int run_sofic_torus(int d, int n, int r, const std::string& out_path, const Caps& caps) {
    Timer timer;
    auto approx = torus_approximation(d, n, r, caps);
    Report rep("sofic torus");
    rep.add("d", d);
    rep.add("n", n);
    rep.add("r", r);
    rep.add("v-size", static_cast<std::uint64_t>(approx.graph.vertex_count()));
    rep.add("u-size", static_cast<std::uint64_t>(approx.u.size()));
    rep.add("verified", true);
    rep.add("graph", std::string("graph-file"));
    std::istringstream lines(serialize_graph(approx.graph, Group::free_abelian(d)));
    std::string line;
    while (std::getline(lines, line)) rep.row(line);
    rep.add("elapsed-ms", timer.ms());
    emit(rep, out_path);
    return 0;
}

int run_sofic_permutation(int k, int n, int r, std::uint64_t seed, const std::string& out_path,
                          const Caps& caps) {
    Timer timer;
    auto res = permutation_approximation(k, n, r, seed, caps);
    Report rep("sofic permutation");
    rep.add("k", k);
    rep.add("n", n);
    rep.add("r", r);
    rep.add("seed", seed);
    rep.add("u-size", static_cast<std::uint64_t>(res.u.size()));
    rep.add("measured-epsilon", res.measured_epsilon);
    rep.add("note", std::string("measured on this instance; no claim beyond it"));
    rep.add("elapsed-ms", timer.ms());
    emit(rep, out_path);
    return 0;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file: " + path);
    out << content;
}

int run_demo(const std::string& example, const std::string& outdir, const std::string& out_path,
             const Caps& caps) {
    Timer timer;
    NamedExample ex;
    if (example == "xor102")
        ex = run_example_xor102(caps);
    else if (example == "majority-f2")
        ex = run_example_majority_f2(caps);
    else if (example == "golden-mean")
        ex = run_example_golden_mean(caps);
    else if (example == "cut-and-paste")
        ex = run_example_cut_and_paste(caps);
    else
        throw ParseError("unknown example: " + example);

    Report rep("demo");
    rep.add("example", ex.id);
    rep.add("summary", ex.summary);
    rep.add("assertions", static_cast<std::uint64_t>(ex.assertions.size()));
    for (const auto& a : ex.assertions) {
        std::ostringstream row;
        row << (a.pass ? "[pass] " : "[FAIL] ") << a.name << " = " << a.actual << " (expected "
            << a.expected << "; " << a.how << ")";
        rep.row(row.str());
    }
    rep.add("all-pass", ex.all_pass());

    // plot-data files for external rendering
    std::string base = outdir.empty() ? "." : outdir;
    if (ex.id == "golden-mean") {
        auto gm = golden_mean();
        std::string tsv = "n\tcount\n";
        for (int n = 1; n <= 15; ++n)
            tsv += std::to_string(n) + "\t" + std::to_string(sft_language_count(gm, n, caps)) + "\n";
        write_file(base + "/golden_mean_counts.tsv", tsv);
        rep.add("plot-data", base + "/golden_mean_counts.tsv");
    } else if (ex.id == "majority-f2") {
        auto w = non_postsurj_witness_f2(4, caps);
        std::string tsv = "element\tlength\tc\te\tc_changed\n";
        for (const auto& g : w.c.support())
            tsv += g.to_string() + "\t" + std::to_string(g.word_length()) + "\t" +
                   std::to_string(w.c.at(g)) + "\t" + std::to_string(w.e.at(g)) + "\t" +
                   std::to_string(w.c_changed.at(g)) + "\n";
        write_file(base + "/majority_f2_ball.tsv", tsv);
        rep.add("plot-data", base + "/majority_f2_ball.tsv");

        // preimage-count table over all D_1 patterns in one pass
        auto maj = majority_f2();
        Group f2 = Group::free_group(2);
        auto d1 = disk(f2, 1, caps).elements;
        auto d2 = disk(f2, 2, caps).elements;
        ApplyPlan plan(maj, d2, d1);
        std::vector<std::uint64_t> hist(32, 0);
        std::vector<std::uint8_t> q(d2.size(), 0);
        do {
            std::uint64_t img = 0;
            for (size_t t = 0; t < d1.size(); ++t) img = img * 2 + plan.eval(t, q.data());
            ++hist[img];
        } while (next_assignment(q, 2));
        std::string counts = "pattern-index\tpattern\tcount\texpected\n";
        for (std::uint64_t i = 0; i < 32; ++i)
            counts += std::to_string(i) + "\t" +
                      pattern_to_string(Pattern::from_index(d1, i, 2)) + "\t" +
                      std::to_string(hist[i]) + "\t4096\n";
        write_file(base + "/majority_f2_counts.tsv", counts);
        rep.add("plot-data", base + "/majority_f2_counts.tsv");
    } else if (ex.id == "xor102") {
        // space-time diagram of the single-1 seed
        auto rule = xor_rule102();
        Group z = Group::free_abelian(1);
        auto c = PatchedConfiguration::uniform(z, Alphabet(2), 0)
                     .with_value(GroupElement::identity(z), 1);
        std::string tsv = "step\tcells_-30..30\n";
        for (int step = 0; step <= 30; ++step) {
            std::string line;
            for (int x = -30; x <= 30; ++x)
                line += std::to_string(c.at(GroupElement::point(z, {x})));
            tsv += std::to_string(step) + "\t" + line + "\n";
            c = apply_global(rule, c);
        }
        write_file(base + "/xor102_spacetime.tsv", tsv);
        rep.add("plot-data", base + "/xor102_spacetime.tsv");
    } else if (ex.id == "cut-and-paste") {
        auto win = cut_and_paste_demo(golden_mean(), {0, 1}, {0, 0}, 0, caps);
        std::string tsv = "position\tvalue\tin-patch\n";
        for (size_t i = 0; i < win.values.size(); ++i) {
            std::int64_t x = win.start + static_cast<std::int64_t>(i);
            bool in_patch = x >= win.patch_start &&
                            x < win.patch_start + static_cast<std::int64_t>(win.patch_length);
            tsv += std::to_string(x) + "\t" + std::to_string(win.values[i]) + "\t" +
                   (in_patch ? "1" : "0") + "\n";
        }
        write_file(base + "/cut_and_paste_window.tsv", tsv);
        rep.add("plot-data", base + "/cut_and_paste_window.tsv");
    }

    rep.add("elapsed-ms", timer.ms());
    emit(rep, out_path);
    return ex.all_pass() ? 0 : 1;
}

int run_suite(const std::string& out_path) {
    Timer timer;
    auto results = run_acceptance();
    Report rep("suite");
    rep.add("criteria", static_cast<std::uint64_t>(results.size()));
    bool all = true;
    for (const auto& r : results) {
        rep.row(format_acceptance_line(r));
        all = all && r.pass;
    }
    rep.add("all-pass", all);
    rep.add("elapsed-ms", timer.ms());
    emit(rep, out_path);
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cellular automata over groups: exact 1d decisions, bounded probes, "
                 "sofic approximations, worked examples"};
    app.require_subcommand(1);
    Caps caps = Caps::from_env();

    std::string rule_path, graph_path, out_path, outdir, property, check, example, u_arg;
    int bound = 3, r = 1, ell = 1, d = 1, n = 8, k = 2, s = 2;
    std::uint64_t seed = 0, dr = 5, d2r = 17;
    double eps = 0.5;
    bool seed_set = false;

    auto* decide = app.add_subcommand("decide", "exact decision procedures over Z");
    decide->add_option("--rule", rule_path, "rule file")->required();
    decide->add_option("--property", property,
                       "surjective|preinjective|reversible|postsurjective|balanced")
        ->required();
    decide->add_option("--nmax", bound, "counting bound for balanced (default 3)");
    decide->add_option("--out", out_path, "write the report here instead of stdout");

    auto* probe = app.add_subcommand("probe", "bounded probes over any supported group");
    probe->add_option("--rule", rule_path, "rule file")->required();
    probe->add_option("--check", check, "balanced|erasable|postsurjective|inverse|bijection")
        ->required();
    probe->add_option("--bound", bound, "probe bound")->required();
    probe->add_option("--seed", seed, "seed for randomized choices")->each([&](const std::string&) {
        seed_set = true;
    });
    probe->add_option("--out", out_path, "write the report here instead of stdout");

    auto* sofic = app.add_subcommand("sofic", "sofic approximation toolbox");
    sofic->require_subcommand(1);
    auto* sverify = sofic->add_subcommand("verify", "check both approximation clauses");
    sverify->add_option("--graph", graph_path, "graph file")->required();
    sverify->add_option("--r", r, "ball radius")->required();
    sverify->add_option("--eps", eps, "epsilon")->required();
    sverify->add_option("--u", u_arg, "marked vertices: 'all' or comma list (default all)");
    sverify->add_option("--out", out_path, "report path");
    auto* spack = sofic->add_subcommand("pack", "greedy disjoint-ball packing");
    spack->add_option("--graph", graph_path, "graph file")->required();
    spack->add_option("--ell", ell, "packing radius")->required();
    spack->add_option("--u", u_arg, "marked vertices (default all)");
    spack->add_option("--out", out_path, "report path");
    auto* sphi = sofic->add_subcommand("phicount", "count distinct rule images on a graph");
    sphi->add_option("--graph", graph_path, "graph file")->required();
    sphi->add_option("--rule", rule_path, "rule file")->required();
    sphi->add_option("--u", u_arg, "marked vertices (default all)");
    sphi->add_option("--seed", seed, "sampling seed when over the enumeration cap");
    sphi->add_option("--out", out_path, "report path");
    auto* sfeas = sofic->add_subcommand("feasibility", "the counting argument's epsilon check");
    sfeas->add_option("--s", s, "alphabet size")->required();
    sfeas->add_option("--dr", dr, "|D_r|")->required();
    sfeas->add_option("--d2r", d2r, "|D_2r|")->required();
    sfeas->add_option("--eps", eps, "epsilon")->required();
    sfeas->add_option("--out", out_path, "report path");
    auto* storus = sofic->add_subcommand("torus", "generate a verified torus approximation");
    storus->add_option("--d", d, "dimension")->required();
    storus->add_option("--n", n, "side length")->required();
    storus->add_option("--r", r, "radius")->required();
    storus->add_option("--out", out_path, "report path");
    auto* sperm = sofic->add_subcommand("permutation", "random-permutation candidate for F_k");
    sperm->add_option("--k", k, "free-group rank")->required();
    sperm->add_option("--n", n, "vertex count")->required();
    sperm->add_option("--r", r, "radius to verify")->required();
    sperm->add_option("--seed", seed, "permutation seed")->required();
    sperm->add_option("--out", out_path, "report path");

    auto* demo = app.add_subcommand("demo", "replay a worked example");
    demo->add_option("--example", example, "xor102|majority-f2|golden-mean|cut-and-paste")
        ->required();
    demo->add_option("--outdir", outdir, "directory for plot-data files (default .)");
    demo->add_option("--out", out_path, "report path");

    auto* suite = app.add_subcommand("suite", "run the acceptance suite");
    bool acceptance = false;
    suite->add_flag("--acceptance", acceptance, "run every acceptance criterion");
    suite->add_option("--out", out_path, "report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(cago::Diag::usage);
    }

    try {
        if (decide->parsed()) return run_decide(rule_path, property, bound, out_path, caps);
        if (probe->parsed())
            return run_probe(rule_path, check, bound, seed, seed_set, out_path, caps);
        if (sofic->parsed()) {
            if (sverify->parsed()) return run_sofic_verify(graph_path, r, eps, u_arg, out_path, caps);
            if (spack->parsed()) return run_sofic_pack(graph_path, ell, u_arg, out_path, caps);
            if (sphi->parsed())
                return run_sofic_phicount(graph_path, rule_path, u_arg, seed, out_path, caps);
            if (sfeas->parsed()) return run_sofic_feasibility(s, dr, d2r, eps, out_path);
            if (storus->parsed()) return run_sofic_torus(d, n, r, out_path, caps);
            if (sperm->parsed()) return run_sofic_permutation(k, n, r, seed, out_path, caps);
        }
        if (demo->parsed()) return run_demo(example, outdir, out_path, caps);
        if (suite->parsed()) return run_suite(out_path);
    } catch (const cago::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.diag());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return static_cast<int>(cago::Diag::internal);
    }
    return 0;
}
