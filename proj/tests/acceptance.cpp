// Acceptance suite: one PASS/FAIL line per criterion.

#include "support.hpp"

#include "vsd/baselines.hpp"
#include "vsd/corpus.hpp"
#include "vsd/engine.hpp"
#include "vsd/error.hpp"
#include "vsd/eval.hpp"
#include "vsd/sampler.hpp"
#include "vsd/sbl.hpp"
#include "vsd/similarity.hpp"
#include "vsd/synthetic.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

using namespace vsd;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects named checks; the first failure is reported.
class Checks {
public:
    void expect(bool ok, const std::string & what) {
        ++count_;
        if (!ok && first_failure_.empty()) first_failure_ = what;
    }
    void near(double got, double want, double tol, const std::string & what) {
        std::ostringstream s;
        s << what << ": got " << got << ", want " << want;
        expect(std::abs(got - want) <= tol, s.str());
    }
    Outcome outcome(const std::string & summary) const {
        if (!first_failure_.empty()) return {false, first_failure_};
        return {true, std::to_string(count_) + " checks; " + summary};
    }

private:
    std::size_t count_ = 0;
    std::string first_failure_;
};

Outcome formula_conformance() {
    constexpr double tol = 1e-9;
    Checks c;

    auto t = test::thesaurus_of({{"1234567", "a"}, {"1234568", "b"}, {"2234567", "c"}});
    c.expect(t->path_length("a", "b") == 2, "path length 1234567/1234568");
    c.expect(t->path_length("a", "c") == 14, "path length 1234567/2234567");
    auto tbl = SimilarityTable::standard();
    const std::map<std::size_t, double> table = {{0, 11}, {2, 10}, {4, 9}, {6, 8}, {8, 7}, {10, 5}, {12, 0}};
    c.expect(tbl.mapping() == table, "similarity table");
    for (const auto & [len, v] : table) c.expect(tbl.lookup(len) == v, "table lookup " + std::to_string(len));
    c.expect(tbl.lookup(14) == 0, "table clamp at 14");

    std::istringstream tagged("kare/N ga/P hon/N wo/P kau/V\n");
    auto cooc = extract_cooc(tagged);
    c.expect(cooc.tuples == std::map<CoocTable::Key, long>{{{"kare", "ga", "kau"}, 1}, {{"hon", "wo", "kau"}, 1}},
             "co-occurrence extraction");

    CoocTable tf;
    tf.tuples[{"a", "wo", "kau"}] = 3;
    tf.tuples[{"b", "wo", "kau"}] = 1;
    tf.recount_nouns();
    tf.noun_types = 8;
    c.near(build_vector(tf, "a").terms.at({"wo", "kau"}), 3 * std::log(4.0), tol, "tf-idf");
    c.near(build_vector(tf, "a").terms.at({"wo", "kau"}), 4.1589, 5e-5, "tf-idf rounded");

    WordVector xy, x;
    xy.terms = {{{"x", "v"}, 1.0}, {{"y", "v"}, 1.0}};
    x.terms = {{{"x", "v"}, 1.0}};
    c.near(cosine(xy, x), 1 / std::sqrt(2.0), tol, "cosine");

    auto ict = test::thesaurus_of({{"11", "a"}, {"12", "b"}, {"21", "c"}});
    ClassFrequency freq({{"", 40}, {"1", 10}, {"11", 4}, {"12", 6}, {"2", 30}, {"21", 30}});
    c.near(ic_similarity(*ict, freq, "a", "b"), std::log(4.0), tol, "information content at P=0.25");
    c.near(ic_similarity(*ict, freq, "a", "a"), std::log(10.0), tol, "self information at P=0.1");

    auto frames = SenseDatabase::build({test::sense("v", "gn", {{"ga", {"a"}}, {"ni", {"c"}}})}, {});
    c.expect(filter_senses(frames, test::example(1, "v", {{"ga", "a"}, {"wo", "b"}})).empty(), "case filtering");

    auto simt = test::thesaurus_of({{"11", "n"}, {"21", "e1"}, {"12", "e2"}});
    auto sm = Measure::table(simt, std::make_shared<SimilarityTable>(std::map<std::size_t, double>{{0, 11}, {2, 9}, {4, 4}}));
    c.expect(sm("n", "e1") == 4 && sm("n", "e2") == 9, "SIM fixture");
    c.expect(sim_case("n", std::set<Word>{"e1", "e2"}, sm) == 9, "SIM is the maximum");

    auto ccdt = test::thesaurus_of({{"1000000", "A"}, {"2000000", "B"}, {"3000000", "C"}, {"4000000", "D"}});
    auto ccddb = SenseDatabase::build({test::sense("v", "s1", {{"wo", {"A", "B", "C"}}}),
                                       test::sense("v", "s2", {{"wo", {"C", "D"}}})},
                                      {});
    c.near(compute_ccd(ccddb, "v", ccdt.get(), 1.0, 5).weight("wo"), 0.6, tol, "CCD");

    CcdProfile w;
    w.overlap = {{"ga", 0.2}, {"wo", 0.8}};
    c.near(combine_sims({{"ga", 0.8}, {"wo", 0.5}}, w, ScoringMode::weighted), 0.56, tol, "weighted score");
    c.near(certainty(0.9, 0.5, 0.5), 0.65, tol, "certainty");

    std::vector<Example> ctx = {test::example(1, "v", {{"wo", "a"}}), test::example(2, "v", {{"wo", "b"}})};
    ctx[0].context = ctx[1].context = "d";
    std::vector<ScoredInterpretation> tied(2);
    tied[0].chosen = "first";
    tied[1].chosen = "second";
    tied[0].certainty = tied[1].certainty = 0.4;
    c.expect(propagate_context(ctx, tied)[1].chosen == "first", "propagation tie");

    auto mfs = SenseDatabase::build({test::sense("v", "s2", {{"ga", {"a"}}}), test::sense("v", "s1", {{"ga", {"a"}}})},
                                    {test::example(1, "v", {{"ga", "a"}}, "s1"), test::example(2, "v", {{"ga", "a"}}, "s2")});
    c.expect(most_frequent_sense(mfs, "v") == "s1", "MFS tie");
    c.near(association(0.8, 0.2), 0.8 * std::log(4.0), tol, "association");
    c.near(association(0.8, 0.2), 1.1090, 5e-5, "association rounded");

    auto nbt = test::thesaurus_of({{"1000000", "x"}, {"2000000", "y"}});
    NbModel nb;
    nb.verb = "v";
    nb.level = 1;
    nb.priors = {{"s1", 0.5}, {"s2", 0.5}};
    nb.cases = {"ga", "wo"};
    nb.order = {"s1", "s2"};
    nb.likelihoods[{"s1", "ga"}] = {{"1", 0.9}};
    nb.likelihoods[{"s1", "wo"}] = {{"2", 0.2}};
    nb.likelihoods[{"s2", "ga"}] = {{"1", 0.4}};
    nb.likelihoods[{"s2", "wo"}] = {{"2", 0.5}};
    for (const auto & [k, d] : nb.likelihoods) nb.unseen[k] = 0.01;
    c.expect(naive_bayes_classify(test::example(1, "v", {{"ga", "x"}, {"wo", "y"}}), nb, *nbt) == "s2",
             "naive Bayes product");

    std::vector<SblItem> three = {{"w1", Code("11")}, {"w2", Code("12")}, {"w3", Code("21")}};
    auto sibs = build_equations(three, [](const SblItem &, const SblItem &) { return 0.0; });
    c.expect(sibs.front().branches == std::vector<BranchId>{"11", "12"}, "sibling equation");
    std::map<std::pair<std::string, std::string>, double> st = {{{"w1", "w2"}, 2}, {{"w1", "w3"}, 4}, {{"w2", "w3"}, 4}};
    auto eqs = build_equations(three, [&](const SblItem & a, const SblItem & b) {
        return st.at(std::minmax(a.label, b.label));
    });
    auto model = solve_partitioned(eqs, {1, 1, false});
    c.near(model.lengths.at("11"), 1, tol, "b1");
    c.near(model.lengths.at("12"), 1, tol, "b2");
    c.near(model.lengths.at("1") + model.lengths.at("2") + model.lengths.at("21"), 3, tol, "upper segment");
    c.near(sbl_path_sum(model, Code("11"), Code("21")), 4, tol, "sbl(w1, w3)");

    auto tree = test::random_tree(6, 150);
    BranchLengthModel uniform;
    uniform.level = tree.truth.level;
    for (const auto & [br, len] : tree.truth.lengths) uniform.lengths[br] = -1.0;
    auto rep = eval_inequality(uniform, tree.leaves,
                               [&](const SblItem & a, const SblItem & b) { return sbl_path_sum(tree.truth, a.code, b.code); },
                               500, 1);
    c.expect(rep.ratio == rep.baseline_ratio, "uniform lengths equal the baseline");

    std::vector<Decision> ds;
    for (ExampleId i = 0; i < 100; ++i)
        ds.push_back({i, "v", "s1", {i < 60 ? std::optional<SenseId>("s1") : i < 80 ? std::optional<SenseId>("s2") : std::nullopt, 0}});
    auto m = compute_metrics(ds).pooled;
    c.near(m.coverage, 0.8, tol, "coverage");
    c.near(*m.accuracy, 0.75, tol, "accuracy");
    SenseDistance sd;
    sd.set("v", "a", "b", 2);
    sd.set("v", "a", "c", 4);
    c.near(acceptability(sd, "v", "a", "b"), 0.5, tol, "acceptability");
    c.near(f_measure(0.6, 0.4), 0.48, tol, "F-measure");

    // skewed corpus: majority s1 takes 2/3 of every training fold
    std::vector<Example> skew;
    for (ExampleId i = 0; i < 18; ++i) skew.push_back(test::example(i, "v", {{"wo", "a"}}, i % 3 == 0 ? "s2" : "s1"));
    MethodConfig mc;
    mc.method = Method::mfs;
    auto cv = cross_validate({test::sense("v", "s1", {{"wo", {"a"}}}), test::sense("v", "s2", {{"wo", {"a"}}})}, skew,
                             6, 1, make_trainer(mc, nullptr, std::nullopt));
    c.near(*cv.aggregate.pooled.accuracy, 12.0 / 18.0, tol, "MFS majority rate");
    return c.outcome("tolerance 1e-9, table exact");
}

double probe_accuracy(const SyntheticCorpus & s, ScoringMode mode) {
    auto t = std::make_shared<Thesaurus>(s.thesaurus);
    EngineParams p;
    p.mode = mode;
    Engine engine(SenseDatabase::build(s.lexicon, {}), test::table_measure(t), t, p);
    std::size_t right = 0;
    for (const auto & x : s.examples) right += engine.disambiguate(x).chosen == *x.label;
    return static_cast<double>(right) / static_cast<double>(s.examples.size());
}

Outcome ccd_effect() {
    std::size_t ok = 0;
    double worst_plain = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        CcdProbeSpec spec;
        spec.seed = seed;
        auto s = generate_ccd_probe(spec);
        double wt = probe_accuracy(s, ScoringMode::weighted);
        double lx = probe_accuracy(s, ScoringMode::lexicographic);
        double un = probe_accuracy(s, ScoringMode::unweighted);
        worst_plain = std::max(worst_plain, un);
        ok += wt == 1.0 && lx == 1.0 && un < 1.0;
    }
    std::ostringstream d;
    d << ok << "/10 seeds with weighted = lexicographic = 1 > unweighted (max unweighted " << worst_plain
      << "); need 10/10";
    return {ok == 10, d.str()};
}

Outcome sampler_equivalence() {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto msg = test::check_sampler_instance(seed);
        if (!msg.empty()) return {false, msg};
    }
    return {true, "200/200 instances equal brute force exactly"};
}

Outcome learning_curves() {
    std::size_t tu_wins = 0, first_hits = 0;
    std::ostringstream runs;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SyntheticSpec spec;
        spec.senses = 2 + seed % 3;
        std::size_t total = 100 + 20 * (seed - 1);
        spec.cluster_sizes = skewed_cluster_sizes(total, 5 * spec.senses);
        spec.seed = seed;
        auto s = generate_synthetic(spec);
        auto t = std::make_shared<Thesaurus>(s.thesaurus);
        auto m = test::table_measure(t);
        auto seed_db = SenseDatabase::build(s.lexicon, {});

        std::vector<ExampleId> ids;
        for (const auto & x : s.examples) ids.push_back(x.id);
        auto plan = make_folds(ids, 4, seed);
        std::vector<Example> train, test;
        std::map<std::size_t, std::size_t> pool_cluster;
        for (const auto & x : s.examples) {
            if (plan.assignments.at(x.id) == 0) {
                test.push_back(x);
            } else {
                train.push_back(x);
                ++pool_cluster[s.cluster[x.id]];
            }
        }
        std::size_t largest = 0;
        for (const auto & [k, n] : pool_cluster) largest = std::max(largest, n);

        SamplerParams tu;
        tu.strategy = Strategy::tu;
        tu.seed = seed;
        SamplerState st(seed_db, {}, train, m, t, tu);
        auto first = st.select_next();
        first_hits += first && pool_cluster[s.cluster[first->id]] == largest;

        double terminal = terminal_accuracy(seed_db, train, test, m, t, tu.engine);
        LearningOptions lo;
        lo.stop_at = 0.9 * terminal;
        auto tu_need = annotations_to_reach(learning_curve(seed_db, train, test, m, t, tu, lo), 0.9 * terminal);
        SamplerParams rnd = tu;
        rnd.strategy = Strategy::random;
        auto rnd_need = annotations_to_reach(learning_curve(seed_db, train, test, m, t, rnd, lo), 0.9 * terminal);
        tu_wins += tu_need && rnd_need && *tu_need <= *rnd_need;
        runs << (seed > 1 ? " " : "") << (tu_need ? std::to_string(*tu_need) : "-") << '/'
             << (rnd_need ? std::to_string(*rnd_need) : "-");
    }
    std::ostringstream d;
    d << "TU <= random in " << tu_wins << "/10 (need 8), first pick in largest cluster " << first_hits
      << "/10 (need 9); annotations tu/random: " << runs.str();
    return {tu_wins >= 8 && first_hits >= 9, d.str()};
}

Outcome sbl_recovery() {
    double worst = 0, worst_ratio = 1;
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        auto tree = test::random_tree(seed, 500);
        auto target = [&](const SblItem & a, const SblItem & b) { return sbl_path_sum(tree.truth, a.code, b.code); };
        auto eqs = build_equations(tree.leaves, target);
        for (std::size_t n : {1, 5, 15}) {
            auto model = solve_partitioned(eqs, {n, seed, false});
            for (const auto & eq : eqs)
                worst = std::max(worst, std::abs(sbl_path_sum(model, tree.leaves[eq.a].code, tree.leaves[eq.b].code) -
                                                 eq.target));
            worst_ratio = std::min(worst_ratio, eval_inequality(model, tree.leaves, target, 1000, seed).ratio);
        }
    }

    std::size_t noisy_ok = 0;
    for (std::uint64_t seed = 101; seed <= 110; ++seed) {
        auto tree = test::random_tree(seed, 500);
        std::map<std::pair<std::string, std::string>, double> noisy;
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::size_t i = 0; i < tree.leaves.size(); ++i)
            for (std::size_t j = i + 1; j < tree.leaves.size(); ++j) {
                double v = sbl_path_sum(tree.truth, tree.leaves[i].code, tree.leaves[j].code);
                noisy[{tree.leaves[i].label, tree.leaves[j].label}] = v;
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> noise(0, 0.1 * (hi - lo));
        for (auto & [k, v] : noisy) v += noise(rng);
        auto target = [&](const SblItem & a, const SblItem & b) {
            auto it = noisy.find({a.label, b.label});
            return it != noisy.end() ? it->second : noisy.at({b.label, a.label});
        };
        auto model = solve_partitioned(build_equations(tree.leaves, target), {5, seed, false});
        auto rep = eval_inequality(model, tree.leaves, target, 2000, seed);
        noisy_ok += rep.ratio >= rep.baseline_ratio;
    }
    std::ostringstream d;
    d << "n in {1,5,15}: max path-sum error " << worst << " (tol 1e-6), min ratio " << worst_ratio
      << " (need 1.0); noisy >= baseline " << noisy_ok << "/10 (need 9)";
    return {worst <= 1e-6 && worst_ratio == 1.0 && noisy_ok >= 9, d.str()};
}

Outcome coverage_and_lambda() {
    Checks c;
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-20, 20);
    for (int i = 0; i < 10000; ++i) {
        double a = u(rng), b = u(rng);
        double s1 = std::max(a, b), s2 = std::min(a, b);
        c.expect(certainty(s1, s2, 1.0) == s1, "lambda = 1 gives the top score");
        c.expect(certainty(s1, s2, 0.0) == s1 - s2, "lambda = 0 gives the margin");
    }
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SyntheticSpec spec;
        spec.senses = 3;
        spec.overlap = {0.5, 0.0};
        spec.noise = 0.2;
        spec.cluster_sizes = skewed_cluster_sizes(60, 8);
        spec.seed = seed;
        auto s = generate_synthetic(spec);
        auto t = std::make_shared<Thesaurus>(s.thesaurus);
        for (auto mode : {ScoringMode::weighted, ScoringMode::lexicographic, ScoringMode::unweighted}) {
            MethodConfig mc;
            mc.engine.mode = mode;
            auto cv = cross_validate(s.lexicon, s.examples, 5, seed, make_trainer(mc, t, test::table_measure(t)));
            std::vector<double> th = {-std::numeric_limits<double>::infinity()};
            for (double x = -1; x <= 12; x += 0.05) th.push_back(x);
            auto curve = coverage_accuracy_curve(cv.decisions, th);
            c.expect(curve.front().coverage == 1.0, "coverage 1 at -inf");
            for (std::size_t i = 1; i < curve.size(); ++i)
                c.expect(curve[i].coverage <= curve[i - 1].coverage, "coverage non-increasing");
        }
    }
    return c.outcome("coverage non-increasing on 15 runs, lambda endpoints exact");
}

Outcome folds_and_gold() {
    Checks c;
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t n = std::uniform_int_distribution<std::size_t>(1, 300)(rng);
        std::size_t k = std::uniform_int_distribution<std::size_t>(1, n)(rng);
        std::vector<ExampleId> ids(n);
        for (std::size_t i = 0; i < n; ++i) ids[i] = 3 * i + 1;
        auto plan = make_folds(ids, k, rng());
        std::set<ExampleId> seen;
        std::size_t lo = n, hi = 0;
        for (std::size_t f = 0; f < k; ++f) {
            auto fold = plan.fold(f);
            lo = std::min(lo, fold.size());
            hi = std::max(hi, fold.size());
            for (auto id : fold) c.expect(seen.insert(id).second, "folds are disjoint");
        }
        c.expect(seen.size() == n, "folds cover every id");
        c.expect(hi - lo <= 1, "fold sizes differ by at most one");
    }
    auto s = generate_synthetic({});
    Trainer gold = [](const SenseDatabase &) -> Predictor {
        return [](const std::vector<Example> & xs) {
            std::vector<Prediction> out;
            for (const auto & x : xs) out.push_back({x.label, 1.0});
            return out;
        };
    };
    auto cv = cross_validate(s.lexicon, s.examples, 3, 1, gold);
    c.expect(cv.aggregate.pooled.accuracy == 1.0, "gold classifier accuracy");
    return c.outcome("500 (size, k) pairs, gold accuracy 1.0");
}

std::string slurp(const fs::path & p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome cli_determinism(const std::string & cli, const fs::path & work, const fs::path & data) {
    if (cli.empty()) return {false, "no --cli given"};
    const std::string exe = fs::absolute(cli).string();
    const std::string toru = "--thesaurus " + (data / "toru/thesaurus.tsv").string() + " --lexicon " +
                             (data / "toru/lexicon.tsv").string();
    auto run_all = [&](const fs::path & dir) -> std::string {
        fs::remove_all(dir);
        fs::create_directories(dir);
        const std::string d = dir.string(), syn = (dir / "syn").string();
        const std::string synargs = " --thesaurus " + syn + "/thesaurus.tsv --lexicon " + syn +
                                    "/lexicon.tsv --corpus " + syn + "/corpus.tsv";
        const std::vector<std::string> cmds = {
            "--seed 7 gen-synth --out-dir " + syn + " --senses 3 --total 60 --clusters 6 --overlap 0.5,0",
            "--seed 7 gen-synth --probe --out-dir " + d + "/probe",
            synargs + " disambiguate --input " + syn + "/corpus.tsv",
            synargs + " --seed 3 eval-cv --folds 4 --out-dir " + d + "/cv",
            synargs + " --seed 3 eval-cv --folds 4 --method nb --out-dir " + d + "/cv_nb",
            synargs + " --seed 3 curve --strategy tu --seeds 2 --max-steps 8 --out " + d + "/curve.tsv",
            synargs + " --seed 3 curve --strategy cbs --seeds 1 --max-steps 8",
            synargs + " --seed 3 sample --oracle gold --holdout-folds 4 --max-steps 12 --out-db " + d +
                "/db.tsv --curve-out " + d + "/sample_curve.tsv --log " + d + "/log.jsonl",
            "extract-cooc --input " + (data / "toru/tagged.txt").string() + " --out " + d + "/cooc.tsv",
            toru + " --cooc " + (data / "toru/cooc.tsv").string() + " --seed 5 fit-sbl --level 5 --subsets 2 --out " +
                d + "/sbl.tsv",
            toru + " --cooc " + (data / "toru/cooc.tsv").string() + " --seed 5 eval-sbl --model " + d + "/sbl.tsv",
            toru + " --corpus " + (data / "toru/corpus.tsv").string() + " disambiguate --propagate --input " +
                (data / "toru/input.tsv").string(),
        };
        for (std::size_t i = 0; i < cmds.size(); ++i) {
            auto out = (dir / ("stdout_" + std::to_string(i) + ".txt")).string();
            std::string cmd = "\"" + exe + "\" " + cmds[i] + " > \"" + out + "\" 2>&1";
            if (std::system(cmd.c_str()) != 0) return "command failed: " + cmds[i] + "\n" + slurp(out);
        }
        return "";
    };
    auto a = work / "run_a", b = work / "run_b";
    for (const auto & dir : {a, b})
        if (auto err = run_all(dir); !err.empty()) return {false, err};
    std::size_t files = 0;
    for (const auto & entry : fs::recursive_directory_iterator(a)) {
        if (!entry.is_regular_file()) continue;
        auto rel = fs::relative(entry.path(), a);
        auto other = b / rel;
        if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) return {false, rel.string() + " differs"};
        ++files;
    }
    for (const auto & entry : fs::recursive_directory_iterator(b))
        if (entry.is_regular_file() && !fs::exists(a / fs::relative(entry.path(), b)))
            return {false, fs::relative(entry.path(), b).string() + " only in the second run"};
    return {true, std::to_string(files) + " files byte-identical across two runs of 12 commands"};
}

} // namespace

int main(int argc, char ** argv) {
    CLI::App app{"Acceptance suite"};
    std::string cli, work = "acceptance_work", data = VSD_DATA_DIR;
    app.add_option("--cli", cli, "Path to the vsd_cli binary");
    app.add_option("--work", work, "Scratch directory")->capture_default_str();
    app.add_option("--data", data, "Directory holding the toru fixtures")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    struct Criterion {
        std::string name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"formula conformance", 0, formula_conformance},
        {"CCD effect", 10, ccd_effect},
        {"sampling oracle equivalence", 60, sampler_equivalence},
        {"learning-curve ordering", 120, learning_curves},
        {"SBL recovery", 60, sbl_recovery},
        {"certainty/coverage monotonicity", 0, coverage_and_lambda},
        {"cross-validation harness", 0, folds_and_gold},
        {"CLI determinism", 0, [&] { return cli_determinism(cli, work, data); }},
    };

    bool all = true;
    for (const auto & c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception & e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream time;
        time.precision(2);
        time << std::fixed << secs << " s";
        if (c.budget_s > 0) {
            time << " (limit " << c.budget_s << " s)";
            if (secs >= c.budget_s) {
                o.pass = false;
                o.detail += "; over time";
            }
        }
        all = all && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.name << ": " << o.detail << " [" << time.str() << "]"
                  << std::endl;
    }
    return all ? 0 : 1;
}
