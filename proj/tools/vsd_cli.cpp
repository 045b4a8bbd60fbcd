#include "text_util.hpp"
#include "vsd/baselines.hpp"
#include "vsd/corpus.hpp"
#include "vsd/engine.hpp"
#include "vsd/error.hpp"
#include "vsd/eval.hpp"
#include "vsd/sampler.hpp"
#include "vsd/sbl.hpp"
#include "vsd/service.hpp"
#include "vsd/similarity.hpp"
#include "vsd/synthetic.hpp"
#include "vsd/thesaurus.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace vsd;
namespace fs = std::filesystem;

namespace {

struct Common {
    std::string thesaurus, table, lexicon, corpus, cooc, sbl_model, word_freq;
    std::string measure = "table";
    std::string unknown = "zero";
    std::string mode = "lexicographic";
    double alpha = 1.0;
    double lambda = 0.5;
    std::size_t smoothing_level = 5;
    std::uint64_t seed = 1;
};

std::string fmt(double v) { return text::format_double(v); }

std::string fmt(const std::optional<double> & v) { return v ? fmt(*v) : "NA"; }

std::ofstream open_out(const std::string & path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    return out;
}

std::shared_ptr<const Thesaurus> need_thesaurus(const Common & c) {
    if (c.thesaurus.empty()) throw ArgumentError("--thesaurus is required");
    return std::make_shared<Thesaurus>(Thesaurus::load_file(c.thesaurus));
}

CoocTable need_cooc(const Common & c) {
    if (c.cooc.empty()) throw ArgumentError("--cooc is required");
    return load_cooc_file(c.cooc);
}

std::vector<SenseEntry> need_lexicon(const Common & c) {
    if (c.lexicon.empty()) throw ArgumentError("--lexicon is required");
    return load_lexicon_file(c.lexicon);
}

std::vector<Example> need_corpus(const Common & c) {
    if (c.corpus.empty()) throw ArgumentError("--corpus is required");
    return load_examples_file(c.corpus);
}

EngineParams engine_params(const Common & c) {
    EngineParams p;
    p.mode = parse_scoring_mode(c.mode);
    p.alpha = c.alpha;
    p.lambda = c.lambda;
    p.smoothing_level = c.smoothing_level;
    certainty(0, 0, p.lambda);
    if (!(p.alpha > 0)) throw ArgumentError("--alpha must be positive");
    return p;
}

Measure build_measure(const Common & c, const std::shared_ptr<const Thesaurus> & t) {
    auto policy = parse_unknown_policy(c.unknown);
    switch (parse_measure_kind(c.measure)) {
    case MeasureKind::table: {
        auto tbl = std::make_shared<SimilarityTable>(c.table.empty() ? SimilarityTable::standard()
                                                                     : SimilarityTable::load_file(c.table));
        return Measure::table(t, tbl, policy);
    }
    case MeasureKind::vsm: return Measure::vsm(std::make_shared<VectorSpace>(need_cooc(c)), policy);
    case MeasureKind::sbl:
        if (c.sbl_model.empty()) throw ArgumentError("--sbl-model is required for measure sbl");
        return Measure::sbl(t, std::make_shared<BranchLengthModel>(BranchLengthModel::load_file(c.sbl_model)), policy);
    case MeasureKind::ic: {
        if (c.word_freq.empty()) throw ArgumentError("--word-freq is required for measure ic");
        std::ifstream in(c.word_freq);
        if (!in) throw ConfigError("cannot open " + c.word_freq);
        return Measure::ic(t, std::make_shared<ClassFrequency>(ClassFrequency::from_word_counts(*t, ClassFrequency::count_words(in))),
                           policy);
    }
    }
    throw ArgumentError("unknown measure");
}

// Labeled and unlabeled examples of a corpus file, split by label presence.
std::pair<std::vector<Example>, std::vector<Example>> split_labeled(std::vector<Example> xs) {
    std::vector<Example> labeled, unlabeled;
    for (auto & x : xs) (x.label ? labeled : unlabeled).push_back(std::move(x));
    return {std::move(labeled), std::move(unlabeled)};
}

std::pair<std::vector<Example>, std::vector<Example>> holdout_split(const std::vector<Example> & xs, std::size_t folds,
                                                                    std::uint64_t seed) {
    if (folds == 0) return {xs, {}};
    std::vector<ExampleId> ids;
    for (const auto & x : xs) ids.push_back(x.id);
    auto plan = make_folds(ids, folds, seed);
    std::vector<Example> train, test;
    for (const auto & x : xs) (plan.assignments.at(x.id) == 0 ? test : train).push_back(x);
    return {std::move(train), std::move(test)};
}

void metrics_row(std::ostream & out, const std::string & name, const Metrics & m) {
    out << name << '\t' << m.inputs << '\t' << m.decisions << '\t' << m.correct << '\t' << fmt(m.accuracy) << '\t'
        << fmt(m.coverage) << '\t' << fmt(m.precision) << '\t' << fmt(m.recall) << '\t' << fmt(m.f);
    if (m.acceptability) out << '\t' << fmt(*m.acceptability);
    out << '\n';
}

// Per-class VSM over a cooc table generalized to `level`-digit classes.
struct ClassSpace {
    std::vector<SblItem> items;
    std::shared_ptr<VectorSpace> space;
};

ClassSpace class_space(const Thesaurus & t, const CoocTable & cooc, std::size_t level) {
    ClassSpace cs;
    auto g = generalize_cooc(cooc, t, level);
    cs.space = std::make_shared<VectorSpace>(g);
    for (const auto & [cls, v] : cs.space->vectors())
        if (!v.empty()) cs.items.push_back({cls, Code(cls)});
    return cs;
}

} // namespace

int main(int argc, char ** argv) {
    CLI::App app{"Verb-sense disambiguation toolkit"};
    app.set_config("--config", "", "Read `key = value` settings (flags override them)");
    app.require_subcommand(1);
    app.fallthrough();

    Common c;
    app.add_option("--thesaurus", c.thesaurus, "Thesaurus file (code<TAB>word)")->envname("VSD_THESAURUS");
    app.add_option("--table", c.table, "Path-length similarity table (default: built-in)")->envname("VSD_TABLE");
    app.add_option("--lexicon", c.lexicon, "Sense lexicon file")->envname("VSD_LEXICON");
    app.add_option("--corpus", c.corpus, "Example corpus file")->envname("VSD_CORPUS");
    app.add_option("--cooc", c.cooc, "Co-occurrence table (noun<TAB>case<TAB>verb<TAB>freq)")->envname("VSD_COOC");
    app.add_option("--sbl-model", c.sbl_model, "Branch-length model file")->envname("VSD_SBL_MODEL");
    app.add_option("--word-freq", c.word_freq, "Whitespace-tokenized text for class frequencies")->envname("VSD_WORD_FREQ");
    app.add_option("--measure", c.measure, "table|vsm|sbl|ic")->capture_default_str();
    app.add_option("--unknown", c.unknown, "Unknown-word policy: zero|error")->capture_default_str();
    app.add_option("--mode", c.mode, "weighted|lexicographic|unweighted")->capture_default_str();
    app.add_option("--alpha", c.alpha, "CCD exponent")->capture_default_str();
    app.add_option("--lambda", c.lambda, "Certainty blend in [0,1]")->capture_default_str();
    app.add_option("--smoothing-level", c.smoothing_level, "Class level for CCD")->capture_default_str();
    app.add_option("--seed", c.seed, "Random seed")->capture_default_str();

    // disambiguate
    auto * dis = app.add_subcommand("disambiguate", "Disambiguate examples against lexicon + labeled corpus");
    std::string dis_input;
    bool dis_propagate = false;
    dis->add_option("--input", dis_input, "Examples to disambiguate")->required();
    dis->add_option("--db", c.lexicon, "Database file written by `sample --out-db` (replaces --lexicon)");
    dis->add_flag("--propagate", dis_propagate, "Share senses within (context, verb) groups");

    // eval-cv
    auto * cv = app.add_subcommand("eval-cv", "k-fold cross-validation");
    std::size_t cv_folds = 6;
    std::string cv_method = "vsd", cv_out = ".", cv_distances;
    double cv_beta = 1.0, cv_rb = 0.0, cv_acc_alpha = 1.0;
    std::size_t cv_nb_level = 5, cv_points = 11;
    bool cv_propagate = false;
    cv->add_option("--folds", cv_folds, "Fold count")->capture_default_str();
    cv->add_option("--method", cv_method, "vsd|mfs|rb|nb")->capture_default_str();
    cv->add_option("--beta", cv_beta, "F-measure beta")->capture_default_str();
    cv->add_option("--rb-threshold", cv_rb, "Association threshold for rules")->capture_default_str();
    cv->add_option("--nb-level", cv_nb_level, "Class level for naive Bayes")->capture_default_str();
    cv->add_option("--distances", cv_distances, "Sense distance file for acceptability");
    cv->add_option("--acceptability-alpha", cv_acc_alpha, "Acceptability exponent")->capture_default_str();
    cv->add_option("--thresholds", cv_points, "Points on the coverage/accuracy curve")->capture_default_str();
    cv->add_flag("--propagate", cv_propagate, "Context propagation (vsd only)");
    cv->add_option("--out-dir", cv_out, "Directory for tsv outputs")->capture_default_str();

    // curve
    auto * cu = app.add_subcommand("curve", "Learning curves of a sampling strategy");
    std::string cu_strategy = "tu", cu_out;
    std::size_t cu_seeds = 10, cu_holdout = 5, cu_k = 1, cu_committee = 2;
    std::optional<std::size_t> cu_max;
    cu->add_option("--strategy", cu_strategy, "tu|us|cbs|random|bootstrap")->capture_default_str();
    cu->add_option("--seeds", cu_seeds, "Number of seeds (seed .. seed+n-1)")->capture_default_str();
    cu->add_option("--holdout-folds", cu_holdout, "Fold 0 of this many is held out")->capture_default_str();
    cu->add_option("--k", cu_k, "k-best senses in training utility")->capture_default_str();
    cu->add_option("--committee-size", cu_committee, "Committee members")->capture_default_str();
    cu->add_option("--max-steps", cu_max, "Stop after this many annotations");
    cu->add_option("--out", cu_out, "Write the curve tsv here (default: stdout)");

    // sample / serve
    auto * sa = app.add_subcommand("sample", "Run the selective-sampling loop");
    auto * sv = app.add_subcommand("serve", "Serve the interactive sampling API");
    std::string sa_strategy = "tu", sa_oracle = "gold", sa_out_db, sa_log, sa_curve_out, sa_static;
    std::string sa_host = "127.0.0.1";
    int sa_port = 8080;
    std::size_t sa_k = 1, sa_committee = 2, sa_holdout = 0;
    std::optional<std::size_t> sa_max;
    for (auto * sub : {sa, sv}) {
        sub->add_option("--strategy", sa_strategy, "tu|us|cbs|random|bootstrap")->capture_default_str();
        sub->add_option("--k", sa_k, "k-best senses in training utility")->capture_default_str();
        sub->add_option("--committee-size", sa_committee, "Committee members")->capture_default_str();
        sub->add_option("--holdout-folds", sa_holdout, "Hold out fold 0 of this many for the learning curve (0: none)")
            ->capture_default_str();
        sub->add_option("--log", sa_log, "Append accepted annotations here")->envname("VSD_LOG");
        sub->add_option("--host", sa_host, "Listen address")->envname("VSD_HOST")->capture_default_str();
        sub->add_option("--port", sa_port, "Listen port")->envname("VSD_PORT")->capture_default_str();
        sub->add_option("--static-dir", sa_static, "UI bundle directory served at /")->envname("VSD_STATIC_DIR");
    }
    sa->add_option("--oracle", sa_oracle, "gold|interactive")->capture_default_str();
    sa->add_option("--max-steps", sa_max, "Stop after this many annotations");
    sa->add_option("--out-db", sa_out_db, "Write the final database as a lexicon file");
    sa->add_option("--curve-out", sa_curve_out, "Write the learning curve tsv here");

    // fit-sbl
    auto * fit = app.add_subcommand("fit-sbl", "Fit branch lengths to class-level VSM similarities");
    std::size_t fit_level = 4, fit_subsets = 15;
    bool fit_nonneg = false;
    std::string fit_out;
    fit->add_option("--level", fit_level, "Class level")->capture_default_str();
    fit->add_option("--subsets", fit_subsets, "Equation subsets")->capture_default_str();
    fit->add_flag("--nonnegative", fit_nonneg, "Clamp negative lengths to zero");
    fit->add_option("--out", fit_out, "Model file")->required();

    // eval-sbl
    auto * esb = app.add_subcommand("eval-sbl", "Inequality preservation of a branch-length model");
    std::size_t esb_quads = 1000;
    esb->add_option("--model", c.sbl_model, "Branch-length model file")->required();
    esb->add_option("--quadruples", esb_quads, "Sampled quadruples")->capture_default_str();

    // extract-cooc
    auto * ex = app.add_subcommand("extract-cooc", "Collect (noun, case, verb) tuples from tagged text");
    std::string ex_input, ex_out, ex_genitive = "no";
    ex->add_option("--input", ex_input, "Tagged text, one sentence per line")->required();
    ex->add_option("--genitive", ex_genitive, "Particle that never attaches")->capture_default_str();
    ex->add_option("--out", ex_out, "Output file (default: stdout)");

    // gen-synth
    auto * gs = app.add_subcommand("gen-synth", "Write a synthetic thesaurus, lexicon and corpus");
    std::string gs_out = ".";
    std::size_t gs_senses = 2, gs_total = 100, gs_clusters = 12, gs_inputs = 20;
    std::vector<std::string> gs_cases = {"ga", "wo"};
    std::vector<double> gs_overlap;
    double gs_noise = 0, gs_misleading = 0.5;
    bool gs_probe = false;
    gs->add_option("--out-dir", gs_out, "Output directory")->capture_default_str();
    gs->add_option("--senses", gs_senses, "Senses")->capture_default_str();
    gs->add_option("--total", gs_total, "Pool examples")->capture_default_str();
    gs->add_option("--clusters", gs_clusters, "Pool clusters")->capture_default_str();
    gs->add_option("--cases", gs_cases, "Case markers")->delimiter(',');
    gs->add_option("--overlap", gs_overlap, "Shared seed-class fraction per case")->delimiter(',');
    gs->add_option("--noise", gs_noise, "Label noise")->capture_default_str();
    gs->add_flag("--probe", gs_probe, "Generate the CCD probe corpus instead");
    gs->add_option("--inputs", gs_inputs, "Probe inputs")->capture_default_str();
    gs->add_option("--misleading", gs_misleading, "Probe fraction of misleading inputs")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError & e) {
        if (app.exit(e) == 0) return 0;
        if (e.get_exit_code() != static_cast<int>(CLI::ExitCodes::RequiredError)) std::cerr << '\n' << app.help();
        return 1;
    }

    try {
        // Reject bad settings before any data is read.
        engine_params(c);
        parse_measure_kind(c.measure);
        parse_unknown_policy(c.unknown);
        if (cu->parsed()) parse_strategy(cu_strategy);
        if (sa->parsed() || sv->parsed()) parse_strategy(sa_strategy);
        if (dis->parsed()) {
            auto t = need_thesaurus(c);
            auto params = engine_params(c);
            auto [labeled, rest] = split_labeled(c.corpus.empty() ? std::vector<Example>{} : need_corpus(c));
            Engine engine(SenseDatabase::build(need_lexicon(c), labeled), build_measure(c, t), t, params);
            auto inputs = load_examples_file(dis_input);
            auto results = engine.disambiguate_all(inputs, dis_propagate);
            for (std::size_t i = 0; i < inputs.size(); ++i) {
                const auto * sc = results[i].find(results[i].chosen);
                std::cout << inputs[i].verb << '\t' << results[i].chosen << '\t' << fmt(sc ? sc->score : 0.0) << '\t'
                          << fmt(results[i].certainty) << '\n';
            }
        } else if (cv->parsed()) {
            MethodConfig mc;
            mc.method = parse_method(cv_method);
            mc.engine = engine_params(c);
            mc.rb_threshold = cv_rb;
            mc.nb_level = cv_nb_level;
            mc.propagate_context = cv_propagate;
            std::shared_ptr<const Thesaurus> t;
            std::optional<Measure> m;
            if (mc.method != Method::mfs) t = need_thesaurus(c);
            if (mc.method == Method::vsd) m = build_measure(c, t);
            auto corpus = need_corpus(c);
            auto report = cross_validate(need_lexicon(c), corpus, cv_folds, c.seed, make_trainer(mc, t, m), cv_beta);
            std::optional<SenseDistance> dist;
            if (!cv_distances.empty()) {
                dist = SenseDistance::load_file(cv_distances);
                report.aggregate = compute_metrics(report.decisions, cv_beta, &*dist, cv_acc_alpha);
            }

            fs::create_directories(cv_out);
            std::ostringstream table;
            table << "fold\tinputs\tdecisions\tcorrect\taccuracy\tcoverage\tprecision\trecall\tf"
                  << (dist ? "\tacceptability" : "") << '\n';
            for (std::size_t f = 0; f < report.folds.size(); ++f)
                metrics_row(table, std::to_string(f), report.folds[f].pooled);
            for (const auto & [verb, m2] : report.aggregate.per_verb) metrics_row(table, "verb:" + verb, m2);
            metrics_row(table, "pooled", report.aggregate.pooled);
            table << "macro_accuracy\t" << fmt(report.aggregate.macro_accuracy) << '\n';
            std::cout << table.str();
            open_out((fs::path(cv_out) / "cv_metrics.tsv").string()) << table.str();

            auto dec = open_out((fs::path(cv_out) / "cv_decisions.tsv").string());
            dec << "id\tverb\tgold\tpredicted\tcertainty\n";
            for (const auto & d : report.decisions)
                dec << d.id << '\t' << d.verb << '\t' << d.gold << '\t' << d.prediction.sense.value_or("-") << '\t'
                    << fmt(d.prediction.certainty) << '\n';

            double lo = 0, hi = 0;
            if (!report.decisions.empty()) {
                auto [a, b] = std::minmax_element(report.decisions.begin(), report.decisions.end(),
                                                  [](const Decision & x, const Decision & y) {
                                                      return x.prediction.certainty < y.prediction.certainty;
                                                  });
                lo = a->prediction.certainty;
                hi = b->prediction.certainty;
            }
            std::vector<double> thresholds;
            for (std::size_t i = 0; i < cv_points; ++i)
                thresholds.push_back(cv_points == 1 ? lo
                                                    : lo + (hi - lo) * static_cast<double>(i) /
                                                               static_cast<double>(cv_points - 1));
            auto cov = open_out((fs::path(cv_out) / "cv_coverage.tsv").string());
            cov << "threshold\tcoverage\taccuracy\n";
            for (const auto & p : coverage_accuracy_curve(report.decisions, thresholds))
                cov << fmt(p.threshold) << '\t' << fmt(p.coverage) << '\t' << fmt(p.accuracy) << '\n';
        } else if (cu->parsed()) {
            auto t = need_thesaurus(c);
            auto m = build_measure(c, t);
            auto seed_db = SenseDatabase::build(need_lexicon(c), {});
            auto corpus = need_corpus(c);
            std::ostringstream out;
            out << "strategy\tseed\tannotated\taccuracy\n";
            for (std::size_t i = 0; i < cu_seeds; ++i) {
                std::uint64_t seed = c.seed + i;
                auto [train, test] = holdout_split(corpus, cu_holdout, seed);
                SamplerParams sp;
                sp.strategy = parse_strategy(cu_strategy);
                sp.k = cu_k;
                sp.committee_size = cu_committee;
                sp.seed = seed;
                sp.engine = engine_params(c);
                LearningOptions lo;
                lo.max_steps = cu_max;
                for (const auto & p : learning_curve(seed_db, train, test, m, t, sp, lo))
                    out << cu_strategy << '\t' << seed << '\t' << p.annotated << '\t' << fmt(p.accuracy) << '\n';
            }
            if (cu_out.empty())
                std::cout << out.str();
            else
                open_out(cu_out) << out.str();
        } else if (sa->parsed() || sv->parsed()) {
            auto t = need_thesaurus(c);
            auto m = build_measure(c, t);
            auto corpus = need_corpus(c);
            auto [pool, test] = holdout_split(corpus, sa_holdout, c.seed);
            SamplerParams sp;
            sp.strategy = parse_strategy(sa_strategy);
            sp.k = sa_k;
            sp.committee_size = sa_committee;
            sp.seed = c.seed;
            sp.engine = engine_params(c);
            SamplerState state(SenseDatabase::build(need_lexicon(c), {}), {}, pool, m, t, sp);

            bool interactive = sv->parsed() || sa_oracle == "interactive";
            if (!interactive && sa_oracle != "gold") throw ArgumentError("--oracle must be gold or interactive");
            std::optional<std::string> log;
            if (!sa_log.empty()) log = sa_log;
            Session session(std::move(state), test, log);
            if (interactive) {
                std::cerr << "listening on http://" << sa_host << ':' << sa_port << '\n';
                if (!serve(session, {sa_host, sa_port, sa_static})) throw ConfigError("cannot listen on " + sa_host);
                return 0;
            }
            // The gold loop drives the same session the service uses.
            std::cout << "step\texample_id\tverb\tsense\tutility\n";
            for (std::size_t step = 0; !sa_max || step < *sa_max; ++step) {
                auto next = session.next();
                if (next.status == 409) break;
                auto id = next.body["example_id"].get<ExampleId>();
                std::string sense;
                if (next.body.contains("suggested_sense")) {
                    sense = next.body["suggested_sense"].get<std::string>();
                } else {
                    auto it = std::find_if(pool.begin(), pool.end(), [&](const Example & x) { return x.id == id; });
                    sense = gold_oracle()(*it);
                }
                auto r = session.annotate({{"example_id", id}, {"sense_id", sense}, {"revision", session.revision()}});
                if (r.status != 200) throw ResolutionError("annotation rejected: " + r.body.dump());
                std::cout << step + 1 << '\t' << id << '\t' << next.body["verb"].get<std::string>() << '\t' << sense
                          << '\t' << fmt(next.body["utility"].get<double>()) << '\n';
            }
            if (!sa_out_db.empty()) {
                auto out = open_out(sa_out_db);
                save_database(out, session.database());
            }
            if (!sa_curve_out.empty()) {
                auto out = open_out(sa_curve_out);
                out << "annotated\taccuracy\n";
                for (const auto & p : session.curve().body["points"])
                    out << p["annotated"].get<std::size_t>() << '\t' << fmt(p["accuracy"].get<double>()) << '\n';
            }
        } else if (fit->parsed()) {
            auto t = need_thesaurus(c);
            auto cs = class_space(*t, need_cooc(c), fit_level);
            auto eqs = build_equations(cs.items, [&](const SblItem & a, const SblItem & b) {
                return cs.space->similarity(a.label, b.label);
            });
            std::set<BranchId> universe;
            for (const auto & br : t->branches())
                if (br.size() <= fit_level) universe.insert(br);
            auto model = solve_partitioned(eqs, {fit_subsets, c.seed, fit_nonneg}, universe);
            auto out = open_out(fit_out);
            model.save(out);
            double mean = 0;
            for (double r : model.subset_residuals) mean += r;
            if (!model.subset_residuals.empty()) mean /= static_cast<double>(model.subset_residuals.size());
            std::cout << "items\t" << cs.items.size() << "\nequations\t" << eqs.size() << "\nbranches\t"
                      << model.lengths.size() << "\nunresolved\t" << model.unresolved.size() << "\nmean_rms\t"
                      << fmt(mean) << '\n';
        } else if (esb->parsed()) {
            auto t = need_thesaurus(c);
            auto model = BranchLengthModel::load_file(c.sbl_model);
            auto cs = class_space(*t, need_cooc(c), model.level);
            auto rep = eval_inequality(model, cs.items,
                                       [&](const SblItem & a, const SblItem & b) {
                                           return cs.space->similarity(a.label, b.label);
                                       },
                                       esb_quads, c.seed);
            std::cout << "trials\t" << rep.trials << "\nsbl\t" << fmt(rep.ratio) << "\nbaseline\t"
                      << fmt(rep.baseline_ratio) << '\n';
        } else if (ex->parsed()) {
            std::ifstream in(ex_input);
            if (!in) throw ConfigError("cannot open " + ex_input);
            auto table = extract_cooc(in, ex_genitive);
            if (ex_out.empty()) {
                save_cooc(std::cout, table);
            } else {
                auto out = open_out(ex_out);
                save_cooc(out, table);
            }
        } else if (gs->parsed()) {
            SyntheticCorpus syn;
            if (gs_probe) {
                CcdProbeSpec ps;
                ps.senses = gs_senses;
                ps.inputs = gs_inputs;
                ps.misleading = gs_misleading;
                ps.seed = c.seed;
                syn = generate_ccd_probe(ps);
            } else {
                SyntheticSpec ss;
                ss.senses = gs_senses;
                ss.cases = gs_cases;
                ss.overlap = gs_overlap.empty() ? std::vector<double>(gs_cases.size(), 0.0) : gs_overlap;
                ss.cluster_sizes = skewed_cluster_sizes(gs_total, gs_clusters);
                ss.noise = gs_noise;
                ss.seed = c.seed;
                syn = generate_synthetic(ss);
            }
            fs::create_directories(gs_out);
            auto th = open_out((fs::path(gs_out) / "thesaurus.tsv").string());
            syn.thesaurus.save(th);
            auto lx = open_out((fs::path(gs_out) / "lexicon.tsv").string());
            save_lexicon(lx, syn.lexicon);
            auto co = open_out((fs::path(gs_out) / "corpus.tsv").string());
            save_examples(co, syn.examples);
            auto cl = open_out((fs::path(gs_out) / "clusters.tsv").string());
            cl << "id\tcluster\n";
            for (std::size_t i = 0; i < syn.cluster.size(); ++i) cl << i << '\t' << syn.cluster[i] << '\n';
        }
    } catch (const ArgumentError & e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
