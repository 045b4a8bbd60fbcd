#include "vsd/sbl.hpp"

#include "text_util.hpp"
#include "vsd/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>

namespace vsd {

std::optional<double> BranchLengthModel::length(const BranchId & id) const {
    auto it = lengths.find(id);
    if (it == lengths.end()) return std::nullopt;
    return it->second;
}

bool BranchLengthModel::covers(const Thesaurus & t, const Word & a, const Word & b) const {
    const auto * ca = t.find(a);
    const auto * cb = t.find(b);
    if (!ca || !cb || ca->size() < level || level == 0) return false;
    for (const auto & br : path_branches(ca->prefix(level), cb->prefix(level)))
        if (!lengths.count(br)) return false;
    return true;
}

double BranchLengthModel::min_path_sum() const {
    std::map<std::size_t, double> lowest;
    for (const auto & [id, len] : lengths) {
        auto [it, inserted] = lowest.emplace(id.size(), len);
        if (!inserted) it->second = std::min(it->second, len);
    }
    double total = 0;
    for (const auto & [lvl, v] : lowest) total += 2 * std::min(0.0, v);
    return total;
}

void BranchLengthModel::save(std::ostream & out) const {
    for (const auto & [id, len] : lengths) out << id << '\t' << text::format_double(len) << '\n';
}

BranchLengthModel BranchLengthModel::load(std::istream & in) {
    BranchLengthModel model;
    text::LineReader reader(in);
    std::string line;
    while (reader.next(line)) {
        auto fields = text::split(line, '\t');
        if (fields.size() != 2) throw FormatError("expected branch_id<TAB>length", reader.line_no());
        auto id = text::trim(fields[0]);
        Code check(id); // validates digits
        model.level = std::max(model.level, id.size());
        model.lengths[id] = text::parse_double(text::trim(fields[1]), reader.line_no());
    }
    return model;
}

BranchLengthModel BranchLengthModel::load_file(const std::string & path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open branch-length model: " + path);
    return load(in);
}

std::vector<SblItem> word_items(const Thesaurus & t, const std::vector<Word> & words) {
    std::vector<SblItem> items;
    items.reserve(words.size());
    for (const auto & w : words) items.push_back({w, t.code(w)});
    return items;
}

std::vector<SblItem> class_items(const Thesaurus & t, std::size_t level) {
    std::set<Code> classes;
    for (const auto & code : t.leaves()) classes.insert(code.prefix(level));
    std::vector<SblItem> items;
    for (const auto & c : classes) items.push_back({c.str(), c});
    return items;
}

CoocTable generalize_cooc(const CoocTable & cooc, const Thesaurus & t, std::size_t level) {
    CoocTable out;
    for (const auto & [key, freq] : cooc.tuples) {
        const auto * code = t.find(std::get<0>(key));
        if (!code) continue;
        out.tuples[{code->prefix(level).str(), std::get<1>(key), std::get<2>(key)}] += freq;
    }
    out.recount_nouns();
    return out;
}

std::vector<PathEquation> build_equations(const std::vector<SblItem> & items, const PairTarget & target) {
    std::set<Code> seen;
    for (const auto & it : items) {
        if (!items.empty() && it.code.size() != items.front().code.size())
            throw ArgumentError("items must share one code length");
        if (!seen.insert(it.code).second) throw ArgumentError("duplicate item code " + it.code.str());
    }
    std::vector<PathEquation> eqs;
    eqs.reserve(items.size() * (items.size() ? items.size() - 1 : 0) / 2);
    for (std::size_t i = 0; i < items.size(); ++i) {
        for (std::size_t j = i + 1; j < items.size(); ++j) {
            PathEquation eq;
            eq.a = i;
            eq.b = j;
            eq.branches = path_branches(items[i].code, items[j].code);
            eq.target = target(items[i], items[j]);
            eqs.push_back(std::move(eq));
        }
    }
    return eqs;
}

std::vector<PathEquation> build_equations(const Thesaurus & t, const std::vector<Word> & words, const Measure & m) {
    return build_equations(word_items(t, words),
                           [&](const SblItem & a, const SblItem & b) { return m(a.label, b.label); });
}

std::map<BranchId, double> solve_min_norm(const std::vector<const PathEquation *> & eqs, double * rms_residual) {
    std::map<BranchId, Eigen::Index> column;
    for (const auto * eq : eqs)
        for (const auto & br : eq->branches) column.emplace(br, 0);
    Eigen::Index k = 0;
    for (auto & [br, idx] : column) idx = k++;

    // Normal equations A^T A x = A^T b. Each row has unit entries, so the
    // products accumulate from the branch index lists directly.
    Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(k, k);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
    std::vector<Eigen::Index> cols;
    for (const auto * eq : eqs) {
        cols.clear();
        for (const auto & br : eq->branches) cols.push_back(column.at(br));
        for (auto r : cols) {
            rhs(r) += eq->target;
            for (auto c : cols) normal(r, c) += 1.0;
        }
    }

    // Pseudo-inverse through the eigendecomposition gives the minimum-norm
    // solution of the rank-deficient system.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(normal);
    const auto & values = eig.eigenvalues();
    const auto & vectors = eig.eigenvectors();
    double cutoff = (k > 0 ? values.cwiseAbs().maxCoeff() : 0.0) * 1e-10;
    Eigen::VectorXd proj = vectors.transpose() * rhs;
    for (Eigen::Index i = 0; i < k; ++i) proj(i) = values(i) > cutoff ? proj(i) / values(i) : 0.0;
    Eigen::VectorXd x = vectors * proj;

    std::map<BranchId, double> out;
    for (const auto & [br, idx] : column) out.emplace(br, x(idx));

    if (rms_residual) {
        double ss = 0;
        for (const auto * eq : eqs) {
            double sum = 0;
            for (const auto & br : eq->branches) sum += x(column.at(br));
            ss += (sum - eq->target) * (sum - eq->target);
        }
        *rms_residual = eqs.empty() ? 0.0 : std::sqrt(ss / static_cast<double>(eqs.size()));
    }
    return out;
}

BranchLengthModel solve_partitioned(const std::vector<PathEquation> & eqs, const SolveOptions & opts,
                                    const std::set<BranchId> & universe) {
    if (opts.subsets == 0) throw ArgumentError("subset count must be positive");
    if (eqs.size() < opts.subsets)
        throw ArgumentError("cannot split " + std::to_string(eqs.size()) + " equations into " +
                            std::to_string(opts.subsets) + " non-empty subsets");

    std::vector<const PathEquation *> order;
    order.reserve(eqs.size());
    for (const auto & eq : eqs) order.push_back(&eq);
    std::mt19937_64 rng(opts.seed);
    std::shuffle(order.begin(), order.end(), rng);

    // Deal round-robin by common ancestor so every subset sees pairs meeting at each node.
    std::map<const PathEquation *, BranchId> ancestor;
    for (const auto * eq : order) {
        const BranchId * top = &eq->branches.front();
        for (const auto & br : eq->branches)
            if (br.size() < top->size()) top = &br;
        ancestor.emplace(eq, top->substr(0, top->size() - 1));
    }
    std::stable_sort(order.begin(), order.end(), [&](const PathEquation * x, const PathEquation * y) {
        return ancestor.at(x) < ancestor.at(y);
    });

    BranchLengthModel model;
    model.subset_count = opts.subsets;
    for (const auto & eq : eqs)
        for (const auto & br : eq.branches) model.level = std::max(model.level, br.size());

    std::vector<std::vector<const PathEquation *>> subsets(opts.subsets);
    for (std::size_t i = 0; i < order.size(); ++i) subsets[i % opts.subsets].push_back(order[i]);

    std::map<BranchId, std::pair<double, std::size_t>> acc;
    for (const auto & subset : subsets) {
        double rms = 0;
        for (const auto & [br, v] : solve_min_norm(subset, &rms)) {
            auto & slot = acc[br];
            slot.first += v;
            slot.second += 1;
        }
        model.subset_residuals.push_back(rms);
    }
    for (const auto & [br, slot] : acc) {
        double v = slot.first / static_cast<double>(slot.second);
        if (opts.nonnegative && v < 0) v = 0;
        model.lengths.emplace(br, v);
    }
    for (const auto & br : universe)
        if (!model.lengths.count(br)) model.unresolved.insert(br);
    return model;
}

double sbl_path_sum(const BranchLengthModel & model, const Code & a, const Code & b) {
    double sum = 0;
    for (const auto & br : path_branches(a, b)) {
        auto it = model.lengths.find(br);
        if (it == model.lengths.end()) throw CoverageError("branch " + br + " has no fitted length");
        sum += it->second;
    }
    return sum;
}

double sbl_similarity(const BranchLengthModel & model, const Thesaurus & t, const Word & a, const Word & b) {
    const auto & ca = t.code(a);
    const auto & cb = t.code(b);
    if (model.level == 0 || model.level > ca.size()) throw CoverageError("branch-length model is empty");
    return sbl_path_sum(model, ca.prefix(model.level), cb.prefix(model.level));
}

namespace {

int sign(double v) { return (v > 0) - (v < 0); }

} // namespace

InequalityReport eval_inequality(const BranchLengthModel & model, const std::vector<SblItem> & items,
                                 const PairTarget & reference, std::size_t quadruples, std::uint64_t seed) {
    InequalityReport rep;
    if (items.size() < 3) return rep;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, items.size() - 1);
    auto draw_pair = [&] {
        std::size_t a = pick(rng), b = pick(rng);
        while (b == a) b = pick(rng);
        return std::pair{a, b};
    };
    std::size_t hits = 0, base_hits = 0;
    std::size_t attempts = 0, max_attempts = quadruples * 50 + 100;
    while (rep.trials < quadruples && attempts++ < max_attempts) {
        auto [a, b] = draw_pair();
        auto [c, d] = draw_pair();
        if (std::minmax(a, b) == std::minmax(c, d)) continue;
        double ref = reference(items[a], items[b]) - reference(items[c], items[d]);
        if (ref == 0) continue;
        ++rep.trials;
        double fitted = sbl_path_sum(model, items[a].code, items[b].code) -
                        sbl_path_sum(model, items[c].code, items[d].code);
        if (sign(fitted) == sign(ref)) ++hits;
        auto len_ab = static_cast<double>(Thesaurus::path_length(items[a].code, items[b].code));
        auto len_cd = static_cast<double>(Thesaurus::path_length(items[c].code, items[d].code));
        if (sign(len_cd - len_ab) == sign(ref)) ++base_hits;
    }
    if (rep.trials) {
        rep.ratio = static_cast<double>(hits) / static_cast<double>(rep.trials);
        rep.baseline_ratio = static_cast<double>(base_hits) / static_cast<double>(rep.trials);
    }
    return rep;
}

} // namespace vsd
