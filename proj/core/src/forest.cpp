#include "litcomplex/forest.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "litcomplex/error.hpp"
#include "litcomplex/parallel.hpp"
#include "litcomplex/rng.hpp"

namespace litcomplex {

namespace {

constexpr int kModelVersion = 1;
constexpr double kGainTolerance = 1e-12;

double gini(std::span<const std::uint32_t> counts, double n) {
    if (n <= 0) return 0.0;
    double s = 0.0;
    for (auto c : counts) s += static_cast<double>(c) * static_cast<double>(c);
    return 1.0 - s / (n * n);
}

std::size_t majority(std::span<const std::uint32_t> counts) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < counts.size(); ++k) {
        if (counts[k] > counts[best]) best = k;
    }
    return best;
}

struct Split {
    bool found = false;
    double gain = 0;
    std::size_t column = 0;
    double threshold = 0;
};

bool better(double gain, std::size_t column, double threshold, const Split& best) {
    if (!best.found) return true;
    if (gain > best.gain + kGainTolerance) return true;
    if (gain < best.gain - kGainTolerance) return false;
    if (column != best.column) return column < best.column;
    return threshold < best.threshold;
}

}  // namespace

const TreeNode& DecisionTree::leaf_for(std::span<const double> x) const {
    const TreeNode* node = &nodes.front();
    while (node->column >= 0) {
        node = &nodes[static_cast<std::size_t>(x[static_cast<std::size_t>(node->column)] <= node->threshold ? node->left
                                                                                                      : node->right)];
    }
    return *node;
}

std::size_t DecisionTree::predict(std::span<const double> x) const { return majority(leaf_for(x).counts); }

DecisionTree fit_tree(const Matrix& x, std::span<const std::size_t> y, std::size_t n_classes,
                      std::span<const std::size_t> sample, std::size_t max_features, std::size_t min_leaf,
                      std::size_t max_depth, std::uint64_t seed, std::uint64_t stream,
                      std::vector<double>* decrease) {
    Rng rng(seed, stream);
    const std::size_t d = x.cols;
    min_leaf = std::max<std::size_t>(min_leaf, 1);
    max_features = std::clamp<std::size_t>(max_features, 1, d);
    const double total = static_cast<double>(sample.size());

    std::vector<std::size_t> idx(sample.begin(), sample.end());
    DecisionTree tree;

    struct Pending {
        std::size_t node, begin, end, depth;
    };
    auto make_node = [&](std::size_t begin, std::size_t end) {
        TreeNode node;
        node.counts.assign(n_classes, 0);
        for (std::size_t i = begin; i < end; ++i) ++node.counts[y[idx[i]]];
        node.impurity = gini(node.counts, static_cast<double>(end - begin));
        tree.nodes.push_back(std::move(node));
        return tree.nodes.size() - 1;
    };

    std::vector<Pending> queue;
    queue.push_back({make_node(0, idx.size()), 0, idx.size(), 0});
    std::vector<std::pair<double, std::size_t>> pairs;
    std::vector<std::size_t> features(d);
    std::vector<std::uint32_t> left(n_classes), right(n_classes);

    for (std::size_t q = 0; q < queue.size(); ++q) {
        const Pending p = queue[q];
        const std::size_t n = p.end - p.begin;
        if (tree.nodes[p.node].impurity <= 0.0) continue;
        if (n < 2 * min_leaf) continue;
        if (max_depth != 0 && p.depth >= max_depth) continue;

        double parent_sq = 0.0;
        for (auto c : tree.nodes[p.node].counts) parent_sq += static_cast<double>(c) * static_cast<double>(c);
        const double parent_score = parent_sq / static_cast<double>(n);

        for (std::size_t j = 0; j < d; ++j) features[j] = j;
        Split best;
        std::size_t evaluated = 0;
        for (std::size_t k = 0; k < d && evaluated < max_features; ++k) {
            std::swap(features[k], features[k + rng.below(d - k)]);
            const std::size_t f = features[k];
            pairs.clear();
            for (std::size_t i = p.begin; i < p.end; ++i) pairs.emplace_back(x(idx[i], f), y[idx[i]]);
            std::sort(pairs.begin(), pairs.end());
            if (pairs.front().first == pairs.back().first) continue;  // constant here, draw another
            ++evaluated;

            std::fill(left.begin(), left.end(), 0);
            right = tree.nodes[p.node].counts;
            double sl = 0.0;
            double sr = parent_sq;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const std::size_t c = pairs[i].second;
                sl += 2.0 * left[c] + 1.0;
                sr -= 2.0 * right[c] - 1.0;
                ++left[c];
                --right[c];
                if (pairs[i].first == pairs[i + 1].first) continue;
                const std::size_t nl = i + 1, nr = n - nl;
                if (nl < min_leaf || nr < min_leaf) continue;
                const double gain = sl / static_cast<double>(nl) + sr / static_cast<double>(nr) - parent_score;
                if (gain <= kGainTolerance) continue;
                const double threshold = pairs[i].first + (pairs[i + 1].first - pairs[i].first) / 2.0;
                if (better(gain, f, threshold, best)) best = {true, gain, f, threshold};
            }
        }
        if (!best.found) continue;

        auto mid = std::stable_partition(idx.begin() + static_cast<std::ptrdiff_t>(p.begin),
                                         idx.begin() + static_cast<std::ptrdiff_t>(p.end),
                                         [&](std::size_t r) { return x(r, best.column) <= best.threshold; });
        const std::size_t split_at = static_cast<std::size_t>(mid - idx.begin());
        const std::size_t l = make_node(p.begin, split_at);
        const std::size_t r = make_node(split_at, p.end);
        TreeNode& node = tree.nodes[p.node];
        node.column = static_cast<int>(best.column);
        node.threshold = best.threshold;
        node.left = static_cast<int>(l);
        node.right = static_cast<int>(r);
        if (decrease) {
            const double nl = static_cast<double>(split_at - p.begin), nr = static_cast<double>(p.end - split_at);
            const double drop = static_cast<double>(n) * node.impurity - nl * tree.nodes[l].impurity -
                                nr * tree.nodes[r].impurity;
            (*decrease)[best.column] += drop / total;
        }
        queue.push_back({l, p.begin, split_at, p.depth + 1});
        queue.push_back({r, split_at, p.end, p.depth + 1});
    }
    return tree;
}

ForestModel ForestModel::fit(const Matrix& x, std::span<const std::string> y, const ForestConfig& config) {
    if (x.cols == 0) throw UserError("forest: no feature columns");
    if (x.rows == 0) throw UserError("forest: no training rows");
    if (y.size() != x.rows) throw UserError("forest: label count does not match row count");
    if (config.n_trees == 0) throw UserError("forest: n_trees must be at least 1");
    for (double v : x.data) {
        if (!std::isfinite(v)) throw UserError("forest: training matrix has missing or non-finite values");
    }

    ForestModel model;
    model.config_ = config;
    model.n_features_ = x.cols;
    model.classes_.assign(y.begin(), y.end());
    std::sort(model.classes_.begin(), model.classes_.end());
    model.classes_.erase(std::unique(model.classes_.begin(), model.classes_.end()), model.classes_.end());
    if (model.classes_.size() < 2) throw UserError("forest: training labels contain a single class");

    std::vector<std::size_t> yi(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        yi[i] = static_cast<std::size_t>(std::lower_bound(model.classes_.begin(), model.classes_.end(), y[i]) -
                                         model.classes_.begin());
    }
    const std::size_t max_features =
        config.max_features ? std::min(config.max_features, x.cols)
                            : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(x.cols))));
    model.config_.max_features = max_features;
    const std::size_t boot = config.bootstrap_size ? config.bootstrap_size : x.rows;

    model.trees_.resize(config.n_trees);
    std::vector<std::vector<double>> decrease(config.n_trees, std::vector<double>(x.cols, 0.0));
    parallel_for(config.n_trees, config.threads, [&](std::size_t t) {
        Rng rng(config.seed, t);
        std::vector<std::size_t> sample(boot);
        for (auto& s : sample) s = static_cast<std::size_t>(rng.below(x.rows));
        // Split draws continue on a stream distinct from the bootstrap's.
        model.trees_[t] = fit_tree(x, yi, model.classes_.size(), sample, max_features, config.min_leaf,
                                   config.max_depth, rng.next(), t, &decrease[t]);
    });
    model.decrease_.assign(x.cols, 0.0);
    for (const auto& d : decrease) {
        for (std::size_t j = 0; j < x.cols; ++j) model.decrease_[j] += d[j];
    }
    return model;
}

ForestPrediction ForestModel::predict(const Matrix& x) const {
    if (x.cols != n_features_) {
        throw UserError("forest: expected " + std::to_string(n_features_) + " columns, got " + std::to_string(x.cols));
    }
    ForestPrediction out;
    const std::size_t k = classes_.size();
    const double n = static_cast<double>(trees_.size());
    for (std::size_t i = 0; i < x.rows; ++i) {
        std::vector<std::uint32_t> votes(k, 0);
        for (const auto& tree : trees_) ++votes[tree.predict(x.row(i))];
        out.labels.push_back(classes_[majority(votes)]);
        std::vector<double> frac(k);
        for (std::size_t c = 0; c < k; ++c) frac[c] = static_cast<double>(votes[c]) / n;
        out.votes.push_back(std::move(frac));
    }
    return out;
}

std::vector<double> ForestModel::feature_importance() const {
    std::vector<double> imp = decrease_;
    double total = 0.0;
    for (double v : imp) total += v;
    if (!(total > 0.0)) {
        std::fill(imp.begin(), imp.end(), 1.0 / static_cast<double>(imp.size()));
        return imp;
    }
    for (auto& v : imp) v /= total;
    return imp;
}

nlohmann::json ForestModel::to_json() const {
    nlohmann::json j;
    j["format"] = "litcomplex.forest";
    j["version"] = kModelVersion;
    j["classes"] = classes_;
    j["n_features"] = n_features_;
    j["config"] = {{"n_trees", config_.n_trees},
                   {"max_features", config_.max_features},
                   {"min_leaf", config_.min_leaf},
                   {"max_depth", config_.max_depth},
                   {"bootstrap_size", config_.bootstrap_size},
                   {"seed", config_.seed}};
    j["impurity_decrease"] = decrease_;
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& t : trees_) {
        nlohmann::json nodes = nlohmann::json::array();
        for (const auto& n : t.nodes) {
            nodes.push_back({{"column", n.column},
                             {"threshold", n.threshold},
                             {"left", n.left},
                             {"right", n.right},
                             {"leaf_counts", n.counts}});
        }
        trees.push_back(std::move(nodes));
    }
    j["trees"] = std::move(trees);
    return j;
}

ForestModel ForestModel::from_json(const nlohmann::json& j) {
    try {
        if (j.at("format") != "litcomplex.forest") throw UserError("forest json: unexpected format");
        if (j.at("version").get<int>() != kModelVersion) throw UserError("forest json: unsupported version");
        ForestModel m;
        m.classes_ = j.at("classes").get<std::vector<std::string>>();
        m.n_features_ = j.at("n_features").get<std::size_t>();
        const auto& c = j.at("config");
        m.config_.n_trees = c.at("n_trees").get<std::size_t>();
        m.config_.max_features = c.at("max_features").get<std::size_t>();
        m.config_.min_leaf = c.at("min_leaf").get<std::size_t>();
        m.config_.max_depth = c.at("max_depth").get<std::size_t>();
        m.config_.bootstrap_size = c.at("bootstrap_size").get<std::size_t>();
        m.config_.seed = c.at("seed").get<std::uint64_t>();
        m.decrease_ = j.at("impurity_decrease").get<std::vector<double>>();
        for (const auto& t : j.at("trees")) {
            DecisionTree tree;
            for (const auto& n : t) {
                TreeNode node;
                node.column = n.at("column").get<int>();
                node.threshold = n.at("threshold").get<double>();
                node.left = n.at("left").get<int>();
                node.right = n.at("right").get<int>();
                node.counts = n.at("leaf_counts").get<std::vector<std::uint32_t>>();
                double total = 0;
                for (auto v : node.counts) total += v;
                node.impurity = gini(node.counts, total);
                tree.nodes.push_back(std::move(node));
            }
            const auto size = static_cast<int>(tree.nodes.size());
            for (const auto& node : tree.nodes) {
                if (node.column >= static_cast<int>(m.n_features_) || node.counts.size() != m.classes_.size() ||
                    (node.column >= 0 && (node.left <= 0 || node.left >= size || node.right <= 0 || node.right >= size))) {
                    throw UserError("forest json: malformed node");
                }
            }
            if (tree.nodes.empty()) throw UserError("forest json: empty tree");
            m.trees_.push_back(std::move(tree));
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw UserError(std::string("forest json: ") + e.what());
    }
}

}  // namespace litcomplex
