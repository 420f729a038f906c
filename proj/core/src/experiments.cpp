#include "litcomplex/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>

#include "litcomplex/error.hpp"
#include "litcomplex/rng.hpp"
#include "litcomplex/stats.hpp"
#include "litcomplex/stylometry.hpp"

namespace litcomplex {

namespace {

constexpr std::uint64_t kSampleStream = 1;
constexpr std::uint64_t kSplitStream = 2;

const QualityLabels& labels_of(const Dataset& ds, const FeatureMatrix& fm, std::size_t row) {
    return ds.labels.at(fm.ids[row]);
}

std::string author_of(const Dataset& ds, const FeatureMatrix& fm, std::size_t row) {
    const Document* doc = ds.find(fm.ids[row]);
    if (doc && !doc->author.empty()) return doc->author;
    return "#" + fm.ids[row];
}

void require_size(std::string_view what, std::size_t have, std::size_t need) {
    if (have < need) {
        throw UserError(std::string(what) + " has " + std::to_string(have) + " eligible documents, need at least " +
                        std::to_string(need));
    }
}

std::size_t train_count(std::size_t n, double fraction) {
    if (n < 2) return n;
    auto k = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 0.5));
    return std::clamp<std::size_t>(k, 1, n - 1);
}

// Stratified 80/20 split of the selected samples; classes are processed in
// sorted order and each class is shuffled independently.
void split_samples(TaskSplit& t, std::vector<Sample> selected, const Dataset& ds, const FeatureMatrix& fm,
                   std::uint64_t run_seed, const SplitOptions& opt) {
    Rng rng(run_seed, kSplitStream);
    std::sort(t.classes.begin(), t.classes.end());
    for (const auto& c : t.classes) t.class_sizes[c] = 0;
    for (const auto& s : selected) ++t.class_sizes[s.label];

    if (opt.group_by_author) {
        std::vector<std::string> authors;
        for (const auto& s : selected) authors.push_back(author_of(ds, fm, s.row));
        std::sort(authors.begin(), authors.end());
        authors.erase(std::unique(authors.begin(), authors.end()), authors.end());
        rng.shuffle(authors);
        std::map<std::string, std::size_t> size;
        for (const auto& s : selected) ++size[author_of(ds, fm, s.row)];
        const auto target = train_count(selected.size(), opt.train_fraction);
        std::set<std::string> train_authors;
        std::size_t taken = 0;
        for (const auto& a : authors) {
            if (taken >= target) break;
            train_authors.insert(a);
            taken += size[a];
        }
        for (auto& s : selected) {
            (train_authors.contains(author_of(ds, fm, s.row)) ? t.train : t.test).push_back(std::move(s));
        }
        return;
    }

    for (const auto& c : t.classes) {
        std::vector<Sample> members;
        for (const auto& s : selected) {
            if (s.label == c) members.push_back(s);
        }
        rng.shuffle(members);
        const std::size_t k = train_count(members.size(), opt.train_fraction);
        for (std::size_t i = 0; i < members.size(); ++i) (i < k ? t.train : t.test).push_back(members[i]);
    }
}

std::vector<Sample> labelled(const std::vector<std::size_t>& rows, const std::string& label) {
    std::vector<Sample> out;
    for (auto r : rows) out.push_back({r, label});
    return out;
}

}  // namespace

std::string_view to_string(Category c) {
    switch (c) {
        case Category::Canon: return "canon";
        case Category::Prizes: return "prizes";
        case Category::Nobel: return "nobel";
        case Category::Bestseller: return "bestseller";
    }
    return "?";
}

bool has_category(const QualityLabels& l, Category c) {
    switch (c) {
        case Category::Canon: return l.canon;
        case Category::Prizes: return l.prize;
        case Category::Nobel: return l.nobel;
        case Category::Bestseller: return l.bestseller;
    }
    return false;
}

std::string_view to_string(ControlPool pool) { return pool == ControlPool::Complement ? "complement" : "rest_only"; }

ControlPool parse_control_pool(std::string_view text) {
    if (text == "complement") return ControlPool::Complement;
    if (text == "rest_only") return ControlPool::RestOnly;
    throw UserError("control pool must be complement or rest_only, found '" + std::string(text) + "'");
}

TaskSpec make_task_spec(std::string_view name) {
    TaskSpec spec;
    spec.name = std::string(name);
    for (auto c : kAllCategories) {
        if (name == to_string(c)) {
            spec.kind = TaskKind::Binary;
            spec.category = c;
            return spec;
        }
    }
    if (name == "rating") {
        spec.kind = TaskKind::Rating;
        return spec;
    }
    if (name == "multiclass") {
        spec.kind = TaskKind::Multiclass;
        return spec;
    }
    throw UserError("unknown task '" + std::string(name) +
                    "' (expected canon, prizes, nobel, bestseller, rating or multiclass)");
}

std::vector<std::size_t> eligible_rows(const Dataset& ds, const FeatureMatrix& fm, double max_missing_fraction) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < fm.rows(); ++i) {
        if (!ds.labels.contains(fm.ids[i])) continue;
        if (fm.missing_fraction(i) > max_missing_fraction) continue;
        rows.push_back(i);
    }
    return rows;
}

TaskSplit make_binary_task(const Dataset& ds, const FeatureMatrix& fm, Category category, std::uint64_t run_seed,
                           const SplitOptions& opt) {
    std::vector<std::size_t> positives, pool;
    for (auto r : eligible_rows(ds, fm, opt.max_missing_fraction)) {
        const auto& l = labels_of(ds, fm, r);
        if (has_category(l, category)) {
            positives.push_back(r);
        } else if (opt.control == ControlPool::Complement || !l.any_category()) {
            pool.push_back(r);
        }
    }
    const std::string name(to_string(category));
    require_size("category " + name, positives.size(), opt.min_class_size);
    require_size("control pool for " + name, pool.size(), opt.min_class_size);

    Rng rng(run_seed, kSampleStream);
    const std::size_t m = std::min(positives.size(), pool.size());
    if (positives.size() > m) {
        positives = rng.sample(positives, m);
        std::sort(positives.begin(), positives.end());
    }
    auto controls = rng.sample(pool, m);
    std::sort(controls.begin(), controls.end());

    TaskSplit t;
    t.positive = name;
    t.classes = {name, "not_" + name};
    auto selected = labelled(positives, name);
    auto neg = labelled(controls, "not_" + name);
    selected.insert(selected.end(), neg.begin(), neg.end());
    split_samples(t, std::move(selected), ds, fm, run_seed, opt);
    return t;
}

TaskSplit make_rating_task(const Dataset& ds, const FeatureMatrix& fm, std::uint64_t run_seed,
                           const SplitOptions& opt) {
    std::vector<std::size_t> high, low;
    for (auto r : eligible_rows(ds, fm, opt.max_missing_fraction)) {
        const auto& l = labels_of(ds, fm, r);
        if (!l.avg_rating) continue;
        (*l.avg_rating > opt.rating_threshold ? high : low).push_back(r);
    }
    require_size("high-rating class", high.size(), opt.min_class_size);
    require_size("low-rating class", low.size(), opt.min_class_size);

    Rng rng(run_seed, kSampleStream);
    const std::size_t m = std::min(high.size(), low.size());
    high = rng.sample(high, m);
    low = rng.sample(low, m);
    std::sort(high.begin(), high.end());
    std::sort(low.begin(), low.end());

    TaskSplit t;
    t.positive = std::string(kHighRating);
    t.classes = {std::string(kHighRating), std::string(kLowRating)};
    auto selected = labelled(high, std::string(kHighRating));
    auto neg = labelled(low, std::string(kLowRating));
    selected.insert(selected.end(), neg.begin(), neg.end());
    split_samples(t, std::move(selected), ds, fm, run_seed, opt);
    return t;
}

TaskSplit make_multiclass_task(const Dataset& ds, const FeatureMatrix& fm, std::uint64_t run_seed,
                               const SplitOptions& opt) {
    // Priority used by --exclusive.
    constexpr std::array<Category, 4> kPriority = {Category::Nobel, Category::Canon, Category::Prizes,
                                                   Category::Bestseller};
    std::map<std::string, std::vector<std::size_t>> members;
    for (auto c : kAllCategories) members[std::string(to_string(c))];
    members[std::string(kGoodreadsClass)];

    for (auto r : eligible_rows(ds, fm, opt.max_missing_fraction)) {
        const auto& l = labels_of(ds, fm, r);
        if (!l.any_category()) {
            if (l.avg_rating && *l.avg_rating > opt.rating_threshold) members[std::string(kGoodreadsClass)].push_back(r);
            continue;
        }
        for (auto c : kPriority) {
            if (!has_category(l, c)) continue;
            members[std::string(to_string(c))].push_back(r);
            if (opt.exclusive) break;
        }
    }
    std::size_t m = std::numeric_limits<std::size_t>::max();
    for (const auto& [name, rows] : members) {
        if (rows.empty()) throw UserError("multiclass task: class " + name + " is empty");
        if (rows.size() < 2) throw UserError("multiclass task: class " + name + " has a single document");
        m = std::min(m, rows.size());
    }

    Rng rng(run_seed, kSampleStream);
    TaskSplit t;
    std::vector<Sample> selected;
    for (auto& [name, rows] : members) {
        t.classes.push_back(name);
        if (!opt.unbalanced_pool) {
            rows = rng.sample(rows, m);
            std::sort(rows.begin(), rows.end());
        }
        auto s = labelled(rows, name);
        selected.insert(selected.end(), s.begin(), s.end());
    }
    split_samples(t, std::move(selected), ds, fm, run_seed, opt);
    return t;
}

TaskSplit make_task(const TaskSpec& spec, const Dataset& ds, const FeatureMatrix& fm, std::uint64_t run_seed) {
    switch (spec.kind) {
        case TaskKind::Binary: return make_binary_task(ds, fm, spec.category, run_seed, spec.split);
        case TaskKind::Rating: return make_rating_task(ds, fm, run_seed, spec.split);
        case TaskKind::Multiclass: return make_multiclass_task(ds, fm, run_seed, spec.split);
    }
    throw InvariantError("unknown task kind");
}

Confusion confusion_matrix(const std::vector<std::string>& classes, const std::vector<std::string>& truth,
                           const std::vector<std::string>& predicted) {
    if (truth.size() != predicted.size()) throw InvariantError("confusion: size mismatch");
    auto index = [&](const std::string& label) {
        auto it = std::find(classes.begin(), classes.end(), label);
        if (it == classes.end()) throw InvariantError("confusion: unknown label " + label);
        return static_cast<std::size_t>(it - classes.begin());
    };
    Confusion c(classes.size(), std::vector<std::size_t>(classes.size(), 0));
    for (std::size_t i = 0; i < truth.size(); ++i) ++c[index(truth[i])][index(predicted[i])];
    return c;
}

ClassMetrics class_metrics(const Confusion& c, std::size_t k) {
    std::size_t tp = c[k][k], predicted = 0, actual = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        predicted += c[i][k];
        actual += c[k][i];
    }
    ClassMetrics m;
    m.precision = predicted ? static_cast<double>(tp) / static_cast<double>(predicted) : 0.0;
    m.recall = actual ? static_cast<double>(tp) / static_cast<double>(actual) : 0.0;
    m.f1 = m.precision + m.recall > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
    return m;
}

double macro_f1(const Confusion& c) {
    double s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) s += class_metrics(c, k).f1;
    return c.empty() ? 0.0 : s / static_cast<double>(c.size());
}

double accuracy(const Confusion& c) {
    std::size_t hit = 0, total = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = 0; j < c.size(); ++j) {
            total += c[i][j];
            if (i == j) hit += c[i][j];
        }
    }
    return total ? static_cast<double>(hit) / static_cast<double>(total) : 0.0;
}

std::vector<double> column_medians(const FeatureMatrix& fm, const std::vector<std::size_t>& rows,
                                   const std::vector<std::size_t>& columns) {
    std::vector<double> med;
    for (auto j : columns) {
        std::vector<double> v;
        for (auto r : rows) {
            if (!fm.missing[r][j]) v.push_back(fm.values[r][j]);
        }
        med.push_back(v.empty() ? 0.0 : stats::median(std::move(v)));
    }
    return med;
}

std::vector<std::size_t> kept_columns(const FeatureMatrix& fm, const std::vector<FeatureGroup>& removed) {
    std::set<FeatureGroup> gone(removed.begin(), removed.end());
    if (gone.size() >= kAllGroups.size()) throw UserError("at least one feature group must be kept");
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < fm.columns.size(); ++j) {
        if (!gone.contains(group_of(fm.columns[j]))) cols.push_back(j);
    }
    if (cols.empty()) throw UserError("no feature columns left after removing groups");
    return cols;
}

void RunReport::check_invariants() const {
    if (runs.size() != spec.n_runs) throw InvariantError("run report: wrong number of runs");
    std::vector<double> f1, acc;
    std::size_t tested = 0;
    for (const auto& r : runs) {
        f1.push_back(r.f1);
        acc.push_back(r.accuracy);
        tested += r.n_test;
    }
    if (std::abs(stats::mean(f1) - mean_f1) > 1e-12 || std::abs(stats::sample_sd(f1) - sd_f1) > 1e-12 ||
        std::abs(stats::mean(acc) - mean_acc) > 1e-12 || std::abs(stats::sample_sd(acc) - sd_acc) > 1e-12) {
        throw InvariantError("run report: aggregates do not match per-run values");
    }
    std::size_t total = 0;
    for (const auto& row : confusion) {
        for (auto v : row) total += v;
    }
    if (total != tested) throw InvariantError("run report: confusion total differs from test count");
}

RunReport run_task(const TaskSpec& spec, const Dataset& ds, const FeatureMatrix& fm) {
    if (spec.n_runs == 0) throw UserError("n_runs must be at least 1");
    if (!(spec.split.train_fraction > 0 && spec.split.train_fraction < 1)) {
        throw UserError("train_fraction must lie in (0, 1)");
    }
    RunReport report;
    report.spec = spec;
    const auto cols = kept_columns(fm, spec.removed);
    for (auto j : cols) report.columns.push_back(fm.columns[j]);
    report.importance.assign(cols.size(), 0.0);

    for (std::size_t i = 0; i < spec.n_runs; ++i) {
        const std::uint64_t seed = spec.base_seed + i;
        const TaskSplit split = make_task(spec, ds, fm, seed);
        if (i == 0) {
            report.classes = split.classes;
            report.positive = split.positive;
            report.n_samples = split.n_samples();
            report.confusion.assign(split.classes.size(), std::vector<std::size_t>(split.classes.size(), 0));
        }

        std::vector<std::size_t> train_rows;
        for (const auto& s : split.train) train_rows.push_back(s.row);
        const auto med = column_medians(fm, train_rows, cols);
        auto build = [&](const std::vector<Sample>& samples, std::vector<std::string>& y) {
            Matrix x(samples.size(), cols.size());
            for (std::size_t r = 0; r < samples.size(); ++r) {
                for (std::size_t c = 0; c < cols.size(); ++c) {
                    const std::size_t row = samples[r].row;
                    x(r, c) = fm.missing[row][cols[c]] ? med[c] : fm.values[row][cols[c]];
                }
                y.push_back(samples[r].label);
            }
            return x;
        };
        std::vector<std::string> y_train, y_test;
        const Matrix x_train = build(split.train, y_train);
        const Matrix x_test = build(split.test, y_test);

        ForestConfig fc = spec.forest;
        fc.seed = seed;
        const auto model = ForestModel::fit(x_train, y_train, fc);
        const auto pred = model.predict(x_test);
        const auto conf = confusion_matrix(split.classes, y_test, pred.labels);

        RunMetrics m;
        m.seed = seed;
        m.macro_f1 = macro_f1(conf);
        m.accuracy = accuracy(conf);
        if (spec.kind == TaskKind::Multiclass) {
            m.f1 = m.macro_f1;
        } else {
            const auto k = static_cast<std::size_t>(
                std::find(split.classes.begin(), split.classes.end(), split.positive) - split.classes.begin());
            m.f1 = class_metrics(conf, k).f1;
        }
        m.n_train = split.train.size();
        m.n_test = split.test.size();
        m.class_sizes = split.class_sizes;
        report.runs.push_back(std::move(m));
        for (std::size_t a = 0; a < conf.size(); ++a) {
            for (std::size_t b = 0; b < conf.size(); ++b) report.confusion[a][b] += conf[a][b];
        }
        const auto imp = model.feature_importance();
        for (std::size_t c = 0; c < cols.size(); ++c) report.importance[c] += imp[c] / static_cast<double>(spec.n_runs);
    }

    std::vector<double> f1, acc, mf1;
    for (const auto& r : report.runs) {
        f1.push_back(r.f1);
        acc.push_back(r.accuracy);
        mf1.push_back(r.macro_f1);
    }
    report.mean_f1 = stats::mean(f1);
    report.sd_f1 = stats::sample_sd(f1);
    report.mean_acc = stats::mean(acc);
    report.sd_acc = stats::sample_sd(acc);
    report.mean_macro_f1 = stats::mean(mf1);
    report.check_invariants();
    return report;
}

std::string_view to_string(AblationMode mode) { return mode == AblationMode::LeaveOut ? "leave_out" : "isolation"; }

std::vector<AblationRow> ablate(const TaskSpec& spec, const Dataset& ds, const FeatureMatrix& fm) {
    std::vector<AblationRow> rows;
    for (auto mode : {AblationMode::LeaveOut, AblationMode::Isolation}) {
        for (auto g : kAllGroups) {
            TaskSpec s = spec;
            s.removed.clear();
            if (mode == AblationMode::LeaveOut) {
                s.removed.push_back(g);
            } else {
                for (auto other : kAllGroups) {
                    if (other != g) s.removed.push_back(other);
                }
            }
            rows.push_back({spec.name, mode, g, run_task(s, ds, fm)});
        }
    }
    return rows;
}

std::string OverlapCell::name() const {
    std::string out;
    for (std::size_t i = 0; i < kAllCategories.size(); ++i) {
        if (!(mask & (1u << i))) continue;
        if (!out.empty()) out += "+";
        out += to_string(kAllCategories[i]);
    }
    return out;
}

OverlapTable category_overlap(const Dataset& ds) {
    OverlapTable t;
    std::array<std::size_t, 16> by_mask{};
    for (const auto& doc : ds.documents) {
        const auto& l = ds.labels.at(doc.id);
        unsigned mask = 0;
        for (std::size_t i = 0; i < kAllCategories.size(); ++i) {
            if (has_category(l, kAllCategories[i])) mask |= 1u << i;
        }
        ++by_mask[mask];
        ++t.documents;
    }
    std::vector<unsigned> masks;
    for (unsigned m = 1; m < 16; ++m) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(),
                     [](unsigned a, unsigned b) { return std::popcount(a) < std::popcount(b); });
    for (auto m : masks) t.cells.push_back({m, by_mask[m]});
    for (std::size_t i = 0; i < kAllCategories.size(); ++i) {
        std::size_t total = 0;
        for (unsigned m = 1; m < 16; ++m) {
            if (m & (1u << i)) total += by_mask[m];
        }
        t.totals[std::string(to_string(kAllCategories[i]))] = total;
    }
    t.rest = by_mask[0];
    return t;
}

std::vector<DistributionRow> distribution_report(const Dataset& ds, const FeatureMatrix& fm, double threshold) {
    constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < fm.rows(); ++i) {
        if (ds.labels.contains(fm.ids[i])) rows.push_back(i);
    }

    std::vector<std::string> features = fm.columns;
    std::vector<std::vector<double>> values(fm.rows());  // per row, per feature; NaN missing
    for (auto r : rows) values[r] = fm.values[r];
    const std::array<std::string_view, 5> raw = {"flesch_re", "fk_grade", "smog", "ari", "dale_chall"};
    bool have_raw = !fm.column_index(kReadabilityZ);
    for (auto c : raw) have_raw = have_raw && fm.column_index(c).has_value();
    if (have_raw) {
        std::vector<ReadabilityScores> scores;
        std::vector<std::size_t> scored;
        for (auto r : rows) {
            std::array<double, 5> v{};
            bool ok = true;
            for (std::size_t k = 0; k < raw.size(); ++k) {
                const auto j = *fm.column_index(raw[k]);
                ok = ok && !fm.missing[r][j];
                v[k] = fm.values[r][j];
            }
            if (!ok) continue;
            scores.push_back({v[0], v[1], v[2], v[3], v[4]});
            scored.push_back(r);
        }
        const auto z = readability_composite(scores);
        features.emplace_back(kReadabilityZ);
        for (auto r : rows) values[r].push_back(kNaN);
        for (std::size_t k = 0; k < scored.size(); ++k) values[scored[k]].back() = z[k];
    }

    std::vector<std::pair<std::string, std::vector<std::size_t>>> groups;
    for (auto c : kAllCategories) {
        std::vector<std::size_t> g;
        for (auto r : rows) {
            if (has_category(ds.labels.at(fm.ids[r]), c)) g.push_back(r);
        }
        groups.emplace_back(std::string(to_string(c)), std::move(g));
    }
    std::vector<std::size_t> high, low, rest;
    for (auto r : rows) {
        const auto& l = ds.labels.at(fm.ids[r]);
        if (l.avg_rating) (*l.avg_rating > threshold ? high : low).push_back(r);
        if (!l.any_category()) rest.push_back(r);
    }
    groups.emplace_back(std::string(kHighRating), std::move(high));
    groups.emplace_back(std::string(kLowRating), std::move(low));
    groups.emplace_back("rest", std::move(rest));

    std::vector<DistributionRow> out;
    for (std::size_t j = 0; j < features.size(); ++j) {
        std::vector<double> all;
        for (auto r : rows) {
            if (!std::isnan(values[r][j])) all.push_back(values[r][j]);
        }
        const double corpus_mean = all.empty() ? kNaN : stats::mean(all);
        for (const auto& [name, members] : groups) {
            std::vector<double> v;
            for (auto r : members) {
                if (!std::isnan(values[r][j])) v.push_back(values[r][j]);
            }
            DistributionRow row;
            row.group = name;
            row.feature = features[j];
            row.n = v.size();
            row.corpus_mean = corpus_mean;
            if (v.empty()) {
                row.min = row.q1 = row.median = row.q3 = row.max = row.mean = kNaN;
            } else {
                row.min = *std::min_element(v.begin(), v.end());
                row.max = *std::max_element(v.begin(), v.end());
                row.q1 = stats::quantile(v, 0.25);
                row.median = stats::quantile(v, 0.5);
                row.q3 = stats::quantile(v, 0.75);
                row.mean = stats::mean(v);
            }
            out.push_back(std::move(row));
        }
    }
    return out;
}

std::vector<DecadeRow> decade_counts(const Dataset& ds) {
    std::map<int, DecadeRow> by;
    for (const auto& doc : ds.documents) {
        if (doc.year == 0) continue;
        const int decade = static_cast<int>(std::floor(doc.year / 10.0)) * 10;
        auto& row = by[decade];
        row.decade = decade;
        ++row.total;
        const auto& l = ds.labels.at(doc.id);
        for (std::size_t i = 0; i < kAllCategories.size(); ++i) {
            if (has_category(l, kAllCategories[i])) ++row.categories[i];
        }
    }
    std::vector<DecadeRow> out;
    if (by.empty()) return out;
    for (int d = by.begin()->first; d <= by.rbegin()->first; d += 10) {
        auto it = by.find(d);
        DecadeRow row;
        row.decade = d;
        if (it != by.end()) row = it->second;
        out.push_back(row);
    }
    return out;
}

}  // namespace litcomplex
