#include "synthetic.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "litcomplex/csv.hpp"
#include "litcomplex/error.hpp"
#include "litcomplex/experiments.hpp"

namespace litcomplex::testing {

namespace {

// Columns shifted for members of each category, and for high ratings.
constexpr std::array<std::array<std::size_t, 4>, 4> kCategoryColumns = {{
    {0, 3, 12, 15},   // canon
    {1, 6, 13, 16},   // prizes
    {2, 7, 14, 17},   // nobel
    {4, 8, 9, 10},    // bestseller
}};
constexpr std::array<std::size_t, 2> kRatingColumns = {5, 11};

std::string doc_id(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "doc%05zu", i);
    return buf;
}

}  // namespace

double normal(Rng& rng) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    const double v = rng.uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

CorpusLayout protocol_layout() {
    CorpusLayout l;
    l.documents = 300;
    // canon, prizes, nobel, bestseller; overlaps canon/nobel 4, nobel/prizes 3, prizes/bestseller 3
    l.ranges = {{{0, 40}, {45, 65}, {36, 48}, {62, 86}}};
    l.rating.assign(l.documents, 0);
    for (std::size_t i = 0; i < l.documents; ++i) l.rating[i] = (i * 7 + i / 5) % 2 == 0 ? 1 : 0;
    for (std::size_t i = 7; i < l.documents; i += 30) l.rating[i] = -1;
    return l;
}

CorpusLayout reference_scale_layout() {
    CorpusLayout l;
    const std::size_t canon = 618, prizes = 144, nobel = 85, bestseller = 228, rest = 8014;
    l.documents = canon + prizes + nobel + bestseller + rest;
    std::size_t b = 0;
    for (std::size_t k = 0; const std::size_t n : {canon, prizes, nobel, bestseller}) {
        l.ranges[k++] = {b, b + n};
        b += n;
    }
    // Category members: 22 unrated, the rest low. Rest: 4680 high, 3334 low.
    l.rating.assign(l.documents, 0);
    for (std::size_t i = 0; i < 22; ++i) l.rating[i * 48] = -1;
    for (std::size_t i = 0; i < 4680; ++i) l.rating[b + i] = 1;
    return l;
}

SyntheticCorpus make_corpus(const CorpusLayout& layout, std::uint64_t seed) {
    if (layout.rating.size() != layout.documents) throw InvariantError("layout: rating size mismatch");
    Rng rng(seed, 0x73796e);
    SyntheticCorpus c;
    auto& fm = c.features;
    fm.mode = ReadabilityMode::Raw;
    fm.columns = all_columns(ReadabilityMode::Raw);
    const std::size_t d = fm.columns.size();

    for (std::size_t i = 0; i < layout.documents; ++i) {
        Document doc;
        doc.id = doc_id(i);
        doc.title = "Title " + std::to_string(i);
        doc.author = "author_" + std::to_string(i / 3);
        doc.year = 1880 + static_cast<int>((i * 7) % 120);
        QualityLabels q;
        for (std::size_t k = 0; k < 4; ++k) {
            const bool in = i >= layout.ranges[k].first && i < layout.ranges[k].second;
            switch (kAllCategories[k]) {
                case Category::Canon: q.canon = in; break;
                case Category::Prizes: q.prize = in; break;
                case Category::Nobel: q.nobel = in; break;
                case Category::Bestseller: q.bestseller = in; break;
            }
        }
        const int r = layout.rating[i];
        if (r >= 0) {
            // two decimals, strictly above or at/below the threshold
            const double u = rng.uniform();
            const double v = r == 1 ? 3.81 + std::floor(u * 80.0) / 100.0 : 3.80 - std::floor(u * 120.0) / 100.0;
            q.avg_rating = std::round(v * 100.0) / 100.0;
        }

        std::vector<double> row(d);
        for (auto& x : row) x = normal(rng);
        for (std::size_t k = 0; k < 4; ++k) {
            if (!has_category(q, kAllCategories[k])) continue;
            for (auto col : kCategoryColumns[k]) row[col] += layout.shift;
        }
        if (r == 1) {
            for (auto col : kRatingColumns) row[col] += 0.5 * layout.shift;
        }
        std::vector<bool> miss(d, false);
        if (i % 50 == 13) {
            miss[fm.column_index("hurst_syuzhet").value()] = true;
            row[fm.column_index("hurst_syuzhet").value()] = std::nan("");
        }

        c.dataset.labels[doc.id] = q;
        fm.ids.push_back(doc.id);
        fm.values.push_back(std::move(row));
        fm.missing.push_back(std::move(miss));
        c.dataset.documents.push_back(std::move(doc));
    }
    fm.meta = nlohmann::json{{"synthetic", true}, {"seed", seed}};
    fm.check_invariants();
    c.dataset.check_invariants();
    return c;
}

void write_metadata(const Dataset& dataset, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    out << kMetadataHeader << "\n";
    for (const auto& doc : dataset.documents) {
        const auto& q = dataset.labels.at(doc.id);
        csv::Row row = {doc.id,
                        doc.title,
                        doc.author,
                        std::to_string(doc.year),
                        q.canon ? "1" : "0",
                        q.nobel ? "1" : "0",
                        q.prize ? "1" : "0",
                        q.bestseller ? "1" : "0",
                        q.avg_rating ? csv::format_double(*q.avg_rating) : ""};
        out << csv::join(row) << "\n";
    }
    if (!out) throw UserError("cannot write " + path.string());
}

void write_corpus(const SyntheticCorpus& corpus, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_metadata(corpus.dataset, dir / "metadata.csv");
    save_features(corpus.features, dir / "features.csv");
}

LabeledData planted_task(std::size_t n, std::size_t d, const std::vector<std::size_t>& informative, double shift,
                         std::uint64_t seed) {
    Rng rng(seed, 0x706c);
    LabeledData out{Matrix(n, d), {}};
    for (std::size_t i = 0; i < n; ++i) {
        const bool pos = i % 2 == 0;
        for (std::size_t j = 0; j < d; ++j) out.x(i, j) = normal(rng);
        if (pos) {
            for (auto j : informative) out.x(i, j) += shift;
        }
        out.y.push_back(pos ? "pos" : "neg");
    }
    return out;
}

LabeledData blobs(std::size_t n, std::size_t d, std::uint64_t seed) {
    Rng rng(seed, 0x626c);
    LabeledData out{Matrix(n, d), {}};
    for (std::size_t i = 0; i < n; ++i) {
        const bool a = i % 2 == 0;
        for (std::size_t j = 0; j < d; ++j) out.x(i, j) = normal(rng) + (a ? 4.0 : -4.0);
        out.y.push_back(a ? "a" : "b");
    }
    return out;
}

HoldoutSplit holdout(const LabeledData& data, double train_fraction, std::uint64_t seed) {
    std::vector<std::size_t> idx(data.x.rows);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    Rng rng(seed, 0x686f);
    rng.shuffle(idx);
    const auto n_train = static_cast<std::size_t>(std::lround(train_fraction * static_cast<double>(idx.size())));
    HoldoutSplit s;
    auto take = [&](std::size_t b, std::size_t e, LabeledData& dst) {
        dst.x = Matrix(e - b, data.x.cols);
        for (std::size_t r = b; r < e; ++r) {
            for (std::size_t j = 0; j < data.x.cols; ++j) dst.x(r - b, j) = data.x(idx[r], j);
            dst.y.push_back(data.y[idx[r]]);
        }
    };
    take(0, n_train, s.train);
    take(n_train, idx.size(), s.test);
    return s;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UserError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("litcomplex_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace litcomplex::testing
