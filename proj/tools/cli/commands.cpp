#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "litcomplex/csv.hpp"
#include "litcomplex/error.hpp"
#include "litcomplex/hash.hpp"
#include "litcomplex/resources.hpp"

namespace litcx {

using namespace litcomplex;

namespace {

constexpr std::string_view kToolVersion = "0.1.0";

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UserError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Records every file a command reads or writes for the run manifest.
class Manifest {
public:
    Manifest(std::string command, const RunConfig& cfg) : command_(std::move(command)), cfg_(cfg) {}

    void input(const fs::path& p) { inputs_[p.string()] = hex_digest(read_file(p)); }

    void write(const fs::path& p, std::string_view data) {
        if (p.has_parent_path()) fs::create_directories(p.parent_path());
        std::ofstream out(p, std::ios::binary);
        if (!out) throw UserError("cannot write " + p.string());
        out.write(data.data(), static_cast<std::streamsize>(data.size()));
        if (!out) throw UserError("write failed: " + p.string());
        outputs_[p.lexically_relative(cfg_.out).generic_string()] = hex_digest(data);
    }

    void output(const fs::path& p) { outputs_[p.lexically_relative(cfg_.out).generic_string()] = hex_digest(read_file(p)); }

    nlohmann::json extra = nlohmann::json::object();

    void finish() {
        write(cfg_.out / (command_ + ".config.txt"), cfg_.echo());
        nlohmann::json j;
        j["command"] = command_;
        j["version"] = kToolVersion;
        nlohmann::json config = nlohmann::json::object();
        for (const auto& [k, v] : cfg_.entries()) config[k] = v;
        j["config"] = config;
        j["inputs"] = inputs_;
        j["outputs"] = outputs_;
        nlohmann::json resources = nlohmann::json::object();
        for (auto name : {resource::abbreviations, resource::pos_lexicon, resource::participles, resource::easy_words,
                          resource::vader_lexicon, resource::syuzhet_lexicon, resource::reference_results}) {
            resources[std::string(name)] = hex_digest(builtin_resource(name));
        }
        j["bundled_resources"] = resources;
        for (auto& [k, v] : extra.items()) j[k] = v;
        const fs::path path = cfg_.out / ("manifest." + command_ + ".json");
        fs::create_directories(cfg_.out);
        std::ofstream out(path, std::ios::binary);
        out << j.dump(2) << "\n";
        if (!out) throw UserError("cannot write " + path.string());
        spdlog::info("wrote {}", path.string());
    }

private:
    std::string command_;
    const RunConfig& cfg_;
    std::map<std::string, std::string> inputs_;
    std::map<std::string, std::string> outputs_;
};

std::string num(double v) { return std::isnan(v) ? "" : csv::format_double(v); }

Dataset require_metadata(const RunConfig& cfg, Manifest& m) {
    if (cfg.metadata.empty()) throw UserError("--metadata is required");
    Dataset ds = load_metadata(cfg.metadata);
    m.input(cfg.metadata);
    return ds;
}

FeatureMatrix require_features(const RunConfig& cfg, Manifest& m) {
    const fs::path p = cfg.features_path();
    if (!fs::is_regular_file(p)) throw UserError("feature file not found: " + p.string());
    FeatureMatrix fm = load_features(p);
    m.input(p);
    return fm;
}

std::vector<std::uint64_t> run_seeds(const RunConfig& cfg) {
    std::vector<std::uint64_t> s;
    for (std::size_t i = 0; i < cfg.n_runs; ++i) s.push_back(cfg.seed + i);
    return s;
}

struct Reference {
    std::string n, f1, f1_sd, acc, acc_sd;
};

// (table, task, row) -> bundled reference values.
std::map<std::tuple<std::string, std::string, std::string>, Reference> references() {
    std::map<std::tuple<std::string, std::string, std::string>, Reference> out;
    const auto t = csv::parse(builtin_resource(resource::reference_results), resource::reference_results);
    for (const auto& r : t.rows) out[{r[0], r[1], r[2]}] = {r[3], r[4], r[5], r[6], r[7]};
    return out;
}

std::string with_sd(double mean, double sd) { return fmt::format("{:.3f} ({:.3f})", mean, sd); }

std::string report_csv(const RunReport& r) {
    csv::Row header = {"run", "seed", "n_train", "n_test", "f1", "macro_f1", "accuracy"};
    for (const auto& c : r.classes) header.push_back("n_" + c);
    std::string out = csv::join(header) + "\n";
    for (std::size_t i = 0; i < r.runs.size(); ++i) {
        const auto& run = r.runs[i];
        csv::Row row = {std::to_string(i), std::to_string(run.seed), std::to_string(run.n_train),
                        std::to_string(run.n_test), num(run.f1), num(run.macro_f1), num(run.accuracy)};
        for (const auto& c : r.classes) row.push_back(std::to_string(run.class_sizes.at(c)));
        out += csv::join(row) + "\n";
    }
    csv::Row mean = {"mean", "", "", "", num(r.mean_f1), num(r.mean_macro_f1), num(r.mean_acc)};
    csv::Row sd = {"sd", "", "", "", num(r.sd_f1), "", num(r.sd_acc)};
    for (std::size_t i = 0; i < r.classes.size(); ++i) {
        mean.emplace_back();
        sd.emplace_back();
    }
    out += csv::join(mean) + "\n" + csv::join(sd) + "\n";
    return out;
}

std::string confusion_csv(const RunReport& r) {
    csv::Row header = {"true\\predicted"};
    header.insert(header.end(), r.classes.begin(), r.classes.end());
    std::string out = csv::join(header) + "\n";
    for (std::size_t i = 0; i < r.classes.size(); ++i) {
        csv::Row row = {r.classes[i]};
        for (auto v : r.confusion[i]) row.push_back(std::to_string(v));
        out += csv::join(row) + "\n";
    }
    return out;
}

std::string summary_csv(const std::vector<RunReport>& reports) {
    std::string out = "task,n_samples,mean_f1,sd_f1,mean_acc,sd_acc\n";
    for (const auto& r : reports) {
        out += csv::join({r.spec.name, std::to_string(r.n_samples), num(r.mean_f1), num(r.sd_f1), num(r.mean_acc),
                          num(r.sd_acc)}) +
               "\n";
    }
    return out;
}

std::string table3_text(const std::vector<RunReport>& reports, std::size_t n_runs) {
    const auto ref = references();
    std::string out = fmt::format("F1 and accuracy per task, mean (SD) over {} runs\n\n", n_runs);
    out += fmt::format("{:<12} {:>9} {:>16} {:>16} | {:>9} {:>16} {:>16} {:>8}\n", "task", "n", "F1", "accuracy",
                       "ref n", "ref F1", "ref accuracy", "F1 diff");
    for (const auto& r : reports) {
        auto it = ref.find({"summary", r.spec.name, "all"});
        std::string rn = "-", rf = "-", ra = "-", diff = "-";
        if (it != ref.end()) {
            const auto& v = it->second;
            rn = v.n;
            rf = v.f1 + " (" + v.f1_sd + ")";
            ra = v.acc + " (" + v.acc_sd + ")";
            diff = fmt::format("{:+.3f}", r.mean_f1 - *csv::parse_double(v.f1));
        }
        out += fmt::format("{:<12} {:>9} {:>16} {:>16} | {:>9} {:>16} {:>16} {:>8}\n", r.spec.name, r.n_samples,
                           with_sd(r.mean_f1, r.sd_f1), with_sd(r.mean_acc, r.sd_acc), rn, rf, ra, diff);
    }
    out += "\nReference columns are the bundled reference_results.csv values; differences are reported, not tested.\n";
    return out;
}

std::vector<std::string> tasks_or(const RunConfig& cfg, std::vector<std::string> fallback) {
    if (cfg.tasks.empty()) return fallback;
    std::set<std::string> seen;
    for (const auto& t : cfg.tasks) {
        make_task_spec(t);
        if (!seen.insert(t).second) throw UserError("task '" + t + "' listed twice");
    }
    return cfg.tasks;
}

void check_ablation_columns(const FeatureMatrix& fm, const std::vector<AblationRow>& rows) {
    for (auto g : kAllGroups) {
        const RunReport* left = nullptr;
        const RunReport* alone = nullptr;
        for (const auto& r : rows) {
            if (r.group != g) continue;
            (r.mode == AblationMode::LeaveOut ? left : alone) = &r.report;
        }
        if (!left || !alone) throw InvariantError("ablation: missing sweep for a group");
        std::set<std::string> a(left->columns.begin(), left->columns.end());
        std::set<std::string> b(alone->columns.begin(), alone->columns.end());
        for (const auto& c : b) {
            if (a.contains(c)) throw InvariantError("ablation: column " + c + " both kept and removed");
            if (group_of(c) != g) throw InvariantError("ablation: isolation column outside its group");
        }
        if (a.size() + b.size() != fm.columns.size()) throw InvariantError("ablation: column sets do not partition");
        if (left->n_samples != alone->n_samples || left->runs.size() != alone->runs.size()) {
            throw InvariantError("ablation: sample counts differ between sweeps");
        }
    }
}

std::string ablation_csv(const std::vector<AblationRow>& rows) {
    std::string out = "task,mode,group,n_samples,mean_f1,sd_f1,mean_acc,sd_acc,n_columns,columns\n";
    for (const auto& r : rows) {
        std::string cols;
        for (const auto& c : r.report.columns) cols += (cols.empty() ? "" : ";") + c;
        out += csv::join({r.task, std::string(to_string(r.mode)), std::string(to_string(r.group)),
                          std::to_string(r.report.n_samples), num(r.report.mean_f1), num(r.report.sd_f1),
                          num(r.report.mean_acc), num(r.report.sd_acc), std::to_string(r.report.columns.size()), cols}) +
               "\n";
    }
    return out;
}

std::string table4_text(const std::vector<AblationRow>& rows, const std::vector<std::string>& tasks) {
    const auto ref = references();
    std::string out;
    for (auto mode : {AblationMode::LeaveOut, AblationMode::Isolation}) {
        out += mode == AblationMode::LeaveOut ? "F1 with one feature group removed, mean (SD)\n\n"
                                              : "\nF1 with one feature group alone, mean (SD)\n\n";
        out += fmt::format("{:<22}", "group");
        for (const auto& t : tasks) out += fmt::format(" {:>16}", t);
        out += "\n";
        for (auto g : kAllGroups) {
            std::string label = (mode == AblationMode::LeaveOut ? "- " : "+ ") + std::string(to_string(g));
            out += fmt::format("{:<22}", label);
            for (const auto& t : tasks) {
                std::string cell = "-";
                for (const auto& r : rows) {
                    if (r.task == t && r.mode == mode && r.group == g) cell = with_sd(r.report.mean_f1, r.report.sd_f1);
                }
                out += fmt::format(" {:>16}", cell);
            }
            out += "\n";
            if (mode != AblationMode::LeaveOut) continue;
            out += fmt::format("{:<22}", "  reference");
            for (const auto& t : tasks) {
                auto it = ref.find({"ablation", t, std::string(to_string(g))});
                out += fmt::format(" {:>16}", it == ref.end() ? "-" : it->second.f1);
            }
            out += "\n";
        }
    }
    out += "\nReference columns are the bundled reference_results.csv values; differences are reported, not tested.\n";
    return out;
}

}  // namespace

void cmd_extract(const RunConfig& cfg) {
    Manifest m("extract", cfg);
    if (cfg.corpus.empty()) throw UserError("--corpus is required");
    if (cfg.metadata.empty()) throw UserError("--metadata is required");
    auto load = load_corpus(cfg.corpus, cfg.metadata);
    m.input(cfg.metadata);
    if (!load.missing.empty()) {
        std::string ids;
        for (const auto& id : load.missing) ids += (ids.empty() ? "" : ", ") + id;
        spdlog::warn("{} document(s) without a readable text file were skipped: {}", load.missing.size(), ids);
    }
    Dataset& ds = load.dataset;
    for (const auto& doc : ds.documents) m.input(cfg.corpus / (doc.id + ".txt"));

    std::set<std::string> known;
    for (const auto& doc : ds.documents) known.insert(doc.id);
    std::vector<ExternalPerplexity> external;
    for (const auto& p : cfg.external_perplexity) {
        external.push_back({p.filename().string(), load_external_scores(p, &known)});
        m.input(p);
    }
    for (const auto& doc : ds.documents) {
        double sum = 0;
        std::size_t n = 0;
        for (const auto& e : external) {
            if (auto it = e.scores.find(doc.id); it != e.scores.end()) {
                sum += it->second;
                ++n;
            }
        }
        if (n) ds.external_scores[doc.id] = sum / static_cast<double>(n);
    }
    ds.check_invariants();

    ExtractionConfig ec = cfg.extraction;
    ec.seed = cfg.seed;
    ec.threads = cfg.threads;
    spdlog::info("extracting features for {} document(s)", ds.documents.size());
    Extraction ex = extract_all(ds, ec, external);
    ex.matrix.meta["skipped_documents"] = load.missing;

    const fs::path fp = cfg.features_path();
    save_features(ex.matrix, fp);
    m.output(fp);
    m.output(sidecar_path(fp));
    m.write(cfg.out / "perplexity.csv", perplexity_csv(ex));

    for (const auto& [col, count] : ex.matrix.missing_counts()) {
        if (count) spdlog::info("  {}: {} missing", col, count);
    }
    m.extra["documents"] = ds.documents.size();
    m.extra["seeds"] = {{"base", cfg.seed}};
    m.finish();
}

void cmd_classify(const RunConfig& cfg) {
    Manifest m("classify", cfg);
    const Dataset ds = require_metadata(cfg, m);
    const FeatureMatrix fm = require_features(cfg, m);
    const auto tasks = tasks_or(cfg, {kTaskNames.begin(), kTaskNames.end()});

    std::vector<RunReport> reports;
    nlohmann::json importance = nlohmann::json::object();
    for (const auto& name : tasks) {
        spdlog::info("task {}: {} runs", name, cfg.n_runs);
        RunReport r = run_task(cfg.task(name), ds, fm);
        m.write(cfg.out / "results" / (name + ".csv"), report_csv(r));
        m.write(cfg.out / "results" / (name + "_confusion.csv"), confusion_csv(r));
        nlohmann::json imp = nlohmann::json::object();
        for (std::size_t c = 0; c < r.columns.size(); ++c) imp[r.columns[c]] = r.importance[c];
        importance[name] = imp;
        reports.push_back(std::move(r));
    }
    std::string imp_csv = "task,feature,importance\n";
    for (const auto& r : reports) {
        for (std::size_t c = 0; c < r.columns.size(); ++c) {
            imp_csv += csv::join({r.spec.name, r.columns[c], num(r.importance[c])}) + "\n";
        }
    }
    m.write(cfg.out / "results" / "summary.csv", summary_csv(reports));
    m.write(cfg.out / "results" / "importance.csv", imp_csv);
    m.write(cfg.out / "results" / "table3.txt", table3_text(reports, cfg.n_runs));
    m.extra["seeds"] = {{"base", cfg.seed}, {"runs", run_seeds(cfg)}};
    m.finish();
}

void cmd_ablate(const RunConfig& cfg) {
    Manifest m("ablate", cfg);
    const Dataset ds = require_metadata(cfg, m);
    const FeatureMatrix fm = require_features(cfg, m);
    const auto tasks = tasks_or(cfg, {"canon", "prizes", "nobel", "bestseller", "rating"});

    std::vector<AblationRow> all;
    for (const auto& name : tasks) {
        spdlog::info("ablating {}: 8 sweeps x {} runs", name, cfg.n_runs);
        auto rows = ablate(cfg.task(name), ds, fm);
        check_ablation_columns(fm, rows);
        for (auto& r : rows) all.push_back(std::move(r));
    }
    m.write(cfg.out / "results" / "ablation.csv", ablation_csv(all));
    m.write(cfg.out / "results" / "table4.txt", table4_text(all, tasks));
    m.extra["seeds"] = {{"base", cfg.seed}, {"runs", run_seeds(cfg)}};
    m.finish();
}

void cmd_report(const RunConfig& cfg) {
    Manifest m("report", cfg);
    const Dataset ds = require_metadata(cfg, m);
    const FeatureMatrix fm = require_features(cfg, m);

    const auto overlap = category_overlap(ds);
    std::string o = "kind,name,count\n";
    for (const auto& c : overlap.cells) o += csv::join({"intersection", c.name(), std::to_string(c.count)}) + "\n";
    for (auto c : kAllCategories) {
        const std::string name(to_string(c));
        o += csv::join({"total", name, std::to_string(overlap.totals.at(name))}) + "\n";
    }
    o += "rest,rest," + std::to_string(overlap.rest) + "\n";
    o += "documents,all," + std::to_string(overlap.documents) + "\n";
    m.write(cfg.out / "results" / "overlap.csv", o);

    std::string d = "group,feature,n,min,q1,median,q3,max,mean,corpus_mean\n";
    for (const auto& r : distribution_report(ds, fm, cfg.split.rating_threshold)) {
        d += csv::join({r.group, r.feature, std::to_string(r.n), num(r.min), num(r.q1), num(r.median), num(r.q3),
                        num(r.max), num(r.mean), num(r.corpus_mean)}) +
             "\n";
    }
    m.write(cfg.out / "results" / "distributions.csv", d);

    std::string dec = "decade,total,canon,prizes,nobel,bestseller\n";
    for (const auto& r : decade_counts(ds)) {
        dec += fmt::format("{},{},{},{},{},{}\n", r.decade, r.total, r.categories[0], r.categories[1], r.categories[2],
                           r.categories[3]);
    }
    m.write(cfg.out / "results" / "decades.csv", dec);
    m.finish();
}

int run_guarded(void (*command)(const RunConfig&), const RunConfig& cfg) {
    try {
        command(cfg);
        return 0;
    } catch (const UserError& e) {
        spdlog::error("{}", e.what());
        return 1;
    } catch (const fs::filesystem_error& e) {
        spdlog::error("{}", e.what());
        return 1;
    } catch (const InvariantError& e) {
        spdlog::critical("internal invariant failed: {}", e.what());
        return 2;
    } catch (const std::exception& e) {
        spdlog::critical("internal error: {}", e.what());
        return 2;
    }
}

}  // namespace litcx
