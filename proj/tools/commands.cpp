#include "commands.hpp"

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tps/clustering.hpp"
#include "tps/embeddings.hpp"
#include "tps/error.hpp"
#include "tps/io.hpp"
#include "tps/kernels.hpp"
#include "tps/metrics.hpp"
#include "tps/neighborhood.hpp"
#include "tps/persistence.hpp"
#include "tps/tps.hpp"
#include "tps/wsi.hpp"

namespace tps::cli {

namespace fs = std::filesystem;

namespace {

struct TpsArgs {
    std::string vectors;
    std::string words;
    bool all = false;
    std::size_t n = 50;
    std::string out;
    std::string diagrams;
    std::string clouds;
};

struct WsiArgs {
    std::string vectors;
    std::string instances;
    std::string backend = "dbscan";
    double eps = 0.09;
    int min_pts = 2;
    std::size_t n = 5000;
    std::string k = "auto";
    std::size_t tps_n = 50;
    std::uint64_t seed = 0;
    std::string out;
    std::string clusters;
};

struct ScoreArgs {
    std::string key;
    std::string gold;
    std::string out;
};

struct CorrelateArgs {
    std::string tps;
    std::string counts;
    std::string corpus;
    std::string out;
};

struct CountArgs {
    std::string corpus;
    std::string out;
};

void apply_thread_cap() {
    if (const char* env = std::getenv("TPS_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) kernels::set_max_threads(static_cast<int>(v));
    }
}

std::vector<std::string> read_word_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open word list: " + path);
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto b = line.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t");
        words.push_back(line.substr(b, e - b + 1));
    }
    return words;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
    write_file_atomic(path, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
}

fs::path sidecar(const std::string& out) { return fs::path(out + ".meta.json"); }

// Word-derived file names for per-word exports.
std::string safe_name(const std::string& word) {
    std::string s;
    for (unsigned char c : word) s += (std::isalnum(c) || c == '.' || c == '-' || c == '_') ? static_cast<char>(c) : '_';
    return s;
}

int cmd_tps(const TpsArgs& a, std::ostream& out, std::ostream& err) {
    const EmbeddingSet unit = l2_normalize_all(load_vec_file(a.vectors));
    const std::vector<std::string> words = a.all ? unit.words() : read_word_list(a.words);

    const auto outcomes = tps_batch(unit, words, a.n);
    nlohmann::json meta = {
        {"command", "tps"},
        {"n", a.n},
        {"scale_convention", kScaleConvention},
        {"essential_bar", kEssentialBarPolicy},
        {"neighbor_metric", "cosine"},
        {"coincident_policy", "skip-and-replace"},
    };
    nlohmann::json failed = nlohmann::json::array();
    nlohmann::json notes = nlohmann::json::object();
    std::size_t ok = 0;
    for (const auto& o : outcomes) {
        if (!o.report) {
            err << "tps: " << o.word << ": " << o.error << '\n';
            failed.push_back({{"word", o.word}, {"error", o.error}});
            continue;
        }
        ++ok;
        if (o.report->coincident_skipped || o.report->exhausted)
            notes[o.word] = {{"coincident_skipped", o.report->coincident_skipped},
                             {"exhausted", o.report->exhausted}};
    }
    meta["failed"] = failed;
    meta["replacements"] = notes;

    write_file_atomic(a.out, [&](std::ostream& o) { write_tps_csv(o, outcomes); });
    write_json(sidecar(a.out), meta);

    if (!a.diagrams.empty() || !a.clouds.empty()) {
        for (const auto& dir : {a.diagrams, a.clouds}) {
            if (!dir.empty()) fs::create_directories(dir);
        }
        for (const auto& o : outcomes) {
            if (!o.report) continue;
            if (!a.clouds.empty()) {
                const auto cloud = normalized_punctured_neighborhood(unit, o.word, a.n);
                write_file_atomic(fs::path(a.clouds) / (safe_name(o.word) + ".csv"),
                                  [&](std::ostream& s) { write_cloud_csv(s, cloud); });
            }
            if (!a.diagrams.empty()) {
                PersistenceDiagram d;
                tps_score_normalized(unit, o.word, a.n, &d);
                write_file_atomic(fs::path(a.diagrams) / (safe_name(o.word) + ".csv"),
                                  [&](std::ostream& s) { write_diagram_csv(s, d); });
            }
        }
    }
    out << "scored " << ok << " of " << words.size() << " words (n=" << a.n << ")\n";
    return 0;
}

int cmd_wsi(const WsiArgs& a, std::ostream& out, std::ostream& err) {
    const EmbeddingSet e = load_vec_file(a.vectors);
    const auto instances = load_instances(a.instances);

    OpnConfig config;
    config.n = a.n;
    config.seed = a.seed;
    if (a.backend == "dbscan") {
        config.backend = DbscanParams{a.eps, a.min_pts};
    } else if (a.k == "auto") {
        config.backend = KMeansAutoK{a.tps_n};
    } else {
        std::size_t pos = 0;
        int k = 0;
        try {
            k = std::stoi(a.k, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != a.k.size() || k < 1) {
            err << "wsi: --k must be a positive integer or \"auto\", got '" << a.k << "'\n";
            return 2;
        }
        config.backend = KMeansFixedK{k};
    }

    const OpnResult result = run_opn(e, instances, config);
    for (const auto& line : result.log) err << "wsi: " << line << '\n';

    write_file_atomic(a.out, [&](std::ostream& o) { write_key(o, result.key); });

    nlohmann::json meta = {
        {"command", "wsi"},
        {"n", a.n},
        {"backend", a.backend},
        {"seed", a.seed},
        {"cluster_vectors", "l2-normalized word vectors"},
        {"overlap", "|context ∩ C| / |C|, context deduplicated, lemma removed"},
        {"log", result.log},
    };
    if (a.backend == "dbscan") {
        meta["eps"] = a.eps;
        meta["min_pts"] = a.min_pts;
        meta["metric"] = "cosine distance";
    } else {
        meta["k"] = a.k;
        if (a.k == "auto") meta["tps_n"] = a.tps_n;
    }
    nlohmann::json targets = nlohmann::json::object();
    for (const auto& [t, s] : result.senses) {
        nlohmann::json entry = {{"clusters", s.clusters.size()}, {"all_noise_fallback", s.all_noise_fallback}};
        if (s.requested_k) entry["requested_k"] = s.requested_k;
        if (auto it = result.tps.find(t); it != result.tps.end()) entry["tps"] = it->second;
        targets[t] = entry;
    }
    meta["targets"] = targets;
    write_json(sidecar(a.out), meta);

    if (!a.clusters.empty()) {
        fs::create_directories(a.clusters);
        for (const auto& [t, s] : result.senses) {
            write_file_atomic(fs::path(a.clusters) / (safe_name(t) + ".csv"),
                              [&](std::ostream& o) { write_clustering_csv(o, s.neighbors, s.clustering); });
        }
    }
    out << "assigned " << result.key.size() << " instances over " << result.senses.size() << " targets\n";
    return 0;
}

int cmd_score(const ScoreArgs& a, std::ostream& out, std::ostream& err) {
    const auto key = load_key(a.key);
    const auto gold = load_key(a.gold);
    ScoreReport report;
    try {
        report = score_keys(key, gold);
    } catch (const KeyMismatch& ex) {
        err << "score: " << ex.what() << '\n';
        for (const auto& id : ex.only_in_solution()) err << "  only in solution: " << id << '\n';
        for (const auto& id : ex.only_in_gold()) err << "  only in gold: " << id << '\n';
        return 1;
    }
    if (!a.out.empty()) write_file_atomic(a.out, [&](std::ostream& o) { write_score_csv(o, report); });

    auto print = [&](const ScoreRow& r) {
        out << std::fixed << std::setprecision(6) << r.target << ": V=" << r.v_measure << " F=" << r.f_score
            << " product=" << r.product << " (P=" << r.precision << " R=" << r.recall << ")\n";
    };
    print(report.weighted);
    print(report.global);
    return 0;
}

int cmd_correlate(const CorrelateArgs& a, std::ostream& out, std::ostream&) {
    std::ifstream tin(a.tps);
    if (!tin) throw Error("cannot open TPS table: " + a.tps);
    const auto rows = read_tps_csv(tin, a.tps);

    CountTable counts;
    if (!a.counts.empty()) {
        counts = load_count_table(a.counts);
    } else {
        std::ifstream cin(a.corpus);
        if (!cin) throw Error("cannot open corpus: " + a.corpus);
        counts = count_frequencies(cin);
    }

    std::vector<std::string> words;
    std::vector<double> x, y;
    for (const auto& r : rows) {
        auto it = counts.find(r.word);
        if (it == counts.end()) continue;
        words.push_back(r.word);
        x.push_back(r.tps);
        y.push_back(static_cast<double>(it->second));
    }
    if (words.size() < 3)
        throw InvalidArgument("only " + std::to_string(words.size()) +
                              " words appear in both tables; need at least 3");
    const PearsonResult pr = pearson_with_p(x, y);

    write_file_atomic(a.out, [&](std::ostream& o) {
        o << "word,tps,count\n";
        char buf[64];
        for (std::size_t i = 0; i < words.size(); ++i) {
            std::snprintf(buf, sizeof buf, ",%.6f,%.0f\n", x[i], y[i]);
            o << words[i] << buf;
        }
    });
    out << std::setprecision(6) << "r=" << pr.r << " p=" << std::scientific << pr.p << std::defaultfloat
        << " sample_size=" << pr.samples << '\n';
    return 0;
}

int cmd_count(const CountArgs& a, std::ostream& out, std::ostream&) {
    std::ifstream in(a.corpus);
    if (!in) throw Error("cannot open corpus: " + a.corpus);
    const CountTable table = count_frequencies(in);
    write_file_atomic(a.out, [&](std::ostream& o) { write_count_table(o, table); });
    out << table.size() << " distinct tokens\n";
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Topological polysemy scores and neighborhood-overlap word sense induction"};
    app.require_subcommand(1);

    TpsArgs tps_args;
    auto* tps_cmd = app.add_subcommand("tps", "TPS score per word: word,n,tps CSV");
    tps_cmd->add_option("--vectors", tps_args.vectors, ".vec embedding file")->required()->check(CLI::ExistingFile);
    auto* words_opt = tps_cmd->add_option("--words", tps_args.words, "file with one word per line")
                          ->check(CLI::ExistingFile);
    auto* all_flag = tps_cmd->add_flag("--all", tps_args.all, "score every vocabulary word");
    words_opt->excludes(all_flag);
    tps_cmd->add_option("--n", tps_args.n, "neighborhood size")->capture_default_str()->check(CLI::PositiveNumber);
    tps_cmd->add_option("--out", tps_args.out, "output CSV")->required();
    tps_cmd->add_option("--diagrams", tps_args.diagrams, "directory for per-word persistence diagrams");
    tps_cmd->add_option("--clouds", tps_args.clouds, "directory for per-word normalized neighborhoods");

    WsiArgs wsi_args;
    auto* wsi_cmd = app.add_subcommand("wsi", "induce senses and assign instances (OPN)");
    wsi_cmd->add_option("--vectors", wsi_args.vectors, ".vec embedding file")->required()->check(CLI::ExistingFile);
    wsi_cmd->add_option("--instances", wsi_args.instances, "instances JSONL")->required()->check(CLI::ExistingFile);
    wsi_cmd->add_option("--backend", wsi_args.backend, "dbscan or kmeans")
        ->capture_default_str()
        ->check(CLI::IsMember({"dbscan", "kmeans"}));
    wsi_cmd->add_option("--eps", wsi_args.eps, "dbscan radius (cosine distance)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    wsi_cmd->add_option("--min-pts", wsi_args.min_pts, "dbscan core size, point itself included")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    wsi_cmd->add_option("--n", wsi_args.n, "neighborhood size")->capture_default_str()->check(CLI::PositiveNumber);
    wsi_cmd->add_option("--k", wsi_args.k, "k-means cluster count, or auto for k(w)")->capture_default_str();
    wsi_cmd->add_option("--tps-n", wsi_args.tps_n, "neighborhood size of the TPS used by --k auto")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    wsi_cmd->add_option("--seed", wsi_args.seed, "k-means seed")->capture_default_str();
    wsi_cmd->add_option("--out", wsi_args.out, "output key file")->required();
    wsi_cmd->add_option("--clusters", wsi_args.clusters, "directory for per-target word,cluster_id CSVs");

    ScoreArgs score_args;
    auto* score_cmd = app.add_subcommand("score", "V-measure and paired F-score of a key against gold");
    score_cmd->add_option("--key", score_args.key, "solution key")->required()->check(CLI::ExistingFile);
    score_cmd->add_option("--gold", score_args.gold, "gold key")->required()->check(CLI::ExistingFile);
    score_cmd->add_option("--out", score_args.out, "per-target score CSV");

    CorrelateArgs corr_args;
    auto* corr_cmd = app.add_subcommand("correlate", "Pearson correlation of TPS with a count table");
    corr_cmd->add_option("--tps", corr_args.tps, "word,n,tps CSV")->required()->check(CLI::ExistingFile);
    auto* counts_opt =
        corr_cmd->add_option("--counts", corr_args.counts, "word<TAB>count table")->check(CLI::ExistingFile);
    auto* corpus_opt =
        corr_cmd->add_option("--corpus", corr_args.corpus, "plain-text corpus for frequencies")->check(CLI::ExistingFile);
    counts_opt->excludes(corpus_opt);
    corr_cmd->add_option("--out", corr_args.out, "scatter CSV word,tps,count")->required();

    CountArgs count_args;
    auto* count_cmd = app.add_subcommand("count", "token frequencies of a corpus as word<TAB>count");
    count_cmd->add_option("--corpus", count_args.corpus, "plain-text corpus")->required()->check(CLI::ExistingFile);
    count_cmd->add_option("--out", count_args.out, "output TSV")->required();

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (tps_cmd->parsed() && !tps_args.all && tps_args.words.empty())
            throw CLI::ValidationError("tps", "one of --words or --all is required");
        if (corr_cmd->parsed() && corr_args.counts.empty() && corr_args.corpus.empty())
            throw CLI::ValidationError("correlate", "one of --counts or --corpus is required");
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    apply_thread_cap();
    try {
        if (tps_cmd->parsed()) return cmd_tps(tps_args, out, err);
        if (wsi_cmd->parsed()) return cmd_wsi(wsi_args, out, err);
        if (score_cmd->parsed()) return cmd_score(score_args, out, err);
        if (corr_cmd->parsed()) return cmd_correlate(corr_args, out, err);
        if (count_cmd->parsed()) return cmd_count(count_args, out, err);
    } catch (const std::exception& ex) {
        err << app.get_subcommands().front()->get_name() << ": " << ex.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace tps::cli
