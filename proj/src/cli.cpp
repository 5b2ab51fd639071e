#include "embias/cli.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "embias/bias.hpp"
#include "embias/corpus.hpp"
#include "embias/embedding.hpp"
#include "embias/error.hpp"
#include "embias/formats.hpp"
#include "embias/manifest.hpp"
#include "embias/stats.hpp"
#include "embias/trainer.hpp"
#include "embias/version.hpp"

namespace embias {
namespace {

namespace fs = std::filesystem;

/// 17 significant digits: every double round-trips through the text.
std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

/// CSV fields hold no separators or quotes; labels are flattened so the
/// emitted files stay plain comma-split.
std::string csv_label(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '"' || c == '\n' || c == '\r') c = '_';
    return s;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << content;
    if (!out) throw DataError("failed writing " + path.string());
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

EmbeddingSpace load_any(const fs::path& path) {
    return load_embedding(path, detect_format(path));
}

/// Native spaces carry a sidecar; hash it too so the manifest pins the
/// full input.
void add_embedding_input(RunManifest& manifest, const fs::path& path) {
    manifest.add_input(path);
    const fs::path sidecar = path.string() + ".meta.json";
    if (fs::exists(sidecar)) manifest.add_input(sidecar);
}

/// Comma-splits every value so `--embeddings a,b` and `--embeddings a b`
/// both work.
std::vector<std::string> split_paths(const std::vector<std::string>& values) {
    std::vector<std::string> out;
    for (const auto& value : values) {
        std::string part;
        std::istringstream in(value);
        while (std::getline(in, part, ','))
            if (!part.empty()) out.push_back(part);
    }
    return out;
}

// ---- train

struct TrainArgs {
    std::vector<std::string> corpus;
    int dim = 100;
    int window = 5;
    int negatives = 5;
    int epochs = 5;
    double lr = 0.025;
    double subsample = 1e-5;
    std::uint64_t seed = 1;
    int min_count = kDefaultMinCount;
    int max_vocab = kDefaultMaxVocab;
    int workers = 1;
    std::string label;
    std::string out;
};

void run_train(const TrainArgs& a) {
    std::vector<fs::path> paths(a.corpus.begin(), a.corpus.end());
    const TokenStream stream = TokenStream::from_files(paths);
    const Vocabulary vocab = build_vocabulary(stream, a.min_count, a.max_vocab);

    TrainConfig config;
    config.dimension = a.dim;
    config.window = a.window;
    config.negatives = a.negatives;
    config.epochs = a.epochs;
    config.initial_lr = a.lr;
    config.subsample_t = a.subsample;
    config.seed = a.seed;

    std::string label = a.label;
    if (label.empty()) label = fs::path(a.corpus.front()).stem().string();

    const EmbeddingSpace space = train_sgns(stream, vocab, config, a.workers, label);
    save_native(space, a.out);

    RunManifest manifest = RunManifest::start("train");
    for (const auto& p : a.corpus) manifest.add_input(p);
    manifest.seeds = {a.seed};
    manifest.args = {{"corpus", [&] {
                          std::string joined;
                          for (const auto& p : a.corpus)
                              joined += (joined.empty() ? "" : ",") + p;
                          return joined;
                      }()},
                     {"dim", std::to_string(a.dim)},
                     {"window", std::to_string(a.window)},
                     {"negatives", std::to_string(a.negatives)},
                     {"epochs", std::to_string(a.epochs)},
                     {"lr", num(a.lr)},
                     {"subsample", num(a.subsample)},
                     {"seed", std::to_string(a.seed)},
                     {"min-count", std::to_string(a.min_count)},
                     {"max-vocab", std::to_string(a.max_vocab)},
                     {"workers", std::to_string(a.workers)},
                     {"label", label},
                     {"out", a.out}};
    manifest.write_alongside(a.out);

    const auto& losses = space.meta().epoch_losses;
    std::cout << "trained " << space.size() << " vectors at d=" << space.dim()
              << " from " << stream.total_tokens() << " tokens";
    if (!losses.empty()) std::cout << "; final epoch loss " << num(losses.back());
    std::cout << "\n";
}

// ---- bias

struct BiasArgs {
    std::string embeddings, pairs, neutral, out;
};

void run_bias(const BiasArgs& a) {
    const EmbeddingSpace space = load_any(a.embeddings);
    const TermPairSet pairs = load_term_pairs(a.pairs);
    const NeutralTermSet neutral = load_neutral_terms(a.neutral);
    const BiasReport report = bias_profile(space, pairs, neutral);
    report.save(a.out);

    RunManifest manifest = RunManifest::start("bias");
    add_embedding_input(manifest, a.embeddings);
    manifest.add_input(a.pairs);
    manifest.add_input(a.neutral);
    manifest.args = {{"embeddings", a.embeddings},
                     {"pairs", a.pairs},
                     {"neutral", a.neutral},
                     {"out", a.out}};
    manifest.write_alongside(a.out);

    std::cout << "direct_bias " << num(report.direct_bias) << " over "
              << report.word_biases.size() << " terms (" << report.dropped_terms.size()
              << " dropped, explained variance "
              << num(report.direction.explained_variance_ratio) << ")\n";
}

// ---- tau

struct TauArgs {
    std::vector<std::string> reports;
    std::string out;
};

void run_tau(const TauArgs& a) {
    std::vector<BiasReport> reports;
    reports.reserve(a.reports.size());
    for (const auto& path : a.reports) reports.push_back(BiasReport::load(path));
    const TauMatrix matrix = rank_stability_matrix(reports);

    std::ostringstream csv;
    csv << "label_a,label_b,tau,common_terms\n";
    for (size_t i = 0; i < matrix.labels.size(); ++i)
        for (size_t j = 0; j < matrix.labels.size(); ++j)
            csv << csv_label(matrix.labels[i]) << ',' << csv_label(matrix.labels[j])
                << ',' << num(matrix.at(i, j)) << ',' << matrix.common_terms << "\n";
    write_text_file(a.out, csv.str());

    RunManifest manifest = RunManifest::start("tau");
    std::string joined;
    for (const auto& path : a.reports) {
        manifest.add_input(path);
        joined += (joined.empty() ? "" : ",") + path;
    }
    manifest.args = {{"reports", joined}, {"out", a.out}};
    manifest.write_alongside(a.out);
}

// ---- density

struct DensityArgs {
    std::string report, out;
};

void run_density(const DensityArgs& a) {
    const BiasReport report = BiasReport::load(a.report);
    const BiasDensity density = bias_density(report);

    std::ostringstream csv;
    csv << "bin_lo,bin_hi,count,mass\n";
    for (size_t i = 0; i < density.masses.size(); ++i) {
        const auto count = static_cast<long long>(
            density.masses[i] * static_cast<double>(density.n) + 0.5);
        csv << num(density.bin_edges[i]) << ',' << num(density.bin_edges[i + 1]) << ','
            << count << ',' << num(density.masses[i]) << "\n";
    }
    write_text_file(a.out, csv.str());

    RunManifest manifest = RunManifest::start("density");
    manifest.add_input(a.report);
    manifest.args = {{"report", a.report}, {"out", a.out}};
    manifest.write_alongside(a.out);
}

// ---- sweep

struct SweepArgs {
    std::vector<std::string> embeddings;
    std::string pairs, neutral, out;
};

void run_sweep(const SweepArgs& a) {
    const std::vector<std::string> paths = split_paths(a.embeddings);
    std::vector<EmbeddingSpace> spaces;
    spaces.reserve(paths.size());
    for (const auto& path : paths) spaces.push_back(load_any(path));
    std::vector<const EmbeddingSpace*> views;
    views.reserve(spaces.size());
    for (const auto& space : spaces) views.push_back(&space);

    const TermPairSet pairs = load_term_pairs(a.pairs);
    const NeutralTermSet neutral = load_neutral_terms(a.neutral);
    const SweepCurve curve = dimension_sweep(views, pairs, neutral);

    std::ostringstream csv;
    csv << "corpus,dimension,direct_bias\n";
    for (const auto& point : curve.points)
        csv << csv_label(point.corpus_label) << ',' << point.dimension << ','
            << num(point.direct_bias) << "\n";
    write_text_file(a.out, csv.str());

    RunManifest manifest = RunManifest::start("sweep");
    std::string joined;
    for (const auto& path : paths) {
        add_embedding_input(manifest, path);
        joined += (joined.empty() ? "" : ",") + path;
    }
    manifest.add_input(a.pairs);
    manifest.add_input(a.neutral);
    manifest.args = {{"embeddings", joined},
                     {"pairs", a.pairs},
                     {"neutral", a.neutral},
                     {"out", a.out}};
    manifest.write_alongside(a.out);
}

// ---- bootstrap

struct BootstrapArgs {
    std::string embeddings, pairs, neutral, out;
    size_t replicates = 1000;
    std::uint64_t seed = 0;
};

void run_bootstrap(const BootstrapArgs& a) {
    const EmbeddingSpace space = load_any(a.embeddings);
    const TermPairSet pairs = load_term_pairs(a.pairs);
    const NeutralTermSet neutral = load_neutral_terms(a.neutral);
    const BootstrapResult result =
        bootstrap_direct_bias(space, pairs, neutral, a.replicates, a.seed);

    nlohmann::json j;
    j["point_estimate"] = result.point_estimate;
    j["ci_low"] = result.ci_low;
    j["ci_high"] = result.ci_high;
    j["n_replicates"] = result.n_replicates;
    j["seed"] = result.seed;
    j["policy"] = result.policy;
    j["replicates"] = result.replicates;
    write_text_file(a.out, j.dump(2) + "\n");

    RunManifest manifest = RunManifest::start("bootstrap");
    add_embedding_input(manifest, a.embeddings);
    manifest.add_input(a.pairs);
    manifest.add_input(a.neutral);
    manifest.seeds = {a.seed};
    manifest.args = {{"embeddings", a.embeddings}, {"pairs", a.pairs},
                     {"neutral", a.neutral},       {"replicates", std::to_string(a.replicates)},
                     {"seed", std::to_string(a.seed)}, {"out", a.out}};
    manifest.write_alongside(a.out);

    std::cout << "direct_bias " << num(result.point_estimate) << " ci ["
              << num(result.ci_low) << ", " << num(result.ci_high) << "] over "
              << result.n_replicates << " replicates\n";
}

// ---- compare

struct CompareArgs {
    std::string a, b, pairs, neutral, out;
    size_t replicates = 1000;
    std::uint64_t seed = 0;
    bool unpaired = false;
};

void run_compare(const CompareArgs& a) {
    const EmbeddingSpace space_a = load_any(a.a);
    const EmbeddingSpace space_b = load_any(a.b);
    const TermPairSet pairs = load_term_pairs(a.pairs);
    const NeutralTermSet neutral = load_neutral_terms(a.neutral);
    const CompareResult result = compare_corpora(space_a, space_b, pairs, neutral,
                                                 a.replicates, a.seed, !a.unpaired);

    std::cout << "p_value " << num(result.p_value) << "\n"
              << "direct_bias_a " << num(result.direct_bias_a) << "\n"
              << "direct_bias_b " << num(result.direct_bias_b) << "\n";

    if (!a.out.empty()) {
        nlohmann::json j;
        j["p_value"] = result.p_value;
        j["direct_bias_a"] = result.direct_bias_a;
        j["direct_bias_b"] = result.direct_bias_b;
        j["n_replicates"] = result.n_replicates;
        j["skipped"] = result.skipped;
        j["paired"] = result.paired;
        j["seed"] = result.seed;
        j["deltas"] = result.deltas;
        write_text_file(a.out, j.dump(2) + "\n");

        RunManifest manifest = RunManifest::start("compare");
        add_embedding_input(manifest, a.a);
        add_embedding_input(manifest, a.b);
        manifest.add_input(a.pairs);
        manifest.add_input(a.neutral);
        manifest.seeds = {a.seed};
        manifest.args = {{"a", a.a},
                         {"b", a.b},
                         {"pairs", a.pairs},
                         {"neutral", a.neutral},
                         {"replicates", std::to_string(a.replicates)},
                         {"seed", std::to_string(a.seed)},
                         {"paired", result.paired ? "true" : "false"},
                         {"out", a.out}};
        manifest.write_alongside(a.out);
    }
}

// ---- random-cos

struct RandomCosArgs {
    std::vector<std::string> embeddings;
    size_t pairs = 1000;
    std::uint64_t seed = 0;
    std::string out;
};

void run_random_cos(const RandomCosArgs& a) {
    const std::vector<std::string> paths = split_paths(a.embeddings);

    std::ostringstream csv;
    csv << "label,dimension,avg_abs_cosine,pairs\n";
    RunManifest manifest = RunManifest::start("random-cos");
    std::string joined;
    for (const auto& path : paths) {
        const EmbeddingSpace space = load_any(path);
        // One seed for all spaces: spaces sharing a vocabulary are
        // measured on the same sampled pairs.
        const WordPairSample sample = sample_random_pairs(space.terms(), a.pairs, a.seed);
        const double avg = average_abs_cosine(space, sample);
        csv << csv_label(space.label()) << ',' << space.dim() << ',' << num(avg) << ','
            << sample.pairs.size() << "\n";
        add_embedding_input(manifest, path);
        joined += (joined.empty() ? "" : ",") + path;
    }
    write_text_file(a.out, csv.str());

    manifest.seeds = {a.seed};
    manifest.args = {{"embeddings", joined},
                     {"pairs", std::to_string(a.pairs)},
                     {"seed", std::to_string(a.seed)},
                     {"out", a.out}};
    manifest.write_alongside(a.out);
}

// ---- convert

struct ConvertArgs {
    std::string input, output, from, to;
};

EmbeddingFormat output_format(const ConvertArgs& a) {
    if (!a.to.empty()) return parse_format(a.to);
    const std::string ext = fs::path(a.output).extension().string();
    if (ext == ".txt" || ext == ".vec") return EmbeddingFormat::GloveText;
    return EmbeddingFormat::Word2vecBinary;
}

void run_convert(const ConvertArgs& a) {
    const EmbeddingFormat from = a.from.empty() ? detect_format(a.input) : parse_format(a.from);
    const EmbeddingFormat to = output_format(a);
    const EmbeddingSpace space = load_embedding(a.input, from);
    save_embedding(space, a.output, to);

    RunManifest manifest = RunManifest::start("convert");
    add_embedding_input(manifest, a.input);
    manifest.args = {{"input", a.input},
                     {"output", a.output},
                     {"from", format_name(from)},
                     {"to", format_name(to)}};
    manifest.write_alongside(a.output);

    std::cout << "wrote " << format_name(to) << " " << a.output << " (" << space.size()
              << " x " << space.dim() << ")\n";
}

// ---- validate

const std::vector<std::string> kKnownCsvHeaders = {
    "label_a,label_b,tau,common_terms",
    "bin_lo,bin_hi,count,mass",
    "corpus,dimension,direct_bias",
    "label,dimension,avg_abs_cosine,pairs",
};

size_t count_fields(const std::string& line) {
    return static_cast<size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

std::string validate_csv(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    std::string header;
    if (!std::getline(in, header)) throw DataError("empty CSV");
    if (!header.empty() && header.back() == '\r') header.pop_back();
    const bool known =
        std::find(kKnownCsvHeaders.begin(), kKnownCsvHeaders.end(), header) !=
        kKnownCsvHeaders.end();
    const size_t fields = count_fields(header);
    std::string line;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (count_fields(line) != fields)
            throw DataError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(fields) + " fields");
    }
    return known ? "csv(" + header.substr(0, header.find(',')) + "...)" : "csv";
}

std::string validate_json(const fs::path& path) {
    const std::string text = read_text_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(e.what());
    }
    if (j.contains("command") && j.contains("input_hashes")) {
        RunManifest::from_json(text);
        return "manifest";
    }
    if (j.contains("direction") && j.contains("word_biases")) {
        BiasReport::from_json(text);
        return "bias report";
    }
    if (j.contains("replicates") && j.contains("policy")) {
        if (!j.at("replicates").is_array()) throw DataError("replicates is not a list");
        const double lo = j.at("ci_low").get<double>();
        const double hi = j.at("ci_high").get<double>();
        if (lo > hi) throw DataError("ci_low exceeds ci_high");
        return "bootstrap result";
    }
    if (j.contains("p_value") && j.contains("deltas")) {
        const double p = j.at("p_value").get<double>();
        if (p < 0.0 || p > 1.0) throw DataError("p_value out of [0,1]");
        return "compare result";
    }
    return "json";
}

struct ValidateArgs {
    std::vector<std::string> inputs;
};

void run_validate(const ValidateArgs& a) {
    std::vector<std::string> failures;
    for (const auto& input : a.inputs) {
        const fs::path path(input);
        const std::string ext = path.extension().string();
        try {
            std::string kind;
            if (ext == ".json") {
                kind = validate_json(path);
            } else if (ext == ".csv") {
                kind = validate_csv(path);
            } else {
                const EmbeddingSpace space = load_any(path);
                kind = format_name(detect_format(path)) + " embedding (" +
                       std::to_string(space.size()) + " x " +
                       std::to_string(space.dim()) + ")";
            }
            std::cout << "OK " << kind << " " << input << "\n";
        } catch (const DataError& e) {
            std::cout << "INVALID " << input << ": " << e.what() << "\n";
            failures.push_back(input);
        }
    }
    if (!failures.empty())
        throw DataError(std::to_string(failures.size()) + " of " +
                        std::to_string(a.inputs.size()) + " inputs invalid");
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"direct-bias metric and stability battery for word embeddings"};
    app.set_version_flag("--version", std::string("embias ") + kVersion);
    app.require_subcommand(1);

    TrainArgs train_args;
    auto* train = app.add_subcommand("train", "train skip-gram embeddings on text");
    train->add_option("--corpus", train_args.corpus, "input text files, one document per line")
        ->required();
    train->add_option("--dim", train_args.dim, "embedding dimension");
    train->add_option("--window", train_args.window, "max context offset");
    train->add_option("--negatives", train_args.negatives, "noise samples per positive");
    train->add_option("--epochs", train_args.epochs, "training passes");
    train->add_option("--lr", train_args.lr, "initial learning rate");
    train->add_option("--subsample", train_args.subsample, "frequent-word threshold");
    train->add_option("--seed", train_args.seed, "RNG seed")->required();
    train->add_option("--min-count", train_args.min_count, "minimum term frequency");
    train->add_option("--max-vocab", train_args.max_vocab, "vocabulary cap");
    train->add_option("--workers", train_args.workers,
                      "threads; more than 1 forfeits reproducibility");
    train->add_option("--label", train_args.label,
                      "corpus label stored with the space (default: corpus stem)");
    train->add_option("--out", train_args.out, "output path, native format")->required();
    train->callback([&] { run_train(train_args); });

    BiasArgs bias_args;
    auto* bias = app.add_subcommand("bias", "measure direct bias of one space");
    bias->add_option("--embeddings", bias_args.embeddings, "embedding file")->required();
    bias->add_option("--pairs", bias_args.pairs, "term-pair file (two words per line)")
        ->required();
    bias->add_option("--neutral", bias_args.neutral, "neutral-term file (one word per line)")
        ->required();
    bias->add_option("--out", bias_args.out, "output report JSON")->required();
    bias->callback([&] { run_bias(bias_args); });

    TauArgs tau_args;
    auto* tau = app.add_subcommand("tau", "rank agreement between bias reports");
    tau->add_option("--reports", tau_args.reports, "two or more bias report JSON files")
        ->required();
    tau->add_option("--out", tau_args.out,
                    "output CSV: label_a,label_b,tau,common_terms")
        ->required();
    tau->callback([&] { run_tau(tau_args); });

    DensityArgs density_args;
    auto* density = app.add_subcommand("density", "bias-score histogram of one report");
    density->add_option("--report", density_args.report, "bias report JSON")->required();
    density->add_option("--out", density_args.out,
                        "output CSV: bin_lo,bin_hi,count,mass")
        ->required();
    density->callback([&] { run_density(density_args); });

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "direct bias across dimensions");
    sweep->add_option("--embeddings", sweep_args.embeddings,
                      "embedding files (repeat the flag or comma-separate)")
        ->required();
    sweep->add_option("--pairs", sweep_args.pairs, "term-pair file")->required();
    sweep->add_option("--neutral", sweep_args.neutral, "neutral-term file")->required();
    sweep->add_option("--out", sweep_args.out,
                      "output CSV: corpus,dimension,direct_bias")
        ->required();
    sweep->callback([&] { run_sweep(sweep_args); });

    BootstrapArgs bootstrap_args;
    auto* bootstrap = app.add_subcommand("bootstrap", "bootstrap CI for direct bias");
    bootstrap->add_option("--embeddings", bootstrap_args.embeddings, "embedding file")
        ->required();
    bootstrap->add_option("--pairs", bootstrap_args.pairs, "term-pair file")->required();
    bootstrap->add_option("--neutral", bootstrap_args.neutral, "neutral-term file")
        ->required();
    bootstrap->add_option("--replicates", bootstrap_args.replicates, "bootstrap replicates");
    bootstrap->add_option("--seed", bootstrap_args.seed, "RNG seed")->required();
    bootstrap->add_option("--out", bootstrap_args.out, "output JSON")->required();
    bootstrap->callback([&] { run_bootstrap(bootstrap_args); });

    CompareArgs compare_args;
    auto* compare = app.add_subcommand("compare", "paired-bootstrap corpus comparison");
    compare->add_option("--a", compare_args.a, "embedding file A")->required();
    compare->add_option("--b", compare_args.b, "embedding file B")->required();
    compare->add_option("--pairs", compare_args.pairs, "term-pair file")->required();
    compare->add_option("--neutral", compare_args.neutral, "neutral-term file")->required();
    compare->add_option("--replicates", compare_args.replicates, "bootstrap replicates");
    compare->add_option("--seed", compare_args.seed, "RNG seed")->required();
    compare->add_flag("--unpaired", compare_args.unpaired,
                      "draw the two resamples independently");
    compare->add_option("--out", compare_args.out, "optional output JSON");
    compare->callback([&] { run_compare(compare_args); });

    RandomCosArgs random_cos_args;
    auto* random_cos =
        app.add_subcommand("random-cos", "average |cosine| of random word pairs");
    random_cos
        ->add_option("--embeddings", random_cos_args.embeddings,
                     "embedding files (repeat the flag or comma-separate)")
        ->required();
    random_cos->add_option("--pairs", random_cos_args.pairs, "number of sampled pairs");
    random_cos->add_option("--seed", random_cos_args.seed, "RNG seed")->required();
    random_cos
        ->add_option("--out", random_cos_args.out,
                     "output CSV: label,dimension,avg_abs_cosine,pairs")
        ->required();
    random_cos->callback([&] { run_random_cos(random_cos_args); });

    ConvertArgs convert_args;
    auto* convert = app.add_subcommand("convert", "convert between embedding formats");
    convert->add_option("--input", convert_args.input, "input embedding file")->required();
    convert->add_option("--output", convert_args.output, "output embedding file")->required();
    convert->add_option("--from", convert_args.from,
                        "input format: glove|word2vec|native (default: detected)");
    convert->add_option("--to", convert_args.to,
                        "output format: glove|word2vec|native (default: by extension, "
                        ".txt/.vec glove, else word2vec)");
    convert->callback([&] { run_convert(convert_args); });

    ValidateArgs validate_args;
    auto* validate =
        app.add_subcommand("validate", "check that output files parse cleanly");
    validate->add_option("inputs", validate_args.inputs, "files to check")->required();
    validate->callback([&] { run_validate(validate_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace embias
