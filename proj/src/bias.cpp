#include "embias/bias.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace embias {

namespace {

using nlohmann::json;

constexpr double kPowerIterTolerance = 1e-10;
constexpr int kPowerIterCap = 10000;

double norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

void TermPairSet::validate() const {
    if (pairs.empty()) throw DataError("term pair set is empty");
    for (const auto& [a, b] : pairs) {
        if (a.empty() || b.empty()) throw DataError("term pair with empty term");
        if (a == b) throw DataError("term pair with identical terms: " + a);
    }
}

NeutralTermSet NeutralTermSet::from_terms(std::vector<std::string> terms,
                                          std::string label) {
    NeutralTermSet set;
    set.label = std::move(label);
    std::unordered_set<std::string> seen;
    for (auto& term : terms) {
        if (term.empty()) continue;
        if (seen.insert(term).second) set.terms.push_back(std::move(term));
    }
    if (set.terms.empty()) throw DataError("neutral term set is empty");
    return set;
}

TermPairSet load_term_pairs(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open term-pair file: " + path.string());
    TermPairSet set;
    set.label = path.stem().string();
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        auto tokens_in_line = [&] {
            std::vector<std::string> words;
            size_t pos = 0;
            while (pos < line.size()) {
                while (pos < line.size() &&
                       std::isspace(static_cast<unsigned char>(line[pos]))) {
                    ++pos;
                }
                size_t start = pos;
                while (pos < line.size() &&
                       !std::isspace(static_cast<unsigned char>(line[pos]))) {
                    ++pos;
                }
                if (pos > start) words.push_back(line.substr(start, pos - start));
            }
            return words;
        }();
        if (tokens_in_line.empty()) continue;
        if (tokens_in_line.size() != 2) {
            throw DataError("term-pair file " + path.string() + " line " +
                            std::to_string(line_no) +
                            ": expected exactly two words");
        }
        set.pairs.emplace_back(std::move(tokens_in_line[0]),
                               std::move(tokens_in_line[1]));
    }
    set.validate();
    return set;
}

NeutralTermSet load_neutral_terms(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open neutral-term file: " + path.string());
    std::vector<std::string> terms;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        std::string word;
        std::string extra;
        std::istringstream fields(line);
        if (!(fields >> word)) continue;
        if (fields >> extra) {
            throw DataError("neutral-term file " + path.string() + " line " +
                            std::to_string(line_no) + ": expected one word");
        }
        terms.push_back(std::move(word));
    }
    if (terms.empty()) {
        throw DataError("neutral-term file has no terms: " + path.string());
    }
    return NeutralTermSet::from_terms(std::move(terms), path.stem().string());
}

std::pair<std::vector<double>, double> first_principal_component(
    const std::vector<std::vector<double>>& vectors) {
    if (vectors.size() < 2) {
        throw DataError("need at least 2 vectors for a principal component");
    }
    const size_t d = vectors.front().size();
    for (const auto& v : vectors) {
        if (v.size() != d) throw DataError("principal component: ragged input");
    }
    const size_t n = vectors.size();

    // Center. The symmetric difference set is zero-mean by construction,
    // but centering explicitly keeps the covariance exact for any input.
    std::vector<double> mean(d, 0.0);
    for (const auto& v : vectors) {
        for (size_t j = 0; j < d; ++j) mean[j] += v[j];
    }
    for (size_t j = 0; j < d; ++j) mean[j] /= static_cast<double>(n);
    std::vector<std::vector<double>> centered(n, std::vector<double>(d));
    double trace = 0.0;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < d; ++j) {
            const double c = vectors[i][j] - mean[j];
            centered[i][j] = c;
            trace += c * c;
        }
    }
    trace /= static_cast<double>(n);
    if (trace <= 0.0) throw DataError("degenerate difference set");

    // Deterministic start: first centered vector, axis e1 if it is zero.
    std::vector<double> v(d, 0.0);
    if (const double n0 = norm(centered.front()); n0 > 0.0) {
        for (size_t j = 0; j < d; ++j) v[j] = centered.front()[j] / n0;
    } else {
        v[0] = 1.0;
    }

    // Power iteration on the implicit covariance: C v = (1/n) sum (c.v) c.
    std::vector<double> next(d);
    double lambda = 0.0;
    for (int iter = 0; iter < kPowerIterCap; ++iter) {
        std::fill(next.begin(), next.end(), 0.0);
        for (const auto& c : centered) {
            double proj = 0.0;
            for (size_t j = 0; j < d; ++j) proj += c[j] * v[j];
            for (size_t j = 0; j < d; ++j) next[j] += proj * c[j];
        }
        for (size_t j = 0; j < d; ++j) next[j] /= static_cast<double>(n);

        lambda = 0.0;
        for (size_t j = 0; j < d; ++j) lambda += next[j] * v[j];

        const double next_norm = norm(next);
        if (next_norm == 0.0) {
            // v is in the null space; the start vector choice makes this
            // unreachable for trace > 0, but guard anyway.
            throw DataError("degenerate difference set");
        }
        double diff = 0.0;
        for (size_t j = 0; j < d; ++j) {
            next[j] /= next_norm;
            const double delta = next[j] - v[j];
            diff += delta * delta;
        }
        v.swap(next);
        if (std::sqrt(diff) < kPowerIterTolerance) break;
    }

    return {std::move(v), lambda / trace};
}

BiasDirection bias_direction(const EmbeddingSpace& space, const TermPairSet& pairs) {
    pairs.validate();

    BiasDirection dir;
    std::vector<std::pair<std::int32_t, std::int32_t>> rows;
    for (const auto& [a, b] : pairs.pairs) {
        const std::int32_t ra = space.row(a);
        const std::int32_t rb = space.row(b);
        if (ra < 0 || rb < 0) {
            dir.dropped_pairs.emplace_back(a, b);
        } else {
            rows.emplace_back(ra, rb);
        }
    }
    if (rows.empty()) throw DataError("no pairs in vocabulary");

    const size_t d = static_cast<size_t>(space.dim());
    std::vector<std::vector<double>> differences;
    differences.reserve(2 * rows.size());
    for (auto [ra, rb] : rows) {
        const auto x = space.vec(static_cast<size_t>(ra));
        const auto y = space.vec(static_cast<size_t>(rb));
        std::vector<double> diff(d);
        for (size_t j = 0; j < d; ++j) {
            diff[j] = static_cast<double>(x[j]) - static_cast<double>(y[j]);
        }
        std::vector<double> neg(d);
        for (size_t j = 0; j < d; ++j) neg[j] = -diff[j];
        differences.push_back(std::move(diff));
        differences.push_back(std::move(neg));
    }

    auto [g, ratio] = first_principal_component(differences);

    // Orient toward G1: mean over pairs of cos(x, g) - cos(y, g) >= 0.
    const std::span<const double> gs(g);
    double lean = 0.0;
    for (auto [ra, rb] : rows) {
        lean += cosine<float, double>(space.vec(static_cast<size_t>(ra)), gs) -
                cosine<float, double>(space.vec(static_cast<size_t>(rb)), gs);
    }
    if (lean < 0.0) {
        for (double& x : g) x = -x;
    }

    dir.g = std::move(g);
    dir.explained_variance_ratio = ratio;
    dir.pairs_used = static_cast<int>(rows.size());
    return dir;
}

double word_bias(const EmbeddingSpace& space, const BiasDirection& direction,
                 std::string_view term) {
    return cosine<float, double>(space.vec(term), direction.g);
}

std::pair<double, std::vector<std::string>> direct_bias(
    const EmbeddingSpace& space, const BiasDirection& direction,
    const NeutralTermSet& neutral) {
    double sum = 0.0;
    size_t retained = 0;
    std::vector<std::string> dropped;
    for (const auto& term : neutral.terms) {
        if (space.contains(term)) {
            sum += std::abs(word_bias(space, direction, term));
            ++retained;
        } else {
            dropped.push_back(term);
        }
    }
    if (retained == 0) throw DataError("no neutral terms in vocabulary");
    return {sum / static_cast<double>(retained), std::move(dropped)};
}

SpaceMetaSnapshot SpaceMetaSnapshot::of(const EmbeddingSpace& space) {
    SpaceMetaSnapshot snap;
    snap.label = space.label();
    snap.corpus_label = space.meta().corpus_label;
    snap.source = space.meta().source;
    snap.dimension = space.dim();
    snap.vocab_size = space.size();
    return snap;
}

BiasReport bias_profile(const EmbeddingSpace& space, const TermPairSet& pairs,
                        const NeutralTermSet& neutral) {
    BiasReport report;
    report.direction = bias_direction(space, pairs);

    double sum = 0.0;
    size_t retained = 0;
    for (const auto& term : neutral.terms) {
        if (space.contains(term)) {
            const double bias = word_bias(space, report.direction, term);
            report.word_biases[term] = bias;
            sum += std::abs(bias);
            ++retained;
        } else {
            report.dropped_terms.push_back(term);
        }
    }
    if (retained == 0) throw DataError("no neutral terms in vocabulary");
    report.direct_bias = sum / static_cast<double>(retained);
    report.space_meta = SpaceMetaSnapshot::of(space);
    return report;
}

std::string BiasReport::to_json() const {
    json j;
    json dir;
    dir["vector"] = direction.g;
    dir["explained_variance_ratio"] = direction.explained_variance_ratio;
    dir["pairs_used"] = direction.pairs_used;
    dir["orientation"] = direction.orientation;
    json dropped_pairs = json::array();
    for (const auto& [a, b] : direction.dropped_pairs) {
        dropped_pairs.push_back(json::array({a, b}));
    }
    dir["dropped_pairs"] = std::move(dropped_pairs);
    j["direction"] = std::move(dir);
    j["word_biases"] = word_biases;
    j["direct_bias"] = direct_bias;
    j["dropped_terms"] = dropped_terms;
    j["space_meta"] = {
        {"label", space_meta.label},
        {"corpus_label", space_meta.corpus_label},
        {"source", space_meta.source},
        {"dimension", space_meta.dimension},
        {"vocab_size", space_meta.vocab_size},
    };
    return j.dump(2) + "\n";
}

BiasReport BiasReport::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("invalid bias report JSON: ") + e.what());
    }
    try {
        BiasReport report;
        const json& dir = j.at("direction");
        report.direction.g = dir.at("vector").get<std::vector<double>>();
        report.direction.explained_variance_ratio =
            dir.at("explained_variance_ratio").get<double>();
        report.direction.pairs_used = dir.at("pairs_used").get<int>();
        report.direction.orientation = dir.value("orientation", "toward-G1");
        if (dir.contains("dropped_pairs")) {
            for (const auto& p : dir.at("dropped_pairs")) {
                report.direction.dropped_pairs.emplace_back(
                    p.at(0).get<std::string>(), p.at(1).get<std::string>());
            }
        }
        report.word_biases =
            j.at("word_biases").get<std::map<std::string, double>>();
        report.direct_bias = j.at("direct_bias").get<double>();
        report.dropped_terms =
            j.at("dropped_terms").get<std::vector<std::string>>();
        const json& meta = j.at("space_meta");
        report.space_meta.label = meta.at("label").get<std::string>();
        report.space_meta.corpus_label = meta.value("corpus_label", std::string());
        report.space_meta.source = meta.value("source", std::string());
        report.space_meta.dimension = meta.at("dimension").get<int>();
        report.space_meta.vocab_size = meta.value("vocab_size", size_t{0});
        return report;
    } catch (const json::exception& e) {
        throw DataError(std::string("bias report missing fields: ") + e.what());
    }
}

BiasReport BiasReport::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open report: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return from_json(text);
}

void BiasReport::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write report: " + path.string());
    out << to_json();
}

}  // namespace embias
