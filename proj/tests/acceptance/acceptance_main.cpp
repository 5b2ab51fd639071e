// Acceptance battery: one PASS/FAIL line per criterion, nonzero exit on
// any failure. Slow pieces (the dimension sweep trainings) run once and
// feed several criteria.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "embias/bias.hpp"
#include "embias/cli.hpp"
#include "embias/corpus.hpp"
#include "embias/embedding.hpp"
#include "embias/formats.hpp"
#include "embias/rng.hpp"
#include "embias/stats.hpp"
#include "embias/trainer.hpp"
#include "fixture_corpus.hpp"
#include "test_support.hpp"

using namespace embias;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", x);
    return buf;
}

// ---- shared fixtures

fs::path data_file(const char* name) {
    return fs::path(EMBIAS_DATA_DIR) / name;
}

// Planted-contrast space builder shared by criteria 5 and 6: pair
// differences dominated by one axis plus probe words.
EmbeddingSpace planted_space(int dim, std::uint64_t seed, int n_pairs,
                             int n_probes) {
    Rng rng(seed);
    std::vector<std::string> terms;
    std::vector<float> matrix;
    for (int i = 0; i < n_pairs; ++i) {
        terms.push_back("x" + std::to_string(i));
        terms.push_back("y" + std::to_string(i));
        std::vector<double> base(dim), diff(dim);
        for (int j = 0; j < dim; ++j) {
            base[j] = rng.gaussian();
            diff[j] = 0.3 * rng.gaussian();
        }
        diff[0] += 4.0;
        for (int j = 0; j < dim; ++j)
            matrix.push_back(static_cast<float>(base[j] + 0.5 * diff[j]));
        for (int j = 0; j < dim; ++j)
            matrix.push_back(static_cast<float>(base[j] - 0.5 * diff[j]));
    }
    for (int i = 0; i < n_probes; ++i) {
        terms.push_back("w" + std::to_string(i));
        for (int j = 0; j < dim; ++j)
            matrix.push_back(static_cast<float>(rng.gaussian()));
    }
    return EmbeddingSpace(std::move(terms), std::move(matrix), dim);
}

TermPairSet planted_pairs(int n_pairs) {
    TermPairSet pairs;
    for (int i = 0; i < n_pairs; ++i)
        pairs.pairs.emplace_back("x" + std::to_string(i), "y" + std::to_string(i));
    pairs.label = "planted";
    return pairs;
}

NeutralTermSet probe_terms(int n_probes) {
    std::vector<std::string> terms;
    for (int i = 0; i < n_probes; ++i) terms.push_back("w" + std::to_string(i));
    return NeutralTermSet::from_terms(std::move(terms), "probes");
}

// Neutral words all at the same |cosine| from the he/she axis.
EmbeddingSpace fixed_bias_space(double bias, int n_terms) {
    std::vector<std::string> terms{"he", "she"};
    std::vector<float> matrix{2, 0, -2, 0};
    const double y = std::sqrt(1.0 - bias * bias);
    for (int i = 0; i < n_terms; ++i) {
        terms.push_back("w" + std::to_string(i));
        matrix.push_back(static_cast<float>(bias));
        matrix.push_back(static_cast<float>(i % 2 == 0 ? y : -y));
    }
    return EmbeddingSpace(std::move(terms), std::move(matrix), 2);
}

// ---- criteria 1 and 2: trained dimension sweep

void run_sweep_criteria() {
    std::vector<BiasReport> reports;  // d = 16, 32, 64, 128, 256, in order
    const std::vector<int> dims{16, 32, 64, 128, 256};
    try {
        const std::string text = test::fixture_corpus_text(10u * 1024 * 1024, 2026);
        const TokenStream raw = TokenStream::from_text(text);
        const Vocabulary vocab = build_vocabulary(raw);
        const TermPairSet pairs = load_term_pairs(data_file("gender_pairs.txt"));
        const NeutralTermSet neutral =
            load_neutral_terms(data_file("professions.txt"));

        for (const int d : dims) {
            TrainConfig config;  // stock defaults, fixed seed
            config.dimension = d;
            config.seed = 1;
            const EmbeddingSpace space = train_sgns(raw, vocab, config, 1, "fixture");
            reports.push_back(bias_profile(space, pairs, neutral));
        }
    } catch (const std::exception& e) {
        report(1, false, std::string("sweep training failed: ") + e.what());
        report(2, false, "skipped, sweep training failed");
        return;
    }

    // Criterion 1: non-increasing within 10% per step over d 32..256, and
    // strictly lower at 256 than at 32.
    std::string trail;
    bool steps_ok = true;
    for (size_t i = 1; i < reports.size(); ++i) {
        const double prev = reports[i - 1].direct_bias;
        const double cur = reports[i].direct_bias;
        if (i >= 2 && cur > prev * 1.10) steps_ok = false;  // d>=32 steps only
    }
    for (size_t i = 0; i < dims.size(); ++i)
        trail += (i ? " " : "") + std::to_string(dims[i]) + ":" +
                 num(reports[i].direct_bias);
    const bool endpoints_ok = reports[4].direct_bias < reports[1].direct_bias;
    report(1, steps_ok && endpoints_ok,
           "direct bias by dimension " + trail +
               (steps_ok ? "" : " (step increase over 10%)") +
               (endpoints_ok ? "" : " (d256 not below d32)"));

    // Criterion 2: high-dimension rankings agree more than low-dimension.
    try {
        const TauMatrix m = rank_stability_matrix(reports);
        const double tau_high = m.at(3, 4);  // d128 vs d256
        const double tau_low = m.at(0, 1);   // d16 vs d32
        report(2, tau_high > tau_low,
               "tau(128,256)=" + num(tau_high) + " vs tau(16,32)=" + num(tau_low) +
                   " over " + std::to_string(m.common_terms) + " shared terms");
    } catch (const std::exception& e) {
        report(2, false, std::string("rank stability failed: ") + e.what());
    }
}

// ---- criterion 3: cosine concentration

void run_concentration_criterion() {
    try {
        std::map<int, double> avg;
        for (const int d : {50, 200, 800}) {
            const EmbeddingSpace space = test::gaussian_space(600, d, 33);
            const WordPairSample sample =
                sample_random_pairs(space.terms(), 10000, 71);
            avg[d] = average_abs_cosine(space, sample);
        }
        bool ok = true;
        std::string detail;
        for (const auto& [d, value] : avg) {
            const double expected = std::sqrt(2.0 / (3.14159265358979323846 * d));
            if (std::fabs(value - expected) / expected > 0.10) ok = false;
            detail += "d" + std::to_string(d) + "=" + num(value) + " ";
        }
        const double r1 = avg[50] / avg[200];
        const double r2 = avg[200] / avg[800];
        if (r1 < 1.7 || r1 > 2.3 || r2 < 1.7 || r2 > 2.3) ok = false;
        detail += "ratios " + num(r1) + ", " + num(r2);
        report(3, ok, detail);
    } catch (const std::exception& e) {
        report(3, false, std::string("failed: ") + e.what());
    }
}

// ---- criterion 5: significance machinery

void run_significance_criterion() {
    try {
        const size_t n = 10000;
        bool ok = true;
        std::string detail;

        const EmbeddingSpace same = planted_space(8, 505, 5, 40);
        const CompareResult self = compare_corpora(same, same, planted_pairs(5),
                                                   probe_terms(40), n, 3);
        if (self.p_value != 0.5) ok = false;
        detail += "self p=" + num(self.p_value);

        TermPairSet he_she;
        he_she.pairs = {{"he", "she"}};
        const EmbeddingSpace strong = fixed_bias_space(0.9, 40);
        const EmbeddingSpace weak = fixed_bias_space(0.1, 40);
        const CompareResult forced = compare_corpora(
            strong, weak, he_she, probe_terms(40), n, 4);
        if (!(forced.p_value < 0.001)) ok = false;
        detail += "; forced p=" + num(forced.p_value);

        const EmbeddingSpace a = planted_space(8, 506, 5, 40);
        const EmbeddingSpace b = planted_space(8, 507, 5, 40);
        const CompareResult ab =
            compare_corpora(a, b, planted_pairs(5), probe_terms(40), n, 5);
        const CompareResult ba =
            compare_corpora(b, a, planted_pairs(5), probe_terms(40), n, 5);
        if (ab.p_value + ba.p_value != 1.0) ok = false;
        detail += "; antisymmetry sum=" + num(ab.p_value + ba.p_value) + " at " +
                  std::to_string(n) + " replicates";
        report(5, ok, detail);
    } catch (const std::exception& e) {
        report(5, false, std::string("failed: ") + e.what());
    }
}

// ---- criterion 6: invariance suite

void run_invariance_criterion() {
    try {
        const std::vector<int> dims{4, 32, 300};
        int checked = 0;
        double worst_scale = 0.0, worst_rot = 0.0, worst_dup = 0.0;
        bool swap_exact = true;

        for (int trial = 0; trial < 20; ++trial) {
            const int d = dims[static_cast<size_t>(trial) % dims.size()];
            const int n_pairs = 6;
            const int n_probes = 25;
            const EmbeddingSpace space =
                planted_space(d, 600 + static_cast<std::uint64_t>(trial), n_pairs,
                              n_probes);
            TermPairSet pairs = planted_pairs(n_pairs);
            const NeutralTermSet neutral = probe_terms(n_probes);
            const BiasReport base = bias_profile(space, pairs, neutral);

            // Global positive scaling; power-of-two factors are exact in
            // float32 storage, which is what the 1e-9 bound assumes.
            for (const double c : {0.5, 1024.0}) {
                const BiasReport scaled =
                    bias_profile(test::scale_space(space, c), pairs, neutral);
                for (const auto& [term, bias] : base.word_biases)
                    worst_scale = std::max(
                        worst_scale, std::fabs(scaled.word_biases.at(term) - bias));
                worst_scale = std::max(
                    worst_scale, std::fabs(scaled.direct_bias - base.direct_bias));
            }

            // Orthogonal rotation.
            const auto qmat =
                test::random_orthogonal(d, 700 + static_cast<std::uint64_t>(trial));
            const BiasReport rotated =
                bias_profile(test::apply_matrix(space, qmat), pairs, neutral);
            for (const auto& [term, bias] : base.word_biases)
                worst_rot = std::max(worst_rot,
                                     std::fabs(rotated.word_biases.at(term) - bias));

            // G1/G2 swap: exact negation, direct bias untouched.
            TermPairSet swapped = pairs;
            for (auto& [a, b] : swapped.pairs) std::swap(a, b);
            const BiasReport flip = bias_profile(space, swapped, neutral);
            for (const auto& [term, bias] : base.word_biases)
                if (flip.word_biases.at(term) != -bias) swap_exact = false;
            if (flip.direct_bias != base.direct_bias) swap_exact = false;

            // Pair duplication: covariance scales uniformly, g stays.
            TermPairSet doubled = pairs;
            doubled.pairs.insert(doubled.pairs.end(), pairs.pairs.begin(),
                                 pairs.pairs.end());
            const BiasDirection dir = bias_direction(space, pairs);
            const BiasDirection dup = bias_direction(space, doubled);
            for (size_t j = 0; j < dir.g.size(); ++j)
                worst_dup = std::max(worst_dup, std::fabs(dup.g[j] - dir.g[j]));

            ++checked;
        }

        const bool ok = checked == 20 && worst_scale <= 1e-9 &&
                        worst_rot <= 1e-6 && swap_exact && worst_dup <= 1e-9;
        report(6, ok,
               "20 spaces at d in {4,32,300}: scale drift " + num(worst_scale) +
                   ", rotation drift " + num(worst_rot) + ", swap exact " +
                   (swap_exact ? "yes" : "NO") + ", duplication drift " +
                   num(worst_dup));
    } catch (const std::exception& e) {
        report(6, false, std::string("failed: ") + e.what());
    }
}

// ---- criterion 7: oracle equivalences

void run_oracle_criterion() {
    try {
        bool ok = true;
        std::string detail;

        // Power iteration vs dense eigendecomposition, away from ties.
        Rng rng(7001);
        int kept = 0;
        double worst_align = 1.0;
        while (kept < 100) {
            const size_t n = 5 + rng.index(26);
            const size_t d = 3 + rng.index(18);
            std::vector<std::vector<double>> vectors(n, std::vector<double>(d));
            for (auto& v : vectors) {
                for (auto& x : v) x = rng.gaussian();
                v[0] += 5.0 * rng.gaussian();
            }
            const auto [dense_g, dense_ratio] = test::dense_top_component(vectors);
            if (dense_ratio < 0.55) continue;
            const auto [g, ratio] = first_principal_component(vectors);
            double dot = 0.0;
            for (size_t j = 0; j < d; ++j) dot += g[j] * dense_g[j];
            worst_align = std::min(worst_align, std::fabs(dot));
            ++kept;
        }
        if (worst_align < 1.0 - 1e-9) ok = false;
        detail += "pca worst |cos|=" + num(worst_align);

        // Knight tau vs brute force on tied lists.
        double worst_tau = 0.0;
        int tau_done = 0;
        while (tau_done < 100) {
            const size_t n = 2 + rng.index(49);
            std::vector<double> xs(n), ys(n);
            for (auto& x : xs) x = static_cast<double>(rng.index(6));
            for (auto& y : ys) y = static_cast<double>(rng.index(6));
            bool x_const = true, y_const = true;
            for (size_t i = 1; i < n; ++i) {
                x_const &= xs[i] == xs[0];
                y_const &= ys[i] == ys[0];
            }
            if (x_const || y_const) continue;
            worst_tau = std::max(
                worst_tau, std::fabs(kendall_tau(xs, ys) - test::brute_force_tau(xs, ys)));
            ++tau_done;
        }
        if (worst_tau > 1e-12) ok = false;
        detail += "; tau worst err=" + num(worst_tau);

        // Bootstrap vs exact enumeration of the two-atom case.
        const EmbeddingSpace atoms({"he", "she", "w0", "w1"},
                                   {2, 0, -2, 0, 0, 1, 1, 0}, 2);
        TermPairSet he_she;
        he_she.pairs = {{"he", "she"}};
        const NeutralTermSet w01 = NeutralTermSet::from_terms({"w0", "w1"});
        const size_t n = 10000;
        const BootstrapResult boot =
            bootstrap_direct_bias(atoms, he_she, w01, n, 1234);
        size_t zeros = 0, halves = 0, ones = 0;
        for (const double r : boot.replicates) {
            if (r == 0.0) ++zeros;
            else if (r == 0.5) ++halves;
            else if (r == 1.0) ++ones;
            else ok = false;
        }
        const auto within3 = [n](size_t count, double p) {
            const double sigma = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
            return std::fabs(static_cast<double>(count) -
                             static_cast<double>(n) * p) <= 3.0 * sigma;
        };
        if (!within3(zeros, 0.25) || !within3(halves, 0.5) || !within3(ones, 0.25))
            ok = false;
        if (boot.ci_low != 0.0 || boot.ci_high != 1.0) ok = false;
        detail += "; bootstrap atoms " + std::to_string(zeros) + "/" +
                  std::to_string(halves) + "/" + std::to_string(ones) +
                  " ci [" + num(boot.ci_low) + ", " + num(boot.ci_high) + "]";

        report(7, ok, detail);
    } catch (const std::exception& e) {
        report(7, false, std::string("failed: ") + e.what());
    }
}

// ---- criterion 8: format fidelity

void run_format_criterion() {
    try {
        bool ok = true;
        std::string detail;
        test::TempDir dir;
        auto space = test::gaussian_space(60, 24, 808, "fidelity");
        space.meta().source = "sgns";

        save_word2vec_binary(space, dir.file("a.bin"));
        const EmbeddingSpace w2v = load_word2vec_binary(dir.file("a.bin"));
        const bool w2v_ok = w2v.matrix() == space.matrix() && w2v.terms() == space.terms();
        if (!w2v_ok) ok = false;
        detail += std::string("word2vec round-trip ") + (w2v_ok ? "exact" : "DRIFTED");

        save_native(space, dir.file("a.emb"));
        const EmbeddingSpace native = load_native(dir.file("a.emb"));
        const bool native_ok = native.matrix() == space.matrix() &&
                               native.meta().corpus_label == "fidelity";
        if (!native_ok) ok = false;
        detail += std::string("; native ") + (native_ok ? "exact" : "DRIFTED");

        save_glove_text(space, dir.file("a.txt"));
        const EmbeddingSpace glove = load_glove_text(dir.file("a.txt"));
        const bool glove_ok = glove.matrix() == space.matrix();
        if (!glove_ok) ok = false;
        detail += std::string("; glove 9-digit ") + (glove_ok ? "exact" : "DRIFTED");

        // convert composed with its inverse, driven through the CLI.
        const std::string in = dir.file("a.emb").string();
        const std::string bin1 = dir.file("c1.bin").string();
        const std::string txt = dir.file("c2.txt").string();
        const std::string bin2 = dir.file("c3.bin").string();
        auto convert = [](const std::string& from, const std::string& to) {
            std::vector<std::string> args{"embias", "convert", "--input", from,
                                          "--output", to};
            std::vector<char*> argv;
            for (auto& a : args) argv.push_back(a.data());
            return run_cli(static_cast<int>(argv.size()), argv.data());
        };
        const bool cli_ok = convert(in, bin1) == 0 && convert(bin1, txt) == 0 &&
                            convert(txt, bin2) == 0 &&
                            test::read_file(bin1) == test::read_file(bin2);
        if (!cli_ok) ok = false;
        detail += std::string("; convert inverse ") + (cli_ok ? "identity" : "DRIFTED");

        report(8, ok, detail);
    } catch (const std::exception& e) {
        report(8, false, std::string("failed: ") + e.what());
    }
}

}  // namespace

int main() {
    run_sweep_criteria();        // criteria 1 and 2
    run_concentration_criterion();  // criterion 3
    std::printf("SKIP criterion 4: network-dependent spot check, run the tagged "
                "integration test instead\n");
    run_significance_criterion();  // criterion 5
    run_invariance_criterion();    // criterion 6
    run_oracle_criterion();        // criterion 7
    run_format_criterion();        // criterion 8
    if (g_failures > 0) {
        std::printf("%d criteria failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
