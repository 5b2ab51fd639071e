#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "embias/bias.hpp"
#include "embias/corpus.hpp"
#include "embias/embedding.hpp"
#include "embias/error.hpp"
#include "embias/formats.hpp"
#include "embias/stats.hpp"
#include "embias/trainer.hpp"
#include "embias/version.hpp"

namespace py = pybind11;

namespace {

embias::TermPairSet make_pairs(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
    embias::TermPairSet set;
    set.pairs = pairs;
    set.validate();
    return set;
}

embias::NeutralTermSet make_neutral(std::vector<std::string> terms) {
    return embias::NeutralTermSet::from_terms(std::move(terms));
}

embias::TrainConfig make_config(int dim, int window, int negatives, int epochs,
                                double lr, double subsample, std::uint64_t seed) {
    embias::TrainConfig config;
    config.dimension = dim;
    config.window = window;
    config.negatives = negatives;
    config.epochs = epochs;
    config.initial_lr = lr;
    config.subsample_t = subsample;
    config.seed = seed;
    return config;
}

}  // namespace

PYBIND11_MODULE(_embias, m) {
    m.doc() = "direct-bias metric and stability battery for word embeddings";
    m.attr("__version__") = embias::kVersion;

    py::register_exception<embias::DataError>(m, "DataError");

    py::class_<embias::BootstrapResult>(m, "BootstrapResult")
        .def_readonly("replicates", &embias::BootstrapResult::replicates)
        .def_readonly("point_estimate", &embias::BootstrapResult::point_estimate)
        .def_readonly("ci_low", &embias::BootstrapResult::ci_low)
        .def_readonly("ci_high", &embias::BootstrapResult::ci_high)
        .def_readonly("n_replicates", &embias::BootstrapResult::n_replicates)
        .def_readonly("seed", &embias::BootstrapResult::seed)
        .def_readonly("policy", &embias::BootstrapResult::policy);

    py::class_<embias::CompareResult>(m, "CompareResult")
        .def_readonly("p_value", &embias::CompareResult::p_value)
        .def_readonly("deltas", &embias::CompareResult::deltas)
        .def_readonly("direct_bias_a", &embias::CompareResult::direct_bias_a)
        .def_readonly("direct_bias_b", &embias::CompareResult::direct_bias_b)
        .def_readonly("n_replicates", &embias::CompareResult::n_replicates)
        .def_readonly("skipped", &embias::CompareResult::skipped)
        .def_readonly("paired", &embias::CompareResult::paired)
        .def_readonly("seed", &embias::CompareResult::seed);

    py::class_<embias::EmbeddingSpace>(m, "Space")
        .def_property_readonly("dim", &embias::EmbeddingSpace::dim)
        .def_property_readonly("terms", &embias::EmbeddingSpace::terms)
        .def_property_readonly("corpus_label",
                               [](const embias::EmbeddingSpace& s) {
                                   return s.meta().corpus_label;
                               })
        .def_property_readonly("epoch_losses",
                               [](const embias::EmbeddingSpace& s) {
                                   return s.meta().epoch_losses;
                               })
        .def("__len__", &embias::EmbeddingSpace::size)
        .def("__contains__",
             [](const embias::EmbeddingSpace& s, const std::string& term) {
                 return s.contains(term);
             })
        .def("label", &embias::EmbeddingSpace::label)
        .def(
            "vector",
            [](const embias::EmbeddingSpace& s, const std::string& term) {
                const auto v = s.vec(term);
                return std::vector<float>(v.begin(), v.end());
            },
            py::arg("term"))
        .def(
            "save",
            [](const embias::EmbeddingSpace& s, const std::string& path,
               const std::string& format) {
                save_embedding(s, path, embias::parse_format(format));
            },
            py::arg("path"), py::arg("format") = "native")
        .def_static(
            "load",
            [](const std::string& path, const std::string& format) {
                const auto f = format.empty() ? embias::detect_format(path)
                                              : embias::parse_format(format);
                return embias::load_embedding(path, f);
            },
            py::arg("path"), py::arg("format") = "");

    m.def("tokenize",
          [](const std::string& text) { return embias::tokenize(text); },
          py::arg("text"));

    m.def(
        "train",
        [](const std::string& text, int dim, int window, int negatives, int epochs,
           double lr, double subsample, std::uint64_t seed, int min_count,
           int max_vocab, int workers, const std::string& label) {
            const auto stream = embias::TokenStream::from_text(text);
            const auto vocab = embias::build_vocabulary(stream, min_count, max_vocab);
            const auto config =
                make_config(dim, window, negatives, epochs, lr, subsample, seed);
            return embias::train_sgns(stream, vocab, config, workers, label);
        },
        py::arg("text"), py::arg("dim") = 100, py::arg("window") = 5,
        py::arg("negatives") = 5, py::arg("epochs") = 5, py::arg("lr") = 0.025,
        py::arg("subsample") = 1e-5, py::arg("seed") = 1, py::arg("min_count") = 5,
        py::arg("max_vocab") = 50000, py::arg("workers") = 1, py::arg("label") = "",
        "Train skip-gram embeddings on in-memory text, one document per line.");

    m.def(
        "bias_report_json",
        [](const embias::EmbeddingSpace& space,
           const std::vector<std::pair<std::string, std::string>>& pairs,
           const std::vector<std::string>& neutral) {
            return embias::bias_profile(space, make_pairs(pairs), make_neutral(neutral))
                .to_json();
        },
        py::arg("space"), py::arg("pairs"), py::arg("neutral"),
        "Full bias measurement as a JSON string.");

    m.def(
        "direct_bias",
        [](const embias::EmbeddingSpace& space,
           const std::vector<std::pair<std::string, std::string>>& pairs,
           const std::vector<std::string>& neutral) {
            return embias::bias_profile(space, make_pairs(pairs), make_neutral(neutral))
                .direct_bias;
        },
        py::arg("space"), py::arg("pairs"), py::arg("neutral"));

    m.def(
        "kendall_tau",
        [](const std::vector<double>& xs, const std::vector<double>& ys) {
            return embias::kendall_tau(xs, ys);
        },
        py::arg("xs"), py::arg("ys"));

    m.def(
        "cosine",
        [](const std::vector<double>& u, const std::vector<double>& v) {
            return embias::cosine<double, double>(u, v);
        },
        py::arg("u"), py::arg("v"));

    m.def(
        "average_abs_cosine",
        [](const embias::EmbeddingSpace& space, size_t pairs, std::uint64_t seed) {
            const auto sample = embias::sample_random_pairs(space.terms(), pairs, seed);
            return embias::average_abs_cosine(space, sample);
        },
        py::arg("space"), py::arg("pairs"), py::arg("seed"));

    m.def(
        "bootstrap",
        [](const embias::EmbeddingSpace& space,
           const std::vector<std::pair<std::string, std::string>>& pairs,
           const std::vector<std::string>& neutral, size_t replicates,
           std::uint64_t seed) {
            return embias::bootstrap_direct_bias(space, make_pairs(pairs),
                                                 make_neutral(neutral), replicates, seed);
        },
        py::arg("space"), py::arg("pairs"), py::arg("neutral"),
        py::arg("replicates") = 1000, py::arg("seed") = 0);

    m.def(
        "compare",
        [](const embias::EmbeddingSpace& a, const embias::EmbeddingSpace& b,
           const std::vector<std::pair<std::string, std::string>>& pairs,
           const std::vector<std::string>& neutral, size_t replicates,
           std::uint64_t seed, bool paired) {
            return embias::compare_corpora(a, b, make_pairs(pairs), make_neutral(neutral),
                                           replicates, seed, paired);
        },
        py::arg("a"), py::arg("b"), py::arg("pairs"), py::arg("neutral"),
        py::arg("replicates") = 1000, py::arg("seed") = 0, py::arg("paired") = true);
}
