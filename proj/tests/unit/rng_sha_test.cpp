#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "embias/rng.hpp"
#include "embias/sha256.hpp"
#include "test_support.hpp"

using namespace embias;

TEST_SUITE("rng") {

TEST_CASE("same seed gives the same stream") {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("uniform01 stays in [0,1) and is roughly uniform") {
    Rng rng(7);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::fabs(sum / n - 0.5) < 0.01);
}

TEST_CASE("uniform01_open_zero never returns zero") {
    Rng rng(9);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform01_open_zero();
        REQUIRE(u > 0.0);
        REQUIRE(u <= 1.0);
    }
}

TEST_CASE("below covers the range without excess") {
    Rng rng(11);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 20000; ++i) {
        const std::uint64_t v = rng.below(7);
        REQUIRE(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
}

TEST_CASE("gaussian has unit variance and zero mean approximately") {
    Rng rng(13);
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = rng.gaussian();
        sum += g;
        sq += g * g;
    }
    const double mean = sum / n;
    CHECK(std::fabs(mean) < 0.01);
    CHECK(std::fabs(sq / n - mean * mean - 1.0) < 0.02);
}

TEST_CASE("derive_seed separates streams") {
    std::set<std::uint64_t> seeds;
    for (std::uint64_t s = 0; s < 2000; ++s) seeds.insert(derive_seed(123, s));
    CHECK(seeds.size() == 2000);
    CHECK(derive_seed(123, 0) != derive_seed(124, 0));
    CHECK(derive_seed(5, 1) == derive_seed(5, 1));
}

}  // TEST_SUITE

TEST_SUITE("sha256") {

TEST_CASE("known digests") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("The quick brown fox jumps over the lazy dog") ==
          "d7a8fbb307d7809469ca9abcb0082e4f8d5651e46d3cdb762d02d0bf37c9e592");
}

TEST_CASE("streaming matches one-shot across block boundaries") {
    std::string text;
    for (int i = 0; i < 500; ++i) text += "chunk" + std::to_string(i);
    Sha256 h;
    size_t at = 0;
    const size_t steps[] = {1, 63, 64, 65, 1000};
    size_t step_i = 0;
    while (at < text.size()) {
        const size_t step = std::min(steps[step_i++ % 5], text.size() - at);
        h.update(text.substr(at, step));
        at += step;
    }
    CHECK(h.hex_digest() == sha256_hex(text));
}

TEST_CASE("file hash equals content hash") {
    test::TempDir dir;
    std::string content("some\nbinary\0ish content", 23);
    test::write_file(dir.file("blob"), content);
    CHECK(sha256_file_hex(dir.file("blob")) == sha256_hex(content));
    CHECK_THROWS_AS(sha256_file_hex(dir.file("missing")), DataError);
}

}  // TEST_SUITE
