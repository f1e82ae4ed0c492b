#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "segbench/descriptors/descriptors.hpp"

using namespace segbench;

namespace {

BinaryImage sparse_binary(std::mt19937_64& rng, int w, int h) {
    std::uniform_real_distribution<double> density(0.02, 0.5);
    return oracle::random_binary(rng, w, h, density(rng));
}

}  // namespace

TEST_CASE("centroid matches a pixel scan") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> size(1, 40);
    for (int i = 0; i < 300; ++i) {
        const auto img = sparse_binary(rng, size(rng), size(rng));
        const Region whole{0, 0, img.width(), img.height()};
        CHECK(geometric_centroid(img, whole) == oracle::centroid(img, whole));
        const auto grid = quadtree_partition(img);
        for (const auto& r : grid.level1) {
            if (r.area() > 0) CHECK(geometric_centroid(img, r) == oracle::centroid(img, r));
        }
    }
}

TEST_CASE("centroid simple cases") {
    BinaryImage sym(10, 10);
    sym.at(2, 2) = sym.at(7, 7) = sym.at(2, 7) = sym.at(7, 2) = 1;
    CHECK(geometric_centroid(sym, {0, 0, 10, 10}) == Point{5, 5});

    BinaryImage left(100, 20);
    for (int y = 0; y < 20; ++y) {
        for (int x = 0; x < 50; ++x) left.at(x, y) = 1;
    }
    CHECK(geometric_centroid(left, {0, 0, 100, 20}).x < 50);
    CHECK(geometric_centroid(BinaryImage(9, 4), {0, 0, 9, 4}) == Point{4, 2});
}

TEST_CASE("grid splits at the clamped centroids and tiles the image") {
    std::mt19937_64 rng(22);
    std::uniform_int_distribution<int> size(1, 30);
    for (int i = 0; i < 300; ++i) {
        const auto img = sparse_binary(rng, size(rng), size(rng));
        const auto grid = quadtree_partition(img);
        const Region whole{0, 0, img.width(), img.height()};
        const auto c = oracle::centroid(img, whole);
        if (img.width() >= 2) CHECK(grid.root_split.x == std::clamp(c.x, 1, img.width() - 1));
        if (img.height() >= 2) CHECK(grid.root_split.y == std::clamp(c.y, 1, img.height() - 1));

        // Each level covers every pixel exactly once, and the quadrant counts
        // agree with a direct count on either side of the split lines.
        long area1 = 0;
        long area2 = 0;
        for (const auto& r : grid.level1) area1 += r.area();
        for (const auto& r : grid.level2) area2 += r.area();
        CHECK(area1 == whole.area());
        CHECK(area2 == whole.area());
        for (int y = 0; y < img.height(); ++y) {
            for (int x = 0; x < img.width(); ++x) {
                int hits1 = 0;
                int hits2 = 0;
                for (const auto& r : grid.level1) hits1 += r.contains(x, y);
                for (const auto& r : grid.level2) hits2 += r.contains(x, y);
                CHECK(hits1 == 1);
                CHECK(hits2 == 1);
                CHECK(grid.level1[grid.level1_index(x, y)].contains(x, y));
                CHECK(grid.level2[grid.level2_index(x, y)].contains(x, y));
            }
        }
        if (img.width() >= 2 && img.height() >= 2) {
            for (const auto& r : grid.level1) CHECK(r.area() > 0);
        }
    }
}

TEST_CASE("uniform ink gives equal regions and fractions") {
    BinaryImage full(16, 16, 1);
    const auto grid = quadtree_partition(full);
    for (const auto& r : grid.level2) CHECK(r.area() == 16);
    const auto f = quadtree_fractions(full);
    for (std::size_t i = 0; i < 4; ++i) CHECK(f[i] == 0.25);
    for (std::size_t i = 4; i < 20; ++i) CHECK(f[i] == 0.0625);
    const auto d = quadtree_descriptor(BinaryImage(8, 8));
    CHECK(d.norm() == 0.0);
    CHECK(d.dimension() == 20);
}

TEST_CASE("hand-counted 8x8 fractions") {
    // A 4x4 ink block in the top-left corner and one stray pixel at (7,7).
    // Root centroid (31/17, 31/17) rounds to (2,2): quadrant counts 4, 4, 4, 5.
    // Level 2 splits the three block quadrants into single pixels and the
    // bottom-right quadrant at (3,3), whose last child holds (3,3) and (7,7).
    BinaryImage img(8, 8);
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 4; ++x) img.at(x, y) = 1;
    }
    img.at(7, 7) = 1;
    const auto grid = quadtree_partition(img);
    CHECK(grid.root_split == Point{2, 2});
    CHECK(grid.quadrant_splits[0] == Point{1, 1});
    CHECK(grid.quadrant_splits[1] == Point{3, 1});
    CHECK(grid.quadrant_splits[2] == Point{1, 3});
    CHECK(grid.quadrant_splits[3] == Point{3, 3});
    const auto f = quadtree_fractions(img);
    CHECK(f[0] == 4.0 / 17);
    CHECK(f[1] == 4.0 / 17);
    CHECK(f[2] == 4.0 / 17);
    CHECK(f[3] == 5.0 / 17);
    for (std::size_t i = 4; i < 19; ++i) CHECK(f[i] == 1.0 / 17);
    CHECK(f[19] == 2.0 / 17);
}

TEST_CASE("concentrated ink pulls the root split") {
    BinaryImage img(40, 40);
    for (int y = 0; y < 10; ++y) {
        for (int x = 0; x < 10; ++x) img.at(x, y) = 1;
    }
    img.at(39, 39) = 1;
    const auto grid = quadtree_partition(img);
    CHECK(grid.root_split.x < 20);
    CHECK(grid.root_split.y < 20);
}

TEST_CASE("lbp codes match bit assembly") {
    GrayImage img(5, 5);
    for (auto& p : img.pixels()) p = 100;
    CHECK(lbp_code(img, 2, 2) == 255);
    img.at(2, 2) = 50;
    CHECK(lbp_code(img, 2, 2) == 255);
    CHECK(lbp_code(img, 1, 1) == 255 - 16);
    CHECK(lbp_code(img, 3, 3) == 255 - 1);
    CHECK(lbp_code(img, 2, 1) == 255 - 32);
    img.at(2, 2) = 200;
    CHECK(lbp_code(img, 2, 2) == 0);

    std::mt19937_64 rng(23);
    for (int i = 0; i < 50; ++i) {
        const auto r = oracle::random_gray(rng, 12, 9, i % 2 == 0 ? 4 : 256);
        for (int y = 1; y < 8; ++y) {
            for (int x = 1; x < 11; ++x) CHECK(lbp_code(r, x, y) == oracle::lbp(r, x, y));
        }
    }
}

TEST_CASE("uniform mapping") {
    const auto& table = uniform_lbp_table();
    int uniform = 0;
    for (int c = 0; c < 256; ++c) {
        CHECK(table[static_cast<std::size_t>(c)] == oracle::uniform_bin(c));
        uniform += oracle::circular_transitions(c) <= 2;
    }
    CHECK(uniform == 58);
    CHECK(table[0] == 0);
    CHECK(table[255] == 57);
}

TEST_CASE("lbp histograms match the oracle and count interior pixels") {
    std::mt19937_64 rng(24);
    std::uniform_int_distribution<int> size(3, 30);
    for (int i = 0; i < 100; ++i) {
        const auto img = oracle::random_gray(rng, size(rng), size(rng), i % 3 == 0 ? 3 : 256);
        const auto grid = quadtree_partition(binarize(img));
        for (const bool uniform : {true, false}) {
            DescriptorConfig config;
            config.lbp_uniform = uniform;
            const auto h = lbp_histograms(img, grid, config);
            CHECK(h == oracle::lbp_histograms(img, grid, uniform));
            const auto bins = config.lbp_bins();
            const auto regions = grid.regions();
            for (std::size_t r = 0; r < 20; ++r) {
                double mass = 0;
                for (std::size_t b = 0; b < bins; ++b) mass += h[r * bins + b];
                double interior = 0;
                for (int y = 1; y + 1 < img.height(); ++y) {
                    for (int x = 1; x + 1 < img.width(); ++x) interior += regions[r].contains(x, y);
                }
                CHECK(mass == interior);
            }
        }
    }
}

TEST_CASE("lbp of a constant image is one spike per region") {
    GrayImage img(20, 12);
    for (auto& p : img.pixels()) p = 90;
    const auto d = lbp_descriptor(img);
    CHECK(d.dimension() == 20 * 59);
    CHECK(d.norm() == doctest::Approx(1.0).epsilon(1e-12));
    const auto grid = quadtree_partition(binarize(img));
    const auto h = lbp_histograms(img, grid);
    for (std::size_t r = 0; r < 20; ++r) {
        for (std::size_t b = 0; b < 59; ++b) {
            if (b != 57) CHECK(h[r * 59 + b] == 0.0);
        }
    }
    CHECK_THROWS_AS((void)lbp_descriptor(GrayImage(2, 5)), std::invalid_argument);
}

TEST_CASE("hog histograms match a triangular-kernel accumulation") {
    std::mt19937_64 rng(25);
    std::uniform_int_distribution<int> size(3, 30);
    for (int i = 0; i < 100; ++i) {
        const auto img = oracle::random_gray(rng, size(rng), size(rng));
        const auto grid = quadtree_partition(binarize(img));
        for (const int bins : {9, 4, 1}) {
            DescriptorConfig config;
            config.hog_bins = bins;
            const auto h = hog_histograms(img, grid, config);
            const auto o = oracle::hog_histograms(img, grid, bins);
            REQUIRE(h.size() == o.size());
            for (std::size_t k = 0; k < h.size(); ++k) CHECK(std::abs(h[k] - o[k]) <= 1e-9);
        }
    }
}

TEST_CASE("hog degenerate and analytic cases") {
    GrayImage flat(10, 10);
    const auto zero = hog_descriptor(flat);
    CHECK(zero.dimension() == 180);
    CHECK(zero.norm() == 0.0);

    GrayImage step(10, 10);
    for (int y = 0; y < 10; ++y) {
        for (int x = 0; x < 5; ++x) step.at(x, y) = 0;
    }
    const auto grid = quadtree_partition(binarize(step));
    const auto h = hog_histograms(step, grid);
    double total = 0;
    double bin0 = 0;
    for (std::size_t r = 0; r < 20; ++r) {
        for (std::size_t b = 0; b < 9; ++b) total += h[r * 9 + b];
        bin0 += h[r * 9];
    }
    CHECK(total > 0);
    CHECK(bin0 == total);
    CHECK(hog_descriptor(step).norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)hog_descriptor(GrayImage(5, 2)), std::invalid_argument);
}

TEST_CASE("descriptor norms are zero or one") {
    std::mt19937_64 rng(26);
    std::uniform_int_distribution<int> size(3, 40);
    for (int i = 0; i < 60; ++i) {
        const auto img = oracle::random_gray(rng, size(rng), size(rng), 1 + i % 5);
        for (const auto& d : {lbp_descriptor(img), hog_descriptor(img), quadtree_descriptor(binarize(img))}) {
            const double n = d.norm();
            CHECK((n == 0.0 || std::abs(n - 1.0) < 1e-12));
        }
        CHECK(lbp_descriptor(img).values == lbp_descriptor(img).values);
    }
}

TEST_CASE("descriptor distance") {
    const FeatureVector a{DescriptorKind::hog, {1, 0, 0}};
    const FeatureVector b{DescriptorKind::hog, {0, 1, 0}};
    CHECK(descriptor_distance(a, a) == 0.0);
    CHECK(descriptor_distance(a, b) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS((void)descriptor_distance(a, FeatureVector{DescriptorKind::lbp, {1, 0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS((void)descriptor_distance(a, FeatureVector{DescriptorKind::hog, {1, 0}}), std::invalid_argument);

    std::mt19937_64 rng(27);
    std::normal_distribution<double> v;
    for (int i = 0; i < 100; ++i) {
        FeatureVector x{DescriptorKind::lbp, std::vector<double>(30)};
        FeatureVector y{DescriptorKind::lbp, std::vector<double>(30)};
        for (auto& e : x.values) e = v(rng);
        for (auto& e : y.values) e = v(rng);
        l2_normalize(x.values);
        l2_normalize(y.values);
        double sum = 0;
        for (std::size_t k = 0; k < 30; ++k) sum += (x.values[k] - y.values[k]) * (x.values[k] - y.values[k]);
        CHECK(descriptor_distance(x, y) == doctest::Approx(std::sqrt(sum)).epsilon(1e-12));
        CHECK(descriptor_distance(x, y) == descriptor_distance(y, x));
    }
}
