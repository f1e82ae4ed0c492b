#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "segbench/core/dataset.hpp"
#include "segbench/core/error.hpp"
#include "segbench/core/geometry.hpp"
#include "segbench/core/image.hpp"
#include "segbench/core/image_io.hpp"
#include "segbench/core/text.hpp"

using namespace segbench;

namespace {

BoundingBox random_box(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pos(-20, 60);
    std::uniform_int_distribution<int> ext(1, 40);
    const int l = pos(rng);
    const int t = pos(rng);
    return {l, t, l + ext(rng), t + ext(rng)};
}

Dataset pages_dataset(int pages, const std::vector<std::vector<std::string>>& words) {
    std::vector<PageImage> p;
    std::vector<WordSample> s;
    SampleId id = 0;
    for (int i = 0; i < pages; ++i) {
        const std::string page = "p" + std::to_string(i);
        p.push_back({page, GrayImage(200, 40)});
        const auto& list = words[static_cast<std::size_t>(i) % words.size()];
        for (std::size_t w = 0; w < list.size(); ++w) {
            const int x = static_cast<int>(w) * 20;
            s.push_back({id++, page, {x, 5, x + 15, 30}, list[w]});
        }
    }
    return Dataset("toy", std::move(p), std::move(s));
}

}  // namespace

TEST_CASE("iou worked values") {
    CHECK(iou({0, 0, 100, 50}, {0, 0, 100, 50}) == 1.0);
    CHECK(iou({0, 0, 10, 10}, {20, 20, 30, 30}) == 0.0);
    CHECK(iou({0, 0, 100, 50}, {20, 0, 120, 50}) == doctest::Approx(4000.0 / 6000.0).epsilon(1e-15));
    CHECK(iou({0, 0, 10, 10}, {10, 0, 20, 10}) == 0.0);
    CHECK(intersection_area({0, 0, 10, 10}, {5, 5, 20, 20}) == 25);
}

TEST_CASE("iou properties over random boxes") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const auto a = random_box(rng);
        const auto b = random_box(rng);
        CHECK(iou(a, b) == iou(b, a));
        CHECK(iou(a, a) == 1.0);
        CHECK(iou(a, b) == doctest::Approx(oracle::pixel_iou(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("iou does not increase along a translation ray") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> dir(-3, 3);
    for (int i = 0; i < 200; ++i) {
        const auto box = random_box(rng);
        const int dx = dir(rng);
        const int dy = dir(rng);
        double previous = 1.0;
        for (int t = 0; t < 50; ++t) {
            const double v = iou(box, box.translated(dx * t, dy * t));
            CHECK(v <= previous);
            previous = v;
        }
    }
}

TEST_CASE("crop copies, pads white and rejects boxes off the page") {
    GrayImage page(6, 4);
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 6; ++x) page.at(x, y) = static_cast<std::uint8_t>(10 * y + x);
    }
    const auto inside = crop(page, {1, 1, 4, 3});
    CHECK(inside.width() == 3);
    CHECK(inside.height() == 2);
    CHECK(inside.at(0, 0) == 11);
    CHECK(inside.at(2, 1) == 23);

    const auto half_off = crop(page, {-2, 0, 2, 2});
    CHECK(half_off.at(0, 0) == kBackground);
    CHECK(half_off.at(1, 1) == kBackground);
    CHECK(half_off.at(2, 0) == 0);
    CHECK(half_off.at(3, 1) == 11);

    CHECK(crop(page, {0, 0, 6, 4}) == page);
    CHECK_THROWS_AS((void)crop(page, {10, 10, 12, 12}), DataError);
}

TEST_CASE("binarization") {
    CHECK(binarize(GrayImage(8, 8)).ink_count() == 0);

    GrayImage half(8, 8);
    for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 4; ++x) half.at(x, y) = 0;
    }
    const auto b = binarize(half);
    CHECK(b.ink_count() == 32);
    CHECK(b.ink(0, 0));
    CHECK_FALSE(b.ink(7, 7));
}

TEST_CASE("otsu matches an exhaustive between-class variance search") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        GrayImage img(24, 16);
        std::normal_distribution<double> dark(60 + trial, 15);
        std::normal_distribution<double> light(190, 20);
        std::bernoulli_distribution which(0.3);
        for (auto& p : img.pixels()) {
            p = static_cast<std::uint8_t>(std::clamp(which(rng) ? dark(rng) : light(rng), 0.0, 255.0));
        }
        // Exhaustive: evaluate every threshold directly over the pixels.
        double best = -1;
        int best_t = -1;
        for (int t = 0; t < 255; ++t) {
            double n0 = 0, n1 = 0, s0 = 0, s1 = 0;
            for (const auto p : img.pixels()) {
                if (p <= t) {
                    n0 += 1;
                    s0 += p;
                } else {
                    n1 += 1;
                    s1 += p;
                }
            }
            if (n0 == 0 || n1 == 0) continue;
            const double n = n0 + n1;
            const double diff = s0 / n0 - s1 / n1;
            const double between = (n0 / n) * (n1 / n) * diff * diff;
            if (between > best * (1 + 1e-12)) {
                best = between;
                best_t = t;
            }
        }
        const int t = otsu_threshold(img);
        CHECK(t == best_t);
        CHECK(t > 60 + trial);
        CHECK(t < 190);
    }
}

TEST_CASE("page partition") {
    const std::vector<std::vector<std::string>> words{{"a", "b"}};
    auto check = [&](int pages, std::size_t train_pages) {
        const auto ds = pages_dataset(pages, words);
        const auto p = partition_pages(ds);
        CHECK(p.train.size() == 2 * train_pages);
        CHECK(p.test.size() == 2 * (static_cast<std::size_t>(pages) - train_pages));
        for (const auto id : p.train) CHECK(std::stoi(ds.sample(id).page_id.substr(1)) < static_cast<int>(train_pages));
        for (const auto id : p.test) CHECK(std::stoi(ds.sample(id).page_id.substr(1)) >= static_cast<int>(train_pages));
        CHECK(count_partition(ds, p.train).pages == train_pages);
        CHECK(count_partition(ds, p.test).pages == static_cast<std::size_t>(pages) - train_pages);
    };
    check(20, 15);
    check(40, 30);
    check(4, 3);
    CHECK_THROWS_AS((void)partition_pages(pages_dataset(1, words)), DataError);
}

TEST_CASE("query set keeps repeated transcriptions only") {
    const auto ds = pages_dataset(1, {{"the", "The", "and"}});
    const std::vector<SampleId> all{0, 1, 2};
    CHECK(query_set(ds, all) == std::vector<SampleId>{0, 1});
    const auto unique = pages_dataset(1, {{"a", "b", "c"}});
    CHECK(query_set(unique, all).empty());
}

TEST_CASE("dataset validation") {
    std::vector<PageImage> pages{{"p", GrayImage(50, 50)}};
    CHECK_THROWS_AS(Dataset("x", pages, {{0, "p", {0, 0, 5, 5}, "a"}, {0, "p", {0, 0, 5, 5}, "b"}}), DataError);
    CHECK_THROWS_AS(Dataset("x", pages, {{0, "p", {0, 0, 5, 5}, ""}}), DataError);
    CHECK_THROWS_AS(Dataset("x", pages, {{0, "q", {0, 0, 5, 5}, "a"}}), DataError);
    CHECK_THROWS_AS(Dataset("x", pages, {{0, "p", {5, 0, 5, 5}, "a"}}), DataError);
    CHECK_THROWS_AS(Dataset("x", pages, {{0, "p", {60, 60, 70, 70}, "a"}}), DataError);
}

TEST_CASE("dataset save and load round trip") {
    const auto dir = std::filesystem::temp_directory_path() / "segbench_test_core_ds";
    std::filesystem::remove_all(dir);
    auto ds = pages_dataset(3, {{"fort", "Fort", "letter"}, {"march"}});
    save_dataset(ds, dir);
    const auto back = load_dataset(dir / "ground_truth.txt", dir / "pages", "toy");
    REQUIRE(back.samples().size() == ds.samples().size());
    for (std::size_t i = 0; i < ds.samples().size(); ++i) {
        CHECK(back.samples()[i].box == ds.samples()[i].box);
        CHECK(back.samples()[i].transcription == ds.samples()[i].transcription);
        CHECK(back.samples()[i].sample_id == ds.samples()[i].sample_id);
    }
    CHECK(back.page("p1").pixels == ds.page("p1").pixels);
    std::filesystem::remove_all(dir);
}

TEST_CASE("ground truth parsing errors carry line numbers") {
    const auto path = std::filesystem::temp_directory_path() / "segbench_test_core_gt.txt";
    {
        std::ofstream out(path);
        out << "# comment\np1\t0\t0\t10\t10\tword\np1\t0\tx\t10\t10\tword\n";
    }
    try {
        (void)read_box_records(path);
        FAIL("expected an error");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find(":3") != std::string::npos);
    }
    {
        std::ofstream out(path);
        out << "p1,1,2,3,4,word\n";
    }
    const auto records = read_box_records(path);
    REQUIRE(records.size() == 1);
    CHECK(records[0].box == BoundingBox{1, 2, 3, 4});
    std::filesystem::remove(path);
}

TEST_CASE("text helpers") {
    CHECK(fold_case("Fort") == fold_case("fort"));
    CHECK(fold_case("Fort") != fold_case("Ford"));
    CHECK(fold_case("ÀÉÎ") == "àéî");
    CHECK(fold_case("ΣΑΣ") == "σασ");
    CHECK(fold_case("ДОМ") == "дом");
    CHECK(format_level(0.3) == "0.3000");
    CHECK(format_exact(0.1) == "0.1");
    CHECK(parse_double("1.5") == 1.5);
    CHECK_FALSE(parse_double("1.5x"));
    CHECK_FALSE(parse_double(""));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> v(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double x = v(rng);
        CHECK(parse_double(format_exact(x)) == x);
    }
}

TEST_CASE("image io round trip") {
    std::mt19937_64 rng(9);
    const auto img = oracle::random_gray(rng, 17, 9);
    const auto path = std::filesystem::temp_directory_path() / "segbench_test_io.png";
    write_gray_image(path, img);
    CHECK(read_gray_image(path) == img);
    std::filesystem::remove(path);
    CHECK_THROWS_AS((void)read_gray_image(path), DataError);
}
