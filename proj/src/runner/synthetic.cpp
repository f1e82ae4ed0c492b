#include "segbench/runner/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>

namespace segbench {
namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
    constexpr double kInv53 = 1.0 / 9007199254740992.0;
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * kInv53;
}

int uniform_int(Rng& rng, int lo, int hi) {  // inclusive
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

struct Stroke {
    double x0, y0, x1, y1;
};

struct Glyph {
    double width = 10;
    std::vector<Stroke> strokes;
};

constexpr double kAscender = 0.0;
constexpr double kXHeight = 9.0;
constexpr double kBaseline = 24.0;
constexpr double kDescender = 32.0;

Glyph make_glyph(char letter, std::uint64_t seed) {
    Rng rng(seed * 131 + static_cast<unsigned char>(letter));
    static constexpr std::string_view kTall = "bdfhklt";
    static constexpr std::string_view kDeep = "gjpqy";
    const double top = kTall.find(letter) != std::string_view::npos ? kAscender : kXHeight;
    const double bottom = kDeep.find(letter) != std::string_view::npos ? kDescender : kBaseline;
    Glyph g;
    g.width = uniform(rng, 8.0, 14.0);
    const int strokes = uniform_int(rng, 2, 4);
    // A vertical-ish main stroke keeps tall and deep letters recognisable.
    const double mx = uniform(rng, 1.0, g.width - 1.0);
    g.strokes.push_back({mx, top, mx + uniform(rng, -2.0, 2.0), bottom});
    for (int s = 0; s < strokes; ++s) {
        g.strokes.push_back({uniform(rng, 0.0, g.width), uniform(rng, kXHeight, kBaseline), uniform(rng, 0.0, g.width),
                             uniform(rng, kXHeight, kBaseline)});
    }
    return g;
}

struct InkBounds {
    int x0 = 1 << 30, y0 = 1 << 30, x1 = -1, y1 = -1;
};

void stamp(GrayImage& page, double cx, double cy, double radius, std::uint8_t ink, InkBounds& bounds) {
    const int xa = static_cast<int>(std::floor(cx - radius));
    const int xb = static_cast<int>(std::ceil(cx + radius));
    const int ya = static_cast<int>(std::floor(cy - radius));
    const int yb = static_cast<int>(std::ceil(cy + radius));
    for (int y = ya; y <= yb; ++y) {
        for (int x = xa; x <= xb; ++x) {
            if (x < 0 || y < 0 || x >= page.width() || y >= page.height()) continue;
            const double dx = x + 0.5 - cx;
            const double dy = y + 0.5 - cy;
            if (dx * dx + dy * dy > radius * radius) continue;
            page.at(x, y) = std::min(page.at(x, y), ink);
            bounds.x0 = std::min(bounds.x0, x);
            bounds.y0 = std::min(bounds.y0, y);
            bounds.x1 = std::max(bounds.x1, x + 1);
            bounds.y1 = std::max(bounds.y1, y + 1);
        }
    }
}

double word_width(const std::string& word, const std::array<Glyph, 26>& glyphs) {
    double w = 0;
    for (const char c : word) w += glyphs[static_cast<std::size_t>(c - 'a')].width + 3.0;
    return w;
}

// Renders one instance with its top-left glyph origin at (ox, oy).
BoundingBox render_word(GrayImage& page, const std::string& word, const std::array<Glyph, 26>& glyphs, double ox,
                        double oy, Rng& rng) {
    const double slant = uniform(rng, -0.18, 0.18);
    const double radius = uniform(rng, 0.9, 1.5);
    const auto ink = static_cast<std::uint8_t>(uniform_int(rng, 15, 70));
    InkBounds bounds;
    double x = ox;
    for (const char c : word) {
        const auto& g = glyphs[static_cast<std::size_t>(c - 'a')];
        const double dy = uniform(rng, -1.0, 1.0);
        for (const auto& s : g.strokes) {
            const double x0 = s.x0 + uniform(rng, -0.7, 0.7);
            const double y0 = s.y0 + uniform(rng, -0.7, 0.7);
            const double x1 = s.x1 + uniform(rng, -0.7, 0.7);
            const double y1 = s.y1 + uniform(rng, -0.7, 0.7);
            const double len = std::hypot(x1 - x0, y1 - y0);
            const int steps = std::max(1, static_cast<int>(len * 4.0));
            for (int k = 0; k <= steps; ++k) {
                const double t = static_cast<double>(k) / steps;
                const double px = x0 + t * (x1 - x0);
                const double py = y0 + t * (y1 - y0);
                stamp(page, x + px + slant * (kBaseline - py), oy + py + dy, radius, ink, bounds);
            }
        }
        x += g.width + uniform(rng, 1.5, 4.0);
    }
    constexpr int kMargin = 2;
    return {bounds.x0 - kMargin, bounds.y0 - kMargin, bounds.x1 + kMargin, bounds.y1 + kMargin};
}

}  // namespace

Dataset make_synthetic_dataset(const SyntheticSpec& spec) {
    Rng rng(spec.seed);
    std::array<Glyph, 26> glyphs;
    for (char c = 'a'; c <= 'z'; ++c) glyphs[static_cast<std::size_t>(c - 'a')] = make_glyph(c, spec.seed);

    const auto total = static_cast<std::size_t>(spec.pages * spec.words_per_page);
    std::vector<std::string> words;
    words.reserve(total);
    for (std::size_t i = 0; i < total; ++i) words.push_back(spec.vocabulary[i % spec.vocabulary.size()]);
    for (std::size_t i = words.size(); i > 1; --i) std::swap(words[i - 1], words[rng() % i]);

    constexpr int kMargin = 30;
    constexpr int kLineHeight = 56;
    std::vector<PageImage> pages;
    std::vector<WordSample> samples;
    std::size_t next_word = 0;
    for (int p = 0; p < spec.pages; ++p) {
        // Lay out first so the page height fits the lines.
        struct Placement {
            std::string word;
            double x, y;
        };
        std::vector<Placement> layout;
        double x = kMargin;
        double y = kMargin;
        for (int w = 0; w < spec.words_per_page; ++w) {
            const auto& word = words[next_word++];
            const double width = word_width(word, glyphs) + 8.0;
            if (x + width > spec.page_width - kMargin) {
                x = kMargin;
                y += kLineHeight;
            }
            layout.push_back({word, x, y});
            x += width + uniform(rng, 14.0, 26.0);
        }
        const int height = static_cast<int>(y) + kLineHeight + kMargin;

        GrayImage page(spec.page_width, height);
        for (auto& px : page.pixels()) px = static_cast<std::uint8_t>(255 - uniform_int(rng, 0, 24));
        char page_id[16];
        std::snprintf(page_id, sizeof page_id, "page%02d", p + 1);
        for (const auto& place : layout) {
            const auto box = render_word(page, place.word, glyphs, place.x, place.y, rng);
            samples.push_back({static_cast<SampleId>(samples.size()), page_id, box, place.word});
        }
        pages.push_back({page_id, std::move(page)});
    }
    return Dataset("synthetic", std::move(pages), std::move(samples));
}

}  // namespace segbench
