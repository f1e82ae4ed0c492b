#include "segbench/runner/representation_cache.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "segbench/core/error.hpp"

namespace segbench {
namespace {

static_assert(std::endian::native == std::endian::little, "cache files are little-endian");

constexpr std::uint32_t kVersion = 1;
constexpr char kVectorMagic[4] = {'S', 'B', 'F', 'V'};
constexpr char kSequenceMagic[4] = {'S', 'B', 'P', 'S'};

template <typename T>
void put(std::ostream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof value);
}

template <typename T>
T get(std::istream& in, const std::filesystem::path& path) {
    T value{};
    if (!in.read(reinterpret_cast<char*>(&value), sizeof value)) throw DataError(path.string() + ": truncated cache file");
    return value;
}

void put_header(std::ostream& out, const char (&magic)[4], Method method) {
    out.write(magic, 4);
    put(out, kVersion);
    const auto tag = to_string(method);
    put(out, static_cast<std::uint32_t>(tag.size()));
    out.write(tag.data(), static_cast<std::streamsize>(tag.size()));
}

void check_header(std::istream& in, const char (&magic)[4], Method method, const std::filesystem::path& path) {
    char found[4] = {};
    if (!in.read(found, 4) || std::memcmp(found, magic, 4) != 0) throw DataError(path.string() + ": bad cache magic");
    if (get<std::uint32_t>(in, path) != kVersion) throw DataError(path.string() + ": unsupported cache version");
    const auto len = get<std::uint32_t>(in, path);
    if (len > 64) throw DataError(path.string() + ": bad method tag");
    std::string tag(len, '\0');
    if (!in.read(tag.data(), len)) throw DataError(path.string() + ": truncated cache file");
    if (tag != to_string(method)) throw DataError(path.string() + ": cache holds method '" + tag + "'");
}

DescriptorKind kind_of(Method method) {
    switch (method) {
        case Method::quadtree: return DescriptorKind::quadtree;
        case Method::lbp: return DescriptorKind::lbp;
        case Method::hog: return DescriptorKind::hog;
        case Method::dtw: break;
    }
    throw std::invalid_argument("method has no fixed-length descriptor");
}

}  // namespace

void write_representations(const std::filesystem::path& path, Method method, const RepresentationSet& set) {
    if (set.ids.size() != set.items.size()) throw std::invalid_argument("ids and representations differ in count");
    std::filesystem::create_directories(path.parent_path());
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw DataError("cannot write " + tmp.string());
        const auto count = static_cast<std::uint64_t>(set.items.size());
        if (method == Method::dtw) {
            put_header(out, kSequenceMagic, method);
            put(out, std::uint32_t{4});
            put(out, count);
            std::uint64_t offset = 0;
            for (std::size_t i = 0; i < set.items.size(); ++i) {
                const auto& seq = std::get<ColumnProfileSequence>(set.items[i]);
                put(out, static_cast<std::int64_t>(set.ids[i]));
                put(out, offset);
                put(out, static_cast<std::uint64_t>(seq.size()));
                offset += seq.size();
            }
            for (const auto& item : set.items) {
                for (const auto& column : std::get<ColumnProfileSequence>(item).columns) {
                    for (const double v : column) put(out, static_cast<float>(v));
                }
            }
        } else {
            put_header(out, kVectorMagic, method);
            const auto dim = set.items.empty() ? 0U : std::get<FeatureVector>(set.items.front()).dimension();
            put(out, static_cast<std::uint32_t>(dim));
            put(out, count);
            for (const auto& item : set.items) {
                const auto& fv = std::get<FeatureVector>(item);
                if (fv.dimension() != dim) throw std::invalid_argument("descriptors differ in dimension");
                for (const double v : fv.values) put(out, static_cast<float>(v));
            }
            for (const auto id : set.ids) put(out, static_cast<std::int64_t>(id));
        }
        if (!out) throw DataError("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

RepresentationSet read_representations(const std::filesystem::path& path, Method method) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    RepresentationSet set;
    if (method == Method::dtw) {
        check_header(in, kSequenceMagic, method, path);
        if (get<std::uint32_t>(in, path) != 4) throw DataError(path.string() + ": expected 4 profile features");
        const auto count = get<std::uint64_t>(in, path);
        std::vector<std::uint64_t> lengths;
        std::uint64_t expected_offset = 0;
        for (std::uint64_t i = 0; i < count; ++i) {
            set.ids.push_back(get<std::int64_t>(in, path));
            if (get<std::uint64_t>(in, path) != expected_offset) throw DataError(path.string() + ": bad index block");
            lengths.push_back(get<std::uint64_t>(in, path));
            expected_offset += lengths.back();
        }
        for (const auto len : lengths) {
            ColumnProfileSequence seq;
            seq.columns.resize(len);
            for (auto& column : seq.columns) {
                for (auto& v : column) v = get<float>(in, path);
            }
            set.items.emplace_back(std::move(seq));
        }
    } else {
        check_header(in, kVectorMagic, method, path);
        const auto dim = get<std::uint32_t>(in, path);
        const auto count = get<std::uint64_t>(in, path);
        for (std::uint64_t i = 0; i < count; ++i) {
            FeatureVector fv{kind_of(method), std::vector<double>(dim)};
            for (auto& v : fv.values) v = get<float>(in, path);
            set.items.emplace_back(std::move(fv));
        }
        for (std::uint64_t i = 0; i < count; ++i) set.ids.push_back(get<std::int64_t>(in, path));
    }
    return set;
}

}  // namespace segbench
