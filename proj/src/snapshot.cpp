#include "nsf/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace nsf {

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; byte swapping is not implemented");

namespace {

constexpr char kMagic[8] = {'N', 'S', 'F', 'M', 'I', 'X', 'S', 'N'};

template <class T>
void put(std::ofstream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& in, const std::string& path) {
    T v;
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw std::runtime_error("truncated snapshot " + path);
    return v;
}

}  // namespace

void write_snapshot(const std::string& path, const FieldSet& fs, double t, std::uint64_t digest) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(kMagic, sizeof(kMagic));
    put(out, kSnapshotVersion);
    put(out, static_cast<std::int32_t>(fs.grid.dim));
    for (int a = 0; a < fs.grid.dim; ++a) put(out, static_cast<std::int32_t>(fs.grid.n[a]));
    for (int a = 0; a < fs.grid.dim; ++a) put(out, fs.grid.length[a]);
    put(out, static_cast<std::int32_t>(fs.n_species));
    put(out, t);
    put(out, digest);
    const auto points = static_cast<std::streamsize>(fs.points()) *
                        static_cast<std::streamsize>(sizeof(double));
    fs.for_each_component([&out, points](const Field& f) {
        out.write(reinterpret_cast<const char*>(f.data()), points);
    });
    if (!out) throw std::runtime_error("write failed for " + path);
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open snapshot " + path);
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error(path + " is not a field snapshot");
    const auto version = get<std::uint32_t>(in, path);
    if (version != kSnapshotVersion)
        throw std::runtime_error("unsupported snapshot version in " + path);
    const auto dim = get<std::int32_t>(in, path);
    if (dim < 1 || dim > 3) throw std::runtime_error("corrupt snapshot dim in " + path);
    std::vector<int> n(static_cast<std::size_t>(dim));
    for (auto& v : n) v = get<std::int32_t>(in, path);
    std::vector<double> length(static_cast<std::size_t>(dim));
    for (auto& v : length) v = get<double>(in, path);
    const auto species = get<std::int32_t>(in, path);
    if (species < 1) throw std::runtime_error("corrupt snapshot species count in " + path);

    Snapshot snap;
    snap.t = get<double>(in, path);
    snap.digest = get<std::uint64_t>(in, path);
    snap.fields = FieldSet::zeros(make_grid(dim, n, length), species);
    const auto bytes = static_cast<std::streamsize>(snap.fields.points()) *
                       static_cast<std::streamsize>(sizeof(double));
    bool ok = true;
    snap.fields.for_each_component([&in, bytes, &ok](Field& f) {
        in.read(reinterpret_cast<char*>(f.data()), bytes);
        ok = ok && static_cast<bool>(in);
    });
    if (!ok) throw std::runtime_error("truncated snapshot " + path);
    // A well-formed file ends exactly at the last field.
    in.peek();
    if (!in.eof()) throw std::runtime_error("trailing bytes in snapshot " + path);
    return snap;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace nsf
