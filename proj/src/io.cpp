#include "maxlab/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "maxlab/version.hpp"

static_assert(std::endian::native == std::endian::little, "snapshot format assumes a little-endian host");

namespace maxlab {

namespace {
constexpr std::uint32_t snapshot_magic = 0x424c584d; // "MXLB"
constexpr std::uint32_t snapshot_version = 1;

template <typename T>
void put(std::ofstream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <typename T>
T take(std::ifstream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw InvalidInput("read_snapshot: truncated file");
    return v;
}
} // namespace

void write_snapshot(const std::string& path, const FieldState& state) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("write_snapshot: cannot open " + path);
    put(out, snapshot_magic);
    put(out, snapshot_version);
    put(out, static_cast<std::uint32_t>(state.dim()));
    for (int a = 0; a < 3; ++a)
        put(out, static_cast<std::uint32_t>(a < state.dim() ? state.grid.n(a) : 0));
    for (int a = 0; a < 3; ++a) put(out, a < state.dim() ? state.grid.length(a) : 0.0);
    put(out, state.time);
    put(out, static_cast<std::uint32_t>(state.n_comps()));
    for (Parity p : state.parity) put(out, static_cast<std::uint8_t>(p));
    for (const RealField& comp : state.comps)
        out.write(reinterpret_cast<const char*>(comp.data()),
                  static_cast<std::streamsize>(sizeof(double) * static_cast<size_t>(comp.size())));
    if (!out) throw InvalidInput("write_snapshot: write failed for " + path);
}

FieldState read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("read_snapshot: cannot open " + path);
    if (take<std::uint32_t>(in) != snapshot_magic) throw InvalidInput("read_snapshot: bad magic");
    if (take<std::uint32_t>(in) != snapshot_version) throw InvalidInput("read_snapshot: unknown version");
    const int dim = static_cast<int>(take<std::uint32_t>(in));
    std::vector<int> n;
    for (int a = 0; a < 3; ++a) {
        const auto v = take<std::uint32_t>(in);
        if (a < dim) n.push_back(static_cast<int>(v));
    }
    std::vector<double> len;
    for (int a = 0; a < 3; ++a) {
        const double v = take<double>(in);
        if (a < dim) len.push_back(v);
    }
    const TorusGrid grid(n, len);
    FieldState state = FieldState::zero(grid);
    state.time = take<double>(in);
    const auto nc = take<std::uint32_t>(in);
    if (nc != static_cast<std::uint32_t>(state.n_comps()))
        throw InvalidInput("read_snapshot: component count mismatch");
    for (auto& p : state.parity) p = static_cast<Parity>(take<std::uint8_t>(in));
    for (RealField& comp : state.comps) {
        in.read(reinterpret_cast<char*>(comp.data()),
                static_cast<std::streamsize>(sizeof(double) * static_cast<size_t>(comp.size())));
        if (!in) throw InvalidInput("read_snapshot: truncated data in " + path);
    }
    return state;
}

std::string file_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("file_hash: cannot open " + path);
    std::uint64_t h = 1469598103934665603ull;
    char buf[65536];
    while (in) {
        in.read(buf, sizeof(buf));
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
    }
    char hex[20];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a:") + hex;
}

void Manifest::add_output(const std::string& path, const std::string& name) {
    output_hashes[name] = file_hash(path);
}

void Manifest::write(const std::string& path) const {
    nlohmann::json j;
    j["experiment"] = experiment;
    j["tool_version"] = std::string("maxlab ") + version_string;
    j["seed"] = seed;
    j["config"] = config_echo;
    j["outputs"] = output_hashes;
    j["timings_ms"] = timings_ms;
    std::ofstream out(path);
    if (!out) throw InvalidInput("Manifest::write: cannot open " + path);
    out << j.dump(2) << "\n";
}

} // namespace maxlab
