#pragma once

#include <map>

#include "maxlab/fields.hpp"

namespace maxlab {

/// Flat binary snapshot: little-endian header (magic, version, dim, points,
/// lengths, time, component count, parity tags) followed by raw f64 samples.
void write_snapshot(const std::string& path, const FieldState& state);
FieldState read_snapshot(const std::string& path);

/// FNV-1a content hash of a file, hex encoded.
std::string file_hash(const std::string& path);

/// Run manifest: config echo, tool version, output hashes and timings,
/// serialized as deterministic JSON.
struct Manifest {
    std::string experiment;
    std::map<std::string, std::string> config_echo;
    std::map<std::string, std::string> output_hashes;
    std::map<std::string, double> timings_ms;
    long long seed = 0;

    void add_output(const std::string& path, const std::string& name);
    void write(const std::string& path) const;
};

} // namespace maxlab
