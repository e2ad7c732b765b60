#pragma once

#include <cstdint>
#include <string>

#include "nsf/fields.hpp"

namespace nsf {

// Binary field snapshot: magic "NSFMIXSN", u32 format version, i32 dim,
// i32 N per axis, f64 L per axis, i32 species count, f64 time, u64 config
// digest, then the conservative fields in declared order (rho, momentum
// components, rhoE, species densities), row-major, 64-bit little-endian.
// A plain-text config sidecar is written separately by the harness.
inline constexpr std::uint32_t kSnapshotVersion = 1;

struct Snapshot {
    FieldSet fields;
    double t = 0.0;
    std::uint64_t digest = 0;
};

void write_snapshot(const std::string& path, const FieldSet& fs, double t, std::uint64_t digest);

// Reads and structurally validates a snapshot (magic, version, sizes).
// Field-value invariants are the caller's concern.
Snapshot read_snapshot(const std::string& path);

// Small helper for sidecars and summaries; truncates and writes atomically
// enough for single-process use.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace nsf
