#include <array>
#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "specgsa/errors.hpp"
#include "specgsa/symmetric_eigen.hpp"

namespace specgsa {

namespace {

void put_u64(std::ostream& out, std::uint64_t value) {
    std::array<char, 8> bytes{};
    for (int i = 0; i < 8; ++i) {
        bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
    }
    out.write(bytes.data(), bytes.size());
}

void put_f64(std::ostream& out, double value) { put_u64(out, std::bit_cast<std::uint64_t>(value)); }

bool get_u64(std::istream& in, std::uint64_t& value) {
    std::array<unsigned char, 8> bytes{};
    in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    if (in.gcount() != 8) {
        return false;
    }
    value = 0;
    for (int i = 0; i < 8; ++i) {
        value |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    }
    return true;
}

double require_f64(std::istream& in) {
    std::uint64_t bits = 0;
    if (!get_u64(in, bits)) {
        throw IoError("snapshot: truncated matrix data");
    }
    return std::bit_cast<double>(bits);
}

} // namespace

void write_snapshot(std::ostream& out, const MatrixFamily& family, std::optional<double> threshold) {
    out.write(kSnapshotMagic.data(), static_cast<std::streamsize>(kSnapshotMagic.size()));
    put_u64(out, family.size());
    put_u64(out, family.dim());
    for (double v : family.block()) {
        put_f64(out, v);
    }
    if (threshold) {
        put_f64(out, *threshold);
    }
    if (!out) {
        throw IoError("snapshot: write failed");
    }
}

Snapshot read_snapshot(std::istream& in) {
    std::array<char, kSnapshotMagic.size()> magic{};
    in.read(magic.data(), magic.size());
    if (in.gcount() != static_cast<std::streamsize>(magic.size()) ||
        std::string_view(magic.data(), magic.size()) != kSnapshotMagic) {
        throw IoError("snapshot: bad magic, expected SGSA1");
    }
    std::uint64_t n = 0;
    std::uint64_t d = 0;
    if (!get_u64(in, n) || !get_u64(in, d)) {
        throw IoError("snapshot: truncated header");
    }
    if (n == 0 || d == 0 || d > (1u << 16) || n > (std::uint64_t{1} << 32)) {
        throw IoError("snapshot: implausible header n=" + std::to_string(n) + " d=" + std::to_string(d));
    }
    std::vector<double> block(n * SymMatrix::packed_size(d));
    for (double& v : block) {
        v = require_f64(in);
    }
    Snapshot snap{MatrixFamily(n, d, std::move(block)), std::nullopt};
    std::uint64_t bits = 0;
    if (get_u64(in, bits)) {
        snap.threshold = std::bit_cast<double>(bits);
    }
    return snap;
}

} // namespace specgsa
