#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "specgsa/sym_matrix.hpp"

namespace specgsa {

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key) noexcept;

/**
 * Counter-based random stream.
 *
 * Block k of stream (seed, id) is philox4x32(ctr = (k, id), key = seed), so
 * any (seed, id) pair can be opened on any thread without coordination and
 * always yields the same values. A stream is single-owner: move or copy it
 * between threads, but do not share one concurrently.
 */
class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id) noexcept;

    std::uint64_t master_seed() const noexcept { return master_seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }
    /// Number of 128-bit blocks consumed so far.
    std::uint64_t counter() const noexcept { return counter_; }

    std::uint32_t next_u32() noexcept;
    std::uint64_t next_u64() noexcept;
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    /// Uniform on (0, 1].
    double uniform_pos() noexcept;
    /// Exact standard normal (Box-Muller, second variate cached).
    double normal() noexcept;

  private:
    void refill() noexcept;

    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    unsigned buffer_pos_ = 4;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Stream id reserved for drawing matrix families, disjoint from per-sample ids.
inline constexpr std::uint64_t kInstanceStreamId = ~std::uint64_t{0};

RngStream make_stream(std::uint64_t master_seed, std::uint64_t stream_id) noexcept;

/// SplitMix64 finalizer; used to derive child seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept;

double sample_gaussian(RngStream& stream, double mean, double std);
std::vector<double> sample_gaussian_vector(RngStream& stream, std::size_t n);
void sample_gaussian_vector(RngStream& stream, std::span<double> out) noexcept;

std::vector<double> sample_sphere(RngStream& stream, std::size_t n);
void sample_sphere(RngStream& stream, std::span<double> out);

/// Norm of n independent standard normals.
double sample_chi(RngStream& stream, std::size_t n);

/// GOE: off-diagonal N(0,1), diagonal N(0,2), entries (i <= j) independent.
SymMatrix sample_goe(RngStream& stream, std::size_t d);

} // namespace specgsa
