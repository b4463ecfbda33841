#include "specgsa/rand_core.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "specgsa/errors.hpp"

namespace specgsa {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) noexcept {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(product);
    hi = static_cast<std::uint32_t>(product >> 32);
}

inline void philox_round(std::array<std::uint32_t, 4>& ctr, const std::array<std::uint32_t, 2>& key) noexcept {
    std::uint32_t lo0, hi0, lo1, hi1;
    mulhilo(kPhiloxM0, ctr[0], lo0, hi0);
    mulhilo(kPhiloxM1, ctr[2], lo1, hi1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

} // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key) noexcept {
    philox_round(counter, key);
    for (int r = 1; r < 10; ++r) {
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
        philox_round(counter, key);
    }
    return counter;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id) noexcept
    : master_seed_(master_seed), stream_id_(stream_id) {}

void RngStream::refill() noexcept {
    const std::array<std::uint32_t, 4> ctr{
        static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
        static_cast<std::uint32_t>(stream_id_), static_cast<std::uint32_t>(stream_id_ >> 32)};
    const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(master_seed_),
                                           static_cast<std::uint32_t>(master_seed_ >> 32)};
    buffer_ = philox4x32(ctr, key);
    buffer_pos_ = 0;
    ++counter_;
}

std::uint32_t RngStream::next_u32() noexcept {
    if (buffer_pos_ == 4) {
        refill();
    }
    return buffer_[buffer_pos_++];
}

std::uint64_t RngStream::next_u64() noexcept {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
}

double RngStream::uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_pos() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

RngStream make_stream(std::uint64_t master_seed, std::uint64_t stream_id) noexcept {
    return RngStream(master_seed, stream_id);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept {
    std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double sample_gaussian(RngStream& stream, double mean, double std) {
    if (!(std >= 0.0)) {
        throw InvalidParameter("sample_gaussian: std must be nonnegative, got " + std::to_string(std));
    }
    const double g = stream.normal();
    return std == 0.0 ? mean : mean + std * g;
}

void sample_gaussian_vector(RngStream& stream, std::span<double> out) noexcept {
    for (double& v : out) {
        v = stream.normal();
    }
}

std::vector<double> sample_gaussian_vector(RngStream& stream, std::size_t n) {
    std::vector<double> out(n);
    sample_gaussian_vector(stream, out);
    return out;
}

void sample_sphere(RngStream& stream, std::span<double> out) {
    if (out.empty()) {
        throw InvalidParameter("sample_sphere: dimension must be at least 1");
    }
    double norm2 = 0.0;
    do {
        sample_gaussian_vector(stream, out);
        norm2 = 0.0;
        for (double v : out) {
            norm2 += v * v;
        }
    } while (norm2 == 0.0);
    if (out.size() == 1) {
        // S^0 is exactly {-1, +1}; scaling by 1/sqrt(g^2) can miss by an ulp.
        out[0] = std::copysign(1.0, out[0]);
        return;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : out) {
        v *= inv;
    }
}

std::vector<double> sample_sphere(RngStream& stream, std::size_t n) {
    if (n == 0) {
        throw InvalidParameter("sample_sphere: dimension must be at least 1");
    }
    std::vector<double> out(n);
    sample_sphere(stream, out);
    return out;
}

double sample_chi(RngStream& stream, std::size_t n) {
    if (n == 0) {
        throw InvalidParameter("sample_chi: degrees of freedom must be at least 1");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double g = stream.normal();
        sum += g * g;
    }
    return std::sqrt(sum);
}

SymMatrix sample_goe(RngStream& stream, std::size_t d) {
    if (d == 0) {
        throw InvalidParameter("sample_goe: dimension must be at least 1");
    }
    SymMatrix m(d);
    auto packed = m.packed();
    std::size_t k = 0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j <= i; ++j, ++k) {
            const double g = stream.normal();
            packed[k] = (i == j) ? std::numbers::sqrt2 * g : g;
        }
    }
    return m;
}

} // namespace specgsa
