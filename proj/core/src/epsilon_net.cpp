#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "specgsa/errors.hpp"
#include "specgsa/spectrahedron.hpp"

namespace specgsa {

namespace {

// Candidate budget per net; bounds greedy cost for d >= 4.
constexpr std::size_t kMaxCandidates = 200'000;
constexpr std::size_t kRepairProbes = 50'000;

double distance2(std::span<const double> a, std::span<const double> b) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        s += diff * diff;
    }
    return s;
}

double min_distance2(std::span<const std::vector<double>> net, std::span<const double> u) noexcept {
    double best = 4.0 + 1.0;
    for (const auto& p : net) {
        best = std::min(best, distance2(p, u));
    }
    return best;
}

void normalize(std::vector<double>& u) {
    double n2 = 0.0;
    for (double v : u) {
        n2 += v * v;
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (double& v : u) {
        v *= inv;
    }
}

struct Candidates {
    std::vector<std::vector<double>> points;
    double covering_radius = 0.0; // every sphere point is this close to a candidate
};

Candidates circle_candidates(double target_radius) {
    const auto k = static_cast<std::size_t>(std::ceil(std::numbers::pi / target_radius));
    Candidates c;
    c.points.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(k);
        c.points.push_back({std::cos(angle), std::sin(angle)});
    }
    c.covering_radius = std::numbers::pi / static_cast<double>(k);
    return c;
}

// Grid on the surface of [-1,1]^d with g cells per edge, radially projected.
// Nearest-grid distance on a face is at most sqrt(d-1)/g and the projection
// onto the ball is 1-Lipschitz, which bounds the covering radius.
Candidates cube_candidates(std::size_t d, double target_radius) {
    const double root = std::sqrt(static_cast<double>(d - 1));
    auto g = static_cast<std::size_t>(std::ceil(root / target_radius));
    auto count = [d](std::size_t cells) {
        return 2.0 * static_cast<double>(d) * std::pow(static_cast<double>(cells + 1), static_cast<double>(d - 1));
    };
    while (g > 1 && count(g) > static_cast<double>(kMaxCandidates)) {
        --g;
    }
    Candidates c;
    c.covering_radius = root / static_cast<double>(g);
    std::vector<std::size_t> idx(d - 1, 0);
    for (std::size_t axis = 0; axis < d; ++axis) {
        for (double sign : {-1.0, 1.0}) {
            std::fill(idx.begin(), idx.end(), 0);
            while (true) {
                std::vector<double> p(d);
                std::size_t k = 0;
                for (std::size_t j = 0; j < d; ++j) {
                    p[j] = j == axis ? sign : -1.0 + 2.0 * static_cast<double>(idx[k++]) / static_cast<double>(g);
                }
                normalize(p);
                c.points.push_back(std::move(p));
                std::size_t pos = 0;
                while (pos < idx.size() && ++idx[pos] > g) {
                    idx[pos++] = 0;
                }
                if (pos == idx.size()) {
                    break;
                }
            }
        }
    }
    return c;
}

} // namespace

std::vector<std::vector<double>> epsilon_net(std::size_t d, double eps) {
    if (d == 0) {
        throw InvalidParameter("epsilon_net: d must be at least 1");
    }
    if (d > kMaxNetDim) {
        throw CapacityError("epsilon_net: d = " + std::to_string(d) + " exceeds the kMaxNetDim = " +
                            std::to_string(kMaxNetDim) + " guard");
    }
    if (!(eps > 0.0 && eps <= 0.5)) {
        throw InvalidParameter("epsilon_net: eps must lie in (0, 1/2]");
    }
    if (d == 1) {
        return {{-1.0}, {1.0}};
    }

    const Candidates cand = d == 2 ? circle_candidates(eps / 16.0) : cube_candidates(d, eps / 16.0);
    // Separation rho: rho + covering_radius <= eps gives full coverage, and
    // rho >= 2 eps / (3 - eps) keeps (1 + 2/rho)^d <= (3/eps)^d.
    const double rho = std::max(eps - cand.covering_radius, 2.0 * eps / (3.0 - eps));
    const double rho2 = rho * rho;

    std::vector<std::vector<double>> net;
    for (const auto& p : cand.points) {
        if (min_distance2(net, p) > rho2) {
            net.push_back(p);
        }
    }

    if (rho + cand.covering_radius > eps) {
        // Candidate grid too coarse for a guarantee; patch holes found by probing.
        auto stream = make_stream(mix_seed(0x6e65745f72657061ULL, d), static_cast<std::uint64_t>(eps * 1e9));
        std::vector<double> u(d);
        const double eps2 = eps * eps;
        for (std::size_t i = 0; i < kRepairProbes; ++i) {
            sample_sphere(stream, u);
            if (min_distance2(net, u) > eps2) {
                net.push_back(u);
            }
        }
    }
    return net;
}

NetCoverage probe_net_coverage(std::span<const std::vector<double>> net, double eps, RngStream& stream,
                               std::size_t probes) {
    if (net.empty()) {
        throw InvalidParameter("probe_net_coverage: empty net");
    }
    const std::size_t d = net.front().size();
    NetCoverage out;
    out.probes = probes;
    std::vector<double> u(d);
    for (std::size_t i = 0; i < probes; ++i) {
        sample_sphere(stream, u);
        const double dist = std::sqrt(min_distance2(net, u));
        out.max_distance = std::max(out.max_distance, dist);
        if (dist <= eps) {
            ++out.covered;
        }
    }
    return out;
}

} // namespace specgsa
