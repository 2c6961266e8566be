#include "pimc/path.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "pimc/errors.hpp"
#include "pimc/io_util.hpp"

namespace pimc {

Path::Path(std::vector<Vec3> beads) : beads_(std::move(beads)) {
    if (beads_.size() < 2)
        throw ConfigError("path needs at least 2 beads, got " + std::to_string(beads_.size()));
    for (const auto& b : beads_)
        if (!is_finite(b)) throw ConfigError("path bead with non-finite coordinates");
}

void validate(const Discretization& disc) {
    if (!(disc.tau > 0.0)) throw ConfigError("tau must be positive");
    if (!(disc.mass > 0.0)) throw ConfigError("mass must be positive");
    if (disc.n_beads < 2) throw ConfigError("n_beads must be at least 2");
}

Path make_ring_path(std::size_t n_beads, const InitSpec& init, Rng& rng) {
    if (n_beads < 2)
        throw ConfigError("n_beads must be at least 2, got " + std::to_string(n_beads));

    std::vector<Vec3> beads;
    beads.reserve(n_beads);

    switch (init.kind) {
        case InitSpec::Kind::Constant:
            beads.assign(n_beads, init.point);
            break;
        case InitSpec::Kind::Shell: {
            if (!(init.r_lo >= 0.0) || !(init.r_hi > init.r_lo))
                throw ConfigError("shell initializer needs 0 <= r_lo < r_hi");
            const double lo3 = init.r_lo * init.r_lo * init.r_lo;
            const double hi3 = init.r_hi * init.r_hi * init.r_hi;
            for (std::size_t i = 0; i < n_beads; ++i) {
                const double cos_theta = 2.0 * rng.uniform01() - 1.0;
                const double phi = 2.0 * std::numbers::pi * rng.uniform01();
                const double r = std::cbrt(lo3 + rng.uniform01() * (hi3 - lo3));
                const double sin_theta = std::sqrt(1.0 - cos_theta * cos_theta);
                beads.push_back({r * sin_theta * std::cos(phi), r * sin_theta * std::sin(phi),
                                 r * cos_theta});
            }
            break;
        }
    }
    return Path(std::move(beads));
}

Vec3 link(const Path& path, std::size_t i) {
    if (i >= path.size())
        throw std::out_of_range("link index " + std::to_string(i) + " out of range for " +
                                std::to_string(path.size()) + " beads");
    return path.at(path.next(i)) - path.at(i);
}

void write_path_csv(const Path& path, std::ostream& out) {
    out << "index,x,y,z\n";
    for (std::size_t i = 0; i < path.size(); ++i) {
        const Vec3& p = path.at(i);
        out << i << ',' << format_double(p.x) << ',' << format_double(p.y) << ','
            << format_double(p.z) << '\n';
    }
}

}  // namespace pimc
