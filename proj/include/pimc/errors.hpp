#ifndef PIMC_ERRORS_HPP
#define PIMC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pimc {

/// Invalid or inconsistent configuration (bad parameter values, unknown keys,
/// cross-field violations). CLI exit code 2.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A potential that genuinely diverges was evaluated exactly at its
/// singularity (Coulomb at the origin). Callers must reject such points.
class SingularPoint : public std::domain_error {
  public:
    explicit SingularPoint(const std::string& what) : std::domain_error(what) {}
};

/// The sampler found its own current state invalid (e.g. a bead sitting
/// exactly on the Coulomb singularity). Cannot occur under the documented
/// proposal flow; aborting is the only sane response. CLI exit code 3.
class CorruptedState : public std::runtime_error {
  public:
    explicit CorruptedState(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem failure, annotated with the path involved. CLI exit code 4.
class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pimc

#endif
