#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "beadsim/experiments.hpp"
#include "beadsim/hull.hpp"

namespace beadsim {

// Config or schema problem, carrying a JSON-pointer or line:column location
// in the message. The CLI maps it to the validation-failure exit code.
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Analytic hull named in a config file: a vertical slit or a semidisk on the
// real axis. `size` is the slit height or the disk radius.
struct HullSpec {
    std::string shape;  // "slit" | "semidisk"
    double x0 = 0.0;
    double size = 1.0;
};
std::shared_ptr<const Hull> make_hull(const HullSpec& spec);
ojson hull_json(const HullSpec& spec);

// One parsed run configuration. `kind` selects which of the embedded
// experiment configs is meaningful.
struct RunConfig {
    int version = 1;
    std::string kind;  // exponent | avoid | tail | capacity | beads
    std::uint64_t seed = 0;
    ExponentConfig exponent;
    AvoidanceConfig avoidance;
    HullSpec hull;  // used by the avoidance kind
    TailConfig tail;
    std::size_t capacity_walkers = 250000;
    BeadsConfig beads;
};

// Parses and validates a config document. Every field is checked for type
// and spelling: unknown fields are rejected with their JSON pointer, syntax
// errors carry line and column. `version` (= 1), `kind`, and `seed` are
// required; experiment fields default to the built-in values when absent.
RunConfig parse_run_config(std::string_view text);

// Canonical digest of a config document: field order and whitespace do not
// matter, values do. Used as the config hash in run manifests.
std::string config_hash(std::string_view text);

}  // namespace beadsim
