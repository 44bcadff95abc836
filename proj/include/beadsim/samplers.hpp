#pragma once

#include <cstdint>
#include <vector>

#include "beadsim/path.hpp"
#include "beadsim/rng.hpp"

namespace beadsim {

// Brownian motion from 0 on a uniform grid: n steps of variance dt.
// Returns n+1 values, element k being the position at time k*dt.
std::vector<double> sample_bm(std::size_t n, double dt, Rng& rng);

// 3-D Bessel process from 0, sampled exactly at grid times as the norm of
// three independent Gaussian partial sums. Positive for every k >= 1.
std::vector<double> sample_bes3(std::size_t n, double dt, Rng& rng);

// Half-plane excursion: x is Brownian motion, y an independent 3-D Bessel
// process. The two coordinates draw from separate streams derived from seq,
// so the pair (seed, n, dt) fixes the path bit for bit.
Path sample_excursion(std::size_t n, double dt, const SeedSequence& seq);

// Same law, but stopped at the first grid time with y >= y_max; if n_cap
// steps elapse first, the path is cut short and flagged truncated in meta.
// Consumers must treat truncated paths as censored samples.
Path sample_excursion_until_height(double y_max, double dt, const SeedSequence& seq,
                                   std::size_t n_cap);

// Brownian scaling: positions times r, durations times r^2. Exact in the
// sense that scaling by a and then b equals scaling by a*b whenever the
// products a*b and the coordinates round identically (always for powers of 2).
Path scale_path(const Path& p, double r);

}  // namespace beadsim
