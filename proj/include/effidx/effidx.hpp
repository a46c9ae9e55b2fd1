#pragma once

// Umbrella header.

#include "effidx/efficiency.hpp"
#include "effidx/entropy.hpp"
#include "effidx/error.hpp"
#include "effidx/fractal.hpp"
#include "effidx/ingest.hpp"
#include "effidx/spectral.hpp"
#include "effidx/synth.hpp"
#include "effidx/fixture.hpp"
#include "effidx/radar.hpp"
#include "effidx/report.hpp"
#include "effidx/validate.hpp"
