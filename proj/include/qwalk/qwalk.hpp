// Umbrella header for the qwalk library.
#pragma once

#include "qwalk/classical.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/config.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/io.hpp"
#include "qwalk/metrics.hpp"
#include "qwalk/numformat.hpp"
#include "qwalk/runner.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/walk.hpp"
