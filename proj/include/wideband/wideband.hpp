#ifndef WIDEBAND_WIDEBAND_HPP
#define WIDEBAND_WIDEBAND_HPP

// Umbrella header for the wideband tradeoff library.

#include "wideband/approx.hpp"
#include "wideband/channel.hpp"
#include "wideband/cli.hpp"
#include "wideband/errors.hpp"
#include "wideband/monotone_cubic.hpp"
#include "wideband/numdiff.hpp"
#include "wideband/spec_file.hpp"
#include "wideband/text_format.hpp"
#include "wideband/tradeoff.hpp"
#include "wideband/validate.hpp"

#endif
