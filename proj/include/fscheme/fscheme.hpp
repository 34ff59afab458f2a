#pragma once

// Umbrella header.

#include "core.hpp"
#include "planar.hpp"
#include "oracle.hpp"
#include "scheme.hpp"
#include "blocks.hpp"
#include "builder.hpp"
