#pragma once

#include "zz3d/bitstream.hpp"
#include "zz3d/bytes.hpp"
#include "zz3d/codec.hpp"
#include "zz3d/error.hpp"
#include "zz3d/grid.hpp"
#include "zz3d/rng.hpp"
#include "zz3d/scan_orders.hpp"
#include "zz3d/spectrum.hpp"
#include "zz3d/transforms.hpp"
#include "zz3d/volume.hpp"
#include "zz3d/volume_io.hpp"
