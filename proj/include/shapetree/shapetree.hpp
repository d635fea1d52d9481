#pragma once

// Umbrella header for the compact shape tree library.

#include "shapetree/boundary.hpp"
#include "shapetree/core.hpp"
#include "shapetree/ellipse.hpp"
#include "shapetree/fourier.hpp"
#include "shapetree/io.hpp"
#include "shapetree/raster.hpp"
#include "shapetree/sampling.hpp"
#include "shapetree/spatial.hpp"
#include "shapetree/tree.hpp"
