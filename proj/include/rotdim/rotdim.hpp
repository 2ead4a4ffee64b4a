#pragma once

// Umbrella header.

#include "rotdim/embedding.hpp"
#include "rotdim/error.hpp"
#include "rotdim/families.hpp"
#include "rotdim/graph.hpp"
#include "rotdim/io.hpp"
#include "rotdim/linalg.hpp"
#include "rotdim/numfmt.hpp"
#include "rotdim/optimizer.hpp"
#include "rotdim/report.hpp"
#include "rotdim/spectral.hpp"
