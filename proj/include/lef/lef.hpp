#pragma once

// Umbrella header: label-error simulation, rendering, input preparation and
// evaluation for detection and segmentation datasets.

#include "lef/dataset.hpp"
#include "lef/error.hpp"
#include "lef/eval.hpp"
#include "lef/formats/cityscapes.hpp"
#include "lef/formats/coco.hpp"
#include "lef/formats/image_io.hpp"
#include "lef/formats/legt.hpp"
#include "lef/formats/palette.hpp"
#include "lef/formats/predictions.hpp"
#include "lef/formats/report.hpp"
#include "lef/formats/tensor_io.hpp"
#include "lef/formats/voc.hpp"
#include "lef/geometry.hpp"
#include "lef/log.hpp"
#include "lef/parallel.hpp"
#include "lef/perturb.hpp"
#include "lef/raster.hpp"
#include "lef/rng.hpp"
#include "lef/tensor.hpp"
#include "lef/types.hpp"
