#pragma once

#include "sasremap/cell_field.hpp"
#include "sasremap/config.hpp"
#include "sasremap/driver.hpp"
#include "sasremap/error.hpp"
#include "sasremap/fields.hpp"
#include "sasremap/geometry.hpp"
#include "sasremap/io.hpp"
#include "sasremap/mesh.hpp"
#include "sasremap/meshgen.hpp"
#include "sasremap/parallel.hpp"
#include "sasremap/reconstruct.hpp"
#include "sasremap/remap.hpp"
#include "sasremap/summation.hpp"
