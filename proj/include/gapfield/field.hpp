#pragma once

#include "gapfield/geometry.hpp"

namespace gapfield {

enum class Region { core, shell, exterior, disk_left, disk_right };

struct FieldSample {
  Point position;
  BipolarPoint bipolar;
  double value = 0;
  Point gradient;
  Region region = Region::exterior;
};

// Ties on a level circle go to the side with larger xi.
Region region_of(const BipolarFrame& frame, BipolarPoint b);
const char* region_name(Region r);

}  // namespace gapfield
