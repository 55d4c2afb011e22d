#pragma once

#include "jarc/errors.hpp"
#include "jarc/rational.hpp"
#include "jarc/segment.hpp"
#include "jarc/curve.hpp"
#include "jarc/incidence.hpp"
#include "jarc/validate.hpp"
#include "jarc/family_io.hpp"
#include "jarc/graphs.hpp"
#include "jarc/arrangement.hpp"
#include "jarc/generators.hpp"
#include "jarc/bounds.hpp"
#include "jarc/separator.hpp"
#include "jarc/salazar.hpp"
#include "jarc/face_instances.hpp"
#include "jarc/experiments.hpp"
#include "jarc/report.hpp"
