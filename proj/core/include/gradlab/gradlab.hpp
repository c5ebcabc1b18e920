#pragma once

#include "gradlab/classify.hpp"
#include "gradlab/field.hpp"
#include "gradlab/fixed_point.hpp"
#include "gradlab/graph_distance.hpp"
#include "gradlab/grid.hpp"
#include "gradlab/lines.hpp"
#include "gradlab/proof.hpp"
#include "gradlab/report.hpp"
#include "gradlab/rng.hpp"
#include "gradlab/sampling.hpp"
#include "gradlab/types.hpp"
#include "gradlab/zoo.hpp"
