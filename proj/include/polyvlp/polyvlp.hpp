#pragma once

#include "polyvlp/errors.hpp"
#include "polyvlp/rational.hpp"
#include "polyvlp/linalg.hpp"
#include "polyvlp/lp.hpp"
#include "polyvlp/hrep.hpp"
#include "polyvlp/double_description.hpp"
#include "polyvlp/polyhedron.hpp"
#include "polyvlp/cone_projection.hpp"
#include "polyvlp/vlp.hpp"
#include "polyvlp/io.hpp"
#include "polyvlp/solution.hpp"
#include "polyvlp/duality.hpp"
#include "polyvlp/benson.hpp"
