#pragma once

// Umbrella header for the whole engine.

#include "qlim/algebra.hpp"
#include "qlim/errors.hpp"
#include "qlim/morphism.hpp"
#include "qlim/numeric.hpp"
#include "qlim/parse.hpp"
#include "qlim/presentation.hpp"
#include "qlim/prolimit.hpp"
#include "qlim/rational.hpp"
#include "qlim/report.hpp"
#include "qlim/rewrite.hpp"
