#pragma once

#include "latinp/board_catalog.hpp"
#include "latinp/core_model.hpp"
#include "latinp/domains.hpp"
#include "latinp/errors.hpp"
#include "latinp/fairness_rating.hpp"
#include "latinp/generator.hpp"
#include "latinp/io.hpp"
#include "latinp/label_set.hpp"
#include "latinp/monotonicity.hpp"
#include "latinp/proof.hpp"
#include "latinp/propagation.hpp"
#include "latinp/search.hpp"
#include "latinp/solver_api.hpp"
