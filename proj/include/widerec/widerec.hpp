#pragma once

// Umbrella header.

#include "widerec/errors.hpp"
#include "widerec/linalg.hpp"
#include "widerec/algebra.hpp"
#include "widerec/module.hpp"
#include "widerec/catalog.hpp"
#include "widerec/recollement.hpp"
#include "widerec/wide.hpp"
#include "widerec/wide_fixpoint.hpp"
#include "widerec/theorems.hpp"
#include "widerec/problem.hpp"
#include "widerec/commands.hpp"
