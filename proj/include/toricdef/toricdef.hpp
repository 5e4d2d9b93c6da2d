#pragma once

#include "toricdef/error.hpp"
#include "toricdef/exact_lattice.hpp"
#include "toricdef/polyhedral.hpp"
#include "toricdef/datum.hpp"
#include "toricdef/cox.hpp"
#include "toricdef/polarized.hpp"
#include "toricdef/mutation.hpp"
#include "toricdef/oracle.hpp"
#include "toricdef/catalog.hpp"
#include "toricdef/json_io.hpp"
#include "toricdef/presets.hpp"
