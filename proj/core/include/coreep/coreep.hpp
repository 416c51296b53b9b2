#pragma once

#include "coreep/decomp.hpp"
#include "coreep/gen.hpp"
#include "coreep/inverses.hpp"
#include "coreep/io.hpp"
#include "coreep/numkernel.hpp"
#include "coreep/orders.hpp"
#include "coreep/types.hpp"
