#pragma once

#include "bz/degeneration/asymptotics.hpp"
#include "bz/degeneration/charts.hpp"
#include "bz/degeneration/gram.hpp"
#include "bz/degeneration/limits.hpp"
#include "bz/degeneration/quadrature.hpp"
#include "bz/degeneration/tate.hpp"
