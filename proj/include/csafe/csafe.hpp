#pragma once

#include "csafe/rational.hpp"
#include "csafe/game.hpp"
#include "csafe/safety.hpp"
#include "csafe/equilibria.hpp"
#include "csafe/set_theoretic.hpp"
#include "csafe/load_balancing.hpp"
#include "csafe/auction.hpp"
#include "csafe/oracles.hpp"
