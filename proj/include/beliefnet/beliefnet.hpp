#pragma once

#include "beliefnet/config.hpp"
#include "beliefnet/dynamics.hpp"
#include "beliefnet/error.hpp"
#include "beliefnet/experiments.hpp"
#include "beliefnet/graph.hpp"
#include "beliefnet/io.hpp"
#include "beliefnet/model.hpp"
#include "beliefnet/rng.hpp"
