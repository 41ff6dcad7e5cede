#pragma once

#include "qcs/error.hpp"
#include "qcs/harness.hpp"
#include "qcs/oracles.hpp"
#include "qcs/pgd.hpp"
#include "qcs/quantizer.hpp"
#include "qcs/rng.hpp"
#include "qcs/sensing.hpp"
#include "qcs/signal_model.hpp"
