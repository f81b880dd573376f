#pragma once

#include "paik/config.hpp"
#include "paik/errors.hpp"
#include "paik/io.hpp"
#include "paik/klm.hpp"
#include "paik/model.hpp"
#include "paik/noise.hpp"
#include "paik/parallel.hpp"
#include "paik/resonance.hpp"
#include "paik/response.hpp"
#include "paik/spectrum.hpp"
#include "paik/svg.hpp"
#include "paik/sweep.hpp"
#include "paik/transfer.hpp"
#include "paik/twoport.hpp"
#include "paik/validate.hpp"
