#pragma once

#include "tracat/cohomology.hpp"
#include "tracat/fincat.hpp"
#include "tracat/fingroup.hpp"
#include "tracat/json_io.hpp"
#include "tracat/natsys.hpp"
#include "tracat/track.hpp"
#include "tracat/validation.hpp"
