#pragma once

#include "hartman/bound_states.hpp"
#include "hartman/delays.hpp"
#include "hartman/dwell.hpp"
#include "hartman/errors.hpp"
#include "hartman/flux_oracle.hpp"
#include "hartman/phase_table.hpp"
#include "hartman/quadrature.hpp"
#include "hartman/scattering.hpp"
#include "hartman/types.hpp"
#include "hartman/wavepacket.hpp"
