#pragma once

#include "frontlab/core.hpp"
#include "frontlab/dirichlet.hpp"
#include "frontlab/front.hpp"
#include "frontlab/heat.hpp"
#include "frontlab/interp.hpp"
#include "frontlab/kpp1d.hpp"
#include "frontlab/kpp2d.hpp"
#include "frontlab/parallel.hpp"
#include "frontlab/scenario.hpp"
#include "frontlab/selfsim.hpp"
#include "frontlab/special.hpp"
#include "frontlab/splitting.hpp"
#include "frontlab/tridiag.hpp"
#include "frontlab/wave.hpp"
