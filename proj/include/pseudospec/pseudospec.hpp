#pragma once

#include "pseudospec/codes.hpp"
#include "pseudospec/ensembles.hpp"
#include "pseudospec/error.hpp"
#include "pseudospec/experiment.hpp"
#include "pseudospec/gf2m.hpp"
#include "pseudospec/independence.hpp"
#include "pseudospec/laws.hpp"
#include "pseudospec/parallel.hpp"
#include "pseudospec/spectral.hpp"
