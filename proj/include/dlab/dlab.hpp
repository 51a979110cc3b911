#pragma once

#include "dlab/arithmetic.hpp"
#include "dlab/embedding.hpp"
#include "dlab/hspace.hpp"
#include "dlab/sampling.hpp"
#include "dlab/tauberian.hpp"
#include "dlab/weighted_zeta.hpp"
#include "dlab/weights.hpp"
#include "dlab/zeta.hpp"
