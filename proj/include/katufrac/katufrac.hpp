#pragma once

#include "katufrac/core.hpp"
#include "katufrac/corpus.hpp"
#include "katufrac/gamma.hpp"
#include "katufrac/inequalities.hpp"
#include "katufrac/means.hpp"
#include "katufrac/operators.hpp"
#include "katufrac/quadrature.hpp"
#include "katufrac/sweep.hpp"
