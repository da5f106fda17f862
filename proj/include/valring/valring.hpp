#pragma once

#include "valring/errors.hpp"
#include "valring/mpoly.hpp"
#include "valring/coeff.hpp"
#include "valring/series.hpp"
#include "valring/xpoly.hpp"
#include "valring/parse.hpp"
#include "valring/formula.hpp"
#include "valring/random.hpp"
#include "valring/classify.hpp"
#include "valring/realize.hpp"
#include "valring/corpus.hpp"
#include "valring/suites.hpp"
