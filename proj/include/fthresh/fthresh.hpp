#pragma once

#include "fthresh/error.hpp"
#include "fthresh/field.hpp"
#include "fthresh/frobenius.hpp"
#include "fthresh/groebner.hpp"
#include "fthresh/monomial.hpp"
#include "fthresh/parse.hpp"
#include "fthresh/poly.hpp"
#include "fthresh/rational.hpp"
#include "fthresh/testideal.hpp"
#include "fthresh/thresholds.hpp"
