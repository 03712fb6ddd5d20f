#pragma once

#include "eqrobin/coverage.hpp"
#include "eqrobin/error.hpp"
#include "eqrobin/experiment.hpp"
#include "eqrobin/expression.hpp"
#include "eqrobin/io.hpp"
#include "eqrobin/sbe.hpp"
#include "eqrobin/selection.hpp"
#include "eqrobin/suite.hpp"
#include "eqrobin/variants.hpp"
