#pragma once

// Umbrella header.

#include "errors.hpp"
#include "scalar.hpp"
#include "multiprecision.hpp"
#include "qcore.hpp"
#include "qseries.hpp"
#include "polyfam.hpp"
#include "report.hpp"
#include "identities.hpp"
#include "quadrature.hpp"
