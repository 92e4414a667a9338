#pragma once

#include "qspline/core.hpp"
#include "qspline/errors.hpp"
#include "qspline/integral_eq.hpp"
#include "qspline/lagrange.hpp"
#include "qspline/linsolve.hpp"
#include "qspline/quadrature.hpp"
#include "qspline/spline.hpp"
