#pragma once

#include "serrinlab/expr.hpp"
#include "serrinlab/warp.hpp"
#include "serrinlab/geometry.hpp"
#include "serrinlab/quadrature.hpp"
#include "serrinlab/radial.hpp"
#include "serrinlab/mesh.hpp"
#include "serrinlab/fem2d.hpp"
#include "serrinlab/identities.hpp"
#include "serrinlab/report.hpp"
