#pragma once

#include "theta/conway.hpp"
#include "theta/dickson_curve.hpp"
#include "theta/factorize.hpp"
#include "theta/gf2.hpp"
#include "theta/order_dynamics.hpp"
#include "theta/proj_point.hpp"
#include "theta/report.hpp"
#include "theta/structure_checks.hpp"
#include "theta/theta_graph.hpp"
