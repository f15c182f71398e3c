#pragma once

#include "thetarank/cone.hpp"
#include "thetarank/errors.hpp"
#include "thetarank/gallery.hpp"
#include "thetarank/graph.hpp"
#include "thetarank/linalg.hpp"
#include "thetarank/obstructions.hpp"
#include "thetarank/reduction.hpp"
