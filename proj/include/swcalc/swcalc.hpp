#pragma once

// Everything in one include.

#include "error.hpp"
#include "groupring.hpp"
#include "knot.hpp"
#include "manifold.hpp"
#include "surgery.hpp"
#include "lattice.hpp"
#include "fixedpoint.hpp"
#include "spaceform.hpp"
#include "equivariant.hpp"
#include "bauer_furuta.hpp"
#include "family.hpp"
#include "serialize.hpp"
#include "expr.hpp"
#include "cli.hpp"
