#pragma once

#include "bh/aut.hpp"
#include "bh/cli.hpp"
#include "bh/cover.hpp"
#include "bh/curve.hpp"
#include "bh/error.hpp"
#include "bh/field.hpp"
#include "bh/lattice.hpp"
#include "bh/poly.hpp"
#include "bh/report.hpp"
