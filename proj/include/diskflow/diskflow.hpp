#pragma once

// Semigroups of holomorphic self-maps of the unit disk: generators and their
// Denjoy-Wolff data, the semiflow ODE, spirallike linearizers, backward
// flow-invariant petals and their flowers, with JSON and SVG output.

#include "diskflow/acceptance.hpp"
#include "diskflow/boundary.hpp"
#include "diskflow/cli.hpp"
#include "diskflow/flow.hpp"
#include "diskflow/generator.hpp"
#include "diskflow/herglotz.hpp"
#include "diskflow/json_io.hpp"
#include "diskflow/mobius.hpp"
#include "diskflow/models.hpp"
#include "diskflow/numeric.hpp"
#include "diskflow/ode.hpp"
#include "diskflow/petal.hpp"
#include "diskflow/quotients.hpp"
#include "diskflow/spirallike.hpp"
#include "diskflow/starlike.hpp"
#include "diskflow/svg.hpp"
#include "diskflow/wedge.hpp"
