#pragma once

#include "rrb/errors.hpp"
#include "rrb/finite_field.hpp"
#include "rrb/linalg.hpp"
#include "rrb/laurent.hpp"
#include "rrb/literal.hpp"
#include "rrb/group_algebra.hpp"
#include "rrb/as_data.hpp"
#include "rrb/extension.hpp"
#include "rrb/lift.hpp"
#include "rrb/valuation_basis.hpp"
#include "rrb/scaffold.hpp"
#include "rrb/breaks.hpp"
#include "rrb/random_data.hpp"
#include "rrb/verify.hpp"
#include "rrb/config.hpp"
#include "rrb/commands.hpp"
