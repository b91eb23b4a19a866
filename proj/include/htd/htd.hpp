#pragma once

#include "htd/common.hpp"
#include "htd/compound.hpp"
#include "htd/distribution.hpp"
#include "htd/dominance.hpp"
#include "htd/dsl.hpp"
#include "htd/examples.hpp"
#include "htd/families.hpp"
#include "htd/grid.hpp"
#include "htd/majorization.hpp"
#include "htd/membership.hpp"
#include "htd/quadrature.hpp"
#include "htd/report.hpp"
#include "htd/transforms.hpp"
