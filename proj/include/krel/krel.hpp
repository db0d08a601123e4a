#pragma once

#include "krel/types.hpp"
#include "krel/subspace.hpp"
#include "krel/relation.hpp"
#include "krel/krein.hpp"
#include "krel/random.hpp"
#include "krel/generators.hpp"
#include "krel/weyl.hpp"
#include "krel/model.hpp"
#include "krel/grid.hpp"
#include "krel/serialize.hpp"
#include "krel/verify.hpp"
