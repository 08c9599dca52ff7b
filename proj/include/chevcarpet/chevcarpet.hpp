#pragma once

#include "scalars.hpp"
#include "random.hpp"
#include "kmodules.hpp"
#include "roots.hpp"
#include "carpets.hpp"
#include "matrix.hpp"
#include "words.hpp"
#include "relations.hpp"
#include "bruhat.hpp"
#include "membership.hpp"
#include "finite_groups.hpp"
#include "bn_pair.hpp"
#include "perfectness.hpp"
#include "io.hpp"
