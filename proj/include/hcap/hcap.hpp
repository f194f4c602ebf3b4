#pragma once

#include "capacity.hpp"
#include "corpus.hpp"
#include "dyadic.hpp"
#include "fixtures.hpp"
#include "geometry.hpp"
#include "hyperbolic.hpp"
#include "mobius.hpp"
#include "parallel.hpp"
#include "quadtree.hpp"
#include "verify.hpp"
#include "wos.hpp"
