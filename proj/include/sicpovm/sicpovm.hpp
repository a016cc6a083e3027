// sicpovm.hpp
// Umbrella header.

#pragma once

#include "sicpovm/linalg.hpp"
#include "sicpovm/weyl_heisenberg.hpp"
#include "sicpovm/verify.hpp"
#include "sicpovm/search.hpp"
#include "sicpovm/simplex.hpp"
#include "sicpovm/io.hpp"
