#ifndef ASTAR_ASTAR_HPP
#define ASTAR_ASTAR_HPP

#include "astar/error.hpp"
#include "astar/matrix.hpp"
#include "astar/linalg.hpp"
#include "astar/weight.hpp"
#include "astar/seminorms.hpp"
#include "astar/geometry.hpp"
#include "astar/oracle.hpp"

#endif  // ASTAR_ASTAR_HPP
