#pragma once

#include "copos/error.hpp"
#include "copos/rational.hpp"
#include "copos/symmat.hpp"
#include "copos/linalg.hpp"
#include "copos/copositivity.hpp"
#include "copos/polyhedra.hpp"
#include "copos/perfection.hpp"
#include "copos/walk.hpp"
#include "copos/constructions.hpp"
#include "copos/certify.hpp"
