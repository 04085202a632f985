#pragma once

#include "adiagap/barrier.hpp"
#include "adiagap/eig.hpp"
#include "adiagap/errors.hpp"
#include "adiagap/gapscan.hpp"
#include "adiagap/hamiltonian.hpp"
#include "adiagap/model.hpp"
#include "adiagap/scaling.hpp"
#include "adiagap/specfun.hpp"
#include "adiagap/tridiagonal.hpp"
#include "adiagap/villain.hpp"
