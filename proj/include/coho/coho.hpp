#pragma once

#include "coho/errors.hpp"
#include "coho/special.hpp"
#include "coho/params.hpp"
#include "coho/thermal.hpp"
#include "coho/entropy.hpp"
#include "coho/quadrature.hpp"
#include "coho/oracle.hpp"
#include "coho/sweep.hpp"
#include "coho/verify.hpp"
