#pragma once

// Umbrella header.

#include "kreinspec/antilinear.hpp"
#include "kreinspec/biortho.hpp"
#include "kreinspec/charpoly.hpp"
#include "kreinspec/eig.hpp"
#include "kreinspec/errors.hpp"
#include "kreinspec/fourlevel.hpp"
#include "kreinspec/io.hpp"
#include "kreinspec/kreindeg.hpp"
#include "kreinspec/linalg.hpp"
#include "kreinspec/matrix.hpp"
#include "kreinspec/metric.hpp"
#include "kreinspec/splitq.hpp"
#include "kreinspec/tolerances.hpp"
