#pragma once

// Umbrella header.

#include "complex_matrix.hpp"
#include "hermitian_eigen.hpp"
#include "numerical_range.hpp"
#include "omega_derivative.hpp"
#include "oracle.hpp"
#include "orthogonality.hpp"
