#ifndef JORDAN_JORDAN_HPP
#define JORDAN_JORDAN_HPP

#include "core.hpp"
#include "gf_matrix.hpp"
#include "oracle.hpp"
#include "verify.hpp"

#endif  // JORDAN_JORDAN_HPP
