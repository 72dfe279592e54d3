#ifndef KRES_KRES_HPP
#define KRES_KRES_HPP

#include "fieldcore.hpp"
#include "polyring.hpp"
#include "modmatrix.hpp"
#include "exact_matrix.hpp"
#include "stepanov.hpp"
#include "svdet.hpp"
#include "harness.hpp"

#endif  // KRES_KRES_HPP
