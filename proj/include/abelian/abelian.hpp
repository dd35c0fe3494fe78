#pragma once

#include "abelian/arith.hpp"
#include "abelian/coprime.hpp"
#include "abelian/cyclotomic.hpp"
#include "abelian/descriptor.hpp"
#include "abelian/errors.hpp"
#include "abelian/exponents.hpp"
#include "abelian/field.hpp"
#include "abelian/json_io.hpp"
#include "abelian/scan.hpp"
#include "abelian/sieve.hpp"
#include "abelian/special_values.hpp"
