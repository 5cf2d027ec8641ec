#pragma once

#include "tatecup/errors.hpp"
#include "tatecup/group.hpp"
#include "tatecup/homology.hpp"
#include "tatecup/int_matrix.hpp"
#include "tatecup/integer.hpp"
#include "tatecup/io.hpp"
#include "tatecup/join.hpp"
#include "tatecup/normal_form.hpp"
#include "tatecup/products.hpp"
#include "tatecup/resolution.hpp"
#include "tatecup/tate.hpp"
#include "tatecup/verify.hpp"
#include "tatecup/zg_matrix.hpp"
