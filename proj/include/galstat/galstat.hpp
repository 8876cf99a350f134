#pragma once

#include "galstat/algebra_table.hpp"
#include "galstat/errors.hpp"
#include "galstat/exact/complex_literal.hpp"
#include "galstat/exact/cyclotomic.hpp"
#include "galstat/exact/exact_complex.hpp"
#include "galstat/exact/rational.hpp"
#include "galstat/field_kinematics.hpp"
#include "galstat/galilei.hpp"
#include "galstat/nogo.hpp"
#include "galstat/op_algebra.hpp"
#include "galstat/report/config.hpp"
#include "galstat/report/report.hpp"
#include "galstat/report/suites.hpp"
#include "galstat/reps.hpp"
#include "galstat/schwinger.hpp"
#include "galstat/verdict.hpp"
