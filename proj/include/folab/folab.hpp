#pragma once

#include "folab/rational.hpp"
#include "folab/poly.hpp"
#include "folab/gcd.hpp"
#include "folab/unipoly.hpp"
#include "folab/linsolve.hpp"
#include "folab/forms.hpp"
#include "folab/foliation.hpp"
#include "folab/blowup.hpp"
#include "folab/logcalc.hpp"
#include "folab/parser.hpp"
#include "folab/report.hpp"
#include "folab/cli.hpp"
