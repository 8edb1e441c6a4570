#pragma once

#include "irkit/bitset.hpp"
#include "irkit/errors.hpp"
#include "irkit/graph.hpp"
#include "irkit/canonical.hpp"
#include "irkit/expr.hpp"
#include "irkit/hom.hpp"
#include "irkit/independence.hpp"
#include "irkit/rational.hpp"
#include "irkit/exact.hpp"
#include "irkit/lp.hpp"
#include "irkit/fractional.hpp"
#include "irkit/theta.hpp"
#include "irkit/theta_exact.hpp"
#include "irkit/minrank.hpp"
#include "irkit/beta.hpp"
#include "irkit/code.hpp"
#include "irkit/certificate.hpp"
#include "irkit/rules.hpp"
#include "irkit/cache.hpp"
#include "irkit/ratio.hpp"
#include "irkit/verify.hpp"
#include "irkit/equivalence.hpp"
#include "irkit/report.hpp"
