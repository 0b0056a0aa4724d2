#pragma once

// Umbrella header for the ridgesketch library: randomized preconditioning for
// Tikhonov-regularized least squares across a grid of regularization
// parameters, with Cholesky (partly exact sketch) and low-rank (Woodbury)
// preconditioner families, matrix-free LSQR, a dense verification oracle,
// and L-curve parameter selection.

#include "ridgesketch/types.hh"
#include "ridgesketch/rng.hh"
#include "ridgesketch/lapack.hh"
#include "ridgesketch/instrument.hh"
#include "ridgesketch/dct.hh"
#include "ridgesketch/operators.hh"
#include "ridgesketch/sketch.hh"
#include "ridgesketch/precond.hh"
#include "ridgesketch/lsqr.hh"
#include "ridgesketch/oracle.hh"
#include "ridgesketch/generator.hh"
#include "ridgesketch/sweep.hh"
#include "ridgesketch/matrix_io.hh"
#include "ridgesketch/sweep_io.hh"
