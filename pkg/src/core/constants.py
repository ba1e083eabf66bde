import numpy as np

DEFAULT_SEED = 20240531

# tolerances
ABS_FLOOR = 1e-12
HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10
CONTRACTIVE_TOL = 1e-8
BOUNDARY_TOL = 1e-7
INDEPENDENCE_TOL = 1e-10
SUBSPACE_TOL = 1e-8
LSTSQ_TOL = 1e-8
BSET_TOL = 1e-9
UNIT_TOL = 1e-12
CLAIM_SEPARATION = 1e-3
G_ROOT_TOL = 1e-6
BISECT_TOL = 1e-10
DUAL_AGREE_TOL = 1e-6

# optimizer budgets
SPHERE_GRID = 4096
SPHERE_REFINE = 8
G_GRID = 512
G_GRID_COARSE = 128
G_REFINE = 4
DUAL_SAMPLES = 20000
DUAL_REFINE = 10
NM_MAXITER = 4000
NM_XATOL = 1e-11
NM_FATOL = 1e-14

# counterexample search
LAMBDA_GRID = 10.0 ** np.linspace(-3.0, 3.0, 61)
MONOTONE_SCAN = 64

# bergman
FD_STEP = 1e-3
SERIES_MAX_INDEX = 60
SERIES_TAIL_TOL = 1e-12
REINHARDT_RADIUS = 0.8
REINHARDT_MARGIN = 0.05
THRESHOLD_LAMBDAS = np.linspace(0.1, 1.0, 10)
CRITICAL_DENOMINATOR = 1000

# exit codes
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INPUT = 2
EXIT_NOT_CONTRACTIVE = 10
EXIT_DIAGONALIZABLE = 11
EXIT_EXHAUSTED = 12
