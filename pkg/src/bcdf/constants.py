"""
Key numerical constants and experiment defaults

MIT License
"""

# Gauss-Legendre order used on every quadrature panel
gauss_legendre_order = 15

# Quadrature and root-finding defaults
quad_rel_tol = 1e-10
quad_abs_tol = 1e-12
quad_max_subdivisions = 2**15
root_x_tol = 1e-12
root_max_iters = 200

# Kernel and boundary-family names accepted on the command line
kernel_names = ('uniform', 'epanechnikov', 'biweight', 'triweight')
family_names = ('k1', 'k2', 'k3')
classical_name = 'classical'

# Below this value of 2K(alpha)-1 the K1 normaliser is considered badly conditioned
k1_conditioning_floor = 1e-6

# Tolerance used when checking the moment conditions of boundary kernels
condition_tol = 1e-9

# Interior grid of alpha values used for coefficient curves and condition checks: 0.01, 0.02, ..., 0.99
alpha_grid_size = 99

# The test mixtures wB(1,2)+(1-w)B(2,b) are indexed by their right derivatives at 0
mixture_d1_targets = (0.0, 0.5, 1.0, 1.5)
mixture_d2_targets = (6.0, 30.0)

# Sup-norm distances are taken on this many uniform points (plus all sample points)
sup_norm_grid_size = 4001

# Composite Simpson panels per unit length for integrated squared errors
ise_panels_per_unit = 4096

# Monte Carlo defaults
default_n = 50
default_reps = 500
default_seed = 20140101

# Default evaluation grid size for the estimate subcommand
default_estimate_grid = 1001
