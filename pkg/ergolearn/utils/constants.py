"""Constants.
"""

# A epsilon constant defines a small value for avoiding
# unwanted mathematical errors, such as division by zero or log(0)
EPSILON = 1e-20

# Distance to a tent or Baker breakpoint below which the Jacobian is undefined
KINK_TOLERANCE = 1e-12

# Smallest velocity norm accepted as a relative error denominator
VELOCITY_FLOOR = 1e-12

# Smallest |R_ii| accepted during QR re-orthonormalization
FRAME_FLOOR = 1e-300

# A buffer size constant defines the maximum amount of
# buffer that should be used when shuffling a dataset
BUFFER_SIZE = 100000

# Default train and test pair counts
TRAIN_SIZE = 10000
TEST_SIZE = 8000

# Reduce-on-plateau learning rate schedule
PLATEAU_FACTOR = 0.5
PLATEAU_PATIENCE = 200
PLATEAU_MIN_LR = 1e-6

# Jacobian-matching weight per system
DEFAULT_LAMBDA = {
    'tent_tilted': 500.0,
    'tent_pinched': 500.0,
    'tent_plucked': 500.0,
    'baker': 100.0,
    'lorenz63': 500.0,
    'rossler': 500.0,
    'hyperchaos': 500.0,
    'ks': 1.0
}

# Above this many points an exact assignment is replaced by sliced projections
ASSIGNMENT_MAX_POINTS = 2000
SLICED_PROJECTIONS = 100

# Uniform bins per coordinate for orbit histograms
HISTOGRAM_BINS = 100

# Shadowing refinement defaults
SHADOW_TOL = 1e-10
SHADOW_MAX_ITER = 50
SHADOW_MAX_HALVINGS = 30
SHADOW_DAMPING = 0.5
SHADOW_TYPICAL_FACTOR = 3.0
SHADOW_PIVOT_WARNING = 1e-12
