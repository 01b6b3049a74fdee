MODE_ORDER = ("magnon1", "magnon2", "cavity")
PROBE_PORTS = ("magnon1", "magnon2", "cavity")

# Port labels used on the command line.
PORT_ALIASES = {
    "m1": "magnon1",
    "m2": "magnon2",
    "cav": "cavity",
    "combined": "combined",
}

KAPPA_CONTROLS = ("antenna3", "critical")
PIPELINES = ("antipt", "effective", "full")

GYROMAGNETIC_RATIO_GHZ_PER_T = 28.0

# Spectrum grid around the frame center.
GRID_HALF_WIDTH_MHZ = 25.0
GRID_POINTS = 2001

# Dip analysis.
DIP_THRESHOLD = 0.05
DIP_MIN_PROMINENCE = 0.01
BASELINE_FRACTION = 0.10

# Phase classification.
EP_RTOL = 1e-9

# "Much greater than" margin used by the approximation diagnostics.
DOMINANCE_RATIO = 10.0
ASYMMETRY_LIMIT = 0.05

# Fitting.
FIT_MAX_ITER = 200
FIT_PHASE_GRID = 32
FIT_FTOL = 1e-10
FIT_GTOL = 1e-8
LM_DAMPING_INIT = 1e-3
LM_DAMPING_FACTOR = 3.0
FD_REL_STEP = 1e-6

CSV_DIGITS = 12
