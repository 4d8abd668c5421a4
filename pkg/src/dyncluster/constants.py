"""Numeric constants shared across dyncluster modules."""

# Weights below this are rejected by Graph construction
MIN_WEIGHT = 1e-12

# Dense eigensolves up to this many non-isolated nodes, eigsh above
DENSE_EIGEN_LIMIT = 2500

# Ridge default: delta = epsilon * DEFAULT_DELTA_SCALE * typical weight
DEFAULT_DELTA_SCALE = 1e-6

# Rank-one inverse updates between Cholesky refreshes
DEFAULT_REFRESH_EVERY = 256

# k-means (NJW embedding)
KMEANS_MAX_ITER = 100
KMEANS_TOL = 1e-8

# Experiment baseline (t time points, s sites)
BASELINE_TIME_POINTS = 10
BASELINE_SITES = 30

# Gaussians dataset
GAUSSIANS_PER_CLUSTER = 200
GAUSSIANS_VARIANCE = 0.01
GAUSSIANS_NEIGHBORS = 100
GAUSSIANS_SIGMA = 1.0
# Square of side 0.46 (4.6 std): neighboring blobs overlap enough for NCut near 0.2
GAUSSIANS_MEANS = ((0.0, 0.0), (0.0, 0.46), (0.46, 0.0), (0.46, 0.46))

# Image-pixel dataset
IMAGE_NEIGHBORS = 80
IMAGE_SIGMA = 20.0

# Greedy spanner size check: kept <= SPANNER_SIZE_CONSTANT * n^(1+1/k) * ln n
SPANNER_SIZE_CONSTANT = 8.0
