"""Datasets built from reference orbits.
"""

from ergolearn.datasets.orbit import OrbitDataset, make_dataset, orbit_jacobians, split_orbit
