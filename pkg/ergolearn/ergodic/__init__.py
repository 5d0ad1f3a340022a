"""Statistical-accuracy evaluation: Lyapunov spectra, Wasserstein distances and orbit statistics.
"""

from ergolearn.ergodic.comparison import ComparisonRow, ComparisonTable, compare_models, model_orbit
from ergolearn.ergodic.lyapunov import LyapunovSpectrum, ensemble_lyapunov, log_det_average, lyapunov_spectrum
from ergolearn.ergodic.statistics import OrbitStatistics, histogram_edges, orbit_statistics, save_histograms
from ergolearn.ergodic.wasserstein import EmpiricalMeasure, resolve_method, wasserstein1
