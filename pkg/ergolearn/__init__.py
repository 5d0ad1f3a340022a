"""This is ergolearn main library. It learns chaotic dynamics from time-series
    and audits the statistical fidelity of the learned surrogates.
"""

__version__ = '1.0.0'
