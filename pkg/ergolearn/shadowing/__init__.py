"""Shadowing audits: pseudo-orbit defects, Newton refinement and typicality of the shadow.
"""

from ergolearn.shadowing.defects import PseudoOrbit, measure_defects
from ergolearn.shadowing.refinement import ShadowResult, orbit_operator, orbit_residuals, refine_shadow
from ergolearn.shadowing.typicality import (ShadowMeasureReport, classify_shadow, shadow_report,
                                            typicality_threshold)
