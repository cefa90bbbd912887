"""Signomials, AGE relative-entropy checks and orbit-decomposed SAGE certificates."""

from modules.sage_orbit.age import AGECandidate, AGEResult, EntropyCertificate, age_feasible, interior_weights
from modules.sage_orbit.orbit_decomposition import (OrbitTemplate, SageBound, SageCertificate, SolvedTemplate,
                                                    certify_sage, identify_coefficients, orbit_decompose, orbit_sum,
                                                    sage_bound)
from modules.sage_orbit.signomial import Signomial

__all__ = ['AGECandidate', 'AGEResult', 'EntropyCertificate', 'age_feasible', 'interior_weights', 'OrbitTemplate',
           'SageBound', 'SageCertificate', 'SolvedTemplate', 'certify_sage', 'identify_coefficients',
           'orbit_decompose', 'orbit_sum', 'sage_bound', 'Signomial']
