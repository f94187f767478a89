"""Shared numeric constants, computed from closed forms at full precision."""

import math

# Khintchine-type constants of Koenig, Schuett, and Tomczak-Jaegermann for
# unit-modulus coordinates: E|sum a_i xi_i| is within (1 - Lambda)||a||_inf
# of Lambda ||a||_2.
LAMBDA_REAL = math.sqrt(2.0 / math.pi)
LAMBDA_COMPLEX = math.sqrt(math.pi) / 2.0

PI_CUBED = math.pi**3
E = math.e
