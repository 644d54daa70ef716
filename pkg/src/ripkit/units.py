"""Unit conventions.

Frequencies are cyclic (f = omega/2pi) in MHz and times are in ns everywhere.
A cyclic frequency f accumulates 2*pi*f*t*1e-3 radians over t nanoseconds;
RAD_PER_MHZ_NS is that conversion factor.
"""

import numpy as np

RAD_PER_MHZ_NS = 2.0 * np.pi * 1e-3


def to_angular(f_mhz):
    """Cyclic MHz -> rad/ns."""
    return RAD_PER_MHZ_NS * f_mhz


def phase(f_mhz, t_ns):
    """Phase in radians accumulated by cyclic frequency f over time t."""
    return RAD_PER_MHZ_NS * f_mhz * t_ns
