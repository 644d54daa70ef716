"""Modeling toolkit for resonator-induced phase (ZZ) gates on transmon qubits.

All frequencies and energies are cyclic (f = omega/2pi) in MHz, all times in
ns.  Accumulated phases are therefore 2*pi*f*t*1e-3 radians.
"""

__version__ = "0.1.0"
