"""
rabibus - quantum Rabi bus toolkit

Spectra, excitation transfer, dispersive effective models, dressed-basis
master equations and transmon chains for qubits coupled through a quantum
Rabi system (a strongly coupled qubit-cavity pair).

All frequencies and times are in units of the cavity frequency omega_cav.

Usage:
    rabibus list
    rabibus run transfer-weak steady-identical --out-dir results/
    rabibus check spectrum-identical
"""

import logging

# Version info
__version__ = "0.1.0"
__author__ = "rabibus contributors"

logging.getLogger("rabibus").addHandler(logging.NullHandler())
