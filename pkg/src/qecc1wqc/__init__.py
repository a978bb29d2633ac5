"""Error-corrected one-way quantum computation toolkit.

Simulators (dense and stabilizer), the five-qubit code, encoded gate
teleportation protocols, and a 2D-lattice scheduler that compiles all
entangling structure onto axis-wise global CZ layers.
"""

__version__ = "0.1.0"
