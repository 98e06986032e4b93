"""Exact verification workbench for the Virasoro subalgebras k_n, the
endomorphisms gamma_r, the twisted current realisation and the resulting
equivalence of lowest-energy representations with different lowest energies.
"""

__version__ = "0.1.0"
