"""
Exact polyhedral kernel: rational simplex, lattice frames, polytopes, fans and
integer polynomials.
"""
