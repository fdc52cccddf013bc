"""Torus orbit closures: matroids, flags, Schubert and Richardson families, Catalan and Bott."""
