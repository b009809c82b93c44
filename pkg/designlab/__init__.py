"""designlab: MDS codes, latin hypercubes, bipartite designs and Steiner quadruple systems."""

# Keep empty to avoid side effects during package import
