"""holebound - exact solvers, structure verifiers and proof engines for graphs with bounded clique number and no long hole."""
