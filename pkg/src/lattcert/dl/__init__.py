from lattcert.dl.affine import AffineMap, affine_act, compose, inverse, random_affine_map
from lattcert.dl.lamplighter import (
    LambdaElement, lambda_embed, lambda_inv, lambda_mul, standard_generators, switch_walk_generators,
)
from lattcert.dl.orbit import SchreierBall, coverage_constant, orbit_bfs
from lattcert.dl.lattice_conditions import check_lattice_conditions
from lattcert.dl.tree import (
    DEFAULT_VERTEX_CAP, DEFAULT_WINDOW, DLVertex, TreeVertex, ball_edges, dl_ball, dl_degree,
    dl_neighbors, tree_children, tree_parent, write_edge_csv,
)

__all__ = [
    "AffineMap", "DEFAULT_VERTEX_CAP", "DEFAULT_WINDOW", "DLVertex", "LambdaElement", "SchreierBall",
    "TreeVertex", "affine_act", "ball_edges", "check_lattice_conditions", "compose", "coverage_constant",
    "dl_ball", "dl_degree", "dl_neighbors", "inverse", "lambda_embed", "lambda_inv", "lambda_mul",
    "orbit_bfs", "random_affine_map", "standard_generators", "switch_walk_generators", "tree_children",
    "tree_parent", "write_edge_csv",
]
