"""Staller's winning substructures and the strategies they give.

Run with ``python demos/03_substructures.py``.
"""

from smbdlab import Graph, gamma_smb_prime
from smbdlab.graphs import forest_perfect_matching
from smbdlab.play import DOMINATOR, STALLER, dominator_pairing_strategy, optimal_strategy, play_match, verify_strategy_bound
from smbdlab.structures import generate_S_upto, min_rank_substructure, staller_strategy_from_substructure

# Patterns are trees with every edge subdivided once.  Ranks up to 9 vertices:
for S in generate_S_upto(9):
    print(f"pattern on {S.order} vertices, edges {S.tree.edges()}, rank {S.rank}")

# A tree that is neither a star nor a caterpillar.
T = Graph.from_edges(11, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6), (6, 7), (6, 8), (8, 9), (9, 10)])
sub, k = min_rank_substructure(T)
print(f"\nleast-rank substructure has rank {k}; solver value {gamma_smb_prime(T)}")
print(sub.to_text(), end="")

# The substructure is also a strategy.  Check it against every Dominator reply.
s = staller_strategy_from_substructure(T, sub)
print(f"wins within {k} moves against every opponent: {verify_strategy_bound(T, s, k)}")
print(f"wins within {k - 1} moves against every opponent: {verify_strategy_bound(T, s, k - 1)}")

# When the tree has a perfect matching Dominator simply answers inside each pair.
U = Graph.from_edges(8, [(0, 1), (1, 2), (2, 3), (1, 4), (4, 5), (2, 6), (6, 7)])
M = forest_perfect_matching(U)
t = play_match(U, optimal_strategy(U, STALLER), dominator_pairing_strategy(U, M))
print(f"\npairing {sorted(M.edges)} vs optimal Staller: {t.status}")
