"""How many moves does Staller need on paths and subdivided stars?

Run with ``python demos/01_paths_and_stars.py``.
"""

from smbdlab import gamma_smb, gamma_smb_prime, path_graph, subdivided_star
from smbdlab.formulas import all_even3_value, path_value, recognize_star, star_value_sgame

# Paths first.  Staller wins the S-game exactly on odd paths, and the number of
# moves grows like log2 of the length.  In the D-game she never wins.
print(" n  S-game  formula  D-game")
for n in range(1, 15):
    G = path_graph(n)
    print(f"{n:2d}  {gamma_smb_prime(G)!s:>6}  {path_value(n, 'S')!s:>7}  {gamma_smb(G)!s:>6}")

# Stars with several odd branches: only the two shortest odd branches matter.
print()
for branches in [(1, 1, 2), (1, 3, 2), (3, 3, 5), (1, 5, 6)]:
    G = subdivided_star(*branches)
    print(f"S{branches}: solver {gamma_smb_prime(G)}, closed form {star_value_sgame(recognize_star(G))}")

# All-even stars with three branches go through a short reduction; the trace
# shows each step (branches, reducible?, log-ceiling of the order).
print()
for branches in [(2, 2, 2), (2, 2, 4), (2, 2, 10), (2, 4, 8)]:
    value, cls = all_even3_value(*branches)
    print(f"S{branches}: value {value} ({cls.tag}); trace {list(cls.trace)}")
    print(f"   solver agrees: {gamma_smb_prime(subdivided_star(*branches)) == value}")

# Four or more all-even branches: only bounds are known in general.
iv = star_value_sgame(recognize_star(subdivided_star(2, 2, 2, 2)))
print(f"\nS(2, 2, 2, 2): value lies in [{iv.lower}, {iv.upper}]; solver says {gamma_smb_prime(subdivided_star(2, 2, 2, 2))}")
