"""A worked caterpillar: clean odd paths decide both games.

Run with ``python demos/02_caterpillar.py``.
"""

from smbdlab import gamma_smb, gamma_smb_prime, sample_caterpillar
from smbdlab.formulas import caterpillar_values, recognize_caterpillar
from smbdlab.play import DOMINATOR, STALLER, optimal_strategy, play_match

T = sample_caterpillar()
prof = recognize_caterpillar(T)
print("spine:", prof.spine, "leaves per spine vertex:", prof.leaves_at)

# Odd leaf-to-leaf paths, and the clean ones among them (no branching away
# from the two vertices at either end).
for P in prof.p_o:
    tag = "clean" if P in prof.p_co else "     "
    print(f"  {tag} order {len(P)}: {P}")
print(f"shortest clean odd path p = {prof.p}, first order without a shared vertex p* = {prof.p_star}")

g, gp = caterpillar_values(prof)
print(f"formula: D-game {g}, S-game {gp}")
print(f"solver:  D-game {gamma_smb(T)}, S-game {gamma_smb_prime(T)}")

# Both players optimal, Dominator to move: Staller still wins in three moves.
t = play_match(T, optimal_strategy(T, STALLER), optimal_strategy(T, DOMINATOR), first=DOMINATOR)
print("\noptimal play, D-game:")
print(t.to_text(), end="")
