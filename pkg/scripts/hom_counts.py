"""Print envelope hom sizes for a finite-set multicategory next to a direct count.

The direct count is sum over phi: I -> J of prod_j n ** (n ** |phi^-1 j|).

Usage: python scripts/hom_counts.py [colour size] [max word length]
"""

import sys
from itertools import product
from math import prod

from biprops.envelope import env_hom_count
from biprops.multicat import finite_set_multicat


def direct_count(I: int, J: int, n: int) -> int:
    return sum(prod(n ** (n ** image.count(j)) for j in range(J)) for image in product(range(J), repeat=I))


def main(n: int = 2, max_len: int = 3):
    C = finite_set_multicat({"X": n}, max_arity=max_len)
    print(f"{'I':>2} {'J':>2} {'envelope':>12} {'direct':>12}")
    ok = True
    for I in range(max_len + 1):
        for J in range(max_len + 1):
            got = env_hom_count(C, ("X",) * I, ("X",) * J)
            want = direct_count(I, J, n)
            ok &= got == want
            print(f"{I:>2} {J:>2} {got:>12} {want:>12}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main(*map(int, sys.argv[1:])))
