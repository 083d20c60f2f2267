"""Count structured endomorphisms of powers of small groups.

For each base group T and exponent n this tabulates |End0(T^n)| and
|Aut0(T^n)| and checks them against the closed forms
(n*|Aut T| + 1)^n and |Aut T|^n * n!.
"""

import math

from hopfgalois.endomorphisms import count_aut0, count_end0
from hopfgalois.groups import load_group


def main():
    print(f"{'T':<4} {'n':>2} {'|End0|':>10} {'|Aut0|':>8}  closed forms agree")
    for name in ("c2", "c3", "s3", "q8"):
        T = load_group(name)
        A = len(T.automorphisms())
        for n in (1, 2, 3):
            e = count_end0(T, n)
            a = count_aut0(T, n)
            ok = e == (n * A + 1) ** n and a == A**n * math.factorial(n)
            print(f"{name:<4} {n:>2} {e:>10} {a:>8}  {ok}")
    print()
    a5 = load_group("a5")
    print(f"a5 n=1: |End0| = {count_end0(a5, 1)} (|Aut| = "
          f"{len(a5.automorphisms())}, plus the all-collapsing map)")


if __name__ == "__main__":
    main()
