"""Brute-force oracle for B-extreme cycles of x -> (x + l)/R, B = {0, 2}.

Enumerates every word up to a fixed length, solves the periodic point in
exact Fractions and keeps cycles lying entirely in (1/2)Z. Independent of
the lattice-graph search used by the library.
"""
import itertools
import sys
from fractions import Fraction


def cycles(R, L, max_len):
    found = set()
    for n in range(1, max_len + 1):
        for word in itertools.product(L, repeat=n):
            # fixed point of tau_{w[n-1]} o ... o tau_{w[0]}
            c = Fraction(0)
            for d in word:
                c = (c + d) / R
            x = c / (1 - Fraction(1, R ** n))
            pts, y = [], x
            for d in word:
                pts.append(y)
                y = (y + d) / R
            assert y == x
            if len(set(pts)) != n:
                continue  # periodic word, already seen at a shorter length
            if all((2 * q).denominator == 1 for q in pts) and x != 0:
                i = pts.index(min(pts))
                found.add(tuple(pts[i:] + pts[:i]))
    return sorted(found)


def fmt(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


if __name__ == "__main__":
    print("p,cycle_index,length,points")
    for p in range(1, 101, 2):
        for i, c in enumerate(cycles(4, [0, p], int(sys.argv[1]) if len(sys.argv) > 1 else 10)):
            print(f"{p},{i},{len(c)},{';'.join(fmt(q) for q in c)}")
