"""Certify the seven-vertex radical-square-zero example and show what the certificate contains.

Run with ``python demos/seven_vertex.py``.
"""

from repequiv.cli import parse_workspace
from repequiv.rmod import decompose
from repequiv.wtilt import check_wakamatsu


def main():
    ws = parse_workspace("rad2-seven")
    R = ws.algebra
    print("algebra: %d vertices, dimension %d" % (R.nverts, R.dim))
    T = ws.module("T")
    print("T has dimension vector %s and splits as" % (T.dims,))
    for M, mult in decompose(T):
        print("   %s x%d" % (M.dims, mult))
    report = check_wakamatsu(T, 10)
    print(report.summary())
    # The minimal projective resolution of the summand M13 is periodic (P2, P1, P2, ...), so T is
    # not a classical tilting module; the coresolution of R repeats too but stays Hom(-, T)-exact.
    print("coresolution terminated:", report.complete)


if __name__ == "__main__":
    main()
