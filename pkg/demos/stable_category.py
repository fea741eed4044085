"""Stable homomorphisms in the repetitive category and the modules sitting inside it.

Run with ``python demos/stable_category.py``.
"""

from repequiv.cli import parse_workspace
from repequiv.repcat import proj_object, stable_hom, stalk, strip_projectives, repe_direct_sum
from repequiv.rmod import hom_dim


def main():
    ws = parse_workspace("fix-a3")
    A = ws.algebra
    names = sorted(ws.modules)
    print("stable Hom between stalk modules in degree 0 versus Hom over A:")
    for m in names:
        row = []
        for n in names:
            M, N = ws.module(m), ws.module(n)
            row.append("%d/%d" % (stable_hom(stalk(M), stalk(N)).dim, hom_dim(M, N)))
        print("  %-3s %s" % (m, " ".join(row)))

    E = proj_object(A, 0, 0)
    X = stalk(ws.module("S2"), 0)
    Z, _, _ = repe_direct_sum([X, E])
    sp = stable_hom(Z, Z)
    print("End(S2 + E): %d maps, %d factor through projectives, stable dimension %d"
          % (sp.hom_dim, sp.factoring_dim, sp.dim))
    core, removed = strip_projectives(Z)
    print("strip_projectives removed %s and left dims %s" % (removed, {i: M.dims for i, M in core.comps.items()}))


if __name__ == "__main__":
    main()
