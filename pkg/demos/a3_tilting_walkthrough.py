"""Follow one complex through S_T and back through Q_DT for the A3 tilting module P1 + P2 + S2.

Run with ``python demos/a3_tilting_walkthrough.py``.
"""

import random

from repequiv.cli import describe_complex, parse_workspace
from repequiv.repcat import Q_DT, S_T_data, construct_phi, random_repe, strip_projectives


def show(title, X, side="R"):
    X.name, X.side = title, side
    print(describe_complex(X))


def main():
    ws = parse_workspace("fix-a3t")
    Tb, ctx = ws.bimodule()
    d_r, d_s = ws.data_r(), ws.data_s()
    print("S = End(T) has dimension %d; T is a %d-dimensional bimodule" % (ctx.S.dim, Tb.dim))

    X = random_repe(ctx.R, random.Random(7), window=(-1, 1), maxdim=2)
    show("X", X)

    st = S_T_data(X, ctx, d_r)
    for i, seq in sorted(st.seqs.items()):
        print("degree %d: 0 -> X_i %s -> A %s -> B %s -> 0 after %d extension steps"
              % (i, seq.left.dims, seq.middle.dims, seq.right.dims, seq.steps))
    show("L_T(A_X)", st.L, "S")
    show("S_T(X)", st.S, "S")

    back = Q_DT(st.S, ctx, d_s)
    show("Q_DT S_T(X)", back)

    d = construct_phi(X, ctx, d_r)
    print("phi invertible in every degree:", d.phi.is_iso())
    core, removed = strip_projectives(back)
    print("projective-injective summands split off Q_DT S_T(X):", removed)
    show("core", core)


if __name__ == "__main__":
    main()
