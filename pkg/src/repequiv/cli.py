"""Workspace files and the ``repequiv`` command line.

A workspace is a sectioned plain-text file::

    [quiver] vertices = 3
    arrow a 1 2
    arrow b 2 3
    [relations] rad2
    [field] char = 0
    [module P1] projective 1
    [module X] dims = (1,1,0)
    mat a = [[1]]
    [module T] sum P1 P2 S2
    [cotorsion D] a = P1 P2 S1 S2 I2
    b = P1 P2 P3 S2
    [repe Z]
    comp 0 = S3
    comp 1 = P2
    delta 1 = [[...]]
    [setup] tilting = T
    data-r = D

Vertices are numbered from 1.  See the README for the full grammar.
Exit codes: 0 when every verdict passes, 1 on a verdict failure, 2 on an
input error.
"""

from __future__ import annotations

import random
import re
import sys
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import click

from .exactla import Field, Matrix, parse_matrix
from .homalg import end_algebra, hom_functor, regular_bimodule, tensor
from .qalg import Quiver, Relation, path_basis, rad_relations
from .rmod import direct_sum, injective, projective, quotient, simple
from .repcat import (RepeComplex, RepeError, S_T, Q_DT, dual_regular, random_repe, restriction_check,
                     tilt_context, verify_roundtrip_R, verify_roundtrip_S)
from .wtilt import CotorsionData, Verdict, check_good, check_wakamatsu, derived_s_data, end_check

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class WorkspaceError(ValueError):
    """Syntax, reference or validation error in a workspace file."""

    def __init__(self, msg, line=None):
        self.line = line
        super().__init__("line %d: %s" % (line, msg) if line else msg)


@dataclass
class Section:
    kind: str
    name: str
    head: str
    line: int
    body: list = dc_field(default_factory=list)  # (line number, text)


_HEADER = re.compile(r"^\[(\w[\w-]*)(?:\s+([^\]]+?))?\]\s*(.*)$")


def _sections(text):
    out = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _HEADER.match(line)
        if m:
            out.append(Section(m.group(1).lower(), (m.group(2) or "").strip(), m.group(3).strip(), n))
        elif not out:
            raise WorkspaceError("content before the first section", n)
        else:
            out[-1].body.append((n, line))
    return out


def _key_values(sec):
    """``key = value`` pairs of the header remainder and the body."""
    out = {}
    for n, text in ([(sec.line, sec.head)] if sec.head else []) + sec.body:
        if "=" not in text:
            raise WorkspaceError("expected 'key = value', got %r" % text, n)
        k, v = text.split("=", 1)
        out[k.strip()] = (v.strip(), n)
    return out


def _vertex(token, nverts, line):
    try:
        v = int(token)
    except ValueError:
        raise WorkspaceError("vertex must be an integer, got %r" % token, line)
    if not 1 <= v <= nverts:
        raise WorkspaceError("vertex %d out of range 1..%d" % (v, nverts), line)
    return v - 1


def _parse_relation(text, quiver, field, line):
    terms = []
    for sign, body in re.findall(r"([+-]?)\s*([^+-]+)", text.replace(" - ", " -").replace(" + ", " +")):
        parts = body.split()
        if len(parts) == 2:
            coef, path = Fraction(parts[0]), parts[1]
        elif len(parts) == 1:
            coef, path = Fraction(1), parts[0]
        else:
            raise WorkspaceError("cannot read relation term %r" % body, line)
        try:
            word = tuple(quiver.arrow_index(a) for a in path.split("*"))
        except KeyError as e:
            raise WorkspaceError("unknown arrow %s in relation" % e, line)
        c = field(-coef if sign == "-" else coef)
        terms.append((c, word))
    if not terms:
        raise WorkspaceError("empty relation", line)
    return Relation(tuple(terms))


@dataclass
class RepeSpec:
    name: str
    line: int
    over: str = "R"
    comps: dict = dc_field(default_factory=dict)   # degree -> (expression, line)
    deltas: dict = dc_field(default_factory=dict)  # degree -> (literal, line)
    random: dict = None


class Workspace:
    """Parsed workspace: algebra, named modules, cotorsion data, complexes and defaults."""

    def __init__(self, path=None):
        self.path = path
        self.field = Field(0)
        self.quiver = None
        self.opposite = False
        self.algebra = None
        self.modules = {}
        self.cotorsion = {}
        self.repes = {}
        self.setup = {}
        self._cache = {}

    # -- parsing -------------------------------------------------------------------
    @classmethod
    def parse(cls, text, path=None):
        ws = cls(path)
        secs = _sections(text)
        names = set()
        for s in secs:
            if s.kind in ("module", "cotorsion", "repe"):
                if not s.name:
                    raise WorkspaceError("[%s] needs a name" % s.kind, s.line)
                if s.name in names:
                    raise WorkspaceError("duplicate name %r" % s.name, s.line)
                names.add(s.name)
        for s in secs:
            if s.kind == "field":
                kv = _key_values(s)
                ch = kv.get("char", ("0", s.line))
                try:
                    ws.field = Field(int(ch[0]))
                except ValueError as e:
                    raise WorkspaceError(str(e), ch[1])
        quiver_secs = [s for s in secs if s.kind == "quiver"]
        if len(quiver_secs) > 1:
            raise WorkspaceError("more than one [quiver] section", quiver_secs[1].line)
        if quiver_secs:
            ws._parse_quiver(quiver_secs[0], [s for s in secs if s.kind == "relations"])
        elif any(s.kind in ("module", "repe", "cotorsion", "relations") for s in secs):
            first = next(s for s in secs if s.kind in ("module", "repe", "cotorsion", "relations"))
            raise WorkspaceError("a [quiver] section is required before modules", first.line)
        for s in secs:
            if s.kind in ("quiver", "relations", "field"):
                continue
            if s.kind == "module":
                ws.modules[s.name] = ws._parse_module(s)
                ws.modules[s.name].name = s.name
            elif s.kind == "cotorsion":
                ws.cotorsion[s.name] = ws._parse_cotorsion(s)
            elif s.kind == "repe":
                ws.repes[s.name] = ws._parse_repe(s)
            elif s.kind == "setup":
                ws.setup = {k: v for k, v in _key_values(s).items()}
            else:
                raise WorkspaceError("unknown section [%s]" % s.kind, s.line)
        ws._check_setup()
        return ws

    @classmethod
    def load(cls, path):
        p = Path(path)
        if not p.exists():
            bundled = resources.files("repequiv") / "fixtures" / (str(path) + ".txt")
            if bundled.is_file():
                return cls.parse(bundled.read_text(), str(path))
            raise WorkspaceError("no such workspace file: %s" % path)
        return cls.parse(p.read_text(), str(p))

    def _parse_quiver(self, sec, rel_secs):
        kv = {}
        arrows = []
        opposite = False
        for n, text in ([(sec.line, sec.head)] if sec.head else []) + sec.body:
            if text.startswith("arrow"):
                parts = text.split()
                if len(parts) != 4:
                    raise WorkspaceError("expected 'arrow NAME SOURCE TARGET'", n)
                arrows.append((parts[1], parts[2], parts[3], n))
            elif "=" in text:
                k, v = (x.strip() for x in text.split("=", 1))
                kv[k] = (v, n)
            else:
                raise WorkspaceError("cannot read %r" % text, n)
        if "vertices" not in kv:
            raise WorkspaceError("[quiver] needs 'vertices = N'", sec.line)
        nv = int(kv["vertices"][0])
        if "orientation" in kv:
            val, n = kv["orientation"]
            if val not in ("as-written", "opposite"):
                raise WorkspaceError("orientation must be 'as-written' or 'opposite'", n)
            opposite = val == "opposite"
        arr = []
        for name, s, t, n in arrows:
            a, b = _vertex(s, nv, n), _vertex(t, nv, n)
            arr.append((name, b, a) if opposite else (name, a, b))
        try:
            self.quiver = Quiver(nv, tuple(arr))
        except ValueError as e:
            raise WorkspaceError(str(e), sec.line)
        self.opposite = opposite
        rels = []
        for rs in rel_secs:
            for n, text in ([(rs.line, rs.head)] if rs.head else []) + rs.body:
                if text == "rad2":
                    rels += rad_relations(self.quiver, 2, self.field)
                elif text.startswith("rad") and text[3:].isdigit():
                    rels += rad_relations(self.quiver, int(text[3:]), self.field)
                elif text.startswith("rel "):
                    r = _parse_relation(text[4:], self.quiver, self.field, n)
                    if opposite:
                        r = Relation(tuple((c, tuple(reversed(w))) for c, w in r.terms))
                    rels.append(r)
                else:
                    raise WorkspaceError("expected 'rad2', 'radN' or 'rel ...'", n)
        try:
            self.algebra = path_basis(self.quiver, rels, field=self.field)
        except ValueError as e:
            raise WorkspaceError(str(e), sec.line)

    def _named(self, name, line):
        M = self.modules.get(name)
        if M is None:
            raise WorkspaceError("unknown module %r" % name, line)
        return M

    def _parse_module(self, sec):
        alg = self.algebra
        nv = alg.nverts
        head = sec.head
        words = head.split()
        line = sec.line
        if words and words[0] in ("projective", "injective", "simple"):
            if len(words) != 2:
                raise WorkspaceError("expected '%s VERTEX'" % words[0], line)
            v = _vertex(words[1], nv, line)
            return {"projective": projective, "injective": injective, "simple": simple}[words[0]](alg, v)
        if words and words[0] == "sum":
            mods = [self._named(w, line) for w in words[1:]]
            if not mods:
                raise WorkspaceError("empty direct sum", line)
            return direct_sum(mods)[0]
        if words and words[0] == "quotient":
            if len(words) != 2:
                raise WorkspaceError("expected 'quotient MODULE'", line)
            M = self._named(words[1], line)
            sub = [Matrix.zeros(self.field, 0, d) for d in M.dims]
            for n, text in sec.body:
                m = re.match(r"sub\s+(\S+)\s*=\s*(.+)$", text)
                if not m:
                    raise WorkspaceError("expected 'sub VERTEX = MATRIX'", n)
                v = _vertex(m.group(1), nv, n)
                sub[v] = self._matrix(m.group(2), n)
                if sub[v].ncols != M.dims[v]:
                    raise WorkspaceError("sub %d has %d columns, expected %d" % (v + 1, sub[v].ncols, M.dims[v]), n)
            try:
                from .rmod import generated_submodule

                full = generated_submodule(M, sub)
                return quotient(M, full)[0]
            except ValueError as e:
                raise WorkspaceError(str(e), line)
        kv = _key_values(sec)
        if "dims" not in kv:
            raise WorkspaceError("module needs 'dims = (...)' or a constructor", line)
        dims = [int(x) for x in re.findall(r"-?\d+", kv["dims"][0])]
        if len(dims) != nv:
            raise WorkspaceError("dims has %d entries, the quiver has %d vertices" % (len(dims), nv), kv["dims"][1])
        from .rmod import Module

        mats = []
        for g, (gname, s, t) in enumerate(alg.gens):
            key = "mat " + gname
            if key in kv:
                m = self._matrix(kv[key][0], kv[key][1])
                if m.shape != (dims[s], dims[t]):
                    raise WorkspaceError("matrix for %s has shape %s, expected %s"
                                         % (gname, m.shape, (dims[s], dims[t])), kv[key][1])
                mats.append(m)
            else:
                mats.append(Matrix.zeros(self.field, dims[s], dims[t]))
        for k, (_, n) in kv.items():
            if k != "dims" and not (k.startswith("mat ") and k[4:] in [g[0] for g in alg.gens]):
                raise WorkspaceError("unknown key %r" % k, n)
        try:
            return Module(alg, dims, mats)
        except ValueError as e:
            raise WorkspaceError(str(e), line)

    def _matrix(self, text, line):
        try:
            return parse_matrix(text, self.field)
        except ValueError as e:
            raise WorkspaceError(str(e), line)

    def _parse_cotorsion(self, sec):
        kv = _key_values(sec)
        spec = {"line": sec.line, "depth": 4, "cap": 32}
        if "derive" in kv:
            ref, n = kv["derive"]
            spec["derive"] = (ref, n)
        else:
            for side in ("a", "b"):
                if side not in kv:
                    raise WorkspaceError("cotorsion data needs '%s = ...'" % side, sec.line)
                val, n = kv[side]
                spec[side] = [self._named(w, n) for w in val.split()]
        for k in ("depth", "cap"):
            if k in kv:
                spec[k] = int(kv[k][0])
        for k, (_, n) in kv.items():
            if k not in ("a", "b", "derive", "depth", "cap"):
                raise WorkspaceError("unknown key %r" % k, n)
        return spec

    def _parse_repe(self, sec):
        spec = RepeSpec(sec.name, sec.line)
        items = ([(sec.line, sec.head)] if sec.head else []) + sec.body
        for n, text in items:
            m = re.match(r"(comp|delta)\s+(-?\d+)\s*=\s*(.+)$", text)
            if m:
                target = spec.comps if m.group(1) == "comp" else spec.deltas
                target[int(m.group(2))] = (m.group(3).strip(), n)
                continue
            m = re.match(r"over\s*=\s*(R|S)$", text)
            if m:
                spec.over = m.group(1)
                continue
            m = re.match(r"random\b(.*)$", text)
            if m:
                opts = dict(re.findall(r"(\w+)\s*=\s*(-?\d+)", m.group(1)))
                spec.random = {"seed": int(opts.get("seed", 0)), "lo": int(opts.get("lo", -2)),
                               "hi": int(opts.get("hi", 2)), "maxdim": int(opts.get("maxdim", 3))}
                continue
            raise WorkspaceError("expected 'comp I = ...', 'delta I = ...', 'over = R|S' or 'random ...'", n)
        if spec.over == "R":
            for d, (expr, n) in spec.comps.items():
                self._named(expr, n)
        return spec

    def _check_setup(self):
        for key, (val, n) in self.setup.items():
            if key == "tilting":
                if val != "regular":
                    self._named(val, n)
            elif key in ("data-r", "data-s"):
                if val not in self.cotorsion:
                    raise WorkspaceError("unknown cotorsion data %r" % val, n)
            elif key == "depth":
                int(val)
            else:
                raise WorkspaceError("unknown setup key %r" % key, n)
        for name, spec in self.cotorsion.items():
            if "derive" in spec and spec["derive"][0] not in self.cotorsion:
                raise WorkspaceError("unknown cotorsion data %r" % spec["derive"][0], spec["derive"][1])

    # -- resolution ----------------------------------------------------------------
    def module(self, name):
        M = self.modules.get(name)
        if M is None:
            raise WorkspaceError("unknown module %r" % name)
        return M

    def tilting_name(self, name=None):
        if name:
            return name
        if "tilting" not in self.setup:
            raise WorkspaceError("no tilting module given and no 'tilting' in [setup]")
        return self.setup["tilting"][0]

    def bimodule(self, name=None):
        """``(Tb, ctx)`` for a named module or the regular bimodule."""
        name = self.tilting_name(name)
        key = ("tilt", name)
        if key not in self._cache:
            if name == "regular":
                Tb = regular_bimodule(self.algebra)
            else:
                _, Tb = end_algebra(self.module(name), name=name)
            self._cache[key] = (Tb, tilt_context(Tb))
        return self._cache[key]

    def data(self, name, tilting=None):
        if name not in self.cotorsion:
            raise WorkspaceError("unknown cotorsion data %r" % name)
        key = ("data", name, self.tilting_name(tilting) if "derive" in self.cotorsion[name] else None)
        if key not in self._cache:
            spec = self.cotorsion[name]
            if "derive" in spec:
                base = self.data(spec["derive"][0])
                Tb, _ = self.bimodule(tilting)
                d = derived_s_data(Tb, base, name=name)
                d.depth, d.cap = spec["depth"], spec["cap"]
            else:
                d = CotorsionData(self.algebra, spec["a"], spec["b"], spec["depth"], spec["cap"], name=name)
            self._cache[key] = d
        return self._cache[key]

    def data_r(self, name=None):
        name = name or self.setup.get("data-r", (None,))[0]
        if not name:
            raise WorkspaceError("no R-side cotorsion data given and no 'data-r' in [setup]")
        return self.data(name)

    def data_s(self, name=None, tilting=None):
        name = name or self.setup.get("data-s", (None,))[0]
        if name:
            return self.data(name, tilting)
        Tb, _ = self.bimodule(tilting)
        return derived_s_data(Tb, self.data_r(), name="derived")

    def _s_component(self, expr, line):
        Tb, ctx = self.bimodule()
        words = expr.split()
        S = Tb.left
        if len(words) == 2 and words[0] in ("hom", "dt"):
            M = self._named(words[1], line)
            return hom_functor(Tb, M) if words[0] == "hom" else tensor(M, ctx.DT)
        if len(words) == 2 and words[0] in ("projective", "injective", "simple"):
            v = _vertex(words[1], S.nverts, line)
            return {"projective": projective, "injective": injective, "simple": simple}[words[0]](S, v)
        raise WorkspaceError("S-side component must be 'hom M', 'dt M' or 'projective|injective|simple V'", line)

    def repe(self, name):
        spec = self.repes.get(name)
        if spec is None:
            raise WorkspaceError("unknown repe complex %r" % name)
        key = ("repe", name)
        if key in self._cache:
            return self._cache[key]
        alg = self.algebra if spec.over == "R" else self.bimodule()[0].left
        if spec.random is not None:
            r = spec.random
            X = random_repe(alg, random.Random(r["seed"]), window=(r["lo"], r["hi"]), maxdim=r["maxdim"])
        else:
            comps = {}
            for d, (expr, n) in spec.comps.items():
                comps[d] = self._named(expr, n) if spec.over == "R" else self._s_component(expr, n)
            X = RepeComplex(alg, comps, check=False)
            deltas = {}
            for d, (lit, n) in spec.deltas.items():
                if d not in comps or (d - 1) not in comps:
                    raise WorkspaceError("delta %d needs components in degrees %d and %d" % (d, d, d - 1), n)
                m = self._matrix(lit, n)
                if m.shape != (X.tens(d).dim, comps[d - 1].dim):
                    raise WorkspaceError("delta %d has shape %s, expected %s (see describe-basis)"
                                         % (d, m.shape, (X.tens(d).dim, comps[d - 1].dim)), n)
                deltas[d] = m
            try:
                X = RepeComplex(alg, comps, {d: _on(X.tens(d), comps[d - 1], m) for d, m in deltas.items()})
            except (RepeError, ValueError) as e:
                raise WorkspaceError("%s: %s" % (name, e), spec.line)
        X.name = name
        X.side = spec.over
        self._cache[key] = X
        return X


def _on(src, tgt, m):
    from .rmod import ModHom

    return ModHom.from_matrix(src, tgt, m, check=True)


def parse_workspace(path):
    """Load and validate a workspace file (or a bundled fixture by name)."""
    return Workspace.load(path)


# -- reports -------------------------------------------------------------------------

@dataclass
class Result:
    check: str
    target: str
    ok: bool
    message: str
    details: dict = dc_field(default_factory=dict)


def emit_report(results, fmt="text"):
    """Failures first, then passes; ``machine`` gives stable ``key=value`` lines."""
    ordered = sorted(results, key=lambda r: (r.ok, r.check, r.target))
    lines = []
    if fmt == "machine":
        lines.append("report=repequiv results=%d failures=%d" % (len(results), sum(not r.ok for r in results)))
        for r in ordered:
            parts = ["check=%s" % r.check, "target=%s" % r.target, "status=%s" % ("PASS" if r.ok else "FAIL")]
            for k in sorted(r.details):
                parts.append("%s=%s" % (k, _machine_value(r.details[k])))
            lines.append(" ".join(parts))
    else:
        lines.append("repequiv report: %d checks, %d failed" % (len(results), sum(not r.ok for r in results)))
        for r in ordered:
            lines.append("%s %s %s: %s" % ("PASS" if r.ok else "FAIL", r.check, r.target, r.message))
    return "\n".join(lines)


def _machine_value(v):
    if isinstance(v, dict):
        return ",".join("%s:%s" % (k, _machine_value(v[k])) for k in sorted(v))
    if isinstance(v, (list, tuple)):
        return ",".join(_machine_value(x) for x in v)
    return str(v).replace(" ", "_")


def _verdict_result(check, target, v, ok_msg):
    msg = ok_msg if v.ok else "; ".join(v.failures)
    details = {k: val for k, val in v.details.items() if isinstance(val, (int, str, dict, list, tuple))}
    return Result(check, target, v.ok, msg, details)


def run_check_tilting(ws, name, depth):
    rep = check_wakamatsu(ws.module(name), depth)
    return Result("check-tilting", name, rep.certified, rep.verdict(),
                  {"depth": depth, "end_dim": rep.end_dim})


def run_check_good(ws, tilting=None, data_r=None, data_s=None):
    Tb, _ = ws.bimodule(tilting)
    dR, dS = ws.data_r(data_r), ws.data_s(data_s, tilting)
    v = check_good(Tb, dR, dS)
    name = ws.tilting_name(tilting)
    msg = "good, relative to the supplied generator lists (Ext certified to depth %d)" % dR.depth
    return _verdict_result("check-good", name, v, msg)


def run_roundtrip(ws, name):
    X = ws.repe(name)
    Tb, ctx = ws.bimodule()
    dR, dS = ws.data_r(), ws.data_s()
    if getattr(X, "side", "R") == "R":
        v = verify_roundtrip_R(X, ctx, dR, dS)
        msg = "phi invertible in every degree (dims %s)" % v.details.get("phi_dims")
    else:
        v = verify_roundtrip_S(Y=X, ctx=ctx, dataR=dR, dataS=dS)
        msg = "S_T Q_DT(Y) stably isomorphic to Y"
    return _verdict_result("verify-roundtrip", name, v, msg)


def run_restriction(ws):
    Tb, ctx = ws.bimodule()
    dR = ws.data_r()
    out = []
    for M in dR.a_gens:
        v = restriction_check(M, ctx, dR)
        out.append(_verdict_result("restriction-check", M.name or "?", v, "F_T(M) stably isomorphic to Hom(T, M)"))
    return out


def describe_complex(X):
    lines = ["%s over %s" % (X.name or "complex", "R" if getattr(X, "side", "R") == "R" else "S")]
    for i in sorted(X.comps, reverse=True):
        lines.append("  degree %d: dims %s" % (i, X.comps[i].dims))
        if i in X.deltas:
            lines.append("    delta %d: rank %d" % (i, X.deltas[i].rank()))
    return "\n".join(lines)


def describe_basis(X, i):
    """The basis of ``X_i (x) DA`` on which ``delta i`` matrices are written."""
    alg = X.alg
    DA = dual_regular(alg)
    reg = DA.dual_of
    T = X.tens(i)
    lines = ["basis of %s_%d (x) D%s: %d vectors (rows of a delta %d matrix); columns index %s_%d, dim %d"
             % (X.name or "X", i, "A", T.dim, i, X.name or "X", i - 1, X.comp(i - 1).dim)]
    for k, (x, r) in enumerate(T.pairs):
        label = alg.labels[reg.algebra_index[DA.perm[r]]]
        lines.append("  %d: x%d (x) D(%s)   [vertex %s]" % (k, x + 1, label, alg.vertex_labels[T.vertex_of(k)]))
    return "\n".join(lines)


# -- command line ----------------------------------------------------------------------

def _load(path):
    try:
        return parse_workspace(path)
    except WorkspaceError as e:
        click.echo("input error: %s" % e, err=True)
        sys.exit(EXIT_INPUT)


def _finish(results, fmt="text"):
    click.echo(emit_report(results, fmt))
    sys.exit(EXIT_PASS if all(r.ok for r in results) else EXIT_FAIL)


def _guard(fn):
    try:
        return fn()
    except WorkspaceError as e:
        click.echo("input error: %s" % e, err=True)
        sys.exit(EXIT_INPUT)


@click.group()
@click.argument("workspace")
@click.pass_context
def main(ctx, workspace):
    """Certify Wakamatsu-tilting data and run the repetitive-category functors.

    WORKSPACE is a workspace file or the name of a bundled fixture
    (fix-a2, fix-a3, fix-a3t, rad2-seven).
    """
    ctx.obj = _load(workspace)


@main.command("check-tilting")
@click.argument("module")
@click.option("--depth", default=4, show_default=True, help="Ext and coresolution depth.")
@click.pass_obj
def cmd_check_tilting(ws, module, depth):
    """Certify MODULE as Wakamatsu-tilting to the given depth."""
    t = time.time()
    r = _guard(lambda: run_check_tilting(ws, module, depth))
    click.echo("elapsed %.2fs" % (time.time() - t), err=True)
    _finish([r])


@main.command("end-algebra")
@click.argument("module")
@click.pass_obj
def cmd_end_algebra(ws, module):
    """Describe S = End(MODULE) and check End_S(MODULE) = R."""
    def run():
        S, Tb = end_algebra(ws.module(module), name=module)
        lines = ["S = End(%s): dim %d, %d vertices" % (module, S.dim, S.nverts)]
        for g, (name, s, t) in enumerate(S.gens):
            kind = "radical" if g in S.radical_gens else "iso"
            lines.append("  generator %s: %s -> %s (%s)" % (name, S.vertex_labels[s], S.vertex_labels[t], kind))
        click.echo("\n".join(lines))
        dim, ok = end_check(Tb)
        v = Verdict(ok, details={"end_dim": dim, "dim_R": ws.algebra.dim})
        if not ok:
            v.failures.append("End_S(T) has dim %d and is not the regular representation of R" % dim)
        return _verdict_result("end-algebra", module, v, "End_S(T) is isomorphic to R (dim %d)" % dim)
    _finish([_guard(run)])


@main.command("check-good")
@click.argument("module", required=False)
@click.option("--data-r", default=None, help="R-side cotorsion data (default from [setup]).")
@click.option("--data-s", default=None, help="S-side cotorsion data (default: derived from T).")
@click.pass_obj
def cmd_check_good(ws, module, data_r, data_s):
    """Check that the bimodule of MODULE is good for the given cotorsion pairs."""
    _finish([_guard(lambda: run_check_good(ws, module, data_r, data_s))])


@main.command("apply-st")
@click.argument("complex_name")
@click.pass_obj
def cmd_apply_st(ws, complex_name):
    """Apply S_T to an R-side complex and describe the result."""
    def run():
        X = ws.repe(complex_name)
        _, ctx = ws.bimodule()
        Y = S_T(X, ctx, ws.data_r())
        Y.name, Y.side = "S_T(%s)" % complex_name, "S"
        click.echo(describe_complex(Y))
        return Result("apply-st", complex_name, True, "structure maps square-zero",
                      {"dims": {i: M.dims for i, M in sorted(Y.comps.items())}})
    _finish([_guard(run)])


@main.command("apply-qdt")
@click.argument("complex_name")
@click.pass_obj
def cmd_apply_qdt(ws, complex_name):
    """Apply Q_DT to an S-side complex and describe the result."""
    def run():
        Y = ws.repe(complex_name)
        if getattr(Y, "side", "R") != "S":
            raise WorkspaceError("apply-qdt needs a complex with 'over = S'")
        _, ctx = ws.bimodule()
        X = Q_DT(Y, ctx, ws.data_s())
        X.name, X.side = "Q_DT(%s)" % complex_name, "R"
        click.echo(describe_complex(X))
        return Result("apply-qdt", complex_name, True, "structure maps square-zero",
                      {"dims": {i: M.dims for i, M in sorted(X.comps.items())}})
    _finish([_guard(run)])


@main.command("verify-roundtrip")
@click.argument("complex_name")
@click.pass_obj
def cmd_verify_roundtrip(ws, complex_name):
    """Verify the round-trip isomorphism on a complex."""
    _finish([_guard(lambda: run_roundtrip(ws, complex_name))])


@main.command("restriction-check")
@click.pass_obj
def cmd_restriction(ws):
    """Check F_T(M) against Hom(T, M) for every A-generator M."""
    _finish(_guard(lambda: run_restriction(ws)))


@main.command("describe-basis")
@click.argument("complex_name")
@click.argument("degree", type=int)
@click.pass_obj
def cmd_describe_basis(ws, complex_name, degree):
    """Print the basis on which the delta matrix in DEGREE is written."""
    X = _guard(lambda: ws.repe(complex_name))
    click.echo(describe_basis(X, degree))


@main.command("report")
@click.option("--format", "fmt", type=click.Choice(["text", "machine"]), default="text", show_default=True)
@click.pass_obj
def cmd_report(ws, fmt):
    """Run every check configured in the workspace."""
    def run():
        results = []
        depth = int(ws.setup.get("depth", ("4",))[0])
        if "tilting" in ws.setup and ws.setup["tilting"][0] != "regular":
            results.append(run_check_tilting(ws, ws.setup["tilting"][0], depth))
        if "tilting" in ws.setup and "data-r" in ws.setup:
            results.append(run_check_good(ws))
            for name in sorted(ws.repes):
                results.append(run_roundtrip(ws, name))
            results.extend(run_restriction(ws))
        return results
    _finish(_guard(run), fmt)


if __name__ == "__main__":
    main()
